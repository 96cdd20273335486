//! Exact Kerr pairs: the linear fractional family with symbolic slope.
use contact_engel::kerr::{self, KerrFunction};
use contact_engel::Expr;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for s in ["2", "-3/7", "s"] {
        let f = KerrFunction::new(format!("t - ({s}*y3 - y1)/y2").parse::<Expr>()?)?;
        let t: Expr = format!("(x1 - {s}*x3)/(-x2 + {s}*x4)").parse()?;
        println!("s = {s}: {:?}", kerr::verify_kerr_pair(&f, &t)?);
    }
    Ok(())
}
