//! Tautological forms on the reduced bundle and their torsion coefficients.
use contact_engel::engel;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for src in ["0", "x4", "x0*x4 + x2^2"] {
        let r = engel::tautological_forms(&src.parse()?)?;
        println!("t = {src}: {r:?}");
    }
    Ok(())
}
