//! Relative invariants of a few marking functions, by both routes.
use contact_engel::engel;
use contact_engel::Expr;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for src in ["0", "x4", "x4^2", "(x1 - 2*x3)/(-x2 + 2*x4)"] {
        let t: Expr = src.parse()?;
        let closed = engel::invariants_closed_form(&t)?;
        let structural = engel::invariants_from_structure_equations(&t)?;
        println!("t = {src}");
        for (name, value) in closed.named() {
            println!("  {name} = {value}");
        }
        println!("  routes agree: {}", closed.differences(&structural).is_empty());
    }
    Ok(())
}
