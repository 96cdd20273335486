//! Walks the classification tree for a handful of markings.
use contact_engel::engel;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for src in ["0", "x4", "x4^2", "x3 + x4^2", "x1*x4"] {
        let label = engel::classify(&src.parse()?)?;
        println!("{src:>12}  ->  {}", label.describe());
    }
    Ok(())
}
