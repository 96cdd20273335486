//! The correspondence space seen from both charts of the double fibration.
use contact_engel::kerr;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let r = kerr::coordinate_change_check()?;
    println!("{r:#?}");
    println!("passed: {}", r.passed());
    Ok(())
}
