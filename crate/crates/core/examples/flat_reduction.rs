//! Structure equations of the flat model after fixing the group parameters.
use contact_engel::engel;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let r = engel::verify_flat_reduction()?;
    for e in &r.residuals {
        println!("{:>4}: {}", e.equation, if e.vanishes { "vanishes" } else { "nonzero" });
    }
    println!("uncorrected u3 breaks e5: {}", r.uncorrected_u3_breaks_e5);
    Ok(())
}
