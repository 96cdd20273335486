//! Distribution growth and filtration checks on seeded random markings.
use contact_engel::engel;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for t in engel::random_markings(11, 4).iter().chain(std::iter::once(&"x1 + x2".parse()?)) {
        let r = engel::geometric_checks(t)?;
        println!(
            "t = {t}\n  J = 0: {}  growth {:?}  derived rank {}  consistent {}",
            r.j_vanishes,
            r.d_growth,
            r.h_derived_rank,
            r.consistent()
        );
    }
    Ok(())
}
