//! Tanaka prolongations over the Heisenberg algebra and low cohomology.
use contact_engel::tanaka::{self, Coefficients, GradedNilpotent};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let m = GradedNilpotent::from_g2()?;
    println!("graded derivations: {}", m.graded_derivations().len());
    for (name, g0) in [("gl2", tanaka::g0_gl2()?), ("borel", tanaka::g0_borel()?), ("csp", m.graded_derivations())] {
        println!("{name}: {:?}", tanaka::tanaka_prolong(&m, &g0, 3)?.summary());
    }
    let g = Coefficients::g()?;
    for l in 1..=4 {
        println!("H^1(m, g)_{l} = {}", tanaka::cohomology_dim(&g, 1, l)?);
    }
    println!("H^2(m, g)_1 = {:?}", tanaka::cohomology(&g, 2, 1)?);
    println!("H^2(m, q)_1 = {}", tanaka::cohomology_dim(&Coefficients::q()?, 2, 1)?);
    let n = tanaka::normalization_obstruction()?;
    println!("{n:#?}\nno invariant complement: {}", n.no_invariant_complement());
    Ok(())
}
