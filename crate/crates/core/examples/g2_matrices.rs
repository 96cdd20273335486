//! The split G2 matrix model: commutator table, structure equations, grading.
use contact_engel::g2alg;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = g2alg::commutator_table()?;
    print!("{}", g.table_text());
    let mc = g2alg::verify_maurer_cartan()?;
    println!("structure equations {}/{}, Jacobi {}/{}", mc.matched(), mc.equations.len(), mc.jacobi_passed, mc.jacobi_triples);
    let grading = g2alg::grading_and_parabolics()?;
    println!("grading element {:?}", grading.z);
    let forms = g2alg::invariant_forms()?;
    println!("Killing signature {:?}", forms.killing_signature);
    Ok(())
}
