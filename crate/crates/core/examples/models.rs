//! Homogeneous models: closure and identification of their symmetry algebras.
use contact_engel::models;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for sys in models::catalogue()? {
        let r = models::identify(&sys)?;
        println!(
            "{:<22} eps {:>4} dim {} closed {} semisimple {} Killing {:?} ideals {:?}",
            r.name,
            r.epsilon.map(|e| e.to_string()).unwrap_or_else(|| "-".into()),
            r.dim,
            r.closed,
            r.semisimple,
            r.killing_signature,
            r.ideals
        );
    }
    println!("{:?}", models::flat_algebra()?);
    Ok(())
}
