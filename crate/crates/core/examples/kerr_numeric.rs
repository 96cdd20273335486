//! Newton solve for the section defined by a Kerr function, with the implicit J.
use contact_engel::kerr::{self, KerrFunction};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = KerrFunction::new("y2*t - (2*y3 - y1)".parse()?)?;
    let points = [[0.3, 1.0, -2.0, 0.5, 0.7], [1.0, 0.2, 0.4, -1.1, 2.0], [-0.5, 3.0, 1.5, 0.25, -0.8]];
    for p in &points {
        let s = kerr::solve_kerr_numeric(&f, p, 0.5, 1e-12)?;
        let closed = (p[1] - 2.0 * p[3]) / (-p[2] + 2.0 * p[4]);
        println!("{p:?}: t = {:.12} (closed form {closed:.12}), |F| = {:e}, |J| = {:e}", s.t, s.f_residual, s.j_residual);
    }
    Ok(())
}
