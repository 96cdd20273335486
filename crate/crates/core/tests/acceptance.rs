//! Acceptance suite: one line per criterion with its pinned tolerance and
//! runtime bound. Exits nonzero if any criterion fails.

use std::time::{Duration, Instant};

use contact_engel::engel::{self, Branch};
use contact_engel::kerr::{self, KerrFunction};
use contact_engel::tanaka::{self, Coefficients, GradedNilpotent};
use contact_engel::{cubicalg, g2alg, models, Expr};
use rand::{Rng, SeedableRng};

const MARKING_SEED: u64 = 20_240_501;
const POINT_SEED: u64 = 77;
const CUBIC_SEED: u64 = 7;

type Check = Result<String, String>;

fn ensure(cond: bool, what: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn expr(s: &str) -> Expr {
    s.parse().expect("literal parses")
}

fn g2_table() -> Check {
    let g = g2alg::commutator_table().map_err(err)?;
    ensure(g.dim() == 14, "basis does not close")?;
    let mc = g2alg::verify_maurer_cartan().map_err(err)?;
    ensure(mc.matched() == 14, format!("{}/14 structure equations", mc.matched()))?;
    ensure(mc.jacobi_passed == 364 && mc.jacobi_triples == 364, format!("{}/364 Jacobi triples", mc.jacobi_passed))?;
    Ok(format!("14/14 equations, 364/364 Jacobi, convention {}", mc.convention))
}

fn parabolic_reduction() -> Check {
    let r = g2alg::grading_and_parabolics().map_err(err)?;
    ensure(r.q_closed, "q does not close")?;
    let bad: Vec<usize> = r.reduction.iter().filter(|e| !e.matches).map(|e| e.index).collect();
    ensure(bad.is_empty(), format!("reduced equations differ at {bad:?}"))?;
    Ok(format!("q closed, {}/9 reduced equations exact", r.reduction.len()))
}

fn flat_invariants() -> Check {
    let t = Expr::zero();
    for inv in [engel::invariants_closed_form(&t), engel::invariants_from_structure_equations(&t)] {
        let inv = inv.map_err(err)?;
        let nonzero: Vec<&str> = inv.named().iter().filter(|(_, v)| !v.is_zero()).map(|(n, _)| *n).collect();
        ensure(nonzero.is_empty(), format!("nonzero invariants {nonzero:?}"))?;
    }
    let label = engel::classify(&t).map_err(err)?;
    ensure(label.branch() == Some(Branch::Flat), label.describe())?;
    ensure(Branch::Flat.max_homogeneous_symmetry() == Some(9), "flat symmetry dimension is not 9")?;
    Ok(label.describe())
}

fn kerr_family() -> Check {
    let t = expr("(x1 - s*x3)/(-x2 + s*x4)");
    ensure(engel::j_coordinate(&t).map_err(err)?.is_zero(), "coordinate J does not vanish")?;
    ensure(engel::invariants_closed_form(&t).map_err(err)?.j.is_zero(), "frame J does not vanish")?;
    let f = KerrFunction::new(expr("t - (s*y3 - y1)/y2")).map_err(err)?;
    let r = kerr::verify_kerr_pair(&f, &t).map_err(err)?;
    ensure(r.passed(), format!("{r:?}"))?;
    Ok("J = 0 and F(y(t), t) = 0 with symbolic s".into())
}

fn oracle_equivalence(markings: &[Expr]) -> Check {
    for t in markings {
        let a = engel::invariants_closed_form(t).map_err(err)?;
        let b = engel::invariants_from_structure_equations(t).map_err(err)?;
        let diff = a.differences(&b);
        ensure(diff.is_empty(), format!("t = {t}: routes differ on {diff:?}"))?;
        ensure(engel::j_coordinate(t).map_err(err)? == a.j, format!("t = {t}: coordinate J differs"))?;
        let cf = engel::adapted_coframe(t).map_err(err)?;
        let xi4 = cf.xi(4).apply(t).map_err(err)?;
        ensure(-xi4 == a.j, format!("t = {t}: -xi4(t) differs from J"))?;
    }
    Ok(format!("{} seeded markings, 10/10 invariants agree", markings.len()))
}

fn geometry_battery(markings: &[Expr]) -> Check {
    let mut cases = markings.to_vec();
    cases.push(Expr::zero());
    cases.push(expr("(x1 - 2*x3)/(-x2 + 2*x4)"));
    let mut vanishing = 0;
    for t in &cases {
        let r = engel::geometric_checks(t).map_err(err)?;
        ensure(r.d_integrable == r.j_vanishes, format!("t = {t}: integrability does not track J"))?;
        if r.j_vanishes {
            vanishing += 1;
            ensure(r.h_derived_rank == 4, format!("t = {t}: derived rank {}", r.h_derived_rank))?;
        } else {
            ensure(r.d_growth == [2, 3, 5], format!("t = {t}: growth {:?}", r.d_growth))?;
        }
        ensure(r.volume_identity, format!("t = {t}: volume identity fails"))?;
    }
    Ok(format!("{} markings ({vanishing} with J = 0)", cases.len()))
}

fn tautological(markings: &[Expr]) -> Check {
    for t in [Expr::zero(), expr("x4"), markings[0].clone()] {
        let r = engel::tautological_forms(&t).map_err(err)?;
        ensure(r.t124 && r.t102, format!("t = {t}: {r:?}"))?;
    }
    Ok(format!("T124 and T102 hold for 0, x4, {}", markings[0]))
}

fn flat_reduction() -> Check {
    let r = engel::verify_flat_reduction().map_err(err)?;
    let bad: Vec<&str> = r.residuals.iter().filter(|e| !e.vanishes).map(|e| e.equation.as_str()).collect();
    ensure(r.residuals.len() == 9 && bad.is_empty(), format!("nonvanishing {bad:?}"))?;
    Ok("9/9 reduced equations vanish".into())
}

fn tanaka_checks() -> Check {
    let m = GradedNilpotent::from_g2().map_err(err)?;
    let gl2 = tanaka::tanaka_prolong(&m, &tanaka::g0_gl2().map_err(err)?, 6).map_err(err)?.summary();
    ensure(gl2.positive_dims == [4, 1] && gl2.complete && gl2.total == Some(14), format!("gl2: {gl2:?}"))?;
    let borel = tanaka::tanaka_prolong(&m, &tanaka::g0_borel().map_err(err)?, 6).map_err(err)?.summary();
    ensure(borel.positive_dims == [1] && borel.complete && borel.total == Some(9), format!("borel: {borel:?}"))?;
    let g = Coefficients::g().map_err(err)?;
    for l in 1..=4 {
        let h = tanaka::cohomology_dim(&g, 1, l).map_err(err)?;
        ensure(h == 0, format!("H1(m,g)_{l} = {h}"))?;
    }
    let h2g = tanaka::cohomology_dim(&g, 2, 1).map_err(err)?;
    ensure(h2g == 8, format!("H2(m,g)_1 = {h2g}"))?;
    let h2q = tanaka::cohomology_dim(&Coefficients::q().map_err(err)?, 2, 1).map_err(err)?;
    ensure(h2q == 9, format!("H2(m,q)_1 = {h2q}"))?;
    let n = tanaka::normalization_obstruction().map_err(err)?;
    ensure(n.image_q == 15 && n.image_g == 16 && n.image_q_inside_image_g, format!("images {} in {}", n.image_q, n.image_g))?;
    ensure(n.no_invariant_complement(), "an invariant line leaves the smaller image")?;
    Ok(format!("(4,1,0) total 14; (1,0) total 9; H2 = 8, 9; Im 15 < 16; {} invariant eigenspaces inside", n.invariant_lines.len()))
}

fn homogeneous_models() -> Check {
    let cat = models::catalogue().map_err(err)?;
    ensure(cat.len() == 7, "catalogue size")?;
    let mut sigs = Vec::new();
    for sys in &cat {
        let r = models::identify(sys).map_err(err)?;
        ensure(r.closed, format!("{} fails d^2 = 0", r.name))?;
        if r.name == models::SUBMAXIMAL_NAME {
            ensure(r.semisimple, format!("submaximal eps {:?} not semisimple", r.epsilon))?;
            sigs.push((r.epsilon.unwrap_or(0), (r.killing_signature.0, r.killing_signature.1)));
        }
        if r.name == models::SPLIT_SIX {
            let mut d = r.ideals.clone().unwrap_or_default();
            d.sort();
            ensure(d == [3, 3] && r.ideals_simple == Some(true), format!("six-dim ideals {:?}", r.ideals))?;
        }
    }
    ensure(sigs.len() == 2 && sigs[0].1 != sigs[1].1, format!("signatures {sigs:?}"))?;
    let render: Vec<String> = sigs.iter().map(|(e, (p, n))| format!("eps {e:+}: ({p},{n})")).collect();
    Ok(format!("7/7 closed; submaximal {}; 6-dim = 3 + 3", render.join(", ")))
}

fn numeric_kerr() -> Check {
    const F_TOL: f64 = 1e-10;
    const J_TOL: f64 = 1e-7;
    const REL_TOL: f64 = 1e-10;
    let f = KerrFunction::new(expr("y2*t - (2*y3 - y1)")).map_err(err)?;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(POINT_SEED);
    let mut done = 0;
    let mut worst = (0.0f64, 0.0f64, 0.0f64);
    while done < 20 {
        let p: [f64; 5] = std::array::from_fn(|_| rng.gen_range(-2.0..2.0));
        let den = -p[2] + 2.0 * p[4];
        if den.abs() < 0.1 {
            continue;
        }
        let closed = (p[1] - 2.0 * p[3]) / den;
        let s = kerr::solve_kerr_numeric(&f, &p, 0.0, 1e-13).map_err(|e| format!("{p:?}: {e}"))?;
        let rel = (s.t - closed).abs() / closed.abs().max(1.0);
        ensure(s.f_residual < F_TOL && s.j_residual < J_TOL && rel < REL_TOL, format!("{p:?}: {s:?}, rel {rel:e}"))?;
        worst = (worst.0.max(s.f_residual), worst.1.max(s.j_residual), worst.2.max(rel));
        done += 1;
    }
    Ok(format!("20 points: max |F| {:.1e} < {F_TOL:e}, max |J| {:.1e} < {J_TOL:e}, max rel {:.1e} < {REL_TOL:e}", worst.0, worst.1, worst.2))
}

fn cubic_algebra() -> Check {
    let r = cubicalg::verify(CUBIC_SEED, 20);
    ensure(r.passed(), format!("{r:?}"))?;
    Ok(format!(
        "{} samples; symplectic dim {}; stabilizer dim {} = rho'(gl2)",
        r.homomorphism_samples, r.symplectic_dimension, r.stabilizer_dimension
    ))
}

fn main() {
    let markings = engel::random_markings(MARKING_SEED, 20);
    let criteria: Vec<(u32, &str, Option<u64>, Box<dyn Fn() -> Check + '_>)> = vec![
        (1, "g2 matrix model", Some(5), Box::new(g2_table)),
        (2, "parabolic reduction", None, Box::new(parabolic_reduction)),
        (3, "flat invariants", None, Box::new(flat_invariants)),
        (4, "Kerr family", Some(10), Box::new(kerr_family)),
        (5, "oracle equivalence", Some(60), Box::new(|| oracle_equivalence(&markings))),
        (6, "geometry battery", None, Box::new(|| geometry_battery(&markings))),
        (7, "tautological forms", None, Box::new(|| tautological(&markings))),
        (8, "flat reduction", Some(120), Box::new(flat_reduction)),
        (9, "Tanaka and cohomology", Some(60), Box::new(tanaka_checks)),
        (10, "homogeneous models", None, Box::new(homogeneous_models)),
        (11, "numeric Kerr", Some(5), Box::new(numeric_kerr)),
        (12, "cubic algebra", None, Box::new(cubic_algebra)),
    ];
    let mut failed = 0;
    for (n, name, bound, run) in &criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match (outcome, bound) {
            (Ok(d), Some(b)) if elapsed > Duration::from_secs(*b) => Err(format!("{d}; took {elapsed:.2?} > {b}s")),
            (o, _) => o,
        };
        let limit = bound.map(|b| format!(" (limit {b}s)")).unwrap_or_default();
        match outcome {
            Ok(detail) => println!("criterion {n:>2} PASS  {name}: {detail} [{elapsed:.2?}{limit}]"),
            Err(detail) => {
                failed += 1;
                println!("criterion {n:>2} FAIL  {name}: {detail} [{elapsed:.2?}{limit}]");
            }
        }
    }
    println!("acceptance: {}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
