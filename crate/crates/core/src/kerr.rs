//! Integrable markings from functions of five variables, and the double
//! fibration chart change between `(x0..x5)` and `(y0..y5)`.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;
use symexpr::{Expr, Symbol, VarKind};

use crate::engel::{adapted_coframe, j_coordinate};
use crate::forms::{Chart, CoframeChart, Form, VectorField};
use crate::Error;

fn x(i: u32) -> Expr {
    Expr::sym(Symbol::x(i))
}

fn y(i: u32) -> Expr {
    Expr::sym(Symbol::y(i))
}

fn k(v: i64) -> Expr {
    Expr::int(v)
}

/// `(y0, y1, y2, y3)` as functions of `x0..x4` and the value `t`.
pub fn y_of(t: &Expr) -> [Expr; 4] {
    let t2 = t * t;
    let t3 = &t2 * t;
    [
        x(0) + x(1) * x(4) + t * &x(2) * &x(4) * k(3) - &t3 * &x(4) * &x(4),
        x(1) + &t3 * &x(4),
        x(2) - &t2 * &x(4),
        x(3) + t * &x(4),
    ]
}

/// `F(y0, y1, y2, y3, t)`; may use free parameters but no `x` coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct KerrFunction {
    pub f: Expr,
}

impl KerrFunction {
    pub fn new(f: Expr) -> Result<Self, Error> {
        for s in f.symbols() {
            let ok = match s.kind() {
                VarKind::FreeParameter => true,
                _ if s == Symbol::t() => true,
                _ => (0..4).any(|i| s == Symbol::y(i)),
            };
            if !ok {
                return Err(Error::Precondition(format!("F may only use y0..y3, t and free parameters, found {s}")));
            }
        }
        Ok(KerrFunction { f })
    }

    /// `F(y(x, t), t)` with `t` left as the symbol `t`.
    pub fn composed(&self) -> Result<Expr, Error> {
        self.at(&Expr::sym(Symbol::t()))
    }

    /// `F(y(x, t), t)` with a given expression for `t`.
    pub fn at(&self, t: &Expr) -> Result<Expr, Error> {
        let ys = y_of(t);
        let mut map: BTreeMap<Symbol, Expr> = (0..4).map(|i| (Symbol::y(i), ys[i as usize].clone())).collect();
        map.insert(Symbol::t(), t.clone());
        Ok(self.f.subs(&map)?)
    }
}

/// A hypersurface `H(y0..y4) = 0` on the five-dimensional quotient.
#[derive(Debug, Clone, PartialEq)]
pub struct Hypersurface {
    pub h: Expr,
}

impl Hypersurface {
    pub fn new(h: Expr) -> Result<Self, Error> {
        for s in h.symbols() {
            if s.kind() != VarKind::FreeParameter && !(0..5).any(|i| s == Symbol::y(i)) {
                return Err(Error::Precondition(format!("H may only use y0..y4 and free parameters, found {s}")));
            }
        }
        if h.is_constant() {
            return Err(Error::Precondition("H must not be constant".into()));
        }
        Ok(Hypersurface { h })
    }

    /// The same equation read as a function of five variables with `y4 = t`.
    pub fn as_kerr_function(&self) -> KerrFunction {
        let f = self.h.subs1(Symbol::y(4), &Expr::sym(Symbol::t())).expect("substitution of a symbol");
        KerrFunction { f }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct KerrPairReport {
    /// `F(y(t), t)` reduces to zero.
    pub f_vanishes: bool,
    /// The coordinate expression of `J` reduces to zero.
    pub j_vanishes: bool,
    /// `d(omega2)^omega0^omega1^omega2` reduces to zero.
    pub volume_form_vanishes: bool,
}

impl KerrPairReport {
    pub fn passed(&self) -> bool {
        self.f_vanishes && self.j_vanishes
    }
}

pub fn verify_kerr_pair(f: &KerrFunction, t: &Expr) -> Result<KerrPairReport, Error> {
    let f_vanishes = f.at(t)?.is_zero();
    let j_vanishes = j_coordinate(t)?.is_zero();
    let cf = adapted_coframe(t)?;
    let w = |i| cf.omega(i);
    let vol = Form::wedge_all(&[&w(2).d()?, w(0), w(1), w(2)]);
    Ok(KerrPairReport { f_vanishes, j_vanishes, volume_form_vanishes: vol.is_zero() })
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct KerrSolution {
    pub t: f64,
    pub f_residual: f64,
    /// `J` at the root with the first partials of `t` from the implicit function theorem.
    pub j_residual: f64,
    pub iterations: usize,
}

/// `G(x, t) = F(y(x, t), t)` with its exact partial derivatives, ready for
/// repeated numeric evaluation.
#[derive(Debug, Clone)]
pub struct KerrSolver {
    pub g: Expr,
    g_t: Expr,
    g_x: Vec<Expr>,
    pub max_iterations: usize,
}

impl KerrSolver {
    pub fn new(f: &KerrFunction) -> Result<Self, Error> {
        let g = f.composed()?;
        let g_t = g.partial(Symbol::t());
        let g_x = (0..5).map(|i| g.partial(Symbol::x(i))).collect();
        Ok(KerrSolver { g, g_t, g_x, max_iterations: 60 })
    }

    fn env(point: &[f64; 5], t: f64) -> BTreeMap<Symbol, f64> {
        let mut env: BTreeMap<Symbol, f64> = (0..5).map(|i| (Symbol::x(i), point[i as usize])).collect();
        env.insert(Symbol::t(), t);
        env
    }

    fn eval(e: &Expr, env: &BTreeMap<Symbol, f64>) -> Result<f64, Error> {
        let v = e.eval_f64(env)?;
        if !v.is_finite() {
            return Err(Error::Precondition("pole of F".into()));
        }
        Ok(v)
    }

    /// Newton iteration on `t -> G(x, t)` from `guess` until `|G| < tol`.
    pub fn solve(&self, point: &[f64; 5], guess: f64, tol: f64) -> Result<KerrSolution, Error> {
        if tol <= 0.0 {
            return Err(Error::Precondition("tolerance must be positive".into()));
        }
        let mut t = guess;
        for it in 0..=self.max_iterations {
            let env = Self::env(point, t);
            let g = Self::eval(&self.g, &env)?;
            if g.abs() < tol {
                let j = self.implicit_j(point, t)?;
                return Ok(KerrSolution { t, f_residual: g.abs(), j_residual: j.abs(), iterations: it });
            }
            let gt = Self::eval(&self.g_t, &env)?;
            if gt.abs() < 1e-14 * (1.0 + g.abs()) {
                return Err(if g.abs() < tol.sqrt() { Error::DegenerateRoot } else { Error::StationaryPoint(t) });
            }
            t -= g / gt;
        }
        Err(Error::NoConvergence(self.max_iterations))
    }

    /// Partials `t_xi = -G_xi / G_t` at `(x, t)`.
    pub fn implicit_partials(&self, point: &[f64; 5], t: f64) -> Result<[f64; 5], Error> {
        let env = Self::env(point, t);
        let gt = Self::eval(&self.g_t, &env)?;
        if gt.abs() < 1e-14 {
            return Err(Error::DegenerateRoot);
        }
        let mut out = [0.0; 5];
        for (o, gx) in out.iter_mut().zip(&self.g_x) {
            *o = -Self::eval(gx, &env)? / gt;
        }
        Ok(out)
    }

    pub fn implicit_j(&self, point: &[f64; 5], t: f64) -> Result<f64, Error> {
        Ok(j_numeric(point, t, &self.implicit_partials(point, t)?))
    }
}

/// `J` evaluated from the value of `t` and its first partials.
pub fn j_numeric(point: &[f64; 5], t: f64, tx: &[f64; 5]) -> f64 {
    (point[1] + 3.0 * t * point[2]) * tx[0] + t.powi(3) * tx[1] - t * t * tx[2] + t * tx[3] - tx[4]
}

/// Solves `F(y(x, t), t) = 0` for `t` near `guess` and checks `|J| < 1e3 * tol`.
pub fn solve_kerr_numeric(f: &KerrFunction, point: &[f64; 5], guess: f64, tol: f64) -> Result<KerrSolution, Error> {
    let sol = KerrSolver::new(f)?.solve(point, guess, tol)?;
    if sol.j_residual >= 1e3 * tol {
        return Err(Error::Mismatch(format!("implicit J = {:e} at the root", sol.j_residual)));
    }
    Ok(sol)
}

/// Central-difference estimate of `J` at a root, re-solving at shifted
/// points. Independent of the implicit-function partials.
pub fn j_finite_difference(f: &KerrFunction, point: &[f64; 5], guess: f64, h: f64) -> Result<f64, Error> {
    let solver = KerrSolver::new(f)?;
    let root = solver.solve(point, guess, 1e-13)?.t;
    let mut tx = [0.0; 5];
    for (i, d) in tx.iter_mut().enumerate() {
        let mut p = *point;
        let mut m = *point;
        p[i] += h;
        m[i] -= h;
        let tp = solver.solve(&p, root, 1e-13)?.t;
        let tm = solver.solve(&m, root, 1e-13)?.t;
        *d = (tp - tm) / (2.0 * h);
    }
    Ok(j_numeric(point, root, &tx))
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct SectionSample {
    pub point: [f64; 5],
    pub solution: KerrSolution,
}

/// The section `x5 = t(x)` cut out by `H(y(x, x5), x5) = 0` at each sample
/// point. Fails where the `x5`-derivative vanishes at the root.
pub fn section_from_hypersurface(
    h: &Hypersurface,
    points: &[[f64; 5]],
    guess: f64,
    tol: f64,
) -> Result<Vec<SectionSample>, Error> {
    let solver = KerrSolver::new(&h.as_kerr_function())?;
    if solver.g_t.is_zero() {
        return Err(Error::Transversality("H(y(x, x5), x5) does not depend on x5".into()));
    }
    points
        .iter()
        .map(|p| {
            let solution = solver.solve(p, guess, tol).map_err(|e| match e {
                Error::DegenerateRoot => Error::Transversality(format!("x5-derivative vanishes at {p:?}")),
                other => other,
            })?;
            let gt = KerrSolver::eval(&solver.g_t, &KerrSolver::env(p, solution.t))?;
            // a multiple root converges slowly and leaves G_t of order tol^(2/3)
            if gt.abs() < tol.sqrt() {
                return Err(Error::Transversality(format!("x5-derivative vanishes at {p:?}")));
            }
            if solution.j_residual >= 1e3 * tol {
                return Err(Error::Mismatch(format!("implicit J = {:e} at {p:?}", solution.j_residual)));
            }
            Ok(SectionSample { point: *p, solution })
        })
        .collect()
}

/// The chart `x0..x5` on the correspondence space.
pub fn x_chart() -> Arc<Chart> {
    Chart::new("x", (0..6).map(Symbol::x).collect())
}

/// The chart `y0..y5` on the correspondence space.
pub fn y_chart() -> Arc<Chart> {
    Chart::new("y", (0..6).map(Symbol::y).collect())
}

/// `omega0..omega4, omega7` in the `x` chart.
pub fn x_coframe() -> Vec<Form> {
    let c = x_chart();
    let s = x(5);
    let z = Expr::zero;
    let rows = vec![
        vec![k(1), z(), z(), -x(2) * k(3), x(1), z()],
        vec![z(), k(1), &s * k(3), &s * &s * k(3), &s * &s * &s, z()],
        vec![z(), z(), k(1), &s * k(2), &s * &s, z()],
        vec![z(), z(), z(), k(1), s.clone(), z()],
        vec![z(), z(), z(), z(), k(1), z()],
        vec![z(), z(), z(), z(), z(), k(-1)],
    ];
    rows.iter().map(|r| Form::one_form(&c, r)).collect()
}

/// `omega0..omega4, omega7` in the `y` chart.
pub fn y_coframe() -> Vec<Form> {
    let c = y_chart();
    let z = Expr::zero;
    let rows = vec![
        vec![k(1), -y(5), -y(4) * y(5) * k(3), -(y(2) + y(5) * y(4) * y(4)) * k(3), z(), z()],
        vec![z(), k(1), y(4) * k(3), y(4) * y(4) * k(3), z(), z()],
        vec![z(), z(), k(1), y(4) * k(2), z(), z()],
        vec![z(), z(), z(), k(1), -y(5), z()],
        vec![z(), z(), z(), z(), z(), k(1)],
        vec![z(), z(), z(), z(), k(-1), z()],
    ];
    rows.iter().map(|r| Form::one_form(&c, r)).collect()
}

/// `y0..y5` in terms of `x0..x5`.
pub fn x_to_y() -> Vec<Expr> {
    let mut out: Vec<Expr> = y_of(&x(5)).into();
    out.push(x(5));
    out.push(x(4));
    out
}

/// `x0..x5` in terms of `y0..y5`.
pub fn y_to_x() -> Vec<Expr> {
    let x5 = y(4);
    let x4 = y(5);
    let x3 = y(3) - &x5 * &x4;
    let x2 = y(2) + &x5 * &x5 * &x4;
    let x1 = y(1) - &x5 * &x5 * &x5 * &x4;
    let x0 = y(0) - &x1 * &x4 - &x5 * &x2 * &x4 * k(3) + &x5 * &x5 * &x5 * &x4 * &x4;
    vec![x0, x1, x2, x3, x4, x5]
}

#[derive(Debug, Clone, Serialize)]
pub struct CoordinateChangeReport {
    /// Per form `omega0..omega4, omega7`: the `y`-chart form pulls back to the `x`-chart form.
    pub forms: Vec<(String, bool)>,
    pub xi4_in_x_chart: bool,
    pub xi7_in_x_chart: bool,
    pub xi4_in_y_chart: bool,
    pub xi7_in_y_chart: bool,
    /// Both charts satisfy the six reduced structure equations.
    pub structure_equations: bool,
    pub round_trip: bool,
}

impl CoordinateChangeReport {
    pub fn passed(&self) -> bool {
        self.forms.iter().all(|(_, ok)| *ok)
            && self.xi4_in_x_chart
            && self.xi7_in_x_chart
            && self.xi4_in_y_chart
            && self.xi7_in_y_chart
            && self.structure_equations
            && self.round_trip
    }
}

const FORM_NAMES: [&str; 6] = ["omega0", "omega1", "omega2", "omega3", "omega4", "omega7"];

fn structure_equations_hold(w: &[Form]) -> Result<bool, Error> {
    let rhs = [
        w[1].wedge(&w[4]).sub(&w[2].wedge(&w[3]).scale(&k(3))),
        w[2].wedge(&w[5]).scale(&k(3)),
        w[3].wedge(&w[5]).scale(&k(2)),
        w[4].wedge(&w[5]),
        Form::zero(&w[0].chart, 2),
        Form::zero(&w[0].chart, 2),
    ];
    for (f, r) in w.iter().zip(&rhs) {
        if f.d()? != *r {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn coordinate_change_check() -> Result<CoordinateChangeReport, Error> {
    let xc = x_chart();
    let yc = y_chart();
    let wx = x_coframe();
    let wy = y_coframe();
    let fwd = x_to_y();
    let forms = wy
        .iter()
        .zip(&wx)
        .zip(FORM_NAMES)
        .map(|((fy, fx), name)| Ok((name.to_string(), fy.pullback(&xc, &fwd)? == *fx)))
        .collect::<Result<Vec<_>, Error>>()?;

    let fx = CoframeChart::new(wx.clone())?;
    let fy = CoframeChart::new(wy.clone())?;
    let s = x(5);
    let xi4_x = VectorField::new(
        &xc,
        vec![-(x(1) + &s * &x(2) * k(3)), -(&s * &s * &s), &s * &s, -s.clone(), k(1), Expr::zero()],
    );
    let xi7_y = VectorField::new(
        &yc,
        vec![
            -y(5) * y(2) * k(3),
            -y(4) * y(4) * y(5) * k(3),
            y(4) * y(5) * k(2),
            -y(5),
            k(-1),
            Expr::zero(),
        ],
    );

    let bwd = y_to_x();
    let x_syms: BTreeMap<Symbol, Expr> = (0..6).map(|i| (Symbol::x(i), bwd[i as usize].clone())).collect();
    let y_syms: BTreeMap<Symbol, Expr> = (0..6).map(|i| (Symbol::y(i), fwd[i as usize].clone())).collect();
    let mut round_trip = true;
    for i in 0..6u32 {
        round_trip &= fwd[i as usize].subs(&x_syms)? == y(i);
        round_trip &= bwd[i as usize].subs(&y_syms)? == x(i);
    }

    Ok(CoordinateChangeReport {
        forms,
        xi4_in_x_chart: fx.frame[4] == xi4_x,
        xi7_in_x_chart: fx.frame[5] == VectorField::coord(&xc, 5).scale(&k(-1)),
        xi4_in_y_chart: fy.frame[4] == VectorField::coord(&yc, 5),
        xi7_in_y_chart: fy.frame[5] == xi7_y,
        structure_equations: structure_equations_hold(&wx)? && structure_equations_hold(&wy)?,
        round_trip,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(s: &str) -> Expr {
        s.parse().unwrap()
    }

    #[test]
    fn y_at_zero_and_on_x4_zero() {
        let ys = y_of(&Expr::zero());
        assert_eq!(ys[0], e("x0 + x1*x4"));
        assert_eq!(ys[1], x(1));
        let ys = y_of(&e("x2*x3 + s"));
        let m: BTreeMap<_, _> = [(Symbol::x(4), Expr::zero())].into();
        for (i, v) in ys.iter().enumerate() {
            assert_eq!(v.subs(&m).unwrap(), x(i as u32));
        }
    }

    #[test]
    fn kerr_function_rejects_x() {
        assert!(KerrFunction::new(e("t - x1")).is_err());
        assert!(KerrFunction::new(e("t*y2 - s*y3")).is_ok());
    }

    #[test]
    fn constant_and_non_integrable_pairs() {
        let f = KerrFunction::new(e("t - c")).unwrap();
        assert!(verify_kerr_pair(&f, &e("c")).unwrap().passed());
        let f = KerrFunction::new(e("t")).unwrap();
        let r = verify_kerr_pair(&f, &x(4)).unwrap();
        assert!(!r.passed());
        assert!(!r.j_vanishes);
    }

    #[test]
    fn newton_on_constant_section() {
        let f = KerrFunction::new(e("t - 3/2")).unwrap();
        let s = solve_kerr_numeric(&f, &[0.3, 1.0, -2.0, 0.5, 0.7], 0.0, 1e-10).unwrap();
        assert_eq!(s.t, 1.5);
        assert!(s.iterations <= 1);
        assert_eq!(s.j_residual, 0.0);
    }

    #[test]
    fn hypersurface_without_transversality() {
        let h = Hypersurface::new(e("y1")).unwrap();
        let err = section_from_hypersurface(&h, &[[0.2, 0.0, 1.0, 0.5, 1.0]], 0.0, 1e-10).unwrap_err();
        assert!(matches!(err, Error::Transversality(_)));
        let err = section_from_hypersurface(&h, &[[0.0, 0.0, 1.0, 1.0, 1.0]], 1.0, 1e-12).unwrap_err();
        assert!(matches!(err, Error::Transversality(_)));
        // Away from x1 = 0 the same surface is transversal: x5 = cbrt(-x1/x4).
        let s = section_from_hypersurface(&h, &[[0.2, -8.0, 1.0, 0.5, 1.0]], 1.0, 1e-12).unwrap();
        assert!((s[0].solution.t - 2.0).abs() < 1e-10);
        // Newton from 1 lands on x5 = 0, which is not a root there.
        let err = section_from_hypersurface(&h, &[[1.0, 2.0, 0.0, 0.0, 1.0]], 1.0, 1e-12).unwrap_err();
        assert!(matches!(err, Error::StationaryPoint(_)));
        let h = Hypersurface::new(e("y2 + y0^2")).unwrap();
        assert!(Hypersurface::new(e("3")).is_err());
        assert!(matches!(
            section_from_hypersurface(&h, &[[1.0; 5]], 0.0, 1e-10),
            Ok(_) | Err(Error::Transversality(_) | Error::NoConvergence(_) | Error::StationaryPoint(_))
        ));
    }

    #[test]
    fn chart_change() {
        let r = coordinate_change_check().unwrap();
        assert!(r.passed(), "{r:?}");
    }
}
