//! Marked contact Engel structures given by a marking function `t(x0..x4)`.

mod classify;
mod flat;
mod geometry;
mod invariants;
mod tautological;

use std::sync::Arc;

use symexpr::{Expr, Symbol, VarKind};

use crate::forms::{Chart, CoframeChart, Form, VectorField};
use crate::Error;

pub use classify::{classify, classify_at, Branch, BranchLabel, Vanishing};
pub use flat::{verify_flat_reduction, FlatReductionReport};
pub use geometry::{geometric_checks, weyl_acceleration, GeometryReport};
pub use invariants::{
    invariants_closed_form, invariants_from_structure_equations, j_coordinate, j_coordinate_jet, mixed_order_differences,
    InvariantJet,
};
pub use tautological::{tautological_forms, TautologicalReport};

/// The coordinate chart `x0..x4`.
pub fn base_chart() -> Arc<Chart> {
    Chart::new("x", (0..5).map(Symbol::x).collect())
}

/// A marking function: an expression in `x0..x4` and free parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct MarkedStructure {
    pub t: Expr,
}

impl MarkedStructure {
    pub fn new(t: Expr) -> Result<Self, Error> {
        for s in t.symbols() {
            let ok = match s.kind() {
                VarKind::Coordinate => s.x_index().map(|i| i < 5).unwrap_or(false),
                VarKind::FreeParameter => true,
                _ => false,
            };
            if !ok {
                return Err(Error::Precondition(format!("marking function may only use x0..x4 and free parameters, found {s}")));
            }
        }
        Ok(MarkedStructure { t })
    }
}

/// The adapted coframe built from `t` and its dual frame.
#[derive(Debug, Clone)]
pub struct AdaptedCoframe {
    pub t: Expr,
    pub coframe: CoframeChart,
}

/// Coefficient rows of the adapted coframe in `dx0..dx4`.
pub fn coframe_rows(t: &Expr) -> Vec<Vec<Expr>> {
    let z = Expr::zero;
    let o = Expr::one;
    let x = |i| Expr::sym(Symbol::x(i));
    let t2 = t * t;
    let t3 = &t2 * t;
    vec![
        vec![o(), z(), z(), x(2) * Expr::int(-3), x(1)],
        vec![z(), o(), t * &Expr::int(3), &t2 * &Expr::int(3), t3],
        vec![z(), z(), o(), t * &Expr::int(2), t2],
        vec![z(), z(), z(), o(), t.clone()],
        vec![z(), z(), z(), z(), o()],
    ]
}

impl AdaptedCoframe {
    pub fn new(t: &Expr) -> Result<Self, Error> {
        let ms = MarkedStructure::new(t.clone())?;
        let chart = base_chart();
        let forms = coframe_rows(&ms.t).iter().map(|r| Form::one_form(&chart, r)).collect();
        Ok(AdaptedCoframe { t: ms.t, coframe: CoframeChart::new(forms)? })
    }

    pub fn omega(&self, i: usize) -> &Form {
        &self.coframe.forms[i]
    }

    pub fn xi(&self, i: usize) -> &VectorField {
        &self.coframe.frame[i]
    }

    pub fn chart(&self) -> &Arc<Chart> {
        &self.coframe.chart
    }

    /// Frame derivatives `f_{w0}, .., f_{w4}`.
    pub fn derivatives(&self, f: &Expr) -> Result<Vec<Expr>, Error> {
        self.coframe.derivatives(f)
    }
}

pub fn adapted_coframe(t: &Expr) -> Result<AdaptedCoframe, Error> {
    AdaptedCoframe::new(t)
}

/// Seeded random polynomial marking functions of degree at most two with
/// small integer coefficients.
pub fn random_markings(seed: u64, count: usize) -> Vec<Expr> {
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let x = |i| Expr::sym(Symbol::x(i));
    let mut monos = vec![Expr::one()];
    monos.extend((0..5).map(x));
    for i in 0..5 {
        for j in i..5 {
            monos.push(x(i) * x(j));
        }
    }
    (0..count)
        .map(|_| {
            let k = rng.gen_range(2..=5);
            monos
                .choose_multiple(&mut rng, k)
                .map(|m| {
                    let mut c = 0;
                    while c == 0 {
                        c = rng.gen_range(-2..=2);
                    }
                    m * &Expr::int(c)
                })
                .sum()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg;

    #[test]
    fn flat_coframe_and_unit_determinant() {
        let c = adapted_coframe(&Expr::zero()).unwrap();
        assert_eq!(c.omega(0).to_string(), "(1)*dx0 + (-3*x2)*dx3 + (x1)*dx4");
        let t: Expr = "x0*x1 - x3^2".parse().unwrap();
        let c = adapted_coframe(&t).unwrap();
        assert!(linalg::determinant(&c.coframe.matrix).is_one());
    }

    #[test]
    fn line_field_is_dual_to_last_form() {
        let t: Expr = "x2 + x4*x0".parse().unwrap();
        let c = adapted_coframe(&t).unwrap();
        for i in 0..4 {
            assert!(c.omega(i).eval_on(&[c.xi(4)]).is_zero());
        }
        assert!(c.omega(4).eval_on(&[c.xi(4)]).is_one());
    }

    #[test]
    fn rejects_jets_in_marking() {
        assert!(MarkedStructure::new("t_x1".parse().unwrap()).is_err());
        assert!(MarkedStructure::new("y1".parse().unwrap()).is_err());
        assert!(MarkedStructure::new("s*x1".parse().unwrap()).is_ok());
    }

    #[test]
    fn random_markings_are_reproducible() {
        assert_eq!(random_markings(3, 5), random_markings(3, 5));
        assert_ne!(random_markings(3, 5), random_markings(4, 5));
    }
}

/// Parses a displayed formula and substitutes values for its named parameters.
pub(crate) fn formula(text: &str, values: &[(&str, &Expr)]) -> Result<Expr, Error> {
    let e: Expr = text.parse()?;
    let map = values
        .iter()
        .map(|(name, v)| Ok((Symbol::from_name(name)?, (*v).clone())))
        .collect::<Result<std::collections::BTreeMap<_, _>, Error>>()?;
    Ok(e.subs(&map)?)
}

/// The 9-dimensional chart `x0..x4, s4, s5, s7, delta` on the reduced bundle.
pub fn bundle_chart() -> Arc<Chart> {
    let mut coords: Vec<Symbol> = (0..5).map(Symbol::x).collect();
    coords.extend([Symbol::s(4), Symbol::s(5), Symbol::s(7), Symbol::delta()]);
    Chart::new("bundle", coords)
}

/// The adapted coframe pulled back to the bundle chart.
pub(crate) fn lifted_coframe(t: &Expr, chart: &Arc<Chart>) -> Vec<Form> {
    coframe_rows(t)
        .into_iter()
        .map(|mut r| {
            r.resize(chart.dim(), Expr::zero());
            Form::one_form(chart, &r)
        })
        .collect()
}
