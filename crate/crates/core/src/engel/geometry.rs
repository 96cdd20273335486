use serde::Serialize;
use symexpr::Expr;

use super::{adapted_coframe, invariants_closed_form, AdaptedCoframe};
use crate::forms::{self, Form, VectorField};
use crate::linalg;
use crate::Error;

/// Outcome of the filtration and distribution checks for one marking.
#[derive(Debug, Clone, Serialize)]
pub struct GeometryReport {
    pub j_vanishes: bool,
    pub d_integrable: bool,
    pub d_growth: Vec<usize>,
    pub h_derived_rank: usize,
    pub volume_identity: bool,
    pub weyl_identity: bool,
    /// Present when `J` vanishes: `[xi3, [xi3, xi2]]` lies in the derived `H`.
    pub l_test: Option<LTest>,
    /// Present when `J` and `L` vanish.
    pub m_test: Option<MTest>,
    /// Present when `J` vanishes: the rank-2 kernel of the 3-form built from `a, b, c`.
    pub r_test: Option<RTest>,
    pub ell_type: Option<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct LTest {
    pub bracket_in_derived: bool,
    pub l_vanishes: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct MTest {
    pub derived_integrable: bool,
    pub m_vanishes: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct RTest {
    pub kernel_rank: usize,
    pub integrable: bool,
    pub m_minus_p_vanishes: bool,
}

impl GeometryReport {
    /// Every equivalence that applies to this marking holds.
    pub fn consistent(&self) -> bool {
        let growth_ok = if self.j_vanishes { self.d_growth == vec![2, 2, 2] } else { self.d_growth == vec![2, 3, 5] };
        let h_ok = if self.j_vanishes { self.h_derived_rank == 4 } else { self.h_derived_rank == 5 };
        let type_ok = match self.ell_type {
            Some(k) => (k == 2) == self.j_vanishes,
            None => true,
        };
        self.d_integrable == self.j_vanishes
            && growth_ok
            && h_ok
            && self.volume_identity
            && self.weyl_identity
            && type_ok
            && self.l_test.as_ref().map(|l| l.bracket_in_derived == l.l_vanishes).unwrap_or(true)
            && self.m_test.as_ref().map(|m| m.derived_integrable == m.m_vanishes).unwrap_or(true)
            && self.r_test.as_ref().map(|r| r.kernel_rank == 2 && r.integrable == r.m_minus_p_vanishes).unwrap_or(true)
    }
}

fn in_span(span: &[VectorField], v: &VectorField) -> bool {
    let r = forms::generic_rank(span);
    let mut all = span.to_vec();
    all.push(v.clone());
    forms::generic_rank(&all) == r
}

fn closed_under_brackets(span: &[VectorField]) -> Result<bool, Error> {
    for (i, x) in span.iter().enumerate() {
        for y in &span[i + 1..] {
            if !in_span(span, &x.bracket(y)?) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `nabla_{xi4} xi4` for the connection that parallelizes the flat coframe
/// along the contact distribution.
pub fn weyl_acceleration(cf: &AdaptedCoframe) -> Result<VectorField, Error> {
    let flat = adapted_coframe(&Expr::zero())?;
    let x4 = cf.xi(4);
    let mut acc = VectorField::zero(cf.chart());
    for i in 0..5 {
        let comp = flat.omega(i).eval_on(&[x4]);
        let d = x4.apply(&comp)?;
        acc = acc.add(&flat.xi(i).scale(&d));
    }
    Ok(acc)
}

/// Kernel of a 3-form, as vector fields.
fn kernel_of(phi: &Form) -> Vec<VectorField> {
    let chart = phi.chart.clone();
    let n = chart.dim();
    // Rows: coefficients of each basis 2-form in i_v phi, columns: components of v.
    let cols: Vec<Form> = (0..n).map(|k| phi.interior(&VectorField::coord(&chart, k))).collect();
    let mut masks: Vec<u32> = cols.iter().flat_map(|f| f.ext.terms.keys().copied()).collect();
    masks.sort_unstable();
    masks.dedup();
    let m: linalg::Matrix<Expr> = masks
        .iter()
        .map(|mask| cols.iter().map(|f| f.ext.terms.get(mask).cloned().unwrap_or_else(Expr::zero)).collect())
        .collect();
    linalg::nullspace(&m, n).into_iter().map(|v| VectorField::new(&chart, v)).collect()
}

pub fn geometric_checks(t: &Expr) -> Result<GeometryReport, Error> {
    let cf = adapted_coframe(t)?;
    let inv = invariants_closed_form(t)?;
    let j_vanishes = inv.j.is_zero();
    let xi = |i: usize| cf.xi(i).clone();

    let d = vec![xi(3), xi(4)];
    let d_integrable = closed_under_brackets(&d)?;
    let d_growth = forms::distribution_growth(&d, 3)?;

    let h = vec![xi(2), xi(3), xi(4)];
    let mut h_derived = h.clone();
    for (i, x) in h.iter().enumerate() {
        for y in &h[i + 1..] {
            h_derived.push(x.bracket(y)?);
        }
    }
    let h_derived_rank = forms::generic_rank(&h_derived);

    let w = |i: usize| cf.omega(i).clone();
    let lhs = Form::wedge_all(&[&w(2).d()?, &w(0), &w(1), &w(2)]);
    let vol = Form::wedge_all(&[&w(0), &w(1), &w(2), &w(3), &w(4)]);
    let volume_identity = lhs == vol.scale(&(&inv.j * &Expr::int(2)));

    let weyl_identity = weyl_acceleration(&cf)? == xi(3).scale(&inv.j);

    let ell_type = Some(forms::type_of(&xi(4), &w(0))?);

    let basis = forms::generic_basis(&h_derived);

    let (l_test, m_test, r_test) = if j_vanishes {
        let b32 = xi(3).bracket(&xi(2))?;
        let l_test = LTest { bracket_in_derived: in_span(&basis, &xi(3).bracket(&b32)?), l_vanishes: inv.l.is_zero() };
        let m_test = if inv.l.is_zero() {
            Some(MTest { derived_integrable: closed_under_brackets(&basis)?, m_vanishes: inv.m.is_zero() })
        } else {
            None
        };
        let half = Expr::rational(1, 2);
        let phi = Form::wedge_all(&[&w(1), &w(2), &w(3)])
            .sub(&Form::wedge_all(&[&w(0), &w(2), &w(3)]).scale(&inv.a))
            .add(&Form::wedge_all(&[&w(0), &w(1), &w(3)]).scale(&(&inv.b * &half)))
            .sub(&Form::wedge_all(&[&w(0), &w(1), &w(2)]).scale(&inv.c));
        let ker = kernel_of(&phi);
        let r_test = RTest {
            kernel_rank: ker.len(),
            integrable: closed_under_brackets(&ker)?,
            m_minus_p_vanishes: (&inv.m - &inv.p).is_zero(),
        };
        (Some(l_test), m_test, Some(r_test))
    } else {
        (None, None, None)
    };

    Ok(GeometryReport {
        j_vanishes,
        d_integrable,
        d_growth,
        h_derived_rank,
        volume_identity,
        weyl_identity,
        l_test,
        m_test,
        r_test,
        ell_type,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nonintegrable_marking() {
        let r = geometric_checks(&"x4".parse().unwrap()).unwrap();
        assert!(!r.d_integrable);
        assert_eq!(r.d_growth, vec![2, 3, 5]);
        assert_eq!(r.h_derived_rank, 5);
        assert_ne!(r.ell_type, Some(2));
        assert!(r.consistent(), "{r:?}");
    }

    #[test]
    fn flat_marking() {
        let r = geometric_checks(&Expr::zero()).unwrap();
        assert!(r.d_integrable);
        assert_eq!(r.d_growth, vec![2, 2, 2]);
        assert_eq!(r.ell_type, Some(2));
        assert!(r.r_test.as_ref().unwrap().integrable);
        assert!(r.consistent(), "{r:?}");
    }
}
