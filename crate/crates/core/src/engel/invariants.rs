use std::collections::BTreeMap;

use serde::Serialize;
use symexpr::{Expr, Symbol};

use super::AdaptedCoframe;
use crate::forms::Ext;
use crate::Error;

/// The relative invariants together with the first frame derivatives of
/// `a, b, c, J` that appear in their structure equations.
#[derive(Debug, Clone, PartialEq)]
pub struct InvariantJet {
    pub a: Expr,
    pub b: Expr,
    pub c: Expr,
    pub j: Expr,
    pub l: Expr,
    pub m: Expr,
    pub p: Expr,
    pub q: Expr,
    pub r: Expr,
    pub s: Expr,
    pub a_w: Vec<Expr>,
    pub b_w: Vec<Expr>,
    pub c_w: Vec<Expr>,
    pub j_w: Vec<Expr>,
}

pub const NAMES: [&str; 10] = ["a", "b", "c", "J", "L", "M", "P", "Q", "R", "S"];

impl InvariantJet {
    pub fn values(&self) -> [&Expr; 10] {
        [&self.a, &self.b, &self.c, &self.j, &self.l, &self.m, &self.p, &self.q, &self.r, &self.s]
    }

    pub fn named(&self) -> Vec<(&'static str, &Expr)> {
        NAMES.iter().copied().zip(self.values()).collect()
    }

    /// Printed form, for reports.
    pub fn table(&self) -> Vec<InvariantEntry> {
        self.named().into_iter().map(|(n, v)| InvariantEntry { name: n.into(), value: v.to_string() }).collect()
    }

    /// Names of fields on which `self` and `other` differ.
    pub fn differences(&self, other: &InvariantJet) -> Vec<&'static str> {
        let mut out: Vec<&'static str> =
            self.named().into_iter().zip(other.values()).filter(|((_, a), b)| a != b).map(|((n, _), _)| n).collect();
        for (name, x, y) in [
            ("a_w", &self.a_w, &other.a_w),
            ("b_w", &self.b_w, &other.b_w),
            ("c_w", &self.c_w, &other.c_w),
            ("J_w", &self.j_w, &other.j_w),
        ] {
            if x != y {
                out.push(name);
            }
        }
        out
    }
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct InvariantEntry {
    pub name: String,
    pub value: String,
}

fn sq(e: &Expr) -> Expr {
    e * e
}

fn k(n: i64) -> Expr {
    Expr::int(n)
}

fn jet_from(cf: &AdaptedCoframe, a: Expr, b: Expr, c: Expr, j: Expr, rest: [Expr; 6]) -> Result<InvariantJet, Error> {
    let [l, m, p, q, r, s] = rest;
    Ok(InvariantJet {
        a_w: cf.derivatives(&a)?,
        b_w: cf.derivatives(&b)?,
        c_w: cf.derivatives(&c)?,
        j_w: cf.derivatives(&j)?,
        a,
        b,
        c,
        j,
        l,
        m,
        p,
        q,
        r,
        s,
    })
}

/// Invariants from first and second frame derivatives of `t`, where
/// `t_{wi wj}` means `xi_j(xi_i(t))`.
pub fn invariants_closed_form(t: &Expr) -> Result<InvariantJet, Error> {
    let cf = AdaptedCoframe::new(t)?;
    let tw = cf.derivatives(&cf.t)?;
    let tww = |i: usize, j: usize| cf.xi(j).apply(&tw[i]);
    let a = tw[3].clone();
    let b = -tw[2].clone();
    let c = tw[1].clone();
    let j = -tw[4].clone();
    let l = tww(3, 3)?;
    let t23 = tww(2, 3)?;
    let m = &tw[0] * &k(6) - sq(&tw[2]) * k(2) + &tw[3] * &tw[1] * k(6) + &t23;
    let p = &tw[0] * &k(2) - sq(&tw[2]) + &tw[3] * &tw[1] * k(2) + &t23;
    let q = tww(3, 1)? * k(2) + tww(2, 2)? + &tw[2] * &tw[1] * k(3);
    let r = -tww(2, 1)? - sq(&tw[1]) * k(2);
    let s = tww(1, 1)?;
    jet_from(&cf, a, b, c, j, [l, m, p, q, r, s])
}

fn expect(label: &str, got: &Expr, want: &Expr) -> Result<(), Error> {
    if got == want {
        Ok(())
    } else {
        Err(Error::Mismatch(format!("{label}: expected {want}, got {got}")))
    }
}

/// Checks that a coframe expansion consists of exactly the listed terms.
fn expect_shape(label: &str, e: &Ext, terms: &[(&[usize], Expr)]) -> Result<(), Error> {
    let mut want = Ext::zero(e.degree);
    for (idx, c) in terms {
        let mut one = Ext::scalar(c.clone());
        for &i in idx.iter() {
            one = one.wedge(&Ext::basis(i));
        }
        want = want.add(&one);
    }
    if want.sub(e).is_zero() {
        Ok(())
    } else {
        Err(Error::Mismatch(format!("{label} has unexpected terms: {}", want.sub(e).render("w"))))
    }
}

/// Invariants read off from the structure equations of the coframe and the
/// differentials of `a, b, c`.
pub fn invariants_from_structure_equations(t: &Expr) -> Result<InvariantJet, Error> {
    let cf = AdaptedCoframe::new(t)?;
    let dw: Vec<Ext> = (0..5).map(|i| Ok(cf.coframe.expand(&cf.omega(i).d()?))).collect::<Result<_, Error>>()?;
    let a = dw[3].coeff(&[3, 4]);
    let c = dw[3].coeff(&[1, 4]);
    let b = -dw[3].coeff(&[2, 4]);
    let kk = dw[3].coeff(&[0, 4]) * k(4);
    let j = dw[1].coeff(&[2, 4]) / k(3);

    expect_shape("dw0", &dw[0], &[(&[1, 4], k(1)), (&[2, 3], k(-3))])?;
    expect_shape(
        "dw1",
        &dw[1],
        &[(&[0, 2], &kk * &Expr::rational(3, 4)), (&[1, 2], &c * &k(3)), (&[2, 3], &a * &k(-3)), (&[2, 4], &j * &k(3))],
    )?;
    expect_shape(
        "dw2",
        &dw[2],
        &[(&[0, 3], &kk / &k(2)), (&[1, 3], &c * &k(2)), (&[2, 3], &b * &k(-2)), (&[3, 4], &j * &k(2))],
    )?;
    expect_shape(
        "dw3",
        &dw[3],
        &[(&[0, 4], &kk / &k(4)), (&[1, 4], c.clone()), (&[2, 4], -b.clone()), (&[3, 4], a.clone())],
    )?;
    expect_shape("dw4", &dw[4], &[])?;

    let da = cf.derivatives(&a)?;
    let db = cf.derivatives(&b)?;
    let dc = cf.derivatives(&c)?;
    let dj = cf.derivatives(&j)?;
    let l = da[3].clone();
    let m_plus_3p = &da[2] * &k(4) + sq(&b) * k(3);
    let m_minus_p = &kk - &sq(&b) + &a * &c * k(4);
    let p = (&m_plus_3p - &m_minus_p) / k(4);
    let m = &m_minus_p + &p;
    let a1 = da[1].clone();
    let q = &a1 * &k(2) - &b * &c * k(3) - &db[2];
    let r = &db[1] - &sq(&c) * &k(2);
    let s = dc[1].clone();

    expect("da[w4]", &da[4], &(sq(&a) - &b * &j * k(2) - &dj[3]))?;
    expect("db[w3]", &db[3], &((-sq(&b) + &m - &p * &k(3)) / k(2)))?;
    expect("db[w4]", &db[4], &(&a * &b - &c * &j * k(3) + &dj[2]))?;
    expect("dc[w2]", &dc[2], &(sq(&c) - &r))?;
    expect("dc[w3]", &dc[3], &(&a1 - &b * &c * k(2)))?;
    expect("dc[w4]", &dc[4], &((sq(&b) - &dj[1] * &k(4) + &m - &p) / k(4)))?;
    let dm = cf.derivatives(&m)?;
    let dp = cf.derivatives(&p)?;
    let db0 = (-(&a1 * &b * k(4)) + sq(&b) * &c * k(6) - &a * &sq(&c) * k(8) + &c * &m * k(4) - &dm[2] + &dp[2]
        + &b * &q * k(2)
        - &a * &r * k(4))
        / k(4);
    expect("db[w0]", &db[0], &db0)?;

    jet_from(&cf, a, b, c, j, [l, m, p, q, r, s])
}

/// `J` as a polynomial in the jet symbols `t, t_x0, .., t_x4`.
pub fn j_coordinate_jet() -> Expr {
    let t = Expr::sym(Symbol::t());
    let tx = |i| Expr::sym(Symbol::t1(i));
    let x = |i| Expr::sym(Symbol::x(i));
    (x(1) + &t * &x(2) * k(3)) * tx(0) + &t * &t * &t * tx(1) - &t * &t * tx(2) + &t * &tx(3) - tx(4)
}

/// The coordinate expression of `J` with `t` and its first partials substituted.
pub fn j_coordinate(t: &Expr) -> Result<Expr, Error> {
    let mut map = BTreeMap::new();
    map.insert(Symbol::t(), t.clone());
    for i in 0..5u8 {
        map.insert(Symbol::t1(i), t.diff(Symbol::x(i as u32))?);
    }
    Ok(j_coordinate_jet().subs(&map)?)
}

/// Differences `t_{wi wj} - t_{wj wi}` for `i < j`; frame derivatives do not
/// commute in general.
pub fn mixed_order_differences(t: &Expr) -> Result<Vec<((usize, usize), Expr)>, Error> {
    let cf = AdaptedCoframe::new(t)?;
    let tw = cf.derivatives(&cf.t)?;
    let mut out = Vec::new();
    for i in 0..5 {
        for j in i + 1..5 {
            let d = cf.xi(j).apply(&tw[i])? - cf.xi(i).apply(&tw[j])?;
            out.push(((i, j), d));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Expr {
        s.parse().unwrap()
    }

    #[test]
    fn flat_invariants_vanish() {
        let inv = invariants_closed_form(&Expr::zero()).unwrap();
        assert!(inv.values().iter().all(|v| v.is_zero()));
    }

    #[test]
    fn j_for_coordinate_markings() {
        assert_eq!(j_coordinate(&p("x3")).unwrap(), p("x3"));
        assert_eq!(j_coordinate(&p("x4")).unwrap(), p("-1"));
        assert_eq!(invariants_closed_form(&p("x4")).unwrap().j, p("-1"));
    }

    #[test]
    fn two_routes_agree_on_a_quadratic() {
        let t = p("x0*x2 + x1^2 - x2*x4 + x3");
        let a = invariants_closed_form(&t).unwrap();
        let b = invariants_from_structure_equations(&t).unwrap();
        assert!(a.differences(&b).is_empty(), "{:?}", a.differences(&b));
    }

    #[test]
    fn m_minus_p_identity() {
        let t = p("x1*x3 - x1*x4 - x2*x3 + 2");
        let inv = invariants_closed_form(&t).unwrap();
        let cf = AdaptedCoframe::new(&t).unwrap();
        let tw = cf.derivatives(&t).unwrap();
        let want = &tw[0] * &k(4) - sq(&tw[2]) + &tw[1] * &tw[3] * k(4);
        assert_eq!(&inv.m - &inv.p, want);
    }

    #[test]
    fn mixed_frame_derivatives_do_not_commute() {
        let d = mixed_order_differences(&p("x2")).unwrap();
        assert!(d.iter().any(|(_, e)| !e.is_zero()));
    }
}
