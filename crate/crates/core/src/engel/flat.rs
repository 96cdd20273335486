//! Reduction of the structure equations of the flat model to the
//! Maurer-Cartan equations of the 9-dimensional parabolic algebra.

use std::collections::BTreeMap;

use serde::Serialize;
use symexpr::{Expr, Symbol};

use super::{adapted_coframe, bundle_chart, formula, invariants_closed_form, lifted_coframe};
use crate::forms::{indices_of, Form};
use crate::Error;

#[derive(Debug, Clone, Serialize)]
pub struct Residual {
    pub equation: String,
    pub vanishes: bool,
    /// First nonzero basis monomial of the residual, if any.
    pub offending: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FlatReductionReport {
    pub residuals: Vec<Residual>,
    /// Whether the `u3` term `4 s4^2 s5^6` taken without the factor `a`
    /// leaves `e5` unsolved.
    pub uncorrected_u3_breaks_e5: bool,
}

impl FlatReductionReport {
    pub fn passed(&self) -> bool {
        self.residuals.iter().all(|r| r.vanishes)
    }
}

const S1: &str = "-a*s5^3";
const S2: &str = "b*s5*delta/2 - a*s5^2*s7";
const S3: &str = "(-c*delta^2 + b*s5*s7*delta - a*s5^2*s7^2)/s5";
const U0: &str = "((4*a1 - 6*b*c - 3*Q)*delta^3 + 3*b^2*s5*s7*delta^2 - 3*(s3 + 2*a*s7^2*s5)*b*s5*delta \
                  + 2*a*s5^2*(-s4*s5 + 3*s3*s7 + 2*a*s5*s7^3))/(2*delta^6)";
const U1: &str = "-3*(2*c*s7*delta^2 - 2*b*s5*s7^2*delta + s4*s5^2 + 2*a*s5^2*s7^3)/(2*s5^2*delta^3)";
const U2: &str = "-s7^2*(c*delta^2 - b*s5*s7*delta + a*s5^2*s7^2)/(s5^3*delta^3)";
const U3_HEAD: &str = "(-8*c^3*delta^6 + 24*b*c^2*s5*s7*delta^5 - (21*b^2*c*s5^2*s7^2 + 36*a*c^2*s5^2*s7^2)*delta^4 \
                       + (6*b*c*s4*s5^3 + 5*b^3*s5^3*s7^3 + 60*a*b*c*s5^3*s7^3)*delta^3)/(4*s5^3*delta^9) \
                       - ((3*b^2*s4*s5^4*s7 + 24*a*c*s4*s5^4*s7 + 21*a*b^2*s5^4*s7^4 + 36*a^2*c*s5^4*s7^4)*delta^2 \
                       - (18*a*b*s4*s5^5*s7^2 + 24*a^2*b*s5^5*s7^5)*delta \
                       + 12*a^2*s4*s5^6*s7^3 + 8*a^3*s5^6*s7^6)/(4*s5^3*delta^9)";
const U3_TAIL: &str = "-(4*a*s4^2*s5^6)/(4*s5^3*delta^9)";
const U3_TAIL_UNCORRECTED: &str = "-(4*s4^2*s5^6)/(4*s5^3*delta^9)";

struct Env {
    vals: BTreeMap<String, Expr>,
}

impl Env {
    fn eval(&self, text: &str) -> Result<Expr, Error> {
        let pairs: Vec<(&str, &Expr)> = self.vals.iter().map(|(k, v)| (k.as_str(), v)).collect();
        formula(text, &pairs)
    }

    fn set(&mut self, name: &str, text: &str) -> Result<(), Error> {
        let v = self.eval(text)?;
        self.vals.insert(name.into(), v);
        Ok(())
    }
}

fn combo(terms: &[(Expr, &Form)]) -> Form {
    let mut it = terms.iter();
    let (c, f) = it.next().expect("nonempty");
    it.fold(f.scale(c), |acc, (c, f)| acc.add(&f.scale(c)))
}

/// Builds the nine-form coframe for marking `t` and checks the nine
/// Maurer-Cartan equations. The displayed solution is meant for structures
/// whose invariants all vanish, so only `t = 0` is expected to pass.
pub fn verify_flat_reduction_for(t: &Expr, corrected_u3: bool) -> Result<Vec<Residual>, Error> {
    let inv = invariants_closed_form(t)?;
    let cf = adapted_coframe(t)?;
    let chart = bundle_chart();
    let w = lifted_coframe(t, &chart);
    let mut env = Env { vals: BTreeMap::new() };
    for (k, v) in [("a", &inv.a), ("b", &inv.b), ("c", &inv.c), ("Q", &inv.q), ("R", &inv.r)] {
        env.vals.insert(k.into(), v.clone());
    }
    env.vals.insert("a1".into(), cf.derivatives(&inv.a)?[1].clone());
    env.set("s0", "-delta^3")?;
    env.set("s1", S1)?;
    env.set("s2", S2)?;
    env.set("s3", S3)?;
    env.set("s8", "-delta/s5")?;
    env.set("u0", U0)?;
    env.set("u1", U1)?;
    env.set("u2", U2)?;
    let tail = if corrected_u3 { U3_TAIL } else { U3_TAIL_UNCORRECTED };
    env.set("u3", &format!("{U3_HEAD} {tail}"))?;

    // theta^mu = S^mu_nu omega^nu for the structure group matrix S.
    let srows: [&[&str]; 5] = [
        &["s0"],
        &["s1", "s5^3"],
        &["s2", "s5^2*s7", "s5^2*s8"],
        &["s3", "s5*s7^2", "2*s7*s5*s8", "s5*s8^2"],
        &["s4", "s7^3", "3*s7^2*s8", "3*s7*s8^2", "s8^3"],
    ];
    let mut th: BTreeMap<usize, Form> = BTreeMap::new();
    for (mu, row) in srows.iter().enumerate() {
        let terms: Vec<(Expr, &Form)> = row.iter().enumerate().map(|(nu, e)| Ok((env.eval(e)?, &w[nu]))).collect::<Result<_, Error>>()?;
        th.insert(mu, combo(&terms));
    }
    let dv = |s: Symbol| Form::d_coord(&chart, s);
    let (dd, ds4, ds5, ds7) = (dv(Symbol::delta()), dv(Symbol::s(4)), dv(Symbol::s(5)), dv(Symbol::s(7)));

    let th5 = combo(&[
        (env.eval("1/(2*delta)")?, &dd),
        (env.eval("s4/(6*delta^3)")?, &th[&1]),
        (env.eval("-s3/(2*delta^3)")?, &th[&2]),
        (env.eval("s2/(2*delta^3)")?, &th[&3]),
        (env.eval("-s1/(6*delta^3)")?, &th[&4]),
        (env.eval("-u0/6")?, &th[&0]),
    ]);
    let th8 = combo(&[
        (env.eval("-1/(2*delta)")?, &dd),
        (env.eval("1/s5")?, &ds5),
        (
            env.eval(
                "-(-6*c*s2*delta^2 + 2*a1*s5*delta^3 + 2*a*s4*s5^4 - 6*a*c*s5^2*s7*delta^2 - 6*a*s3*s5^3*s7 \
                 + 6*a*s2*s5^2*s7^2 + 2*a^2*s5^4*s7^3 - s5*u0*delta^6)/(6*s5*delta^6)",
            )?,
            &th[&0],
        ),
        (env.eval("(2*c*delta^2 + s3*s5 - 2*a*s5^2*s7^2)/(2*s5*delta^3)")?, &th[&2]),
        (env.eval("-(s2 - 2*a*s5^2*s7)/(2*delta^3)")?, &th[&3]),
        (env.eval("-a*s5^3/(2*delta^3)")?, &th[&4]),
        (env.eval("-u1/3")?, &th[&1]),
    ]);
    let th6 = combo(&[
        (env.eval("s7/(s5*delta)")?, &dd),
        (env.eval("-s7/s5^2")?, &ds5),
        (env.eval("-1/s5")?, &ds7),
        (
            env.eval(
                "-(2*(2*c^2 + R)*delta^4 - 2*(4*b*c + Q)*s5*s7*delta^3 + (8*c*s3 + 5*b^2*s5*s7^2 + 8*a*c*s5*s7^2)*s5*delta^2 \
                 + 2*(s4*s5 - 4*s3*s7 - 6*a*s5*s7^3)*b*s5^2*delta - 4*(s4*s5 - 3*s3*s7 - 2*a*s5*s7^3)*a*s5^3*s7)/(4*s5^2*delta^6)",
            )?,
            &th[&0],
        ),
        (
            env.eval("(2*s5^2*u1*delta^3 + 6*c*s7*delta^2 - 12*b*s5*s7^2*delta - 3*s4*s5^2 + 18*a*s5^2*s7^3)/(6*s5^2*delta^3)")?,
            &th[&2],
        ),
        (env.eval("-(2*c*delta^2 - 2*b*s5*s7*delta + 3*a*s5^2*s7^2)/(s5*delta^3)")?, &th[&3]),
        (env.eval("-s5*(b*delta - 2*a*s5*s7)/(2*delta^3)")?, &th[&4]),
        (env.eval("u2")?, &th[&1]),
    ]);
    let th12 = combo(&[
        (env.eval("-(c*s7*delta^2 - b*s5*s7^2*delta + s4*s5^2 + a*s5^2*s7^3)/(2*s5^2*delta^4)")?, &dd),
        (env.eval("1/(6*delta^3)")?, &ds4),
        (env.eval("(c*s7*delta^2 - b*s5*s7^2*delta + s4*s5^2 + a*s5^2*s7^3)/(2*s5^3*delta^3)")?, &ds5),
        (env.eval("(c*delta^2 - b*s5*s7*delta + a*s5^2*s7^2)/(2*s5^2*delta^3)")?, &ds7),
        (
            env.eval(
                "(3*c^2*s7^2*delta^4 - 6*b*c*s5*s7^3*delta^3 + 3*(c*s4*s5^2*s7 + b^2*s5^2*s7^4 + 2*a*c*s5^2*s7^4)*delta^2 \
                 - 3*(b*s4*s5^3*s7^2 + 2*a*b*s5^3*s7^5)*delta + s4^2*s5^4 + 3*a*s4*s5^4*s7^3 + 3*a^2*s5^4*s7^6)/(6*s5^4*delta^6)",
            )?,
            &th[&1],
        ),
        (
            env.eval(
                "(b*c*s7^2*delta^3 + (c*s4*s5 - b^2*s5*s7^3 - 2*a*c*s5*s7^3)*delta^2 + 3*a*b*s5^2*s7^4*delta \
                 - a*s4*s5^3*s7^2 - 2*a^2*s5^3*s7^5)/(2*s5^2*delta^6)",
            )?,
            &th[&2],
        ),
        (
            env.eval(
                "(c^2*delta^4 - 2*b*c*s5*s7*delta^3 + (b^2*s5^2*s7^2 + 3*a*c*s5^2*s7^2)*delta^2 - 3*a*b*s5^3*s7^3*delta \
                 + a*s4*s5^4*s7 + 2*a^2*s5^4*s7^4)/(2*s5^2*delta^6)",
            )?,
            &th[&3],
        ),
        (
            env.eval(
                "(4*a1*delta^3 - (3*b^2*s5*s7 + 12*a*c*s5*s7)*delta^2 + 12*a*b*s5^2*s7^2*delta - 4*a*s4*s5^3 \
                 - 8*a^2*s5^3*s7^3)/(24*delta^6)",
            )?,
            &th[&4],
        ),
        (env.eval("u3/6")?, &th[&0]),
    ]);
    th.insert(5, th5);
    th.insert(6, th6);
    th.insert(8, th8);
    th.insert(12, th12);

    let wg = |i: usize, j: usize| th[&i].wedge(&th[&j]);
    let k = |n: i64| Expr::int(n);
    let rhs: Vec<(usize, Form)> = vec![
        (0, wg(0, 5).scale(&k(-6)).add(&wg(1, 4)).sub(&wg(2, 3).scale(&k(3)))),
        (1, wg(1, 5).scale(&k(-3)).sub(&wg(1, 8).scale(&k(3)))),
        (2, wg(1, 6).sub(&wg(2, 5).scale(&k(3))).sub(&wg(2, 8))),
        (3, wg(2, 6).scale(&k(2)).sub(&wg(3, 5).scale(&k(3))).add(&wg(3, 8))),
        (
            4,
            wg(0, 12).scale(&k(6)).add(&wg(3, 6).scale(&k(3))).sub(&wg(4, 5).scale(&k(3))).add(&wg(4, 8).scale(&k(3))),
        ),
        (5, wg(1, 12).neg()),
        (6, wg(2, 12).scale(&k(6)).add(&wg(6, 8).scale(&k(2)))),
        (8, wg(1, 12).scale(&k(-3))),
        (12, wg(5, 12).scale(&k(-3)).sub(&wg(8, 12).scale(&k(3)))),
    ];
    rhs.into_iter()
        .map(|(idx, r)| {
            let res = th[&idx].d()?.sub(&r);
            let offending = res.ext.terms.iter().next().map(|(m, c)| {
                let mono: Vec<String> = indices_of(*m).iter().map(|&i| format!("d{}", chart.coords[i])).collect();
                format!("({c})*{}", mono.join("^"))
            });
            Ok(Residual { equation: format!("e{idx}"), vanishes: res.is_zero(), offending })
        })
        .collect()
}

pub fn verify_flat_reduction() -> Result<FlatReductionReport, Error> {
    let t = Expr::zero();
    let residuals = verify_flat_reduction_for(&t, true)?;
    let raw = verify_flat_reduction_for(&t, false)?;
    let e5 = raw.iter().find(|r| r.equation == "e5").map(|r| !r.vanishes).unwrap_or(false);
    Ok(FlatReductionReport { residuals, uncorrected_u3_breaks_e5: e5 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_nine_equations_vanish() {
        let r = verify_flat_reduction().unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.residuals.len(), 9);
        assert!(r.uncorrected_u3_breaks_e5);
    }
}
