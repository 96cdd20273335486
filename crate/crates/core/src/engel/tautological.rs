use serde::Serialize;
use symexpr::{Expr, Symbol};

use super::{bundle_chart, formula, invariants_closed_form, lifted_coframe};
use crate::forms::{CoframeChart, Form};
use crate::Error;

#[derive(Debug, Clone, Serialize)]
pub struct TautologicalReport {
    /// `d theta0 ^ theta0 = (theta1 ^ theta4 - 3 theta2 ^ theta3) ^ theta0`.
    pub contact_equation: bool,
    /// `d theta1 ^ theta0 ^ theta1 = (3 J s5^5 / delta^4) theta2 ^ theta4 ^ theta0 ^ theta1`.
    pub t124: bool,
    /// `d theta2 ^ theta0 ^ theta1 ^ theta2 = (2 J s5^5 / delta^4) theta3 ^ theta4 ^ theta0 ^ theta1 ^ theta2`.
    pub t234: bool,
    /// The `theta0 ^ theta6` coefficient of `d theta1` is `-T124`.
    pub t106: bool,
    /// The closed formula for `T102` in terms of `J, L, M` and frame derivatives of `J`.
    pub t102: bool,
    /// Normalization of `s3`: the `theta1 ^ theta4` coefficient of `d theta3` vanishes.
    pub s3_normalization: bool,
}

impl TautologicalReport {
    pub fn passed(&self) -> bool {
        self.contact_equation && self.t124 && self.t234 && self.t106 && self.t102 && self.s3_normalization
    }
}

/// The five tautological forms on the reduced bundle.
pub fn theta_forms(t: &Expr) -> Result<Vec<Form>, Error> {
    let inv = invariants_closed_form(t)?;
    let chart = bundle_chart();
    let w = lifted_coframe(t, &chart);
    let vals: [(&str, &Expr); 4] = [("a", &inv.a), ("b", &inv.b), ("c", &inv.c), ("J", &inv.j)];
    let f = |text: &str| formula(text, &vals);
    let combo = |cs: Vec<Expr>| -> Form {
        cs.iter().enumerate().fold(Form::zero(&chart, 1), |acc, (i, c)| acc.add(&w[i].scale(c)))
    };
    let z = Expr::zero;
    Ok(vec![
        combo(vec![f("-delta^3")?]),
        combo(vec![f("s5^3*(3*J*s5*s7 - a*delta)/delta")?, f("s5^3")?]),
        combo(vec![
            f("s5*(b*delta^2 - 2*a*delta*s5*s7 + 3*J*s5^2*s7^2)/(2*delta)")?,
            f("s5^2*s7")?,
            f("-delta*s5")?,
        ]),
        combo(vec![
            f("-(c*delta^3 - b*delta^2*s5*s7 + a*delta*s5^2*s7^2 - J*s5^3*s7^3)/(delta*s5)")?,
            f("s5*s7^2")?,
            f("-2*delta*s7")?,
            f("delta^2/s5")?,
            z(),
        ]),
        combo(vec![
            f("s4")?,
            f("s7^3")?,
            f("-3*delta*s7^2/s5")?,
            f("3*delta^2*s7/s5^2")?,
            f("-delta^3/s5^3")?,
        ]),
    ])
}

pub fn tautological_forms(t: &Expr) -> Result<TautologicalReport, Error> {
    let inv = invariants_closed_form(t)?;
    let th = theta_forms(t)?;
    let chart = th[0].chart.clone();
    let dth: Vec<Form> = th.iter().map(Form::d).collect::<Result<_, _>>()?;
    let w = Form::wedge_all;

    let contact_equation = w(&[&dth[0], &th[0]]) == w(&[&th[1], &th[4], &th[0]]).sub(&w(&[&th[2], &th[3], &th[0]]).scale(&Expr::int(3)));

    let t124 = formula("3*J*s5^5/delta^4", &[("J", &inv.j)])?;
    let t234 = formula("2*J*s5^5/delta^4", &[("J", &inv.j)])?;
    let t124_ok = w(&[&dth[1], &th[0], &th[1]]) == w(&[&th[2], &th[4], &th[0], &th[1]]).scale(&t124);
    let t234_ok = w(&[&dth[2], &th[0], &th[1], &th[2]]) == w(&[&th[3], &th[4], &th[0], &th[1], &th[2]]).scale(&t234);

    // Mixed coframe: the five thetas and the differentials of the fibre coordinates.
    let mut mixed = th.clone();
    for s in [Symbol::delta(), Symbol::s(4), Symbol::s(5), Symbol::s(7)] {
        mixed.push(Form::d_coord(&chart, s));
    }
    let mc = CoframeChart::new(mixed)?;
    let e1 = mc.expand(&dth[1]);
    let e2 = mc.expand(&dth[2]);
    let e3 = mc.expand(&dth[3]);
    let e4 = mc.expand(&dth[4]);
    let t106 = (5..9).all(|v| e1.coeff(&[0, v]) == -(&t124 * &e2.coeff(&[1, v])));
    // theta6 enters d theta4 through 3 theta3 ^ theta6, so its theta2 component is read there.
    let h2 = -e4.coeff(&[2, 3]) / Expr::int(3);
    let t102 = e1.coeff(&[0, 2]) + &t124 * &h2;
    let cf = super::adapted_coframe(t)?;
    let jw = cf.derivatives(&inv.j)?;
    let printed = formula(
        "s5^2*(delta^4*M - 6*delta*J*s4*s5^3 - 9*c*delta^3*J*s5*s7 - 3*delta^3*Jw2*s5*s7 + 2*delta^3*L*s5*s7 \
         - 9*b*delta^2*J*s5^2*s7^2 - 9*delta^2*Jw3*s5^2*s7^2 + 21*a*delta*J*s5^3*s7^3 - 9*delta*Jw4*s5^3*s7^3 \
         - 27*J^2*s5^4*s7^4)/delta^8",
        &[
            ("M", &inv.m),
            ("J", &inv.j),
            ("L", &inv.l),
            ("a", &inv.a),
            ("b", &inv.b),
            ("c", &inv.c),
            ("Jw2", &jw[2]),
            ("Jw3", &jw[3]),
            ("Jw4", &jw[4]),
        ],
    )?;
    Ok(TautologicalReport {
        contact_equation,
        t124: t124_ok,
        t234: t234_ok,
        t106,
        t102: t102 == printed,
        s3_normalization: e3.coeff(&[1, 4]).is_zero(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flat_and_x4() {
        for t in ["0", "x4"] {
            let r = tautological_forms(&t.parse().unwrap()).unwrap();
            assert!(r.passed(), "{t}: {r:?}");
        }
    }
}
