use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::gcd::gcd;
use crate::poly::{Mono, Poly};
use crate::{ExprError, Symbol, VarKind};

/// A rational function in canonical form.
///
/// # Invariants
///
/// - `num` and `den` are coprime in `Z[vars]`, including integer content.
/// - `den` is nonzero with a positive leading coefficient (grlex order).
/// - Zero is `0/1`.
///
/// Canonical form makes structural equality coincide with mathematical
/// equality, so `==` and `Hash` are exact.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Expr {
    num: Poly,
    den: Poly,
}

impl Expr {
    pub fn zero() -> Self {
        Expr { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        Expr { num: Poly::one(), den: Poly::one() }
    }

    pub fn int(v: i64) -> Self {
        Self::from_poly(Poly::constant(BigInt::from(v)))
    }

    pub fn from_bigint(v: BigInt) -> Self {
        Self::from_poly(Poly::constant(v))
    }

    pub fn rational(n: i64, d: i64) -> Self {
        Self::from_rational(&BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn from_rational(q: &BigRational) -> Self {
        Expr {
            num: Poly::constant(q.numer().clone()),
            den: Poly::constant(q.denom().clone()),
        }
    }

    pub fn sym(s: Symbol) -> Self {
        Self::from_poly(Poly::var(s))
    }

    /// Parses-free shorthand for tests and tables; panics on a bad name.
    pub fn var(name: &str) -> Self {
        Self::sym(Symbol::from_name(name).expect("valid identifier"))
    }

    pub fn from_poly(p: Poly) -> Self {
        Expr { num: p, den: Poly::one() }
    }

    /// Builds `num/den` and brings it to canonical form.
    pub fn from_parts(num: Poly, den: Poly) -> Result<Self, ExprError> {
        if den.is_zero() {
            return Err(ExprError::DivisionByZero);
        }
        Ok(Self::normalize(num, den))
    }

    fn normalize(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if den.is_one() {
            return Expr { num, den };
        }
        let (num, den) = if let Some(d) = den.as_constant() {
            let g = num.content().abs().gcd(&d);
            let g = if d.is_negative() { -g } else { g };
            (num.div_int(&g), den.div_int(&g))
        } else {
            let g = gcd(&num, &den);
            if g.is_one() {
                (num, den)
            } else {
                (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
            }
        };
        match den.leading() {
            Some((_, c)) if c.is_negative() => Expr { num: num.neg(), den: den.neg() },
            _ => Expr { num, den },
        }
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The value if the expression has no variables.
    pub fn as_rational(&self) -> Option<BigRational> {
        let n = self.num.as_constant()?;
        let d = self.den.as_constant()?;
        Some(BigRational::new(n, d))
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    /// True if the numerator is a nonzero constant, so the function has no
    /// zeros wherever it is defined.
    pub fn is_nowhere_zero(&self) -> bool {
        matches!(self.num.as_constant(), Some(c) if !c.is_zero())
    }

    pub fn symbols(&self) -> Vec<Symbol> {
        let mut v = self.num.symbols();
        v.extend(self.den.symbols());
        v.sort();
        v.dedup();
        v
    }

    pub fn checked_div(&self, other: &Expr) -> Result<Expr, ExprError> {
        if other.is_zero() {
            return Err(ExprError::DivisionByZero);
        }
        Ok(self.mul_ref(&other.recip_unchecked()))
    }

    pub fn recip(&self) -> Result<Expr, ExprError> {
        if self.is_zero() {
            return Err(ExprError::DivisionByZero);
        }
        Ok(self.recip_unchecked())
    }

    fn recip_unchecked(&self) -> Expr {
        let (num, den) = (self.den.clone(), self.num.clone());
        match den.leading() {
            Some((_, c)) if c.is_negative() => Expr { num: num.neg(), den: den.neg() },
            _ => Expr { num, den },
        }
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, e: i64) -> Result<Expr, ExprError> {
        let base = if e < 0 { self.recip()? } else { self.clone() };
        let k = e.unsigned_abs() as u32;
        Ok(Expr { num: base.num.pow(k), den: base.den.pow(k) })
    }

    fn add_ref(&self, other: &Expr) -> Expr {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return Self::normalize(self.num.add(&other.num), self.den.clone());
        }
        if self.den.is_one() {
            return Expr { num: self.num.mul(&other.den).add(&other.num), den: other.den.clone() };
        }
        if other.den.is_one() {
            return Expr { num: other.num.mul(&self.den).add(&self.num), den: self.den.clone() };
        }
        let g = gcd(&self.den, &other.den);
        let (da, db) = if g.is_one() {
            (self.den.clone(), other.den.clone())
        } else {
            (self.den.div_exact(&g).unwrap(), other.den.div_exact(&g).unwrap())
        };
        let num = self.num.mul(&db).add(&other.num.mul(&da));
        let den = self.den.mul(&db);
        Self::normalize(num, den)
    }

    fn mul_ref(&self, other: &Expr) -> Expr {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && other.den.is_one() {
            return Expr { num: self.num.mul(&other.num), den: Poly::one() };
        }
        let g1 = gcd(&self.num, &other.den);
        let g2 = gcd(&other.num, &self.den);
        let a = if g1.is_one() { self.num.clone() } else { self.num.div_exact(&g1).unwrap() };
        let d = if g1.is_one() { other.den.clone() } else { other.den.div_exact(&g1).unwrap() };
        let c = if g2.is_one() { other.num.clone() } else { other.num.div_exact(&g2).unwrap() };
        let b = if g2.is_one() { self.den.clone() } else { self.den.div_exact(&g2).unwrap() };
        let num = a.mul(&c);
        let den = b.mul(&d);
        match den.leading() {
            Some((_, k)) if k.is_negative() => Expr { num: num.neg(), den: den.neg() },
            _ => Expr { num, den },
        }
    }

    /// Partial derivative treating every other symbol as independent.
    pub fn partial(&self, s: Symbol) -> Expr {
        let dn = self.num.partial(s);
        if self.den.is_one() {
            return Expr { num: dn, den: Poly::one() };
        }
        let dd = self.den.partial(s);
        if dd.is_zero() {
            return Self::normalize(dn, self.den.clone());
        }
        let num = dn.mul(&self.den).sub(&self.num.mul(&dd));
        Self::normalize(num, self.den.mul(&self.den))
    }

    /// Total derivative. For a coordinate `x_i` the jet variables follow the
    /// chain rule (`t -> t_xi`, `t_xj -> t_xjxi`); free parameters are
    /// constants; any other symbol is differentiated partially.
    pub fn diff(&self, s: Symbol) -> Result<Expr, ExprError> {
        if s.kind() == VarKind::FreeParameter {
            return Ok(Self::zero());
        }
        let mut out = self.partial(s);
        if let Some(i) = s.x_index() {
            for v in self.symbols() {
                if v.jet_order().is_none() {
                    continue;
                }
                let p = self.partial(v);
                if p.is_zero() {
                    continue;
                }
                let dv = v.jet_derivative(i)?;
                out = out.add_ref(&p.mul_ref(&Expr::sym(dv)));
            }
        }
        Ok(out)
    }

    /// Simultaneous substitution of symbols by expressions.
    pub fn subs(&self, map: &BTreeMap<Symbol, Expr>) -> Result<Expr, ExprError> {
        if map.is_empty() {
            return Ok(self.clone());
        }
        let n = subs_poly(&self.num, map);
        let d = subs_poly(&self.den, map);
        n.checked_div(&d)
    }

    pub fn subs1(&self, s: Symbol, e: &Expr) -> Result<Expr, ExprError> {
        let mut m = BTreeMap::new();
        m.insert(s, e.clone());
        self.subs(&m)
    }

    /// Exact evaluation.
    pub fn eval(&self, env: &BTreeMap<Symbol, BigRational>) -> Result<BigRational, ExprError> {
        let lookup = |v: Symbol| env.get(&v).cloned();
        let n = self.num.eval_with(lookup).ok_or_else(|| self.unassigned(|v| env.contains_key(&v)))?;
        let d = self.den.eval_with(lookup).ok_or_else(|| self.unassigned(|v| env.contains_key(&v)))?;
        if d.is_zero() {
            return Err(ExprError::Pole);
        }
        Ok(n / d)
    }

    /// Floating-point evaluation.
    pub fn eval_f64(&self, env: &BTreeMap<Symbol, f64>) -> Result<f64, ExprError> {
        let n = eval_poly_f64(&self.num, env).ok_or_else(|| self.unassigned(|v| env.contains_key(&v)))?;
        let d = eval_poly_f64(&self.den, env).ok_or_else(|| self.unassigned(|v| env.contains_key(&v)))?;
        if d == 0.0 {
            return Err(ExprError::Pole);
        }
        Ok(n / d)
    }

    fn unassigned(&self, known: impl Fn(Symbol) -> bool) -> ExprError {
        let missing = self.symbols().into_iter().find(|&v| !known(v));
        ExprError::Unassigned(missing.map(|v| v.name()).unwrap_or_default())
    }
}

fn subs_poly(p: &Poly, map: &BTreeMap<Symbol, Expr>) -> Expr {
    let mut powers: BTreeMap<(Symbol, u32), Expr> = BTreeMap::new();
    let mut acc = Expr::zero();
    // Group terms by their substituted part to keep intermediate sums small.
    let mut plain: BTreeMap<Mono, BigInt> = BTreeMap::new();
    let mut mixed: Vec<(Mono, BigInt, Vec<(Symbol, u32)>)> = Vec::new();
    for (m, c) in p.terms() {
        let (kept, replaced): (Vec<_>, Vec<_>) = m.factors().iter().partition(|(v, _)| !map.contains_key(v));
        if replaced.is_empty() {
            plain.insert(m.clone(), c.clone());
        } else {
            mixed.push((Mono(kept), c.clone(), replaced));
        }
    }
    if !plain.is_empty() {
        let mut terms: Vec<_> = plain.into_iter().collect();
        terms.reverse();
        acc = Expr::from_poly(Poly { terms });
    }
    let mut grouped: BTreeMap<Vec<(Symbol, u32)>, Poly> = BTreeMap::new();
    for (kept, c, replaced) in mixed {
        let entry = grouped.entry(replaced).or_insert_with(Poly::zero);
        *entry = entry.add(&Poly::monomial(kept, c));
    }
    for (replaced, coeff) in grouped {
        let mut term = Expr::from_poly(coeff);
        for (v, e) in replaced {
            let pw = powers
                .entry((v, e))
                .or_insert_with(|| map[&v].pow(e as i64).expect("nonnegative power"))
                .clone();
            term = term.mul_ref(&pw);
        }
        acc = acc.add_ref(&term);
    }
    acc
}

fn eval_poly_f64(p: &Poly, env: &BTreeMap<Symbol, f64>) -> Option<f64> {
    let mut acc = 0.0;
    for (m, c) in p.terms() {
        let mut term = c.to_f64().unwrap_or(f64::NAN);
        for &(v, e) in m.factors() {
            term *= env.get(&v)?.powi(e as i32);
        }
        acc += term;
    }
    Some(acc)
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&Expr> for &Expr {
            type Output = Expr;
            fn $m(self, rhs: &Expr) -> Expr {
                let f: fn(&Expr, &Expr) -> Expr = $body;
                f(self, rhs)
            }
        }
        impl $tr<Expr> for Expr {
            type Output = Expr;
            fn $m(self, rhs: Expr) -> Expr {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Expr> for Expr {
            type Output = Expr;
            fn $m(self, rhs: &Expr) -> Expr {
                (&self).$m(rhs)
            }
        }
        impl $tr<Expr> for &Expr {
            type Output = Expr;
            fn $m(self, rhs: Expr) -> Expr {
                self.$m(&rhs)
            }
        }
    };
}

binop!(Add, add, |a, b| a.add_ref(b));
binop!(Sub, sub, |a, b| a.add_ref(&-b));
binop!(Mul, mul, |a, b| a.mul_ref(b));
binop!(Div, div, |a, b| a.checked_div(b).expect("division by zero expression"));

impl Neg for &Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr { num: self.num.neg(), den: self.den.clone() }
    }
}

impl Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        -&self
    }
}

impl From<i64> for Expr {
    fn from(v: i64) -> Self {
        Expr::int(v)
    }
}

impl From<Symbol> for Expr {
    fn from(s: Symbol) -> Self {
        Expr::sym(s)
    }
}

impl std::iter::Sum for Expr {
    fn sum<I: Iterator<Item = Expr>>(iter: I) -> Expr {
        iter.fold(Expr::zero(), |a, b| a + b)
    }
}

fn fmt_mono(m: &Mono, out: &mut String) {
    for (k, &(v, e)) in m.factors().iter().enumerate() {
        if k > 0 {
            out.push('*');
        }
        out.push_str(&v.name());
        if e > 1 {
            out.push('^');
            out.push_str(&e.to_string());
        }
    }
}

fn fmt_poly(p: &Poly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (m, c)) in p.terms().iter().enumerate() {
        let neg = c.is_negative();
        let a = c.abs();
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if m.is_one() {
            out.push_str(&a.to_string());
        } else {
            if !a.is_one() {
                out.push_str(&a.to_string());
                out.push('*');
            }
            fmt_mono(m, &mut out);
        }
    }
    out
}

/// A polynomial that prints as a single factor: an integer, or a lone
/// variable power with unit coefficient.
fn is_atomic(p: &Poly) -> bool {
    match p.terms() {
        [(m, c)] => (m.is_one() && !c.is_negative()) || (c.is_one() && m.factors().len() == 1),
        _ => false,
    }
}

impl fmt::Display for Expr {
    /// Canonical text; parsing it back yields an equal expression.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = fmt_poly(&self.num);
        if self.den.is_one() {
            return f.write_str(&n);
        }
        let d = fmt_poly(&self.den);
        let n = if self.num.len() > 1 { format!("({n})") } else { n };
        if is_atomic(&self.den) {
            write!(f, "{n}/{d}")
        } else {
            write!(f, "{n}/({d})")
        }
    }
}

impl fmt::Debug for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Expr({self})")
    }
}

impl Default for Expr {
    fn default() -> Self {
        Expr::zero()
    }
}

impl Zero for Expr {
    fn zero() -> Self {
        Expr::zero()
    }
    fn is_zero(&self) -> bool {
        Expr::is_zero(self)
    }
}

impl One for Expr {
    fn one() -> Self {
        Expr::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(n: &str) -> Expr {
        Expr::var(n)
    }

    #[test]
    fn canonical_cancellation() {
        let e = (v("x0") * v("x0") - Expr::one()) / (v("x0") - Expr::one());
        assert_eq!(e, v("x0") + Expr::one());
        assert!(e.is_polynomial());
    }

    #[test]
    fn sign_convention() {
        let e = v("x0") / (-v("x1"));
        assert_eq!(e.to_string(), "-x0/x1");
        let h = Expr::int(2) / Expr::int(-4);
        assert_eq!(h, Expr::rational(-1, 2));
    }

    #[test]
    fn jet_chain_rule() {
        let t = Expr::sym(Symbol::t());
        let e = t.pow(3).unwrap();
        let d = e.diff(Symbol::x(1)).unwrap();
        assert_eq!(d, Expr::int(3) * t.pow(2).unwrap() * Expr::sym(Symbol::t1(1)));
        let second = Expr::sym(Symbol::t1(2)).diff(Symbol::x(0)).unwrap();
        assert_eq!(second, Expr::sym(Symbol::t2(0, 2)));
        assert!(matches!(
            Expr::sym(Symbol::t2(0, 2)).diff(Symbol::x(1)),
            Err(ExprError::JetOrderExceeded(_))
        ));
    }

    #[test]
    fn free_parameters_are_constant() {
        let e = v("c") * v("x0");
        assert!(e.diff(Symbol::param("c").unwrap()).unwrap().is_zero());
        assert_eq!(e.partial(Symbol::param("c").unwrap()), v("x0"));
    }

    #[test]
    fn substitution_and_evaluation() {
        let e = (v("x0") + v("x1")) / (v("x0") - v("x1"));
        let s = e.subs1(Symbol::x(1), &Expr::int(1)).unwrap();
        assert_eq!(s, (v("x0") + Expr::one()) / (v("x0") - Expr::one()));
        let mut env = BTreeMap::new();
        env.insert(Symbol::x(0), BigRational::from_integer(BigInt::from(1)));
        env.insert(Symbol::x(1), BigRational::from_integer(BigInt::from(1)));
        assert_eq!(e.eval(&env), Err(ExprError::Pole));
        env.remove(&Symbol::x(1));
        assert!(matches!(e.eval(&env), Err(ExprError::Unassigned(n)) if n == "x1"));
    }

    #[test]
    fn division_by_zero() {
        assert_eq!(v("x0").checked_div(&Expr::zero()), Err(ExprError::DivisionByZero));
    }
}
