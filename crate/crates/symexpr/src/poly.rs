//! Sparse multivariate polynomials with integer coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::Symbol;

/// A power product, stored as `(variable, exponent)` pairs sorted by variable.
/// Exponents are always positive.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Mono(pub(crate) Vec<(Symbol, u32)>);

impl Mono {
    pub fn one() -> Self {
        Mono(Vec::new())
    }

    pub fn var(s: Symbol) -> Self {
        Mono(vec![(s, 1)])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, s: Symbol) -> u32 {
        self.0
            .binary_search_by(|&(v, _)| v.cmp(&s))
            .map(|k| self.0[k].1)
            .unwrap_or(0)
    }

    pub fn factors(&self) -> &[(Symbol, u32)] {
        &self.0
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Mono(out)
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Mono) -> Option<Mono> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut j = 0;
        for &(v, e) in &self.0 {
            if j < other.0.len() && other.0[j].0 < v {
                return None;
            }
            if j < other.0.len() && other.0[j].0 == v {
                let f = other.0[j].1;
                j += 1;
                match e.cmp(&f) {
                    Ordering::Less => return None,
                    Ordering::Equal => {}
                    Ordering::Greater => out.push((v, e - f)),
                }
            } else {
                out.push((v, e));
            }
        }
        (j == other.0.len()).then_some(Mono(out))
    }

    /// Componentwise minimum of exponents.
    pub fn gcd(&self, other: &Mono) -> Mono {
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                Ordering::Less => i += 1,
                Ordering::Greater => j += 1,
                Ordering::Equal => {
                    out.push((self.0[i].0, self.0[i].1.min(other.0[j].1)));
                    i += 1;
                    j += 1;
                }
            }
        }
        Mono(out)
    }

    /// Removes the variable `s`, returning its exponent and the rest.
    pub fn split_off(&self, s: Symbol) -> (u32, Mono) {
        match self.0.binary_search_by(|&(v, _)| v.cmp(&s)) {
            Ok(k) => {
                let mut rest = self.0.clone();
                let (_, e) = rest.remove(k);
                (e, Mono(rest))
            }
            Err(_) => (0, self.clone()),
        }
    }

    pub fn with_power(&self, s: Symbol, e: u32) -> Mono {
        if e == 0 {
            return self.clone();
        }
        self.mul(&Mono(vec![(s, e)]))
    }
}

/// Graded lexicographic order: total degree first, then the exponent of the
/// earliest variable in declared order.
impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        let d = self.degree().cmp(&other.degree());
        if d != Ordering::Equal {
            return d;
        }
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
                Ordering::Equal => {
                    let c = a[i].1.cmp(&b[j].1);
                    if c != Ordering::Equal {
                        return c;
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        (a.len() - i).cmp(&(b.len() - j))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial with terms sorted in decreasing monomial order and no zero
/// coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly {
    pub(crate) terms: Vec<(Mono, BigInt)>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Poly { terms: vec![(Mono::one(), c)] }
        }
    }

    pub fn var(s: Symbol) -> Self {
        Poly { terms: vec![(Mono::var(s), BigInt::one())] }
    }

    pub fn monomial(m: Mono, c: BigInt) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    fn from_map(map: BTreeMap<Mono, BigInt>) -> Self {
        let mut terms: Vec<_> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.reverse();
        Poly { terms }
    }

    pub fn terms(&self) -> &[(Mono, BigInt)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.as_slice() {
            [] => Some(BigInt::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<&(Mono, BigInt)> {
        self.terms.first()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn degree_in(&self, s: Symbol) -> u32 {
        self.terms.iter().map(|(m, _)| m.exponent(s)).max().unwrap_or(0)
    }

    pub fn symbols(&self) -> Vec<Symbol> {
        let mut out: Vec<Symbol> = self
            .terms
            .iter()
            .flat_map(|(m, _)| m.0.iter().map(|&(v, _)| v))
            .collect();
        out.sort();
        out.dedup();
        out
    }

    pub fn neg(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.add_scaled(other, true)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add_scaled(other, false)
    }

    fn add_scaled(&self, other: &Poly, plus: bool) -> Poly {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if plus { b[j].1.clone() } else { -&b[j].1 };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if plus { &a[i].1 + &b[j].1 } else { &a[i].1 - &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for t in &b[j..] {
            let c = if plus { t.1.clone() } else { -&t.1 };
            out.push((t.0.clone(), c));
        }
        Poly { terms: out }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        if let Some(c) = self.as_constant() {
            return other.scale(&c);
        }
        if let Some(c) = other.as_constant() {
            return self.scale(&c);
        }
        if self.terms.len() == 1 {
            return other.mul_term(&self.terms[0].0, &self.terms[0].1);
        }
        if other.terms.len() == 1 {
            return self.mul_term(&other.terms[0].0, &other.terms[0].1);
        }
        let mut map: BTreeMap<Mono, BigInt> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                match map.get_mut(&m) {
                    Some(acc) => *acc += c,
                    None => {
                        map.insert(m, c);
                    }
                }
            }
        }
        Poly::from_map(map)
    }

    /// Multiplication by a single term preserves the order of terms.
    pub fn mul_term(&self, m: &Mono, c: &BigInt) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(mm, cc)| (mm.mul(m), cc * c)).collect() }
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        if c.is_one() {
            return self.clone();
        }
        Poly { terms: self.terms.iter().map(|(m, cc)| (m.clone(), cc * c)).collect() }
    }

    /// Divides every coefficient by `c`, which must divide them exactly.
    pub fn div_int(&self, c: &BigInt) -> Poly {
        if c.is_one() {
            return self.clone();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, cc)| {
                    debug_assert!((cc % c).is_zero());
                    (m.clone(), cc / c)
                })
                .collect(),
        }
    }

    pub fn div_mono(&self, m: &Mono) -> Poly {
        if m.is_one() {
            return self.clone();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(mm, c)| (mm.div(m).expect("monomial does not divide"), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut result = Poly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Gcd of the integer coefficients, with the sign of the leading one.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        if let Some((_, c)) = self.terms.first() {
            if c.is_negative() {
                g = -g;
            }
        }
        g
    }

    /// Largest monomial dividing every term.
    pub fn mono_content(&self) -> Mono {
        let mut it = self.terms.iter();
        let Some((first, _)) = it.next() else { return Mono::one() };
        let mut g = first.clone();
        for (m, _) in it {
            if g.is_one() {
                break;
            }
            g = g.gcd(m);
        }
        g
    }

    /// Exact division; `None` if `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if divisor.terms.len() == 1 {
            let (dm, dc) = &divisor.terms[0];
            let mut out = Vec::with_capacity(self.terms.len());
            for (m, c) in &self.terms {
                let q = m.div(dm)?;
                let (qc, r) = c.div_rem(dc);
                if !r.is_zero() {
                    return None;
                }
                out.push((q, qc));
            }
            return Some(Poly { terms: out });
        }
        let (lm, lc) = &divisor.terms[0];
        if lm.degree() > self.terms[0].0.degree() {
            return None;
        }
        let mut rem: BTreeMap<Mono, BigInt> = self.terms.iter().cloned().collect();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
            let qm = m.div(lm)?;
            let (qc, r) = c.div_rem(lc);
            if !r.is_zero() {
                return None;
            }
            for (dm, dc) in &divisor.terms {
                let mm = dm.mul(&qm);
                let delta = dc * &qc;
                let remove = match rem.get_mut(&mm) {
                    Some(acc) => {
                        *acc -= delta;
                        acc.is_zero()
                    }
                    None => {
                        rem.insert(mm.clone(), -delta);
                        false
                    }
                };
                if remove {
                    rem.remove(&mm);
                }
            }
            quot.push((qm, qc));
        }
        Some(Poly { terms: quot })
    }

    pub fn partial(&self, s: Symbol) -> Poly {
        let mut map: BTreeMap<Mono, BigInt> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (e, rest) = m.split_off(s);
            if e == 0 {
                continue;
            }
            let mm = rest.with_power(s, e - 1);
            *map.entry(mm).or_insert_with(BigInt::zero) += c * BigInt::from(e);
        }
        Poly::from_map(map)
    }

    /// Coefficients of `self` as a polynomial in `s`, indexed by power.
    pub fn coeffs_in(&self, s: Symbol) -> Vec<Poly> {
        let deg = self.degree_in(s) as usize;
        let mut maps: Vec<BTreeMap<Mono, BigInt>> = vec![BTreeMap::new(); deg + 1];
        for (m, c) in &self.terms {
            let (e, rest) = m.split_off(s);
            maps[e as usize].insert(rest, c.clone());
        }
        maps.into_iter().map(Poly::from_map).collect()
    }

    pub fn from_coeffs(s: Symbol, coeffs: &[Poly]) -> Poly {
        let mut map: BTreeMap<Mono, BigInt> = BTreeMap::new();
        for (e, p) in coeffs.iter().enumerate() {
            for (m, c) in &p.terms {
                map.insert(m.with_power(s, e as u32), c.clone());
            }
        }
        Poly::from_map(map)
    }

    /// Evaluates with a caller-supplied map from variables to values.
    pub fn eval_with<T, F>(&self, mut value: F) -> Option<T>
    where
        T: Clone + Zero + One + std::ops::Mul<Output = T> + std::ops::Add<Output = T> + From<BigInt>,
        F: FnMut(Symbol) -> Option<T>,
    {
        let mut cache: BTreeMap<Symbol, T> = BTreeMap::new();
        let mut acc = T::zero();
        for (m, c) in &self.terms {
            let mut term = T::from(c.clone());
            for &(v, e) in &m.0 {
                let base = match cache.get(&v) {
                    Some(b) => b.clone(),
                    None => {
                        let b = value(v)?;
                        cache.insert(v, b.clone());
                        b
                    }
                };
                for _ in 0..e {
                    term = term * base.clone();
                }
            }
            acc = acc + term;
        }
        Some(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: u32) -> Poly {
        Poly::var(Symbol::x(i))
    }

    fn c(v: i64) -> Poly {
        Poly::constant(BigInt::from(v))
    }

    #[test]
    fn grlex_order() {
        let m = |v: &[(u32, u32)]| Mono(v.iter().map(|&(i, e)| (Symbol::x(i), e)).collect());
        assert!(m(&[(0, 1), (1, 1)]) > m(&[(0, 1), (2, 1)]));
        assert!(m(&[(1, 2)]) > m(&[(0, 1)]));
        assert!(m(&[(0, 2)]) > m(&[(0, 1), (1, 1)]));
        assert!(m(&[(0, 1)]) > m(&[(1, 1)]));
    }

    #[test]
    fn arithmetic() {
        let p = x(0).add(&c(1));
        let q = x(0).sub(&c(1));
        let prod = p.mul(&q);
        assert_eq!(prod, x(0).mul(&x(0)).sub(&c(1)));
        assert_eq!(prod.div_exact(&p).unwrap(), q);
        assert!(prod.div_exact(&x(1)).is_none());
    }

    #[test]
    fn partials_and_coeffs() {
        let p = x(0).pow(3).mul(&x(1)).add(&x(1).scale(&BigInt::from(5)));
        assert_eq!(p.partial(Symbol::x(0)), x(0).pow(2).mul(&x(1)).scale(&BigInt::from(3)));
        let cs = p.coeffs_in(Symbol::x(0));
        assert_eq!(cs.len(), 4);
        assert_eq!(Poly::from_coeffs(Symbol::x(0), &cs), p);
    }
}
