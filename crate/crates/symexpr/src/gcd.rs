//! Greatest common divisors in `Z[x_1, .., x_n]`.
//!
//! Strips integer and monomial contents, tries trial division, and otherwise
//! runs a primitive pseudo-remainder sequence in one variable with
//! coefficients handled recursively.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::poly::Poly;
use crate::Symbol;

/// Normalized gcd: positive leading coefficient, or zero if both inputs are zero.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return normalize_sign(b.clone());
    }
    if b.is_zero() {
        return normalize_sign(a.clone());
    }
    let ca = a.content().abs();
    let cb = b.content().abs();
    let ci = ca.gcd(&cb);
    let ma = a.mono_content();
    let mb = b.mono_content();
    let mg = ma.gcd(&mb);
    let head = Poly::monomial(mg, ci);
    if a.len() == 1 || b.len() == 1 {
        return head;
    }
    let pa = a.div_mono(&ma).div_int(&ca);
    let pb = b.div_mono(&mb).div_int(&cb);
    let g = gcd_primitive(&pa, &pb);
    normalize_sign(head.mul(&g))
}

fn normalize_sign(p: Poly) -> Poly {
    match p.leading() {
        Some((_, c)) if c.is_negative() => p.neg(),
        _ => p,
    }
}

/// Gcd of polynomials without integer or monomial content.
fn gcd_primitive(a: &Poly, b: &Poly) -> Poly {
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    if a == b || *a == b.neg() {
        return normalize_sign(a.clone());
    }
    if b.len() <= a.len() {
        if a.div_exact(b).is_some() {
            return normalize_sign(b.clone());
        }
    } else if b.div_exact(a).is_some() {
        return normalize_sign(a.clone());
    }
    let va = a.symbols();
    let vb = b.symbols();
    if let Some(&v) = va.iter().find(|v| !vb.contains(v)) {
        return gcd(&content_in(a, v), b);
    }
    if let Some(&v) = vb.iter().find(|v| !va.contains(v)) {
        return gcd(a, &content_in(b, v));
    }
    let v = *va
        .iter()
        .min_by_key(|&&s| (a.degree_in(s).max(b.degree_in(s)), s))
        .expect("non-constant polynomial has a variable");
    gcd_in_var(a, b, v)
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `v`.
fn content_in(p: &Poly, v: Symbol) -> Poly {
    let mut g = Poly::zero();
    for c in p.coeffs_in(v) {
        if c.is_zero() {
            continue;
        }
        g = gcd(&g, &c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn primitive_part_in(coeffs: &[Poly]) -> Vec<Poly> {
    let mut g = Poly::zero();
    for c in coeffs {
        if c.is_zero() {
            continue;
        }
        g = gcd(&g, c);
        if g.is_one() {
            return coeffs.to_vec();
        }
    }
    if g.is_zero() {
        return coeffs.to_vec();
    }
    coeffs
        .iter()
        .map(|c| c.div_exact(&g).expect("content divides coefficients"))
        .collect()
}

fn trim(c: &mut Vec<Poly>) {
    while c.len() > 1 && c.last().map(Poly::is_zero).unwrap_or(false) {
        c.pop();
    }
}

fn gcd_in_var(a: &Poly, b: &Poly, v: Symbol) -> Poly {
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let cont = gcd(&ca, &cb);
    let mut f: Vec<Poly> = a.div_exact(&ca).expect("content").coeffs_in(v);
    let mut g: Vec<Poly> = b.div_exact(&cb).expect("content").coeffs_in(v);
    if f.len() < g.len() {
        std::mem::swap(&mut f, &mut g);
    }
    if coprime_at_a_point(&f, &g) {
        return normalize_sign(cont);
    }
    // subresultant remainder sequence: every division below is exact
    let mut lc = Poly::one();
    let mut h = Poly::one();
    loop {
        let delta = (f.len() - g.len()) as u32;
        let r = pseudo_rem(&f, &g);
        if r.iter().all(Poly::is_zero) {
            break;
        }
        if r.len() == 1 {
            return normalize_sign(cont);
        }
        let den = lc.mul(&h.pow(delta));
        f = g;
        g = r.iter().map(|c| c.div_exact(&den).expect("subresultant division")).collect();
        lc = f.last().expect("nonempty").clone();
        if delta > 0 {
            h = lc.pow(delta).div_exact(&h.pow(delta - 1)).expect("subresultant division");
        }
    }
    let g = primitive_part_in(&g);
    normalize_sign(cont.mul(&Poly::from_coeffs(v, &g)))
}

/// Exact test that the gcd has degree 0 in `v`: at an integer point where the
/// leading coefficient of `f` survives, the images have a constant gcd over Q.
/// Inconclusive points only cost the attempt.
fn coprime_at_a_point(f: &[Poly], g: &[Poly]) -> bool {
    for shift in 0..3u64 {
        let at = |s: Symbol| {
            let mix = s.code().wrapping_mul(0x9e37_79b9_7f4a_7c15) >> 40;
            Some(BigInt::from(2 + mix % 29 + 31 * shift))
        };
        let ev = |c: &[Poly]| -> Option<Vec<BigRational>> {
            c.iter().map(|p| p.eval_with::<BigInt, _>(|s| at(s)).map(BigRational::from_integer)).collect()
        };
        let (Some(fe), Some(ge)) = (ev(f), ev(g)) else { return false };
        if fe.last().map(Zero::is_zero).unwrap_or(true) {
            continue;
        }
        return univariate_gcd_degree(fe, ge) == 0;
    }
    false
}

fn univariate_gcd_degree(mut a: Vec<BigRational>, mut b: Vec<BigRational>) -> usize {
    let trim = |c: &mut Vec<BigRational>| {
        while c.last().map(Zero::is_zero).unwrap_or(false) {
            c.pop();
        }
    };
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        while a.len() >= b.len() {
            let q = a.last().unwrap() / b.last().unwrap();
            let shift = a.len() - b.len();
            for (k, bk) in b.iter().enumerate() {
                a[k + shift] -= &q * bk;
            }
            a.pop();
            trim(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

/// Pseudo-remainder `lc(g)^(deg f - deg g + 1) f mod g` of dense coefficient
/// vectors (index = power).
fn pseudo_rem(f: &[Poly], g: &[Poly]) -> Vec<Poly> {
    let dg = g.len() - 1;
    let lc = &g[dg];
    let mut r: Vec<Poly> = f.to_vec();
    trim(&mut r);
    let mut steps = (r.len() - dg) as u32;
    while r.len() > dg && !(r.len() == 1 && r[0].is_zero()) {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - dg;
        for c in r.iter_mut() {
            *c = c.mul(lc);
        }
        for (k, gk) in g.iter().enumerate() {
            let t = gk.mul(&lr);
            r[k + shift] = r[k + shift].sub(&t);
        }
        debug_assert!(r[dr].is_zero());
        r.pop();
        trim(&mut r);
        if r.is_empty() {
            r.push(Poly::zero());
        }
        steps -= 1;
    }
    if steps > 0 {
        let k = lc.pow(steps);
        for c in r.iter_mut() {
            *c = c.mul(&k);
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn x(i: u32) -> Poly {
        Poly::var(Symbol::x(i))
    }

    fn c(v: i64) -> Poly {
        Poly::constant(BigInt::from(v))
    }

    #[test]
    fn gcd_of_products() {
        let f = x(0).add(&x(1).mul(&x(2))).add(&c(3));
        let g = x(1).sub(&x(3).mul(&x(0)));
        let h = x(2).pow(2).add(&x(4));
        let a = f.mul(&g).mul(&g);
        let b = f.mul(&h).mul(&g).scale(&BigInt::from(6));
        let d = gcd(&a, &b);
        assert_eq!(d, normalize_sign(f.mul(&g)));
    }

    #[test]
    fn coprime() {
        let a = x(0).pow(2).add(&c(1));
        let b = x(0).add(&x(1));
        assert!(gcd(&a, &b).is_one());
    }

    #[test]
    fn integer_and_monomial_content() {
        let a = x(0).pow(3).mul(&x(1)).scale(&BigInt::from(4));
        let b = x(0).mul(&x(1).pow(2)).scale(&BigInt::from(6)).add(&x(0).pow(2).scale(&BigInt::from(2)));
        assert_eq!(gcd(&a, &b), x(0).scale(&BigInt::from(2)));
    }

    #[test]
    fn unrelated_variables() {
        let a = x(0).add(&c(1)).mul(&x(2).add(&c(2)));
        let b = x(0).add(&c(1)).mul(&x(3).add(&c(5)));
        assert_eq!(gcd(&a, &b), x(0).add(&c(1)));
    }

    #[test]
    fn pseudo_remainder_keeps_full_scaling() {
        // x1 x0^2 + x0 + 1 mod (x1 x0 + 1): the degree-1 step cancels early
        let f = vec![c(1), c(1), x(1)];
        let g = vec![c(1), x(1)];
        assert_eq!(pseudo_rem(&f, &g), vec![x(1).mul(&x(1))]);
    }
}
