//! Finite-dimensional real Lie algebras given by exact structure constants.
//!
//! Convention: `[E_i, E_j] = sum_k c[i][j][k] E_k`, and the dual left-invariant
//! coframe satisfies `d theta^k = -sum_{i<j} c^k_ij theta^i ^ theta^j`, i.e.
//! `d theta(X, Y) = -theta([X, Y])`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use symexpr::{Expr, Symbol};

use crate::forms::{indices_of, Ext};
use crate::linalg::{self, Matrix};
use crate::Error;

pub type Q = BigRational;

#[derive(Debug, Clone, PartialEq)]
pub struct LieAlgebra {
    pub names: Vec<String>,
    /// `c[i][j][k]`: coefficient of `E_k` in `[E_i, E_j]`.
    pub c: Vec<Vec<Vec<Q>>>,
}

fn unit(n: usize, i: usize) -> Vec<Q> {
    (0..n).map(|k| if k == i { Q::one() } else { Q::zero() }).collect()
}

impl LieAlgebra {
    pub fn new(names: Vec<String>, c: Vec<Vec<Vec<Q>>>) -> Result<Self, Error> {
        let n = names.len();
        if c.len() != n || c.iter().any(|r| r.len() != n || r.iter().any(|v| v.len() != n)) {
            return Err(Error::Precondition("structure constants have the wrong shape".into()));
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if c[i][j][k] != -&c[j][i][k] {
                        return Err(Error::Precondition(format!("bracket not antisymmetric at ({i},{j})")));
                    }
                }
            }
        }
        Ok(LieAlgebra { names, c })
    }

    /// Structure constants of a matrix Lie algebra. Fails if a commutator
    /// leaves the span or the matrices are dependent.
    pub fn from_matrices(names: Vec<String>, mats: &[Matrix<Q>]) -> Result<Self, Error> {
        let n = mats.len();
        let flat = |m: &Matrix<Q>| m.iter().flatten().cloned().collect::<Vec<Q>>();
        let cols: Vec<Vec<Q>> = mats.iter().map(flat).collect();
        let len = cols[0].len();
        // columns are the basis matrices
        let a: Matrix<Q> = (0..len).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect();
        if linalg::rank(&a) != n {
            return Err(Error::Precondition("basis matrices are linearly dependent".into()));
        }
        let mut c = vec![vec![vec![Q::zero(); n]; n]; n];
        for i in 0..n {
            for j in (i + 1)..n {
                let ab = linalg::mat_mul(&mats[i], &mats[j]);
                let ba = linalg::mat_mul(&mats[j], &mats[i]);
                let comm: Vec<Q> = flat(&ab).iter().zip(flat(&ba)).map(|(x, y)| x - y).collect();
                let coeffs = linalg::solve(&a, &comm)
                    .ok_or_else(|| Error::Mismatch(format!("[{}, {}] leaves the span", names[i], names[j])))?;
                for k in 0..n {
                    c[j][i][k] = -&coeffs[k];
                    c[i][j][k] = coeffs[k].clone();
                }
            }
        }
        LieAlgebra::new(names, c)
    }

    /// From coefficients `T[k][(i, j)]` of `d theta^k = sum_{i<j} T theta^i ^ theta^j`.
    pub fn from_structure_equations(names: Vec<String>, t: &[BTreeMap<(usize, usize), Q>]) -> Result<Self, Error> {
        let n = names.len();
        let mut c = vec![vec![vec![Q::zero(); n]; n]; n];
        for (k, eq) in t.iter().enumerate() {
            for (&(i, j), v) in eq {
                c[i][j][k] = -v;
                c[j][i][k] = v.clone();
            }
        }
        LieAlgebra::new(names, c)
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    /// `T[k][(i, j)]` with `i < j`, nonzero entries only.
    pub fn structure_equations(&self) -> Vec<BTreeMap<(usize, usize), Q>> {
        let n = self.dim();
        (0..n)
            .map(|k| {
                let mut m = BTreeMap::new();
                for i in 0..n {
                    for j in (i + 1)..n {
                        if !self.c[i][j][k].is_zero() {
                            m.insert((i, j), -&self.c[i][j][k]);
                        }
                    }
                }
                m
            })
            .collect()
    }

    pub fn bracket(&self, u: &[Q], v: &[Q]) -> Vec<Q> {
        let n = self.dim();
        let mut out = vec![Q::zero(); n];
        for i in 0..n {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if v[j].is_zero() {
                    continue;
                }
                let f = &u[i] * &v[j];
                for k in 0..n {
                    if !self.c[i][j][k].is_zero() {
                        out[k] += &f * &self.c[i][j][k];
                    }
                }
            }
        }
        out
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Q> {
        unit(self.dim(), i)
    }

    /// Triples `i < j < k` on which the Jacobi identity fails.
    pub fn jacobi_violations(&self) -> Vec<(usize, usize, usize)> {
        let n = self.dim();
        let mut bad = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    let ok = (0..n).all(|l| {
                        let mut s = Q::zero();
                        for m in 0..n {
                            s += &self.c[i][j][m] * &self.c[m][k][l]
                                + &self.c[j][k][m] * &self.c[m][i][l]
                                + &self.c[k][i][m] * &self.c[m][j][l];
                        }
                        s.is_zero()
                    });
                    if !ok {
                        bad.push((i, j, k));
                    }
                }
            }
        }
        bad
    }

    /// The structure equations as 2-forms on the abstract coframe.
    pub fn differentials(&self) -> Vec<Ext> {
        self.structure_equations()
            .iter()
            .map(|eq| {
                let mut e = Ext::zero(2);
                for (&(i, j), v) in eq {
                    e = e.add(&Ext::basis(i).wedge(&Ext::basis(j)).scale(&Expr::from_rational(v)));
                }
                e
            })
            .collect()
    }

    /// Indices `k` with `d(d theta^k) != 0`, computed with the Leibniz rule
    /// on the coframe rather than through the bracket.
    pub fn d_squared_failures(&self) -> Vec<usize> {
        let d = self.differentials();
        d.iter()
            .enumerate()
            .filter(|(_, dk)| {
                let mut dd = Ext::zero(3);
                for (mask, coef) in &dk.terms {
                    let ij = indices_of(*mask);
                    let (i, j) = (ij[0], ij[1]);
                    let t = d[i].wedge(&Ext::basis(j)).sub(&Ext::basis(i).wedge(&d[j]));
                    dd = dd.add(&t.scale(coef));
                }
                !dd.is_zero()
            })
            .map(|(k, _)| k)
            .collect()
    }

    /// `ad(u)[k][j]`: component `k` of `[u, E_j]`.
    pub fn ad(&self, u: &[Q]) -> Matrix<Q> {
        let n = self.dim();
        let cols: Vec<Vec<Q>> = (0..n).map(|j| self.bracket(u, &unit(n, j))).collect();
        (0..n).map(|k| (0..n).map(|j| cols[j][k].clone()).collect()).collect()
    }

    pub fn killing(&self) -> Matrix<Q> {
        let n = self.dim();
        let ads: Vec<Matrix<Q>> = (0..n).map(|i| self.ad(&unit(n, i))).collect();
        let mut k = linalg::zeros::<Q>(n, n);
        for i in 0..n {
            for j in i..n {
                let p = linalg::mat_mul(&ads[i], &ads[j]);
                let tr: Q = (0..n).map(|a| p[a][a].clone()).fold(Q::zero(), |s, x| s + x);
                k[i][j] = tr.clone();
                k[j][i] = tr;
            }
        }
        k
    }

    /// `(positive, negative, zero)` counts of the Killing form.
    pub fn killing_signature(&self) -> (usize, usize, usize) {
        let (p, m) = linalg::signature(&self.killing());
        (p, m, self.dim() - p - m)
    }

    pub fn is_semisimple(&self) -> bool {
        !linalg::determinant(&self.killing()).is_zero()
    }

    pub fn center(&self) -> Vec<Vec<Q>> {
        let n = self.dim();
        // rows: components of [z, E_j] = sum_i z_i c[i][j][k]
        let rows: Matrix<Q> = (0..n)
            .flat_map(|j| (0..n).map(move |k| (j, k)))
            .map(|(j, k)| (0..n).map(|i| self.c[i][j][k].clone()).collect())
            .collect();
        linalg::nullspace(&rows, n)
    }

    fn in_span(span: &[Vec<Q>], v: &[Q]) -> bool {
        if v.iter().all(Zero::is_zero) {
            return true;
        }
        let mut rows: Matrix<Q> = span.to_vec();
        let r = linalg::rank(&rows);
        rows.push(v.to_vec());
        linalg::rank(&rows) == r
    }

    pub fn is_subalgebra(&self, span: &[Vec<Q>]) -> bool {
        span.iter().enumerate().all(|(a, u)| span[a + 1..].iter().all(|v| Self::in_span(span, &self.bracket(u, v))))
    }

    pub fn is_ideal(&self, span: &[Vec<Q>]) -> bool {
        let n = self.dim();
        span.iter().all(|u| (0..n).all(|j| Self::in_span(span, &self.bracket(u, &unit(n, j)))))
    }

    /// The subspace spanned by the given basis vectors, with `[E_i, E_j]`
    /// required to stay inside it.
    pub fn basis_span(&self, idx: &[usize]) -> Vec<Vec<Q>> {
        idx.iter().map(|&i| unit(self.dim(), i)).collect()
    }

    /// Restriction to a bracket-closed subset of basis elements.
    pub fn restrict(&self, idx: &[usize]) -> Result<LieAlgebra, Error> {
        let names = idx.iter().map(|&i| self.names[i].clone()).collect();
        let mut c = vec![vec![vec![Q::zero(); idx.len()]; idx.len()]; idx.len()];
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                for k in 0..self.dim() {
                    let v = &self.c[i][j][k];
                    if v.is_zero() {
                        continue;
                    }
                    let pos = idx.iter().position(|&m| m == k).ok_or_else(|| {
                        Error::Mismatch(format!("[{}, {}] has a component along {}", self.names[i], self.names[j], self.names[k]))
                    })?;
                    c[a][b][pos] = v.clone();
                }
            }
        }
        LieAlgebra::new(names, c)
    }

    /// The subalgebra spanned by `span`, in that basis.
    pub fn induced(&self, span: &[Vec<Q>], prefix: &str) -> Result<LieAlgebra, Error> {
        let m = span.len();
        let n = self.dim();
        let a: Matrix<Q> = (0..n).map(|r| span.iter().map(|v| v[r].clone()).collect()).collect();
        let mut c = vec![vec![vec![Q::zero(); m]; m]; m];
        for i in 0..m {
            for j in 0..m {
                let b = self.bracket(&span[i], &span[j]);
                c[i][j] = linalg::solve(&a, &b).ok_or_else(|| Error::Mismatch("span is not closed under the bracket".into()))?;
            }
        }
        LieAlgebra::new((0..m).map(|i| format!("{prefix}{i}")).collect(), c)
    }

    /// Lower central series dimensions of the algebra.
    pub fn lower_central_series(&self) -> Vec<usize> {
        let n = self.dim();
        let mut cur: Vec<Vec<Q>> = (0..n).map(|i| unit(n, i)).collect();
        let mut dims = vec![n];
        loop {
            let mut next: Vec<Vec<Q>> = Vec::new();
            for u in &cur {
                for j in 0..n {
                    next.push(self.bracket(u, &unit(n, j)));
                }
            }
            let keep = linalg::independent_subset(&next);
            let next: Vec<Vec<Q>> = keep.into_iter().map(|i| next[i].clone()).collect();
            if next.len() == *dims.last().unwrap() {
                return dims;
            }
            dims.push(next.len());
            if next.is_empty() {
                return dims;
            }
            cur = next;
        }
    }

    pub fn is_nilpotent(&self) -> bool {
        self.lower_central_series().last() == Some(&0)
    }

    /// Linear maps `T` with `T[x, y] = [T x, y]`; each as `T[row][col]`.
    pub fn centroid(&self) -> Vec<Matrix<Q>> {
        let n = self.dim();
        let var = |a: usize, b: usize| a * n + b;
        let mut rows: Matrix<Q> = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for m in 0..n {
                    let mut row = vec![Q::zero(); n * n];
                    for k in 0..n {
                        if !self.c[i][j][k].is_zero() {
                            row[var(m, k)] += &self.c[i][j][k];
                        }
                    }
                    for a in 0..n {
                        if !self.c[a][j][m].is_zero() {
                            row[var(a, i)] -= &self.c[a][j][m];
                        }
                    }
                    if row.iter().any(|v| !v.is_zero()) {
                        rows.push(row);
                    }
                }
            }
        }
        linalg::nullspace(&rows, n * n)
            .into_iter()
            .map(|v| (0..n).map(|a| v[a * n..(a + 1) * n].to_vec()).collect())
            .collect()
    }

    /// Decomposition into ideals from the eigenspaces of a generic centroid
    /// element. `None` if its minimal polynomial has non-rational roots.
    pub fn ideal_decomposition(&self) -> Option<Vec<Vec<Vec<Q>>>> {
        let n = self.dim();
        let cent = self.centroid();
        let mut t = linalg::zeros::<Q>(n, n);
        for (w, b) in cent.iter().enumerate() {
            let f = Q::from_integer(BigInt::from(w as i64 * 3 + 1));
            for a in 0..n {
                for c in 0..n {
                    t[a][c] += &f * &b[a][c];
                }
            }
        }
        let roots = rational_roots(&minimal_polynomial(&t))?;
        let parts: Vec<Vec<Vec<Q>>> = roots
            .iter()
            .map(|lam| {
                let mut m = t.clone();
                for (a, row) in m.iter_mut().enumerate() {
                    row[a] -= lam;
                }
                linalg::nullspace(&m, n)
            })
            .collect();
        (parts.iter().map(Vec::len).sum::<usize>() == n).then_some(parts)
    }

    /// One line per nonzero `c^k_ij` with `i < j`.
    pub fn table_text(&self) -> String {
        let mut s = String::new();
        let n = self.dim();
        for i in 0..n {
            for j in (i + 1)..n {
                for k in 0..n {
                    if !self.c[i][j][k].is_zero() {
                        let _ = writeln!(s, "[{}, {}] {} {}", self.names[i], self.names[j], self.c[i][j][k], self.names[k]);
                    }
                }
            }
        }
        s
    }
}

/// Monic minimal polynomial, lowest degree coefficient first.
pub fn minimal_polynomial(t: &Matrix<Q>) -> Vec<Q> {
    let n = t.len();
    let flat = |m: &Matrix<Q>| m.iter().flatten().cloned().collect::<Vec<Q>>();
    let mut powers = vec![flat(&linalg::identity::<Q>(n))];
    let mut p = linalg::identity::<Q>(n);
    loop {
        p = linalg::mat_mul(&p, t);
        let target = flat(&p);
        let d = powers.len();
        let a: Matrix<Q> = (0..n * n).map(|r| powers.iter().map(|c| c[r].clone()).collect()).collect();
        if let Some(coeffs) = linalg::solve(&a, &target) {
            let mut out: Vec<Q> = coeffs.into_iter().map(|c| -c).collect();
            out.push(Q::one());
            debug_assert_eq!(out.len(), d + 1);
            return out;
        }
        powers.push(target);
    }
}

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs();
    if n.is_zero() {
        return Some(vec![BigInt::one()]);
    }
    let mut out = Vec::new();
    let mut d = BigInt::one();
    let limit = BigInt::from(1_000_000u32);
    while &d * &d <= n {
        if d > limit {
            return None;
        }
        if n.is_multiple_of(&d) {
            out.push(d.clone());
            out.push(&n / &d);
        }
        d += 1;
    }
    Some(out)
}

/// All roots of a polynomial that factors into distinct rational linear
/// factors; `None` otherwise.
pub fn rational_roots(p: &[Q]) -> Option<Vec<Q>> {
    let lcm = p.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let ints: Vec<BigInt> = p.iter().map(|c| (c * Q::from_integer(lcm.clone())).to_integer()).collect();
    let deg = ints.len() - 1;
    let mut roots = Vec::new();
    let mut low = 0;
    while low < deg && ints[low].is_zero() {
        roots.push(Q::zero());
        low += 1;
    }
    if low < deg {
        let num = divisors(&ints[low])?;
        let den = divisors(&ints[deg])?;
        for a in &num {
            for b in &den {
                for s in [1i64, -1] {
                    let r = Q::new(a * BigInt::from(s), b.clone());
                    if roots.contains(&r) {
                        continue;
                    }
                    let v = p.iter().rev().fold(Q::zero(), |acc, c| acc * &r + c);
                    if v.is_zero() {
                        roots.push(r);
                    }
                }
            }
        }
    }
    (roots.len() == deg).then_some(roots)
}

/// Parses structure equations written with symbols `w{i}_{j}` standing for
/// `theta^i ^ theta^j`, e.g. `"-6*w0_5 + w1_4 - 3*w2_3"`. `labels` maps the
/// printed indices to positions; `params` substitutes free parameters.
pub fn parse_structure_equations(
    labels: &[usize],
    equations: &[&str],
    params: &[(&str, Q)],
) -> Result<Vec<BTreeMap<(usize, usize), Q>>, Error> {
    let pos = |l: usize| labels.iter().position(|&m| m == l).ok_or_else(|| Error::Precondition(format!("unknown index {l}")));
    let subs: BTreeMap<Symbol, Expr> =
        params.iter().map(|(n, v)| Ok((Symbol::param(n)?, Expr::from_rational(v)))).collect::<Result<_, Error>>()?;
    equations
        .iter()
        .map(|text| {
            let e: Expr = text.parse::<Expr>()?.subs(&subs)?;
            let mut out = BTreeMap::new();
            for s in e.symbols() {
                let name = s.name();
                let (i, j) = name
                    .strip_prefix('w')
                    .and_then(|r| r.split_once('_'))
                    .and_then(|(a, b)| Some((a.parse::<usize>().ok()?, b.parse::<usize>().ok()?)))
                    .ok_or_else(|| Error::Precondition(format!("unexpected symbol {name}")))?;
                let coef = e.partial(s).as_rational().ok_or_else(|| Error::Precondition(format!("non-constant coefficient of {name}")))?;
                let (a, b) = (pos(i)?, pos(j)?);
                let (key, v) = if a < b { ((a, b), coef) } else { ((b, a), -coef) };
                *out.entry(key).or_insert_with(Q::zero) += v;
            }
            out.retain(|_, v: &mut Q| !v.is_zero());
            Ok(out)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    /// sl(2) with `[h, e] = 2e`, `[h, f] = -2f`, `[e, f] = h`.
    fn sl2() -> LieAlgebra {
        let names = vec!["h".into(), "e".into(), "f".into()];
        let mut c = vec![vec![vec![q(0); 3]; 3]; 3];
        let mut set = |i: usize, j: usize, k: usize, v: i64| {
            c[i][j][k] = q(v);
            c[j][i][k] = q(-v);
        };
        set(0, 1, 1, 2);
        set(0, 2, 2, -2);
        set(1, 2, 0, 1);
        LieAlgebra::new(names, c).unwrap()
    }

    #[test]
    fn sl2_killing() {
        let g = sl2();
        assert!(g.jacobi_violations().is_empty());
        assert!(g.d_squared_failures().is_empty());
        assert_eq!(g.killing_signature(), (2, 1, 0));
        assert!(g.is_semisimple());
        assert!(g.center().is_empty());
        assert_eq!(g.centroid().len(), 1);
    }

    #[test]
    fn matrices_give_sl2() {
        let m = |a: [[i64; 2]; 2]| a.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect::<Matrix<Q>>();
        let g = LieAlgebra::from_matrices(
            vec!["h".into(), "e".into(), "f".into()],
            &[m([[1, 0], [0, -1]]), m([[0, 1], [0, 0]]), m([[0, 0], [1, 0]])],
        )
        .unwrap();
        assert_eq!(g, sl2());
    }

    #[test]
    fn heisenberg_is_nilpotent_with_center() {
        let eqs = parse_structure_equations(&[0, 1, 2], &["w1_2", "0", "0"], &[]).unwrap();
        let g = LieAlgebra::from_structure_equations(vec!["z".into(), "p".into(), "q".into()], &eqs).unwrap();
        assert_eq!(g.c[1][2][0], q(-1));
        assert!(g.is_nilpotent());
        assert_eq!(g.center().len(), 1);
        assert!(!g.is_semisimple());
    }

    #[test]
    fn roots_of_split_polynomial() {
        // (x - 2)(x + 1/3) = x^2 - 5/3 x - 2/3
        let p = vec![crate::linalg::qr(-2, 3), crate::linalg::qr(-5, 3), q(1)];
        let mut r = rational_roots(&p).unwrap();
        r.sort();
        assert_eq!(r, vec![crate::linalg::qr(-1, 3), q(2)]);
        assert!(rational_roots(&[q(-2), q(0), q(1)]).is_none());
    }

    #[test]
    fn parse_flips_order() {
        let eqs = parse_structure_equations(&[3, 7], &["2*w7_3 + e*w3_7"], &[("e", q(5))]).unwrap();
        assert_eq!(eqs[0][&(0, 1)], q(3));
    }
}
