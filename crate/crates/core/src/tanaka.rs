//! Tanaka prolongation over the 5-dimensional Heisenberg algebra, and
//! Chevalley-Eilenberg cohomology of it with coefficients in `g2` and `q`.
//!
//! `m = m_-2 + m_-1` has basis `E0 | E1..E4` taken from the `g2` table. An
//! element of degree `k >= 1` is stored as the pair of linear maps
//! `m_-1 -> g_{k-1}` and `m_-2 -> g_{k-2}`.

use num_traits::Zero;
use serde::Serialize;

use crate::g2alg::{self, DEGREES};
use crate::lie::{minimal_polynomial, rational_roots, LieAlgebra, Q};
use crate::linalg::{self, Matrix};
use crate::Error;

/// The Heisenberg algebra `m`: `[E_i, E_j] = omega[i][j] E0` for `i, j` in `1..=4`.
#[derive(Debug, Clone)]
pub struct GradedNilpotent {
    pub omega: Matrix<Q>,
}

impl GradedNilpotent {
    pub fn from_g2() -> Result<Self, Error> {
        let g = g2alg::commutator_table()?;
        let omega: Matrix<Q> = (1..5).map(|i| (1..5).map(|j| g.c[i][j][0].clone()).collect()).collect();
        for i in 0..5 {
            for j in 0..5 {
                for k in 1..5 {
                    if !g.c[i][j][k].is_zero() {
                        return Err(Error::Mismatch("g_- bracket has a g_-1 component".into()));
                    }
                }
                if (i == 0 || j == 0) && !g.c[i][j][0].is_zero() {
                    return Err(Error::Mismatch("g_-2 is not central".into()));
                }
            }
        }
        if linalg::determinant(&omega).is_zero() {
            return Err(Error::Mismatch("bracket on g_-1 is degenerate".into()));
        }
        Ok(GradedNilpotent { omega })
    }

    pub fn degree(i: usize) -> i32 {
        if i == 0 {
            -2
        } else {
            -1
        }
    }

    /// `[E_a, E_b]` as a coefficient of `E0`.
    fn bracket0(&self, a: usize, b: usize) -> Q {
        if a == 0 || b == 0 {
            Q::zero()
        } else {
            self.omega[a - 1][b - 1].clone()
        }
    }

    /// Is the 5x5 matrix `d` (acting on coordinates of `E0..E4`) a grading-preserving derivation?
    pub fn is_graded_derivation(&self, d: &Matrix<Q>) -> bool {
        for i in 1..5 {
            if !d[0][i].is_zero() || !d[i][0].is_zero() {
                return false;
            }
        }
        for a in 1..5 {
            for b in 1..5 {
                // d[Ea, Eb] = [d Ea, Eb] + [Ea, d Eb], compared on E0
                let lhs = &self.bracket0(a, b) * &d[0][0];
                let mut rhs = Q::zero();
                for c in 1..5 {
                    rhs += &d[c][a] * self.bracket0(c, b) + &d[c][b] * self.bracket0(a, c);
                }
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }

    /// Basis of all grading-preserving derivations.
    pub fn graded_derivations(&self) -> Vec<Matrix<Q>> {
        // unknowns: d00, then d[c][a] for c, a in 1..5
        let idx = |c: usize, a: usize| 1 + (c - 1) * 4 + (a - 1);
        let mut rows = Vec::new();
        for a in 1..5 {
            for b in 1..5 {
                let mut row = vec![Q::zero(); 17];
                row[0] += self.bracket0(a, b);
                for c in 1..5 {
                    row[idx(c, a)] -= self.bracket0(c, b);
                    row[idx(c, b)] -= self.bracket0(a, c);
                }
                rows.push(row);
            }
        }
        linalg::nullspace(&rows, 17)
            .into_iter()
            .map(|v| {
                let mut d = linalg::zeros::<Q>(5, 5);
                d[0][0] = v[0].clone();
                for c in 1..5 {
                    for a in 1..5 {
                        d[c][a] = v[idx(c, a)].clone();
                    }
                }
                d
            })
            .collect()
    }
}

/// A homogeneous element of the prolongation: degree and coordinates in that component.
#[derive(Debug, Clone, PartialEq)]
pub struct Graded {
    pub deg: i32,
    pub v: Vec<Q>,
}

/// Basis element of `g_k`, `k >= 1`.
#[derive(Debug, Clone)]
pub struct PositiveElement {
    /// Images of `E1..E4` in `g_{k-1}`.
    pub on_minus1: Vec<Vec<Q>>,
    /// Image of `E0` in `g_{k-2}`.
    pub on_minus2: Vec<Q>,
}

#[derive(Debug, Clone)]
pub struct ProlongationTable {
    pub m: GradedNilpotent,
    pub g0: Vec<Matrix<Q>>,
    /// `positive[k-1]` is a basis of `g_k`.
    pub positive: Vec<Vec<PositiveElement>>,
    /// A zero component was reached, so the prolongation is finite and complete.
    pub complete: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ProlongationSummary {
    pub g0_dim: usize,
    /// Dimensions of `g_1, g_2, ..` up to and including the first zero component.
    pub positive_dims: Vec<usize>,
    pub complete: bool,
    pub total: Option<usize>,
}

impl ProlongationTable {
    pub fn dim_of(&self, deg: i32) -> usize {
        match deg {
            -2 => 1,
            -1 => 4,
            0 => self.g0.len(),
            k if k > 0 => self.positive.get(k as usize - 1).map(Vec::len).unwrap_or(0),
            _ => 0,
        }
    }

    pub fn summary(&self) -> ProlongationSummary {
        let positive_dims: Vec<usize> = self.positive.iter().map(Vec::len).collect();
        let total = self.complete.then(|| 5 + self.g0.len() + positive_dims.iter().sum::<usize>());
        ProlongationSummary { g0_dim: self.g0.len(), positive_dims, complete: self.complete, total }
    }

    fn zero(&self, deg: i32) -> Graded {
        Graded { deg, v: vec![Q::zero(); self.dim_of(deg)] }
    }

    /// `[x, E_y]` for `x` of degree `>= 0`.
    fn act(&self, x: &Graded, y: usize) -> Graded {
        let dy = GradedNilpotent::degree(y);
        let mut out = self.zero(x.deg + dy);
        if x.deg == 0 {
            for (a, d) in self.g0.iter().enumerate() {
                if x.v[a].is_zero() {
                    continue;
                }
                if y == 0 {
                    out.v[0] += &x.v[a] * &d[0][0];
                } else {
                    for c in 1..5 {
                        out.v[c - 1] += &x.v[a] * &d[c][y];
                    }
                }
            }
            return out;
        }
        let basis = &self.positive[x.deg as usize - 1];
        for (b, e) in basis.iter().enumerate() {
            if x.v[b].is_zero() {
                continue;
            }
            let img = if y == 0 { &e.on_minus2 } else { &e.on_minus1[y - 1] };
            for (o, w) in out.v.iter_mut().zip(img) {
                *o += &x.v[b] * w;
            }
        }
        out
    }

    fn m_element(y: usize) -> Graded {
        if y == 0 {
            Graded { deg: -2, v: vec![Q::from_integer(1.into())] }
        } else {
            let mut v = vec![Q::zero(); 4];
            v[y - 1] = Q::from_integer(1.into());
            Graded { deg: -1, v }
        }
    }

    fn m_parts(x: &Graded) -> Vec<(usize, Q)> {
        match x.deg {
            -2 => vec![(0, x.v[0].clone())],
            -1 => x.v.iter().enumerate().map(|(i, c)| (i + 1, c.clone())).collect(),
            _ => unreachable!(),
        }
    }

    /// The graded bracket on the prolongation.
    pub fn bracket(&self, x: &Graded, y: &Graded) -> Result<Graded, Error> {
        let s = x.deg + y.deg;
        if x.deg < 0 && y.deg < 0 {
            let mut out = self.zero(s);
            if s == -2 {
                for (a, ca) in Self::m_parts(x) {
                    for (b, cb) in Self::m_parts(y) {
                        out.v[0] += &ca * &cb * self.m.bracket0(a, b);
                    }
                }
            }
            return Ok(out);
        }
        if y.deg < 0 {
            let mut out = self.zero(s);
            for (b, cb) in Self::m_parts(y) {
                let t = self.act(x, b);
                for (o, w) in out.v.iter_mut().zip(&t.v) {
                    *o += &cb * w;
                }
            }
            return Ok(out);
        }
        if x.deg < 0 {
            let mut r = self.bracket(y, x)?;
            r.v.iter_mut().for_each(|c| *c = -c.clone());
            return Ok(r);
        }
        // both nonnegative: determine [x, y] by its action on m
        let mut on_m: Vec<Graded> = Vec::new();
        for e in 0..5 {
            let me = Self::m_element(e);
            let a = self.bracket(x, &self.bracket(y, &me)?)?;
            let b = self.bracket(y, &self.bracket(x, &me)?)?;
            on_m.push(Graded { deg: a.deg, v: a.v.iter().zip(&b.v).map(|(p, q)| p - q).collect() });
        }
        self.from_action(s, &on_m)
    }

    /// The element of degree `s >= 0` with the given values on `E0..E4`.
    fn from_action(&self, s: i32, on_m: &[Graded]) -> Result<Graded, Error> {
        let target: Vec<Q> = on_m.iter().flat_map(|g| g.v.iter().cloned()).collect();
        let n = self.dim_of(s);
        if n == 0 {
            if target.iter().all(Zero::is_zero) {
                return Ok(self.zero(s));
            }
            if s > 0 && !self.complete && s as usize > self.positive.len() {
                return Err(Error::Precondition(format!("degree {s} lies beyond the computed prolongation")));
            }
            return Err(Error::Mismatch(format!("bracket has no preimage in degree {s}")));
        }
        let cols: Vec<Vec<Q>> = (0..n)
            .map(|b| {
                let mut v = vec![Q::zero(); n];
                v[b] = Q::from_integer(1.into());
                let g = Graded { deg: s, v };
                (0..5).flat_map(|e| self.act(&g, e).v).collect()
            })
            .collect();
        let a: Matrix<Q> = (0..target.len()).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect();
        let v = linalg::solve(&a, &target).ok_or_else(|| Error::Mismatch(format!("bracket leaves g_{s}")))?;
        Ok(Graded { deg: s, v })
    }

    /// Basis of the whole algebra ordered by degree, with structure constants.
    pub fn to_lie_algebra(&self) -> Result<LieAlgebra, Error> {
        if !self.complete {
            return Err(Error::Precondition("prolongation was truncated".into()));
        }
        let top = self.positive.len() as i32;
        let mut basis: Vec<(i32, usize)> = Vec::new();
        for d in -2..=top {
            for i in 0..self.dim_of(d) {
                basis.push((d, i));
            }
        }
        let unit = |d: i32, i: usize| {
            let mut v = vec![Q::zero(); self.dim_of(d)];
            v[i] = Q::from_integer(1.into());
            Graded { deg: d, v }
        };
        let n = basis.len();
        let mut c = vec![vec![vec![Q::zero(); n]; n]; n];
        for (a, &(da, ia)) in basis.iter().enumerate() {
            for (b, &(db, ib)) in basis.iter().enumerate() {
                let r = self.bracket(&unit(da, ia), &unit(db, ib))?;
                for (k, &(dk, ik)) in basis.iter().enumerate() {
                    if dk == r.deg && ik < r.v.len() {
                        c[a][b][k] = r.v[ik].clone();
                    }
                }
            }
        }
        let names = basis.iter().map(|(d, i)| format!("g{d}_{i}")).collect();
        LieAlgebra::new(names, c)
    }
}

/// Prolongs `(m, g0)` degree by degree up to `max_degree`, stopping at the
/// first zero component.
pub fn tanaka_prolong(m: &GradedNilpotent, g0: &[Matrix<Q>], max_degree: usize) -> Result<ProlongationTable, Error> {
    for d in g0 {
        if !m.is_graded_derivation(d) {
            return Err(Error::Precondition("g0 contains a map that is not a graded derivation".into()));
        }
    }
    let flat = |d: &Matrix<Q>| d.iter().flatten().cloned().collect::<Vec<Q>>();
    let span: Matrix<Q> = g0.iter().map(flat).collect();
    if linalg::rank(&span) != g0.len() {
        return Err(Error::Precondition("g0 matrices are dependent".into()));
    }
    for a in g0 {
        for b in g0 {
            let ab = linalg::mat_mul(a, b);
            let ba = linalg::mat_mul(b, a);
            let comm: Vec<Q> = flat(&ab).iter().zip(flat(&ba)).map(|(x, y)| x - y).collect();
            let mut rows = span.clone();
            rows.push(comm);
            if linalg::rank(&rows) != g0.len() {
                return Err(Error::Precondition("g0 is not closed under commutators".into()));
            }
        }
    }
    let mut t = ProlongationTable { m: m.clone(), g0: g0.to_vec(), positive: Vec::new(), complete: false };
    for k in 1..=max_degree as i32 {
        let n1 = t.dim_of(k - 1);
        let n2 = t.dim_of(k - 2);
        let unknowns = 4 * n1 + n2;
        let element = |u: &[Q]| PositiveElement {
            on_minus1: (0..4).map(|i| u[i * n1..(i + 1) * n1].to_vec()).collect(),
            on_minus2: u[4 * n1..].to_vec(),
        };
        // residuals of the derivation rule, one column per unit unknown
        let residual = |u: &[Q]| -> Vec<Q> {
            let e = element(u);
            let phi = |y: usize| {
                if y == 0 {
                    Graded { deg: k - 2, v: e.on_minus2.clone() }
                } else {
                    Graded { deg: k - 1, v: e.on_minus1[y - 1].clone() }
                }
            };
            let mut out = Vec::new();
            for a in 0..5 {
                for b in (a + 1)..5 {
                    let lhs = phi(0).v.iter().map(|c| c * t.m.bracket0(a, b)).collect::<Vec<Q>>();
                    let ra = t.bracket(&phi(a), &ProlongationTable::m_element(b)).expect("lower degrees");
                    let rb = t.bracket(&ProlongationTable::m_element(a), &phi(b)).expect("lower degrees");
                    if a == 0 {
                        out.extend(ra.v.iter().zip(&rb.v).map(|(p, q)| -(p + q)));
                    } else {
                        out.extend(lhs.iter().zip(ra.v.iter().zip(&rb.v)).map(|(l, (p, q))| l - p - q));
                    }
                }
            }
            out
        };
        let cols: Vec<Vec<Q>> = (0..unknowns)
            .map(|i| {
                let mut u = vec![Q::zero(); unknowns];
                u[i] = Q::from_integer(1.into());
                residual(&u)
            })
            .collect();
        let rows: Matrix<Q> = (0..cols.first().map(Vec::len).unwrap_or(0))
            .map(|r| cols.iter().map(|c| c[r].clone()).collect())
            .collect();
        let sols = linalg::nullspace(&rows, unknowns);
        let done = sols.is_empty();
        t.positive.push(sols.iter().map(|u| element(u)).collect());
        if done {
            t.complete = true;
            t.positive.pop();
            break;
        }
    }
    Ok(t)
}

fn restricted_ad(g: &LieAlgebra, i: usize) -> Matrix<Q> {
    (0..5).map(|r| (0..5).map(|c| g.c[i][c][r].clone()).collect()).collect()
}

/// `ad(E5..E8)` restricted to `m`: the irreducible `gl(2)` in `csp(4)`.
pub fn g0_gl2() -> Result<Vec<Matrix<Q>>, Error> {
    let g = g2alg::commutator_table()?;
    Ok((5..9).map(|i| restricted_ad(&g, i)).collect())
}

/// `ad(E5, E6, E8)` restricted to `m`: the Borel subalgebra `q0`.
pub fn g0_borel() -> Result<Vec<Matrix<Q>>, Error> {
    let g = g2alg::commutator_table()?;
    Ok(g2alg::q0_indices().iter().map(|&i| restricted_ad(&g, i)).collect())
}

/// Images of basis elements of `l` in the prolongation `t`, degree by degree.
/// `index` lists the basis indices of `l` by degree `-2, -1, 0, 1, ..`, with
/// the `m` and `g0` parts in the same order as `t`.
pub fn graded_isomorphism(t: &ProlongationTable, l: &LieAlgebra, index: &[Vec<usize>]) -> Result<bool, Error> {
    let m_idx: Vec<usize> = index[0].iter().chain(&index[1]).copied().collect();
    let mut images: Vec<(usize, Graded)> = Vec::new();
    for (slot, &i) in index[0].iter().chain(&index[1]).enumerate() {
        images.push((i, ProlongationTable::m_element(slot)));
    }
    for (a, &i) in index[2].iter().enumerate() {
        let mut v = vec![Q::zero(); t.g0.len()];
        v[a] = Q::from_integer(1.into());
        images.push((i, Graded { deg: 0, v }));
    }
    let image_of = |images: &[(usize, Graded)], x: &[Q], deg: i32| -> Graded {
        let mut out = Graded { deg, v: vec![Q::zero(); t.dim_of(deg)] };
        for (i, g) in images {
            if g.deg == deg && !x[*i].is_zero() {
                for (o, w) in out.v.iter_mut().zip(&g.v) {
                    *o += &x[*i] * w;
                }
            }
        }
        out
    };
    for (k, idx) in index.iter().enumerate().skip(3) {
        let deg = k as i32 - 2;
        if idx.len() != t.dim_of(deg) {
            return Ok(false);
        }
        for &i in idx {
            let on_m: Vec<Graded> =
                m_idx.iter().map(|&e| image_of(&images, &l.bracket(&l.basis_vector(i), &l.basis_vector(e)), deg + GradedNilpotent::degree(if e == m_idx[0] { 0 } else { 1 }))).collect();
            let g = t.from_action(deg, &on_m)?;
            images.push((i, g));
        }
    }
    if images.len() != l.dim() || index.iter().skip(3).count() != t.positive.len() {
        return Ok(false);
    }
    // bijective in each degree
    for (k, idx) in index.iter().enumerate() {
        let deg = k as i32 - 2;
        let vecs: Vec<Vec<Q>> = images.iter().filter(|(i, _)| idx.contains(i)).map(|(_, g)| g.v.clone()).collect();
        if vecs.len() != t.dim_of(deg) || linalg::rank(&vecs) != vecs.len() {
            return Ok(false);
        }
    }
    let deg_of = |i: usize| index.iter().position(|v| v.contains(&i)).unwrap() as i32 - 2;
    for a in 0..l.dim() {
        for b in 0..l.dim() {
            let lhs = image_of(&images, &l.bracket(&l.basis_vector(a), &l.basis_vector(b)), deg_of(a) + deg_of(b));
            let ga = images.iter().find(|(i, _)| *i == a).unwrap().1.clone();
            let gb = images.iter().find(|(i, _)| *i == b).unwrap().1.clone();
            let rhs = t.bracket(&ga, &gb)?;
            if lhs.v != rhs.v {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Coefficient algebra for cohomology: `g2` or its subalgebra `q`, graded.
#[derive(Debug, Clone)]
pub struct Coefficients {
    pub algebra: LieAlgebra,
    pub degrees: Vec<i32>,
}

impl Coefficients {
    pub fn g() -> Result<Self, Error> {
        Ok(Coefficients { algebra: g2alg::commutator_table()?, degrees: DEGREES.to_vec() })
    }

    pub fn q() -> Result<Self, Error> {
        let algebra = g2alg::commutator_table()?.restrict(&g2alg::Q_INDICES)?;
        Ok(Coefficients { algebra, degrees: g2alg::Q_INDICES.iter().map(|&i| DEGREES[i]).collect() })
    }
}

/// The cochain space `(Lambda^p m* (x) V)_l`: basis of (sorted argument set, output index).
#[derive(Debug, Clone)]
pub struct CochainSpace {
    pub degree: usize,
    pub homogeneity: i32,
    pub basis: Vec<(Vec<usize>, usize)>,
}

fn subsets(n: usize, p: usize) -> Vec<Vec<usize>> {
    if p == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 0..n {
        for mut rest in subsets(n, p - 1) {
            if rest.first().map(|&r| r > first).unwrap_or(true) {
                rest.insert(0, first);
                out.push(rest);
            }
        }
    }
    out
}

impl CochainSpace {
    pub fn new(v: &Coefficients, p: usize, l: i32) -> Self {
        let mut basis = Vec::new();
        for s in subsets(5, p) {
            let w: i32 = s.iter().map(|&i| GradedNilpotent::degree(i)).sum();
            for (b, &d) in v.degrees.iter().enumerate() {
                if d - w == l {
                    basis.push((s.clone(), b));
                }
            }
        }
        CochainSpace { degree: p, homogeneity: l, basis }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    fn position(&self, s: &[usize], b: usize) -> Option<usize> {
        self.basis.iter().position(|(t, c)| t == s && *c == b)
    }
}

/// Sign and sorted form of an argument list, or `None` if it repeats.
fn sort_args(args: &[usize]) -> Option<(i32, Vec<usize>)> {
    let mut v = args.to_vec();
    let mut sign = 1;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    v.windows(2).all(|w| w[0] != w[1]).then_some((sign, v))
}

/// Matrix of the differential `C^p_l -> C^{p+1}_l`.
pub fn coboundary(v: &Coefficients, from: &CochainSpace) -> Result<(CochainSpace, Matrix<Q>), Error> {
    let to = CochainSpace::new(v, from.degree + 1, from.homogeneity);
    let g = &v.algebra;
    let mut m = linalg::zeros::<Q>(to.dim(), from.dim());
    for (col, (s, b)) in from.basis.iter().enumerate() {
        // value of the basis cochain on an argument list
        let phi = |args: &[usize]| -> Option<Q> {
            let (sign, sorted) = sort_args(args)?;
            (sorted == *s).then(|| Q::from_integer(sign.into()))
        };
        for t in subsets(5, from.degree + 1) {
            let mut value = vec![Q::zero(); g.dim()];
            for (i, &xi) in t.iter().enumerate() {
                let rest: Vec<usize> = t.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, &x)| x).collect();
                if let Some(c) = phi(&rest) {
                    let sign = if i % 2 == 0 { c } else { -c };
                    let br = g.bracket(&g.basis_vector(xi), &g.basis_vector(*b));
                    for (o, w) in value.iter_mut().zip(&br) {
                        *o += &sign * w;
                    }
                }
            }
            for i in 0..t.len() {
                for j in (i + 1)..t.len() {
                    let br = g.bracket(&g.basis_vector(t[i]), &g.basis_vector(t[j]));
                    for (k, ck) in br.iter().enumerate().take(5) {
                        if ck.is_zero() {
                            continue;
                        }
                        let mut args = vec![k];
                        args.extend(t.iter().enumerate().filter(|(x, _)| *x != i && *x != j).map(|(_, &y)| y));
                        if let Some(c) = phi(&args) {
                            let sign = if (i + j) % 2 == 0 { c } else { -c };
                            value[*b] += &sign * ck;
                        }
                    }
                }
            }
            for (out, w) in value.iter().enumerate() {
                if w.is_zero() {
                    continue;
                }
                let row = to
                    .position(&t, out)
                    .ok_or_else(|| Error::Mismatch("coboundary changed the homogeneity".into()))?;
                m[row][col] += w;
            }
        }
    }
    Ok((to, m))
}

#[derive(Debug, Clone, Serialize)]
pub struct CohomologyDims {
    pub cochains: usize,
    pub kernel: usize,
    pub image_in: usize,
    pub dim: usize,
    pub d_squared_zero: bool,
}

/// `dim H^p(m, V)_l` by exact ranks.
pub fn cohomology(v: &Coefficients, p: usize, l: i32) -> Result<CohomologyDims, Error> {
    let here = CochainSpace::new(v, p, l);
    let (_, d_out) = coboundary(v, &here)?;
    let (image_in, d_squared_zero) = if p == 0 {
        (0, true)
    } else {
        let before = CochainSpace::new(v, p - 1, l);
        let (mid, d_in) = coboundary(v, &before)?;
        debug_assert_eq!(mid.basis, here.basis);
        let dd = if d_out.is_empty() || d_in.first().map(Vec::is_empty).unwrap_or(true) {
            true
        } else {
            linalg::mat_mul(&d_out, &d_in).iter().flatten().all(Zero::is_zero)
        };
        (linalg::rank(&d_in), dd)
    };
    let kernel = here.dim() - linalg::rank(&d_out);
    Ok(CohomologyDims { cochains: here.dim(), kernel, image_in, dim: kernel - image_in, d_squared_zero })
}

pub fn cohomology_dim(v: &Coefficients, p: usize, l: i32) -> Result<usize, Error> {
    Ok(cohomology(v, p, l)?.dim)
}

#[derive(Debug, Clone, Serialize)]
pub struct JointEigenspace {
    pub weights: (String, String),
    pub dim: usize,
    pub inside_image: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct NormalizationReport {
    pub cochains: usize,
    pub kernel: usize,
    pub image_g: usize,
    pub image_q: usize,
    pub image_q_inside_image_g: bool,
    /// Joint eigenspaces of `E5, E8` on the kernel of `E6` inside the larger image.
    pub invariant_lines: Vec<JointEigenspace>,
}

impl NormalizationReport {
    /// Every `q0`-invariant line of the larger image lies in the smaller one,
    /// so the smaller image has no `q0`-invariant complement.
    pub fn no_invariant_complement(&self) -> bool {
        !self.invariant_lines.is_empty() && self.invariant_lines.iter().all(|e| e.inside_image)
    }
}

/// Action of `E_a` (index in `g`) on 2-cochains of homogeneity `l` with values in `g`.
fn cochain_action(v: &Coefficients, space: &CochainSpace, a: usize) -> Result<Matrix<Q>, Error> {
    let g = &v.algebra;
    let x = g.basis_vector(a);
    let mut m = linalg::zeros::<Q>(space.dim(), space.dim());
    for (col, (s, b)) in space.basis.iter().enumerate() {
        let out = g.bracket(&x, &g.basis_vector(*b));
        for (k, w) in out.iter().enumerate() {
            if !w.is_zero() {
                let row = space.position(s, k).ok_or_else(|| Error::Mismatch("action changed the homogeneity".into()))?;
                m[row][col] += w;
            }
        }
        // -phi([A, X], Y) - phi(X, [A, Y]) as an action on the arguments
        for (pos, &arg) in s.iter().enumerate() {
            // the dual action on m*: (A.e^arg)(X) = -e^arg([A, X])
            for src in 0..5 {
                let br = g.bracket(&x, &g.basis_vector(src));
                let c = &br[arg];
                if c.is_zero() {
                    continue;
                }
                let mut args = s.clone();
                args[pos] = src;
                if let Some((sign, sorted)) = sort_args(&args) {
                    let row = space
                        .position(&sorted, *b)
                        .ok_or_else(|| Error::Mismatch("action changed the homogeneity".into()))?;
                    m[row][col] -= c * Q::from_integer(sign.into());
                }
            }
        }
    }
    Ok(m)
}

fn columns(m: &Matrix<Q>) -> Vec<Vec<Q>> {
    let cols = m.first().map(Vec::len).unwrap_or(0);
    let all: Vec<Vec<Q>> = (0..cols).map(|c| m.iter().map(|r| r[c].clone()).collect()).collect();
    linalg::independent_subset(&all).into_iter().map(|i| all[i].clone()).collect()
}

/// Intersection of the span of `basis` with the kernel of `op`, as vectors.
fn kernel_within(op: &Matrix<Q>, basis: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let images: Vec<Vec<Q>> = basis.iter().map(|b| linalg::mat_vec(op, b)).collect();
    let n = op.len();
    let a: Matrix<Q> = (0..n).map(|r| images.iter().map(|c| c[r].clone()).collect()).collect();
    linalg::nullspace(&a, basis.len())
        .into_iter()
        .map(|coef| combine(basis, &coef))
        .collect()
}

fn combine(basis: &[Vec<Q>], coef: &[Q]) -> Vec<Q> {
    let n = basis.first().map(Vec::len).unwrap_or(0);
    let mut v = vec![Q::zero(); n];
    for (b, c) in basis.iter().zip(coef) {
        for (o, w) in v.iter_mut().zip(b) {
            *o += c * w;
        }
    }
    v
}

/// Matrix of `op` restricted to an invariant subspace, in the given basis.
fn restrict_to(op: &Matrix<Q>, basis: &[Vec<Q>]) -> Result<Matrix<Q>, Error> {
    let n = op.len();
    let a: Matrix<Q> = (0..n).map(|r| basis.iter().map(|c| c[r].clone()).collect()).collect();
    let cols: Vec<Vec<Q>> = basis
        .iter()
        .map(|b| linalg::solve(&a, &linalg::mat_vec(op, b)).ok_or_else(|| Error::Mismatch("subspace is not invariant".into())))
        .collect::<Result<_, Error>>()?;
    Ok((0..basis.len()).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect())
}

/// Eigenspaces of `op` on an invariant subspace; eigenvalues must be rational.
fn eigenspaces(op: &Matrix<Q>, basis: &[Vec<Q>]) -> Result<Vec<(Q, Vec<Vec<Q>>)>, Error> {
    if basis.is_empty() {
        return Ok(Vec::new());
    }
    let r = restrict_to(op, basis)?;
    let roots = rational_roots(&minimal_polynomial(&r)).ok_or_else(|| Error::Mismatch("eigenvalues are not rational".into()))?;
    let mut total = 0;
    let out: Vec<(Q, Vec<Vec<Q>>)> = roots
        .into_iter()
        .map(|lam| {
            let mut s = r.clone();
            for (i, row) in s.iter_mut().enumerate() {
                row[i] -= &lam;
            }
            let vs: Vec<Vec<Q>> = linalg::nullspace(&s, basis.len()).iter().map(|c| combine(basis, c)).collect();
            total += vs.len();
            (lam, vs)
        })
        .collect();
    if total != basis.len() {
        return Err(Error::Mismatch("operator is not diagonalizable on the subspace".into()));
    }
    Ok(out)
}

pub fn normalization_obstruction() -> Result<NormalizationReport, Error> {
    let g = Coefficients::g()?;
    let qc = Coefficients::q()?;
    let c1g = CochainSpace::new(&g, 1, 1);
    let (c2g, dg) = coboundary(&g, &c1g)?;
    let c1q = CochainSpace::new(&qc, 1, 1);
    let (c2q, dq) = coboundary(&qc, &c1q)?;
    // embed q-valued 2-cochains into g-valued ones
    let mut embed = linalg::zeros::<Q>(c2g.dim(), c2q.dim());
    for (col, (s, b)) in c2q.basis.iter().enumerate() {
        let row = c2g
            .position(s, g2alg::Q_INDICES[*b])
            .ok_or_else(|| Error::Mismatch("q-valued cochain outside the g-valued space".into()))?;
        embed[row][col] = Q::from_integer(1.into());
    }
    let img_g = columns(&dg);
    let img_q = columns(&linalg::mat_mul(&embed, &dq));
    let mut both = img_g.clone();
    both.extend(img_q.iter().cloned());
    let image_q_inside_image_g = linalg::rank(&both) == img_g.len();
    let (_, d2) = coboundary(&g, &c2g)?;
    let kernel = c2g.dim() - linalg::rank(&d2);

    let [e5, e6, e8] = g2alg::q0_indices();
    let a5 = cochain_action(&g, &c2g, e5)?;
    let a6 = cochain_action(&g, &c2g, e6)?;
    let a8 = cochain_action(&g, &c2g, e8)?;
    let k6 = kernel_within(&a6, &img_g);
    let mut invariant_lines = Vec::new();
    for (l5, space5) in eigenspaces(&a5, &k6)? {
        for (l8, space) in eigenspaces(&a8, &space5)? {
            let mut test = img_q.clone();
            let r = linalg::rank(&test);
            test.extend(space.iter().cloned());
            invariant_lines.push(JointEigenspace {
                weights: (l5.to_string(), l8.to_string()),
                dim: space.len(),
                inside_image: linalg::rank(&test) == r,
            });
        }
    }
    Ok(NormalizationReport {
        cochains: c2g.dim(),
        kernel,
        image_g: img_g.len(),
        image_q: img_q.len(),
        image_q_inside_image_g,
        invariant_lines,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn heisenberg_and_derivations() {
        let m = GradedNilpotent::from_g2().unwrap();
        assert_eq!(m.graded_derivations().len(), 11);
        for d in g0_gl2().unwrap() {
            assert!(m.is_graded_derivation(&d));
        }
    }

    #[test]
    fn gl2_prolongs_to_g2() {
        let m = GradedNilpotent::from_g2().unwrap();
        let t = tanaka_prolong(&m, &g0_gl2().unwrap(), 6).unwrap();
        let s = t.summary();
        assert_eq!(s.positive_dims, vec![4, 1]);
        assert_eq!(s.total, Some(14));
        let l = g2alg::commutator_table().unwrap();
        let index = vec![vec![0], vec![1, 2, 3, 4], vec![5, 6, 7, 8], vec![9, 10, 11, 12], vec![13]];
        assert!(graded_isomorphism(&t, &l, &index).unwrap());
        assert!(t.to_lie_algebra().unwrap().jacobi_violations().is_empty());
    }

    #[test]
    fn borel_prolongs_to_q() {
        let m = GradedNilpotent::from_g2().unwrap();
        let t = tanaka_prolong(&m, &g0_borel().unwrap(), 6).unwrap();
        assert_eq!(t.summary().positive_dims, vec![1]);
        assert_eq!(t.summary().total, Some(9));
        let q = g2alg::commutator_table().unwrap().restrict(&g2alg::Q_INDICES).unwrap();
        let index = vec![vec![0], vec![1, 2, 3, 4], vec![5, 6, 7], vec![8]];
        assert!(graded_isomorphism(&t, &q, &index).unwrap());
    }

    #[test]
    fn full_derivations_do_not_terminate() {
        let m = GradedNilpotent::from_g2().unwrap();
        let t = tanaka_prolong(&m, &m.graded_derivations(), 2).unwrap();
        assert_eq!(t.summary().positive_dims, vec![24, 46]);
        assert!(!t.complete);
    }

    #[test]
    fn rejects_non_derivation() {
        let m = GradedNilpotent::from_g2().unwrap();
        let mut d = linalg::zeros::<Q>(5, 5);
        d[1][1] = Q::from_integer(1.into());
        assert!(tanaka_prolong(&m, &[d], 2).is_err());
    }

    #[test]
    fn low_cohomology() {
        let g = Coefficients::g().unwrap();
        for l in 1..=4 {
            assert_eq!(cohomology_dim(&g, 1, l).unwrap(), 0, "l = {l}");
        }
        let h2 = cohomology(&g, 2, 1).unwrap();
        assert_eq!((h2.cochains, h2.kernel, h2.dim), (28, 24, 8));
        assert!(h2.d_squared_zero);
        assert_eq!(cohomology_dim(&Coefficients::q().unwrap(), 2, 1).unwrap(), 9);
    }

    #[test]
    fn no_normalization() {
        let r = normalization_obstruction().unwrap();
        assert_eq!((r.cochains, r.image_g, r.image_q), (28, 16, 15));
        assert!(r.image_q_inside_image_g);
        assert!(r.no_invariant_complement(), "{r:?}");
    }
}
