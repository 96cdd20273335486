//! Pointwise algebra of the twisted cubic in `Sym^3 R^2`.
//!
//! Coordinates on `R^4` are taken with respect to `E1 = e1^3`, `E2 = 3 e1^2 e2`,
//! `E3 = 3 e1 e2^2`, `E4 = e2^3`, so the cone over the cubic is
//! `(s^3, s^2 u, s u^2, u^3)`.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;
use symexpr::{Expr, Mono, Symbol};

use crate::linalg::{self, q, Matrix, Scalar};

pub fn veronese(s: &BigRational, u: &BigRational) -> [BigRational; 4] {
    [s * s * s, s * s * u, s * u * u, u * u * u]
}

/// Values of the three quadrics cutting out the cubic.
pub fn quadric_values(p: &[BigRational; 4]) -> [BigRational; 3] {
    [
        &p[0] * &p[2] - &p[1] * &p[1],
        &p[1] * &p[3] - &p[2] * &p[2],
        &p[1] * &p[2] - &p[0] * &p[3],
    ]
}

fn times<T: Scalar>(k: i64, x: &T) -> T {
    let mut r = T::zero();
    for _ in 0..k {
        r = r.add(x);
    }
    r
}

/// The induced action of `[[alpha, beta], [c, delta]]` on `Sym^3 R^2`.
pub fn irrep_rho<T: Scalar>(a: &Matrix<T>) -> Matrix<T> {
    let (al, be, c, de) = (&a[0][0], &a[0][1], &a[1][0], &a[1][1]);
    let m = |x: &T, y: &T| x.mul(y);
    let m3 = |x: &T, y: &T, z: &T| x.mul(y).mul(z);
    vec![
        vec![m3(al, al, al), times(3, &m3(al, al, be)), times(3, &m3(al, be, be)), m3(be, be, be)],
        vec![
            m3(al, al, c),
            m3(al, al, de).add(&times(2, &m3(al, be, c))),
            times(2, &m3(al, be, de)).add(&m3(be, be, c)),
            m3(be, be, de),
        ],
        vec![
            m3(al, c, c),
            times(2, &m3(al, de, c)).add(&m3(be, c, c)),
            m3(al, de, de).add(&times(2, &m3(be, de, c))),
            m(be, &m(de, de)),
        ],
        vec![m3(c, c, c), times(3, &m3(de, c, c)), times(3, &m3(de, de, c)), m3(de, de, de)],
    ]
}

/// Tangent map of [`irrep_rho`] at the identity.
pub fn rho_prime(x: &Matrix<BigRational>) -> Matrix<BigRational> {
    let eps = Symbol::param("eps").expect("valid name");
    let e = Expr::sym(eps);
    let a: Matrix<Expr> = (0..2)
        .map(|i| {
            (0..2)
                .map(|j| {
                    let id = if i == j { Expr::one() } else { Expr::zero() };
                    id + e.clone() * Expr::from_rational(&x[i][j])
                })
                .collect()
        })
        .collect();
    irrep_rho(&a)
        .iter()
        .map(|row| {
            row.iter()
                .map(|v| {
                    v.partial(eps)
                        .subs1(eps, &Expr::zero())
                        .expect("polynomial")
                        .as_rational()
                        .expect("constant")
                })
                .collect()
        })
        .collect()
}

/// `rho'` of the elementary matrices `e11, e12, e21, e22`.
pub fn rho_prime_basis() -> Vec<Matrix<BigRational>> {
    (0..4)
        .map(|k| {
            let mut x = linalg::zeros(2, 2);
            x[k / 2][k % 2] = q(1);
            rho_prime(&x)
        })
        .collect()
}

fn sym_su() -> (Symbol, Symbol) {
    (Symbol::param("s").unwrap(), Symbol::param("u").unwrap())
}

/// Coefficient rows: one row per monomial in `(s, u)`, one column per unknown.
fn coefficient_system(columns: &[Expr]) -> Matrix<BigRational> {
    let mut rows: BTreeMap<Mono, Vec<BigRational>> = BTreeMap::new();
    let n = columns.len();
    for (j, e) in columns.iter().enumerate() {
        assert!(e.is_polynomial());
        for (mono, c) in e.numer().terms() {
            rows.entry(mono.clone()).or_insert_with(|| vec![q(0); n])[j] = BigRational::from_integer(c.clone());
        }
    }
    rows.into_values().collect()
}

/// Index pairs `(i, j)`, `i < j`, in the order used for 2-form coordinates.
pub const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

#[derive(Debug, Clone, Serialize)]
pub struct LegendrianSymplectic {
    /// Basis of the solution space, coordinates `w12, w13, w14, w23, w24, w34`.
    pub basis: Vec<Vec<String>>,
    pub dimension: usize,
    /// Solution normalized so that `w14 = 1`.
    pub normalized: Vec<BigRationalStr>,
}

pub type BigRationalStr = String;

/// Skew forms on `R^4` for which the tangent planes of the cone are isotropic.
pub fn legendrian_symplectic_space() -> Vec<Vec<BigRational>> {
    let (s, u) = sym_su();
    let (s, u) = (Expr::sym(s), Expr::sym(u));
    let x = [s.clone() * s.clone() * Expr::int(3), s.clone() * u.clone() * Expr::int(2), u.clone() * u.clone(), Expr::zero()];
    let y = [Expr::zero(), s.clone() * s.clone(), s.clone() * u.clone() * Expr::int(2), u.clone() * u.clone() * Expr::int(3)];
    let cols: Vec<Expr> = PAIRS.iter().map(|&(i, j)| &x[i] * &y[j] - &x[j] * &y[i]).collect();
    linalg::nullspace(&coefficient_system(&cols), 6)
}

pub fn legendrian_symplectic() -> LegendrianSymplectic {
    let basis = legendrian_symplectic_space();
    let normalized = basis
        .first()
        .map(|v| {
            let k = v[2].clone();
            v.iter().map(|x| (x / &k).to_string()).collect()
        })
        .unwrap_or_default();
    LegendrianSymplectic {
        dimension: basis.len(),
        basis: basis.iter().map(|v| v.iter().map(|x| x.to_string()).collect()).collect(),
        normalized,
    }
}

/// Antisymmetric matrix of a 2-form from its pair coordinates.
pub fn skew_matrix(w: &[BigRational]) -> Matrix<BigRational> {
    let mut m = linalg::zeros(4, 4);
    for (k, &(i, j)) in PAIRS.iter().enumerate() {
        m[i][j] = w[k].clone();
        m[j][i] = -w[k].clone();
    }
    m
}

/// Basis of the 4x4 matrices whose flow is tangent to the cone over the cubic.
pub fn stabilizer_subalgebra() -> Vec<Matrix<BigRational>> {
    let (s, u) = sym_su();
    let (s, u) = (Expr::sym(s), Expr::sym(u));
    let p = [
        s.clone() * s.clone() * s.clone(),
        s.clone() * s.clone() * u.clone(),
        s.clone() * u.clone() * u.clone(),
        u.clone() * u.clone() * u.clone(),
    ];
    // Gradients of the quadrics at p.
    let z = Expr::zero;
    let grads = [
        [p[2].clone(), -(p[1].clone() * Expr::int(2)), p[0].clone(), z()],
        [z(), p[3].clone(), -(p[2].clone() * Expr::int(2)), p[1].clone()],
        [-p[3].clone(), p[2].clone(), p[1].clone(), -p[0].clone()],
    ];
    let mut rows: Matrix<BigRational> = Vec::new();
    for g in &grads {
        // grad . M p, linear in the 16 entries M[a][b].
        let cols: Vec<Expr> = (0..16).map(|k| &g[k / 4] * &p[k % 4]).collect();
        rows.extend(coefficient_system(&cols));
    }
    linalg::nullspace(&rows, 16)
        .into_iter()
        .map(|v| (0..4).map(|a| v[4 * a..4 * a + 4].to_vec()).collect())
        .collect()
}

fn flatten(m: &Matrix<BigRational>) -> Vec<BigRational> {
    m.iter().flatten().cloned().collect()
}

/// Whether two lists of matrices span the same subspace.
pub fn same_span(a: &[Matrix<BigRational>], b: &[Matrix<BigRational>]) -> bool {
    let fa: Matrix<BigRational> = a.iter().map(flatten).collect();
    let fb: Matrix<BigRational> = b.iter().map(flatten).collect();
    let mut both = fa.clone();
    both.extend(fb.iter().cloned());
    let r = linalg::rank(&both);
    r == linalg::rank(&fa) && r == linalg::rank(&fb)
}

pub fn commutator(a: &Matrix<BigRational>, b: &Matrix<BigRational>) -> Matrix<BigRational> {
    let ab = linalg::mat_mul(a, b);
    let ba = linalg::mat_mul(b, a);
    ab.iter().zip(&ba).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x - y).collect()).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct CubicReport {
    pub homomorphism_samples: usize,
    pub homomorphism_ok: bool,
    pub equivariance_ok: bool,
    pub symplectic_dimension: usize,
    pub symplectic_relation_ok: bool,
    pub stabilizer_dimension: usize,
    pub stabilizer_equals_rho_prime: bool,
    pub stabilizer_closed: bool,
}

impl CubicReport {
    pub fn passed(&self) -> bool {
        self.homomorphism_ok
            && self.equivariance_ok
            && self.symplectic_dimension == 1
            && self.symplectic_relation_ok
            && self.stabilizer_dimension == 4
            && self.stabilizer_equals_rho_prime
            && self.stabilizer_closed
    }
}

/// Random integer 2x2 matrices with entries in `[-5, 5]`.
pub fn random_matrices(seed: u64, count: usize) -> Vec<Matrix<BigRational>> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| (0..2).map(|_| (0..2).map(|_| q(rng.gen_range(-5..=5))).collect()).collect())
        .collect()
}

/// Runs the whole battery with `samples` seeded random matrices.
pub fn verify(seed: u64, samples: usize) -> CubicReport {
    let mats = random_matrices(seed, 2 * samples);
    let mut hom = true;
    let mut equi = true;
    for pair in mats.chunks(2) {
        let (a, b) = (&pair[0], &pair[1]);
        hom &= linalg::mat_mul(&irrep_rho(a), &irrep_rho(b)) == irrep_rho(&linalg::mat_mul(a, b));
        let (s, u) = (b[0][0].clone(), b[1][1].clone());
        let w = [s.clone(), u.clone()];
        let aw = linalg::mat_vec(a, &w);
        equi &= linalg::mat_vec(&irrep_rho(a), &veronese(&s, &u)) == veronese(&aw[0], &aw[1]).to_vec();
    }
    let sp = legendrian_symplectic_space();
    let relation = sp.len() == 1 && {
        let v = &sp[0];
        // w14 = -w23/3 and the other pairs vanish.
        v[2] == -&v[3] / q(3) && [0, 1, 4, 5].iter().all(|&k| Zero::is_zero(&v[k])) && !Zero::is_zero(&v[2])
    };
    let stab = stabilizer_subalgebra();
    let closed = stab.iter().all(|a| stab.iter().all(|b| same_span(&stab, &[stab.clone(), vec![commutator(a, b)]].concat())));
    CubicReport {
        homomorphism_samples: samples,
        homomorphism_ok: hom,
        equivariance_ok: equi,
        symplectic_dimension: sp.len(),
        symplectic_relation_ok: relation,
        stabilizer_dimension: stab.len(),
        stabilizer_equals_rho_prime: same_span(&stab, &rho_prime_basis()),
        stabilizer_closed: closed,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn veronese_points_lie_on_quadrics() {
        let p = veronese(&q(1), &q(2));
        assert_eq!(p, [q(1), q(2), q(4), q(8)]);
        assert!(quadric_values(&p).iter().all(Zero::is_zero));
        assert_eq!(quadric_values(&[q(0), q(1), q(0), q(0)]), [q(-1), q(0), q(0)]);
    }

    #[test]
    fn rho_of_diagonal() {
        let a = vec![vec![q(2), q(0)], vec![q(0), q(3)]];
        let r = irrep_rho(&a);
        let diag: Vec<_> = (0..4).map(|i| r[i][i].clone()).collect();
        assert_eq!(diag, vec![q(8), q(12), q(18), q(27)]);
        assert_eq!(irrep_rho(&linalg::identity::<BigRational>(2)), linalg::identity(4));
    }

    #[test]
    fn symplectic_form_scales_by_cube_of_determinant() {
        let w = skew_matrix(&legendrian_symplectic_space()[0]);
        for a in random_matrices(7, 10) {
            let r = irrep_rho(&a);
            let pulled = linalg::mat_mul(&linalg::mat_mul(&linalg::transpose(&r), &w), &r);
            let det = &a[0][0] * &a[1][1] - &a[0][1] * &a[1][0];
            let expect: Matrix<BigRational> = w.iter().map(|row| row.iter().map(|x| x * &det * &det * &det).collect()).collect();
            assert_eq!(pulled, expect);
        }
    }

    #[test]
    fn normalized_symplectic_form() {
        let s = legendrian_symplectic();
        assert_eq!(s.dimension, 1);
        assert_eq!(s.normalized, vec!["0", "0", "1", "-3", "0", "0"]);
    }

    #[test]
    fn full_battery() {
        let r = verify(1, 20);
        assert!(r.passed(), "{r:?}");
    }
}
