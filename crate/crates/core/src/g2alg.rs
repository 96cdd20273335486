//! Split `g2` as a 14-dimensional algebra of 7x7 matrices, adapted to the
//! contact grading `g_-2 + g_-1 + g_0 + g_1 + g_2`.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;
use symexpr::{Expr, Symbol};

use crate::lie::{parse_structure_equations, LieAlgebra, Q};
use crate::linalg::{self, Matrix};
use crate::Error;

const A_ROWS: [[&str; 7]; 7] = [
    ["0", "4/3*a2", "4/3*a0", "4/9*a1 - a3", "-4/9*a1 - a3", "-4/3*a0", "0"],
    ["-4/3*a2", "0", "2*a3", "0", "0", "-2*a3", "-4/3*a2"],
    ["-4/3*a0", "-2*a3", "0", "-2/3*a2 + 3/2*a4", "2/3*a2 + 3/2*a4", "0", "-4/3*a0"],
    ["-4/9*a1 + a3", "0", "2/3*a2 - 3/2*a4", "0", "0", "-2/3*a2 + 3/2*a4", "-4/9*a1 + a3"],
    ["-4/9*a1 - a3", "0", "2/3*a2 + 3/2*a4", "0", "0", "-2/3*a2 - 3/2*a4", "-4/9*a1 - a3"],
    ["-4/3*a0", "-2*a3", "0", "-2/3*a2 + 3/2*a4", "2/3*a2 + 3/2*a4", "0", "-4/3*a0"],
    ["0", "-4/3*a2", "-4/3*a0", "-4/9*a1 + a3", "4/9*a1 + a3", "4/3*a0", "0"],
];

const B_ROWS: [[&str; 7]; 7] = [
    ["0", "0", "3/4*b2 - 1/3*b3", "0", "0", "-3/4*b2 - 1/3*b3", "3*b1 + b4"],
    ["0", "0", "0", "3/2*b2 - 2/3*b3", "3/2*b2 + 2/3*b3", "0", "0"],
    ["-3/4*b2 + 1/3*b3", "0", "0", "0", "0", "-3*b1 + b4", "3/4*b2 + 1/3*b3"],
    ["0", "-3/2*b2 + 2/3*b3", "0", "0", "-2*b4", "0", "0"],
    ["0", "3/2*b2 + 2/3*b3", "0", "-2*b4", "0", "0", "0"],
    ["-3/4*b2 - 1/3*b3", "0", "-3*b1 + b4", "0", "0", "0", "3/4*b2 - 1/3*b3"],
    ["3*b1 + b4", "0", "3/4*b2 + 1/3*b3", "0", "0", "-3/4*b2 + 1/3*b3", "0"],
];

const C_ROWS: [[&str; 7]; 7] = [
    ["0", "-3/2*g3", "-9/8*g0", "-1/2*g2 + 27/8*g4", "1/2*g2 + 27/8*g4", "-9/8*g0", "0"],
    ["3/2*g3", "0", "g2", "0", "0", "g2", "-3/2*g3"],
    ["9/8*g0", "-g2", "0", "-g1 + 3/4*g3", "g1 + 3/4*g3", "0", "-9/8*g0"],
    ["1/2*g2 - 27/8*g4", "0", "g1 - 3/4*g3", "0", "0", "g1 - 3/4*g3", "-1/2*g2 + 27/8*g4"],
    ["1/2*g2 + 27/8*g4", "0", "g1 + 3/4*g3", "0", "0", "g1 + 3/4*g3", "-1/2*g2 - 27/8*g4"],
    ["-9/8*g0", "g2", "0", "g1 - 3/4*g3", "-g1 - 3/4*g3", "0", "9/8*g0"],
    ["0", "-3/2*g3", "-9/8*g0", "-1/2*g2 + 27/8*g4", "1/2*g2 + 27/8*g4", "-9/8*g0", "0"],
];

/// The fourteen displayed Maurer-Cartan equations; `wi_j` is `theta^i ^ theta^j`.
pub const MAURER_CARTAN: [&str; 14] = [
    "-6*w0_5 + w1_4 - 3*w2_3",
    "6*w0_9 - 3*w1_5 - 3*w1_8 + 3*w2_7",
    "2*w0_10 + w1_6 - 3*w2_5 - w2_8 + 2*w3_7",
    "2*w0_11 + 2*w2_6 - 3*w3_5 + w3_8 + w4_7",
    "6*w0_12 + 3*w3_6 - 3*w4_5 + 3*w4_8",
    "2*w0_13 - w1_12 + w2_11 - w3_10 + w4_9",
    "6*w2_12 - 4*w3_11 + 2*w4_10 + 2*w6_8",
    "-2*w1_11 + 4*w2_10 - 6*w3_9 - 2*w7_8",
    "-3*w1_12 + w2_11 + w3_10 - 3*w4_9 - w6_7",
    "-w1_13 - 3*w5_9 - w7_10 + 3*w8_9",
    "-3*w2_13 - 3*w5_10 - 3*w6_9 - 2*w7_11 + w8_10",
    "-3*w3_13 - 3*w5_11 - 2*w6_10 - 3*w7_12 - w8_11",
    "-w4_13 - 3*w5_12 - w6_11 - 3*w8_12",
    "-6*w5_13 - 6*w9_12 + 2*w10_11",
];

/// Basis indices of the nine-dimensional subalgebra `q`.
pub const Q_INDICES: [usize; 9] = [0, 1, 2, 3, 4, 5, 6, 8, 12];

/// The reduced equations on `q`, in the order of [`Q_INDICES`].
pub const MAURER_CARTAN_Q: [&str; 9] = [
    "-6*w0_5 + w1_4 - 3*w2_3",
    "-3*w1_5 - 3*w1_8",
    "w1_6 - 3*w2_5 - w2_8",
    "2*w2_6 - 3*w3_5 + w3_8",
    "6*w0_12 + 3*w3_6 - 3*w4_5 + 3*w4_8",
    "-w1_12",
    "6*w2_12 + 2*w6_8",
    "-3*w1_12",
    "-3*w5_12 - 3*w8_12",
];

/// Grading degree of each basis element.
pub const DEGREES: [i32; 14] = [-2, -1, -1, -1, -1, 0, 0, 0, 0, 1, 1, 1, 1, 2];

fn coefficient_matrix(rows: &[[&str; 7]; 7], param: &str) -> Result<Matrix<Q>, Error> {
    let s = Symbol::param(param)?;
    rows.iter()
        .map(|r| {
            r.iter()
                .map(|e| {
                    let v: Expr = e.parse()?;
                    v.partial(s).as_rational().ok_or_else(|| Error::Precondition(format!("entry {e} is not linear")))
                })
                .collect()
        })
        .collect()
}

/// `E0..E13` as coefficient matrices of the parameters of `A`, `B`, `C`.
pub fn build_basis() -> Result<Vec<Matrix<Q>>, Error> {
    let mut out = vec![coefficient_matrix(&A_ROWS, "a0")?];
    for i in 1..=4 {
        out.push(coefficient_matrix(&A_ROWS, &format!("a{i}"))?);
    }
    for i in 1..=4 {
        out.push(coefficient_matrix(&B_ROWS, &format!("b{i}"))?);
    }
    for i in 1..=4 {
        out.push(coefficient_matrix(&C_ROWS, &format!("g{i}"))?);
    }
    out.push(coefficient_matrix(&C_ROWS, "g0")?);
    Ok(out)
}

pub fn basis_names() -> Vec<String> {
    (0..14).map(|i| format!("E{i}")).collect()
}

/// The commutator table of `E0..E13`.
pub fn commutator_table() -> Result<LieAlgebra, Error> {
    LieAlgebra::from_matrices(basis_names(), &build_basis()?)
}

fn compare(computed: &BTreeMap<(usize, usize), Q>, shown: &BTreeMap<(usize, usize), Q>) -> Vec<String> {
    let mut keys: Vec<_> = computed.keys().chain(shown.keys()).copied().collect();
    keys.sort();
    keys.dedup();
    keys.into_iter()
        .filter_map(|k| {
            let a = computed.get(&k).cloned().unwrap_or_else(Q::zero);
            let b = shown.get(&k).cloned().unwrap_or_else(Q::zero);
            (a != b).then(|| format!("theta{}^theta{}: computed {a}, displayed {b}", k.0, k.1))
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct EquationCheck {
    pub index: usize,
    pub matches: bool,
    pub mismatches: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct MaurerCartanReport {
    pub equations: Vec<EquationCheck>,
    /// `-1` when `d theta(X, Y) = -theta([X, Y])` reproduced the display, `+1` for the opposite sign.
    pub convention: i32,
    pub jacobi_triples: usize,
    pub jacobi_passed: usize,
}

impl MaurerCartanReport {
    pub fn passed(&self) -> bool {
        self.equations.iter().all(|e| e.matches) && self.jacobi_passed == self.jacobi_triples
    }

    pub fn matched(&self) -> usize {
        self.equations.iter().filter(|e| e.matches).count()
    }
}

fn check_equations(
    computed: &[BTreeMap<(usize, usize), Q>],
    shown: &[BTreeMap<(usize, usize), Q>],
    labels: &[usize],
) -> Vec<EquationCheck> {
    computed
        .iter()
        .zip(shown)
        .zip(labels)
        .map(|((c, s), &index)| {
            let mismatches = compare(c, s);
            EquationCheck { index, matches: mismatches.is_empty(), mismatches }
        })
        .collect()
}

pub fn verify_maurer_cartan() -> Result<MaurerCartanReport, Error> {
    let g = commutator_table()?;
    let labels: Vec<usize> = (0..14).collect();
    let shown = parse_structure_equations(&labels, &MAURER_CARTAN, &[])?;
    let computed = g.structure_equations();
    let mut equations = check_equations(&computed, &shown, &labels);
    let mut convention = -1;
    if equations.iter().any(|e| !e.matches) {
        let flipped: Vec<_> = computed.iter().map(|m| m.iter().map(|(k, v)| (*k, -v)).collect()).collect();
        let alt = check_equations(&flipped, &shown, &labels);
        if alt.iter().all(|e| e.matches) {
            equations = alt;
            convention = 1;
        }
    }
    let bad = g.jacobi_violations().len();
    Ok(MaurerCartanReport { equations, convention, jacobi_triples: 364, jacobi_passed: 364 - bad })
}

#[derive(Debug, Clone, Serialize)]
pub struct GradingReport {
    /// Coefficients of the grading element on `E5` and `E8`.
    pub z: (String, String),
    pub grading_additive: bool,
    pub p2_closed: bool,
    pub q_closed: bool,
    pub p12_closed: bool,
    /// Setting `theta7, theta9, theta10, theta11, theta13` to zero reproduces the reduced system.
    pub reduction: Vec<EquationCheck>,
    /// `[g_-1, g_-1] = g_-2` with a nondegenerate pairing and `g_-2` central in `g_-`.
    pub heisenberg: bool,
}

impl GradingReport {
    pub fn passed(&self) -> bool {
        self.grading_additive
            && self.p2_closed
            && self.q_closed
            && self.p12_closed
            && self.heisenberg
            && self.reduction.iter().all(|e| e.matches)
    }
}

/// The grading element `Z` in `span(E5, E8)` with `[Z, E_i] = deg(E_i) E_i`.
pub fn grading_element(g: &LieAlgebra) -> Result<Vec<Q>, Error> {
    let n = g.dim();
    let mut rows: Matrix<Q> = Vec::new();
    let mut rhs = Vec::new();
    for (i, &deg) in DEGREES.iter().enumerate() {
        for k in 0..n {
            rows.push(vec![g.c[5][i][k].clone(), g.c[8][i][k].clone()]);
            rhs.push(if k == i { Q::from_integer(deg.into()) } else { Q::zero() });
        }
    }
    let sol = linalg::solve(&rows, &rhs).ok_or_else(|| Error::Mismatch("no grading element in span(E5, E8)".into()))?;
    let mut z = vec![Q::zero(); n];
    z[5] = sol[0].clone();
    z[8] = sol[1].clone();
    Ok(z)
}

/// Basis indices of `g_k`.
pub fn component(k: i32) -> Vec<usize> {
    (0..14).filter(|&i| DEGREES[i] == k).collect()
}

pub fn grading_and_parabolics() -> Result<GradingReport, Error> {
    let g = commutator_table()?;
    let z = grading_element(&g)?;
    let mut additive = true;
    for i in 0..14 {
        for j in 0..14 {
            for k in 0..14 {
                if !g.c[i][j][k].is_zero() && DEGREES[k] != DEGREES[i] + DEGREES[j] {
                    additive = false;
                }
            }
        }
    }
    let span = |idx: &[usize]| g.basis_span(idx);
    let p2: Vec<usize> = (5..14).collect();
    let p12: Vec<usize> = [5, 6, 8].into_iter().chain(9..14).collect();

    let labels: Vec<usize> = (0..14).collect();
    let full = parse_structure_equations(&labels, &MAURER_CARTAN, &[])?;
    let dropped = [7usize, 9, 10, 11, 13];
    let reduced: Vec<BTreeMap<(usize, usize), Q>> = Q_INDICES
        .iter()
        .map(|&k| {
            full[k]
                .iter()
                .filter(|((i, j), _)| !dropped.contains(i) && !dropped.contains(j))
                .map(|((i, j), v)| {
                    let p = |l: usize| Q_INDICES.iter().position(|&m| m == l).unwrap();
                    ((p(*i), p(*j)), v.clone())
                })
                .collect()
        })
        .collect();
    let shown_q = parse_structure_equations(&Q_INDICES, &MAURER_CARTAN_Q, &[])?;
    let reduction = check_equations(&reduced, &shown_q, &Q_INDICES);

    let minus = g.restrict(&[0, 1, 2, 3, 4])?;
    let pairing: Matrix<Q> = (1..5).map(|i| (1..5).map(|j| minus.c[i][j][0].clone()).collect()).collect();
    let heisenberg = (0..5).all(|j| (0..5).all(|k| minus.c[0][j][k].is_zero()))
        && (1..5).all(|i| (1..5).all(|j| (1..5).all(|k| minus.c[i][j][k].is_zero())))
        && !linalg::determinant(&pairing).is_zero();

    Ok(GradingReport {
        z: (z[5].to_string(), z[8].to_string()),
        grading_additive: additive,
        p2_closed: g.is_subalgebra(&span(&p2)),
        q_closed: g.is_subalgebra(&span(&Q_INDICES)),
        p12_closed: g.is_subalgebra(&span(&p12)),
        reduction,
        heisenberg,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct InvariantFormsReport {
    /// Dimension of the space of symmetric `H` with `E^T H + H E = 0` for all basis `E`.
    pub symmetric_invariants: usize,
    /// Signature `(p, q)` of the generator.
    pub h_signature: (usize, usize),
    pub killing_signature: (usize, usize, usize),
    pub killing_nondegenerate: bool,
    /// `kappa(Z, Z)` for the grading element.
    pub killing_zz: String,
    /// `kappa(g_i, g_j) = 0` unless `i + j = 0`.
    pub grading_pairing: bool,
}

impl InvariantFormsReport {
    pub fn passed(&self) -> bool {
        let (p, q) = self.h_signature;
        self.symmetric_invariants == 1
            && ((p, q) == (4, 3) || (p, q) == (3, 4))
            && self.killing_nondegenerate
            && self.grading_pairing
    }
}

pub fn invariant_forms() -> Result<InvariantFormsReport, Error> {
    let basis = build_basis()?;
    let n = 7;
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a..n).map(move |b| (a, b))).collect();
    let var = |a: usize, b: usize| pairs.iter().position(|&p| p == (a.min(b), a.max(b))).unwrap();
    let mut rows: Matrix<Q> = Vec::new();
    for e in &basis {
        // (E^T H + H E)[a][b] = sum_c E[c][a] H[c][b] + H[a][c] E[c][b]
        for a in 0..n {
            for b in a..n {
                let mut row = vec![Q::zero(); pairs.len()];
                for c in 0..n {
                    row[var(c, b)] += &e[c][a];
                    row[var(a, c)] += &e[c][b];
                }
                rows.push(row);
            }
        }
    }
    let sols = linalg::nullspace(&rows, pairs.len());
    let h_signature = sols
        .first()
        .map(|v| {
            let h: Matrix<Q> = (0..n).map(|a| (0..n).map(|b| v[var(a, b)].clone()).collect()).collect();
            linalg::signature(&h)
        })
        .unwrap_or((0, 0));

    let g = LieAlgebra::from_matrices(basis_names(), &basis)?;
    let kappa = g.killing();
    let z = grading_element(&g)?;
    let kz: Vec<Q> = linalg::mat_vec(&kappa, &z);
    let kzz = kz.iter().zip(&z).fold(Q::zero(), |s, (a, b)| s + a * b);
    let grading_pairing = (0..14).all(|i| (0..14).all(|j| DEGREES[i] + DEGREES[j] == 0 || kappa[i][j].is_zero()));
    Ok(InvariantFormsReport {
        symmetric_invariants: sols.len(),
        h_signature,
        killing_signature: g.killing_signature(),
        killing_nondegenerate: !linalg::determinant(&kappa).is_zero(),
        killing_zz: kzz.to_string(),
        grading_pairing,
    })
}

/// `q0 = span(E5, E6, E8)` acting on `g_-` and the rest of `g`.
pub fn q0_indices() -> [usize; 3] {
    [5, 6, 8]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{q, qr};

    #[test]
    fn basis_entries_and_rank() {
        let b = build_basis().unwrap();
        assert_eq!(b.len(), 14);
        assert_eq!(b[0][0][2], qr(4, 3));
        assert_eq!(b[13][0][2], qr(-9, 8));
    }

    #[test]
    fn sample_brackets() {
        let g = commutator_table().unwrap();
        let e14 = g.bracket(&g.basis_vector(1), &g.basis_vector(4));
        let mut expect = vec![q(0); 14];
        expect[0] = q(-1);
        assert_eq!(e14, expect);
        assert!(g.bracket(&g.basis_vector(3), &g.basis_vector(3)).iter().all(Zero::is_zero));
    }

    #[test]
    fn full_table() {
        let r = verify_maurer_cartan().unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.convention, -1);
        assert_eq!(r.matched(), 14);
    }

    #[test]
    fn grading() {
        let r = grading_and_parabolics().unwrap();
        assert!(r.passed(), "{r:?}");
        let g = commutator_table().unwrap();
        let z = grading_element(&g).unwrap();
        let ad = g.ad(&z);
        assert_eq!(ad[0][0], q(-2));
        assert_eq!(ad[13][13], q(2));
    }

    #[test]
    fn forms() {
        let r = invariant_forms().unwrap();
        assert_eq!(r.symmetric_invariants, 1);
        let (p, m) = r.h_signature;
        assert_eq!((p.min(m), p.max(m)), (3, 4));
        assert!(r.killing_nondegenerate);
        assert!(r.grading_pairing);
        assert_ne!(r.killing_zz, "0");
        assert!(r.passed());
    }
}
