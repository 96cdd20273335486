//! Constant-coefficient structure equations of the homogeneous models and
//! their symmetry algebras.

use serde::Serialize;

use crate::g2alg;
use crate::lie::{parse_structure_equations, LieAlgebra, Q};
use crate::linalg::q;
use crate::Error;

/// A constant-coefficient system `d theta^k = sum T^k_ij theta^i ^ theta^j`.
#[derive(Debug, Clone)]
pub struct ConstantStructureSystem {
    pub name: String,
    /// Printed indices of the coframe.
    pub labels: Vec<usize>,
    pub epsilon: Option<i64>,
    pub algebra: LieAlgebra,
}

impl ConstantStructureSystem {
    pub fn new(name: &str, labels: &[usize], equations: &[&str], epsilon: Option<i64>) -> Result<Self, Error> {
        let params: Vec<(&str, Q)> = epsilon.map(|e| vec![("e", q(e))]).unwrap_or_default();
        let t = parse_structure_equations(labels, equations, &params)?;
        let names = labels.iter().map(|l| format!("theta{l}")).collect();
        let algebra = LieAlgebra::from_structure_equations(names, &t)?;
        Ok(ConstantStructureSystem { name: name.into(), labels: labels.to_vec(), epsilon, algebra })
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }
}

const J_NONZERO: [&str; 6] = [
    "-6*w0_5 + w1_4 - 3*w2_3",
    "-24/5*w1_5 + 3*w2_4",
    "-18/5*w2_5 + 2*w3_4",
    "-12/5*w3_5",
    "-6/5*w4_5",
    "0",
];

const L_NONZERO: [&str; 5] = [
    "-5/6*w0_3 - 24*w0_4 + w1_4 - 3*w2_3",
    "w0_3 - 2/3*w1_3 - 30*w1_4",
    "-1/2*w2_3 - 18*w2_4",
    "-6*w3_4",
    "1/6*w3_4",
];

const M_P_NONZERO: [&str; 5] = [
    "-15/2*w0_2 - 1/6*e*w0_4 + w1_4 - 3*w2_3",
    "e*w0_2 - 3*w1_2 - 1/3*e*w1_4",
    "1/4*w0_1 - 1/12*e*w0_3 - 1/2*w1_3 - 1/6*e*w2_4",
    "9/2*w0_2 + 1/6*e*w0_4 + 9*e*w1_2 + 3*w2_3",
    "-27/4*e*w0_1 + 9/4*w0_3 + 27/2*e*w1_3 + 9/2*w2_4",
];

const SUBMAXIMAL_LABELS: [usize; 8] = [0, 1, 2, 3, 4, 5, 6, 12];
const SUBMAXIMAL: [&str; 8] = [
    "-6*w0_5 + w1_4 - 3*w2_3",
    "e*w0_2 - 12*w1_5",
    "3/4*e*w0_3 + w1_6 - 6*w2_5",
    "1/2*e*w0_4 + 2*w2_6",
    "6*w0_12 + 3*w3_6 + 6*w4_5",
    "-1/12*e*w0_6 - w1_12 + 1/12*e*w2_4",
    "6*w2_12 - 3/4*e*w3_4 - 6*w5_6",
    "1/6*e*w4_6 - 12*w5_12",
];

const Q_NONZERO_LABELS: [usize; 6] = [0, 1, 2, 3, 4, 8];
const Q_NONZERO: [&str; 6] = [
    "w1_4 - 3*w2_3",
    "1/2*w0_1 - 3*w1_8",
    "1/2*w0_2 - w2_8",
    "-1/2*w0_3 + w3_8",
    "-1/2*w0_4 + 3*w4_8",
    "-1/2*w1_4 + 1/2*w2_3",
];

/// Name of the six-dimensional system of the `J = L = M = P = 0, Q != 0` branch.
pub const SPLIT_SIX: &str = "J=L=M=P=0, Q!=0";
/// Name of the eight-dimensional submaximal systems.
pub const SUBMAXIMAL_NAME: &str = "submaximal";

/// The seven catalogued systems, counting both signs of `epsilon`.
pub fn catalogue() -> Result<Vec<ConstantStructureSystem>, Error> {
    let five: Vec<usize> = (0..5).collect();
    let six: Vec<usize> = (0..6).collect();
    let mut out = vec![
        ConstantStructureSystem::new("J!=0", &six, &J_NONZERO, None)?,
        ConstantStructureSystem::new("J=0, L!=0", &five, &L_NONZERO, None)?,
    ];
    for e in [1, -1] {
        out.push(ConstantStructureSystem::new("J=L=0, M!=0, P!=0", &five, &M_P_NONZERO, Some(e))?);
    }
    for e in [1, -1] {
        out.push(ConstantStructureSystem::new(SUBMAXIMAL_NAME, &SUBMAXIMAL_LABELS, &SUBMAXIMAL, Some(e))?);
    }
    out.push(ConstantStructureSystem::new(SPLIT_SIX, &Q_NONZERO_LABELS, &Q_NONZERO, None)?);
    Ok(out)
}

/// `d^2 theta^k = 0` for every `k`, computed on the coframe.
pub fn jacobi_check(sys: &ConstantStructureSystem) -> bool {
    sys.algebra.d_squared_failures().is_empty()
}

#[derive(Debug, Clone, Serialize)]
pub struct AlgebraReport {
    pub name: String,
    pub dim: usize,
    pub epsilon: Option<i64>,
    pub closed: bool,
    /// Jacobi through the dual brackets, as an independent check of `closed`.
    pub bracket_jacobi: bool,
    pub semisimple: bool,
    /// `(positive, negative, zero)`.
    pub killing_signature: (usize, usize, usize),
    pub center_dim: usize,
    pub derived_dim: usize,
    /// Dimensions of the ideals from the centroid, when it splits over the rationals.
    pub ideals: Option<Vec<usize>>,
    /// Each ideal is semisimple with a one-dimensional centroid.
    pub ideals_simple: Option<bool>,
}

pub fn identify(sys: &ConstantStructureSystem) -> Result<AlgebraReport, Error> {
    let g = &sys.algebra;
    let n = g.dim();
    let closed = jacobi_check(sys);
    let mut derived: Vec<Vec<Q>> = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            derived.push(g.bracket(&g.basis_vector(i), &g.basis_vector(j)));
        }
    }
    let derived_dim = crate::linalg::rank(&derived);
    let semisimple = g.is_semisimple();
    let (ideals, ideals_simple) = if semisimple && closed {
        match g.ideal_decomposition() {
            Some(parts) => {
                let dims = parts.iter().map(Vec::len).collect();
                let simple = parts
                    .iter()
                    .map(|p| {
                        let h = g.induced(p, "u")?;
                        Ok(h.is_semisimple() && h.centroid().len() == 1)
                    })
                    .collect::<Result<Vec<bool>, Error>>()?;
                (Some(dims), Some(simple.iter().all(|&b| b)))
            }
            None => (None, None),
        }
    } else {
        (None, None)
    };
    Ok(AlgebraReport {
        name: sys.name.clone(),
        dim: n,
        epsilon: sys.epsilon,
        closed,
        bracket_jacobi: g.jacobi_violations().is_empty(),
        semisimple,
        killing_signature: g.killing_signature(),
        center_dim: g.center().len(),
        derived_dim,
        ideals,
        ideals_simple,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct FlatAlgebraReport {
    pub dim: usize,
    pub closed: bool,
    /// `span(E0..E4)` closes under the bracket.
    pub minus_part_subalgebra: bool,
    pub minus_part_nilpotent: bool,
    /// `span(E0..E4)` is an ideal of `q`; it is not, since `E12` moves `g_-1` into `g_0`.
    pub minus_part_ideal: bool,
}

/// The nine-dimensional symmetry algebra of the flat model.
pub fn flat_algebra() -> Result<FlatAlgebraReport, Error> {
    let g = g2alg::commutator_table()?.restrict(&g2alg::Q_INDICES)?;
    let minus = g.basis_span(&[0, 1, 2, 3, 4]);
    Ok(FlatAlgebraReport {
        dim: g.dim(),
        closed: g.d_squared_failures().is_empty(),
        minus_part_subalgebra: g.is_subalgebra(&minus),
        minus_part_nilpotent: g.induced(&minus, "m")?.is_nilpotent(),
        minus_part_ideal: g.is_ideal(&minus),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seven_closed_systems() {
        let cat = catalogue().unwrap();
        assert_eq!(cat.len(), 7);
        for s in &cat {
            assert!(jacobi_check(s), "{}", s.name);
            assert!(s.algebra.jacobi_violations().is_empty(), "{}", s.name);
        }
    }

    #[test]
    fn flipping_a_coefficient_breaks_closure() {
        let mut eqs = J_NONZERO;
        eqs[1] = "24/5*w1_5 + 3*w2_4";
        let s = ConstantStructureSystem::new("mutated", &[0, 1, 2, 3, 4, 5], &eqs, None).unwrap();
        assert!(!jacobi_check(&s));
    }

    #[test]
    fn submaximal_signatures_differ() {
        let cat = catalogue().unwrap();
        let sig: Vec<_> = cat
            .iter()
            .filter(|s| s.name == SUBMAXIMAL_NAME)
            .map(|s| {
                let r = identify(s).unwrap();
                assert!(r.semisimple);
                (s.epsilon.unwrap(), r.killing_signature)
            })
            .collect();
        assert_eq!(sig, vec![(1, (4, 4, 0)), (-1, (5, 3, 0))]);
    }

    #[test]
    fn six_dimensional_splits() {
        let cat = catalogue().unwrap();
        let s = cat.iter().find(|s| s.name == SPLIT_SIX).unwrap();
        let r = identify(s).unwrap();
        assert!(r.semisimple);
        let mut d = r.ideals.unwrap();
        d.sort();
        assert_eq!(d, vec![3, 3]);
        assert_eq!(r.ideals_simple, Some(true));
    }

    #[test]
    fn flat_symmetry_algebra() {
        let r = flat_algebra().unwrap();
        assert_eq!(r.dim, 9);
        assert!(r.closed && r.minus_part_subalgebra && r.minus_part_nilpotent);
        assert!(!r.minus_part_ideal);
    }
}
