use std::collections::BTreeMap;

use num_rational::BigRational;
use serde::Serialize;
use symexpr::{Expr, Symbol, VarKind};

use super::{invariants_closed_form, InvariantJet};
use crate::Error;

/// How an invariant behaves on the chart.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Vanishing {
    Zero,
    /// Numerator depends on free parameters only, so it has no zeros on the chart.
    NonZero,
    /// Vanishes on a proper subvariety.
    NonConstant,
}

pub fn vanishing(e: &Expr) -> Vanishing {
    if e.is_zero() {
        return Vanishing::Zero;
    }
    let params_only = e.numer().symbols().iter().all(|s| s.kind() == VarKind::FreeParameter);
    if params_only {
        Vanishing::NonZero
    } else {
        Vanishing::NonConstant
    }
}

/// Leaves of the branch tree `J -> L -> M -> (P -> Q) | (P -> Q -> R -> S)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Branch {
    /// `J != 0`.
    NonIntegrable,
    /// `J = 0, L != 0`.
    JZeroLNonzero,
    /// `J = L = 0, M != 0, P != 0`.
    MNonzeroPNonzero,
    /// `J = L = P = Q = 0, M != 0`.
    Submaximal,
    /// `J = L = P = 0, M != 0, Q != 0`.
    MNonzeroQNonzero,
    /// `J = L = M = 0, P != 0`.
    PNonzero,
    /// `J = L = M = P = 0, Q != 0`.
    QNonzero,
    /// `J = .. = Q = 0, R != 0`.
    RNonzero,
    /// `J = .. = R = 0, S != 0`.
    SNonzero,
    /// All invariants vanish.
    Flat,
}

impl Branch {
    pub const ALL: [Branch; 10] = [
        Branch::NonIntegrable,
        Branch::JZeroLNonzero,
        Branch::MNonzeroPNonzero,
        Branch::Submaximal,
        Branch::MNonzeroQNonzero,
        Branch::PNonzero,
        Branch::QNonzero,
        Branch::RNonzero,
        Branch::SNonzero,
        Branch::Flat,
    ];

    /// Largest symmetry dimension of a homogeneous model in the branch, if known.
    pub fn max_homogeneous_symmetry(self) -> Option<u32> {
        match self {
            Branch::Flat => Some(9),
            Branch::Submaximal => Some(8),
            Branch::NonIntegrable | Branch::QNonzero => Some(6),
            Branch::JZeroLNonzero | Branch::MNonzeroPNonzero => Some(5),
            _ => None,
        }
    }

    pub fn annotation(self) -> &'static str {
        match self {
            Branch::Flat => "flat, symmetry dimension 9",
            Branch::Submaximal => "submaximal, 8-dim homogeneous models",
            Branch::NonIntegrable => "6-dim homogeneous model exists in branch",
            Branch::QNonzero => "6-dim homogeneous model exists in branch",
            Branch::JZeroLNonzero | Branch::MNonzeroPNonzero => "5-dim homogeneous models exist in branch",
            Branch::PNonzero => "homogeneous models have symmetry dimension below 6",
            Branch::MNonzeroQNonzero | Branch::RNonzero | Branch::SNonzero => "no homogeneous model",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Branch::NonIntegrable => "J!=0",
            Branch::JZeroLNonzero => "J=0,L!=0",
            Branch::MNonzeroPNonzero => "J=L=0,M!=0,P!=0",
            Branch::Submaximal => "J=L=P=Q=0,M!=0",
            Branch::MNonzeroQNonzero => "J=L=P=0,M!=0,Q!=0",
            Branch::PNonzero => "J=L=M=0,P!=0",
            Branch::QNonzero => "J=L=M=P=0,Q!=0",
            Branch::RNonzero => "J=L=M=P=Q=0,R!=0",
            Branch::SNonzero => "J=L=M=P=Q=R=0,S!=0",
            Branch::Flat => "flat",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum BranchLabel {
    Leaf { branch: Branch, symmetry: Option<u32>, annotation: String },
    /// The named invariant neither vanishes identically nor is free of zeros.
    NonConstant { invariant: String, value: String },
}

impl BranchLabel {
    pub fn branch(&self) -> Option<Branch> {
        match self {
            BranchLabel::Leaf { branch, .. } => Some(*branch),
            BranchLabel::NonConstant { .. } => None,
        }
    }

    pub fn describe(&self) -> String {
        match self {
            BranchLabel::Leaf { branch, annotation, .. } => format!("{} ({annotation})", branch.name()),
            BranchLabel::NonConstant { invariant, value } => format!("branch-non-constant: {invariant} = {value}"),
        }
    }
}

fn leaf(b: Branch) -> BranchLabel {
    BranchLabel::Leaf { branch: b, symmetry: b.max_homogeneous_symmetry(), annotation: b.annotation().into() }
}

/// Walks the tree using a three-valued test per invariant.
pub fn walk<F: Fn(&'static str, &Expr) -> Vanishing>(inv: &InvariantJet, test: F) -> BranchLabel {
    let check = |name: &'static str, e: &Expr| -> Result<bool, BranchLabel> {
        match test(name, e) {
            Vanishing::Zero => Ok(true),
            Vanishing::NonZero => Ok(false),
            Vanishing::NonConstant => Err(BranchLabel::NonConstant { invariant: name.into(), value: e.to_string() }),
        }
    };
    let run = || -> Result<BranchLabel, BranchLabel> {
        if !check("J", &inv.j)? {
            return Ok(leaf(Branch::NonIntegrable));
        }
        if !check("L", &inv.l)? {
            return Ok(leaf(Branch::JZeroLNonzero));
        }
        if !check("M", &inv.m)? {
            if !check("P", &inv.p)? {
                return Ok(leaf(Branch::MNonzeroPNonzero));
            }
            return Ok(leaf(if check("Q", &inv.q)? { Branch::Submaximal } else { Branch::MNonzeroQNonzero }));
        }
        if !check("P", &inv.p)? {
            return Ok(leaf(Branch::PNonzero));
        }
        if !check("Q", &inv.q)? {
            return Ok(leaf(Branch::QNonzero));
        }
        if !check("R", &inv.r)? {
            return Ok(leaf(Branch::RNonzero));
        }
        if !check("S", &inv.s)? {
            return Ok(leaf(Branch::SNonzero));
        }
        Ok(leaf(Branch::Flat))
    };
    run().unwrap_or_else(|e| e)
}

pub fn classify(t: &Expr) -> Result<BranchLabel, Error> {
    let inv = invariants_closed_form(t)?;
    Ok(walk(&inv, |_, e| vanishing(e)))
}

/// Classification from the values of the invariants at a single point.
pub fn classify_at(t: &Expr, point: &BTreeMap<Symbol, BigRational>) -> Result<BranchLabel, Error> {
    let inv = invariants_closed_form(t)?;
    let mut values = Vec::new();
    for v in inv.values() {
        values.push(v.eval(point)?);
    }
    let lookup: BTreeMap<&str, bool> =
        super::invariants::NAMES.iter().copied().zip(values.iter().map(num_traits::Zero::is_zero)).collect();
    Ok(walk(&inv, |name, _| if lookup[name] { Vanishing::Zero } else { Vanishing::NonZero }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flat_and_nonintegrable() {
        assert_eq!(classify(&Expr::zero()).unwrap().branch(), Some(Branch::Flat));
        let l = classify(&"x4".parse().unwrap()).unwrap();
        assert_eq!(l.branch(), Some(Branch::NonIntegrable));
        assert_eq!(Branch::NonIntegrable.max_homogeneous_symmetry(), Some(6));
    }

    #[test]
    fn coordinate_marking_is_not_constant() {
        let l = classify(&"x3".parse().unwrap()).unwrap();
        assert!(matches!(l, BranchLabel::NonConstant { ref invariant, .. } if invariant == "J"));
    }

    #[test]
    fn pointwise_query() {
        let mut pt = BTreeMap::new();
        for i in 0..5 {
            pt.insert(Symbol::x(i), BigRational::from_integer((i as i64 + 1).into()));
        }
        let l = classify_at(&"x3".parse().unwrap(), &pt).unwrap();
        assert_eq!(l.branch(), Some(Branch::NonIntegrable));
    }

    #[test]
    fn ten_leaves() {
        assert_eq!(Branch::ALL.len(), 10);
    }
}
