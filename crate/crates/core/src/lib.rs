//! Exact computations for marked contact Engel structures.
//!
//! The crate builds adapted coframes from a marking function, computes the
//! relative invariants two independent ways, classifies structures, checks
//! the Kerr correspondence, and verifies the split G2 matrix model together
//! with its Tanaka prolongation and low-degree cohomology.
//!
//! ```
//! use contact_engel::engel;
//! let t: symexpr::Expr = "x4".parse().unwrap();
//! let inv = engel::invariants_closed_form(&t).unwrap();
//! assert_eq!(inv.j, symexpr::Expr::int(-1));
//! ```

pub mod cli;
pub mod cubicalg;
pub mod engel;
pub mod forms;
pub mod g2alg;
pub mod kerr;
pub mod lie;
pub mod linalg;
pub mod models;
pub mod tanaka;

pub use symexpr::{Expr, ExprError, Symbol};

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error("matrix is singular")]
    Singular,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("structure mismatch: {0}")]
    Mismatch(String),
    #[error("no convergence after {0} iterations")]
    NoConvergence(usize),
    #[error("derivative vanishes at the root")]
    DegenerateRoot,
    #[error("derivative vanishes at t = {0} away from a root; try another guess")]
    StationaryPoint(f64),
    #[error("transversality fails: {0}")]
    Transversality(String),
}
