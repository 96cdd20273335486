//! Exact rational functions over a declared set of variables.
//!
//! Every [`Expr`] is kept as a reduced quotient of integer polynomials, so
//! equality is decided structurally. Differentiation knows about jet
//! variables of an unspecified function `t` of the coordinates `x0..x4`.
//!
//! ```
//! use symexpr::{parse, Symbol};
//!
//! let e = parse("t^3 + x1*t").unwrap();
//! let d = e.diff(Symbol::x(1)).unwrap();
//! assert_eq!(d, parse("3*t^2*t_x1 + t + x1*t_x1").unwrap());
//! ```

mod expr;
mod gcd;
mod parse;
mod poly;
mod symbol;

pub use expr::Expr;
pub use gcd::gcd;
pub use parse::parse;
pub use poly::{Mono, Poly};
pub use symbol::{Symbol, VarKind, MAX_JET_INDEX};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExprError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid identifier '{0}'")]
    BadIdentifier(String),
    #[error("jet order exceeded while differentiating {0}")]
    JetOrderExceeded(String),
    #[error("evaluation hit a pole")]
    Pole,
    #[error("unassigned variable '{0}'")]
    Unassigned(String),
}
