//! Exact graded-commutative polynomials and the graded Poisson bracket.

pub mod basis;
mod monomial;
mod poly;
mod table;
pub mod text;

pub use monomial::Monomial;
pub use poly::{base_degree, GPoly};
pub use table::{Generator, GeneratorTable, Kind, PairEntry, Preset};
pub use text::{parse, serialize};

/// Exact rational coefficients.
pub type Rational = num::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("unknown generator: {0}")]
    UnknownGenerator(String),
    #[error("operands use different generator tables")]
    TableMismatch,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// Shorthand for an integer rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Shorthand for `n/d`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

#[cfg(test)]
mod tests;
