//! Exact coefficient arithmetic: the ring tower Q ⊂ Q\[λ\] ⊂ Q\[λ\]\[x\].
//!
//! Everything downstream (series, number triangles, polynomial families,
//! identity verification) is built over these three rings. All values are
//! immutable after construction and every operation is exact; there is no
//! floating-point mode anywhere in the crate.

mod rat;

pub mod display;
pub mod poly;

pub use poly::{LPoly, Poly, QPoly, XPoly};
pub use rat::{binomial, binomial_rat, factorial, factorial_rat, Rat};

/// Errors from scalar-level arithmetic and parsing.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator must be nonzero")]
    ZeroDenominator,
    #[error("malformed rational `{input}`: expected `p` or `p/q` with integer p, q")]
    MalformedRational { input: String },
}
