//! Exact λ-umbral calculus over the ring Q\[λ\]\[x\].
//!
//! The crate builds, entirely in exact rational arithmetic:
//!
//! * the degenerate special functions e_λ, log_λ and the degenerate
//!   polylogarithms Li_{k,λ}, together with the degenerate Stirling number
//!   triangles of both kinds ([`degen`]);
//! * the degenerate polynomial families defined by their generating
//!   functions — poly-Bernoulli, higher-order Bernoulli, higher-order
//!   derangement ([`families`]);
//! * the λ-umbral calculus: λ-linear functionals, λ-differential operators,
//!   λ-Sheffer sequences, connection coefficients ([`umbral`]);
//! * executable verifiers that check each implemented identity as an exact
//!   polynomial identity in Q\[λ\]\[x\], reporting the difference polynomial on
//!   failure ([`identities`]).
//!
//! There is no floating point anywhere: every scalar is an
//! arbitrary-precision rational, every comparison is structural equality.

pub mod cli;
pub mod degen;
pub mod exact;
pub mod families;
pub mod identities;
pub mod series;
pub mod umbral;

pub use exact::{LPoly, Poly, QPoly, Rat, XPoly};
pub use series::{DeltaSeries, Series, SeriesError};
