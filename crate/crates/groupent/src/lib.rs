//! # groupent
//!
//! Group entropies and the algebra behind their composition laws.
//!
//! A *group entropy* is an information measure `S` that satisfies the first
//! three Shannon-Khinchin axioms together with the composability axiom: for
//! statistically independent systems `A` and `B`,
//!
//! ```text
//! S(A ∪ B) = Φ(S(A), S(B))
//! ```
//!
//! where `Φ` is a commutative formal group law (symmetric, associative,
//! null-composable). This crate provides:
//!
//! | Module | Contents |
//! |--------|----------|
//! | [`series`] | Exact truncated power series over rationals; formal group laws and ring products built from a generator, with coefficient-exact axiom verification |
//! | [`special`] | Lambert W (principal branch), invertible generator functions, the group logarithm, numeric inversion |
//! | [`entropy`] | Probability distributions and the entropy catalog (Rényi, Tsallis, multivariate Z-entropies, stretched/rapid/super-exponential families) |
//! | [`laws`] | Closed-form composition laws, numerical composability checks, growth functions and extensivity scans |
//! | [`funceq`] | Exactly solvable functional equations, discrete dynamical systems, integer sequences |
//!
//! ## Quick start
//!
//! ```rust
//! use groupent::entropy::{renyi, Distribution};
//!
//! let p = Distribution::new(vec![0.5, 0.25, 0.25]).unwrap();
//! let r = renyi(&p, 2.0).unwrap();
//! assert!((r - (8.0f64 / 3.0).ln()).abs() < 1e-12);
//! ```
//!
//! All series arithmetic is exact (arbitrary-precision rationals); all
//! floating-point checks carry explicit tolerances.

use thiserror::Error;

pub mod entropy;
pub mod funceq;
pub mod laws;
pub mod series;
pub mod special;

/// Error type shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("series composition needs a zero constant term, found {0}")]
    NonzeroConstantTerm(String),

    #[error("series is not invertible: {0}")]
    NonInvertibleSeries(String),

    #[error("expected a {expected}-variable polynomial, found {found} variables")]
    VariableCountMismatch { expected: usize, found: usize },

    #[error("truncation orders differ: {0} vs {1}")]
    OrderMismatch(u32, u32),

    #[error("invalid probability distribution: {0}")]
    InvalidDistribution(String),

    #[error("distribution does not sum to 1 (sum = {sum:.17e})")]
    NotNormalized { sum: f64 },

    #[error("parameter out of range: {0}")]
    InvalidParameter(String),

    #[error("argument outside domain: {0}")]
    DomainError(String),

    #[error("no bracketing interval found while inverting (target {target})")]
    BracketNotFound { target: f64 },

    #[error("index {index} outside the stored range {lo}..={hi}")]
    IndexOutOfRange { index: i64, lo: i64, hi: i64 },

    #[error("unknown kind `{given}`; valid kinds: {valid}")]
    UnknownKind { given: String, valid: String },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
