//! Exact symbolic engine for the quantum toroidal algebra of a cyclic quiver
//! acting on the equivariant K-theory of its Nakajima varieties.
//!
//! The crate is organised bottom-up:
//!
//! - [`exactalg`]: multivariate Laurent polynomials over the rationals, their
//!   fraction field, weighted-degree extraction and formal expansions.
//! - [`quiver`]: cyclic quiver data, multipartition fixed points and sparse
//!   graded operator matrices.
//! - [`shuffle`]: the shuffle algebra halves, slope tests and the slope
//!   generators with their coproducts.
//! - [`geomaction`]: evaluation of shuffle elements on the fixed-point basis
//!   and checks of the defining relations.
//! - [`slopewall`]: wall data, wall R-matrices by triangular intertwining,
//!   the stable-basis Pieri rule and the Drinfeld-double machinery.
//! - [`qde`]: fusion operators, monodromy operators, quantum difference
//!   operators and their formal solutions at `z = 0` and `z = ∞`.
//! - [`dubrovin`]: the cohomological degeneration to the Dubrovin connection.
//!
//! All computations are exact; floating point appears only in the
//! high-precision eigensolver used for solutions at `z = ∞`.

pub mod exactalg;
pub mod quiver;
pub mod shuffle;
pub mod geomaction;
pub mod slopewall;
pub mod qde;
pub mod dubrovin;
pub mod config;
pub mod cache;

use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivByZero,
    #[error("not a polynomial in the weighted variables: {0}")]
    NotPolynomial(String),
    #[error("denominator vanishes to all computed orders: {0}")]
    DegenerateLimit(String),
    #[error("shuffle elements lie in different halves")]
    HalfMismatch,
    #[error("slope does not satisfy the wall condition for the arc: {0}")]
    NotOnWall(String),
    #[error("operator gradings do not match: {0}")]
    GradingMismatch(String),
    #[error("evaluation hits a pole of the element: {0}")]
    EvaluationPole(String),
    #[error("wall solve produced a singular block system: {0}")]
    WallSolveSingular(String),
    #[error("dual basis completion degenerated; resample")]
    NonGenericCompletion,
    #[error("pairing oracle scope exceeded: {0}")]
    OracleScopeExceeded(String),
    #[error("resonant wall denominator vanished: {0}")]
    ResonantWall(String),
    #[error("repeated eigenvalue with nondiagonal coupling: {0}")]
    ResonantEigenvalue(String),
    #[error("eigenvalue collision at the numeric specialization")]
    ResonantSpecialization,
    #[error("path is not generic: {0}")]
    NonGenericPath(String),
    #[error("truncation window too small: {0}")]
    InsufficientTruncation(String),
    #[error("degeneration residual depends on z: {0}")]
    DegenerationMismatch(String),
    #[error("variable cap exceeded: {0}")]
    VariableCap(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
