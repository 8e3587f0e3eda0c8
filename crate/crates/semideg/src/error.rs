//! Error types shared by all modules.

use crate::C64;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong while running numerical routines.
///
/// Guards reject inputs within a small distance of a degenerate locus rather
/// than attempting limits; the offending value is carried in the variant so
/// callers can report it.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("argument {0} is at a gamma pole (non-positive integer)")]
    Pole(C64),
    #[error("argument {0} is at a Barnes G zero (non-positive integer)")]
    BarnesPole(C64),
    #[error("gamma pole in connection coefficient at argument {0}")]
    GammaPole(C64),
    #[error("lower hypergeometric parameter {0} is a non-positive integer")]
    LowerParameterPole(C64),
    #[error("series did not converge within {max_terms} terms (last |term| = {last_term:.3e})")]
    NoConvergence { max_terms: usize, last_term: f64 },
    #[error("eigenvalue sets intersect within tolerance (value {0})")]
    SpectrumCollision(C64),
    #[error("coincident spectrum: |{0}| below tolerance")]
    DegenerateSpectrum(C64),
    #[error("matrix is numerically singular (pivot {0:.3e})")]
    SingularMatrix(f64),
    #[error("sine factor sin(pi * {0}) vanishes within tolerance")]
    SineFactorZero(C64),
    #[error("resonant exponents: difference {0} is within tolerance of a non-zero integer")]
    ResonantExponents(C64),
    #[error("evaluation point {0} outside the series domain")]
    OutsideDomain(C64),
    #[error("adaptive step size underflowed the floor at parameter {0}")]
    StepFailure(f64),
    #[error("time {0} sits on a singular point of the flow")]
    SingularTime(C64),
    #[error("could not draw a non-degenerate initial state after {0} attempts")]
    ConstructionFailure(usize),
    #[error("partition {0:?} does not sum to N = {1}")]
    InvalidPartition(Vec<u32>, usize),
    #[error("eigenvector matching failed: rank-one factor residual {0:.3e}")]
    EigenvectorMatchFailure(f64),
    #[error("no root-lattice shift achieves the normalization band")]
    NormalizationFailure,
    #[error("normalization constant pole: {0}")]
    NormPole(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}
