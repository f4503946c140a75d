use thiserror::Error;

/// Errors raised by the operator toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension {dim} is too small (need at least {min})")]
    DimensionTooSmall { dim: usize, min: usize },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("sector {sector} out of range for dimension {dim}")]
    SectorOutOfRange { sector: usize, dim: usize },

    #[error("frequency must be positive and finite, got {0}")]
    NonpositiveFrequency(f64),

    #[error("invalid oscillator parameters: {0}")]
    InvalidParameters(String),

    #[error("matrix has non-finite entries")]
    NonFinite,

    #[error("matrix exponential overflowed after {squarings} squarings")]
    Overflow { squarings: u32 },

    #[error("matrix is not Hermitian (residual {residual:e}, allowed {allowed:e})")]
    NotHermitian { residual: f64, allowed: f64 },

    #[error("Jacobi eigensolver did not converge in {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("alpha == beta: the Hamiltonian is Hermitian and has no singular band")]
    HermitianCase,

    #[error("metric parameter z = {z} lies in the singular band [{lower}, {upper}]")]
    InvalidRegion { z: f64, lower: f64, upper: f64 },

    #[error("z = {z} sits on the collapsed band of an exceptional point")]
    ExceptionalPoint { z: f64 },

    #[error("metric parameter z = {0} outside [-1, 1]")]
    ZOutOfRange(f64),

    #[error("amplitude must be positive, got {0}")]
    NonpositiveAmplitude(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
