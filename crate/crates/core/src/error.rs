use thiserror::Error;

/// Everything that can go wrong in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("eigenvalue iteration did not converge for a {0}x{0} matrix")]
    EigenFailure(usize),
    #[error("matrix exponential overflowed")]
    ExpOverflow,
    #[error("logarithm series does not converge (spectral radius {0:.3e})")]
    NotConvergent(f64),
    #[error("not a Markov matrix: row {index} fails ({detail})")]
    NotStochastic { index: usize, detail: String },
    #[error("matrix is not of equal-input type")]
    NotEqualInput,
    #[error("dimension mismatch: {0} vs {1}")]
    DimMismatch(usize, usize),
    #[error("no equal-input root exists for summatory parameter {0}")]
    NoEqualInputRoot(f64),
    #[error("vectors have different sums ({0} vs {1})")]
    NotComparableLevels(f64, f64),
    #[error("rows do not share a common sum")]
    NotLevel,
    #[error("matrix is not monotone")]
    NotMonotone,
    #[error("expected a {expected}x{expected} matrix, got {found}x{found}")]
    WrongDimension { expected: usize, found: usize },
    #[error("matrix is not cyclic")]
    NotCyclic,
    #[error("spectrum is not real")]
    NonRealSpectrum,
    #[error("linear system is ill-conditioned (condition estimate {0:.3e})")]
    IllConditioned(f64),
    #[error("interpolation nodes must be distinct and non-zero ({0})")]
    DuplicateNode(f64),
    #[error("invalid family: {0}")]
    InvalidFamily(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
