use std::path::PathBuf;

use thiserror::Error;

use crate::linalg::Basis;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("matrix is not Hermitian (max asymmetry {0:e})")]
    NotHermitian(f64),

    #[error("density matrix trace is {0} (expected 1)")]
    InvalidTrace(f64),

    #[error("density matrix is not positive semidefinite (min eigenvalue {0:e})")]
    NotPositive(f64),

    #[error("Jacobi eigensolver did not converge for a {dim}x{dim} matrix after {sweeps} sweeps")]
    EigenNoConvergence { dim: usize, sweeps: usize },

    #[error("operation requires basis {expected:?}, got {got:?}")]
    WrongBasis { expected: Basis, got: Basis },

    #[error("singular capacitance geometry: C_sigma1*C_sigma2 - C_m^2 = {0}")]
    SingularGeometry(f64),

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("lattice basis of {0} states exceeds the 200^2 guard")]
    LatticeTooLarge(usize),

    #[error("step count {0} exceeds the 1e7 guard")]
    TooManySteps(f64),

    #[error("density matrix is not block diagonal over {{ee}}, {{gg}}, {{ge, eg}} (max stray element {0:e}); use the general eigensolver")]
    NotBlockStructured(f64),

    #[error("sweep grid has {0} points, more than the 1e7 guard")]
    GridTooLarge(usize),

    #[error(
        "at grid point (e_m={e_m}, gamma={gamma}, xi={xi}, e_j1={e_j1}, e_j2={e_j2}): {source}"
    )]
    AtGridPoint {
        e_m: f64,
        gamma: f64,
        xi: f64,
        e_j1: f64,
        e_j2: f64,
        #[source]
        source: Box<Error>,
    },

    #[error("config error: {0}")]
    Config(String),

    #[error("plot needs {expected} varied non-time axes, sweep has {got}")]
    PlotArity { expected: &'static str, got: usize },

    #[error("malformed CSV at line {line}: {reason}")]
    Csv { line: usize, reason: String },

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
