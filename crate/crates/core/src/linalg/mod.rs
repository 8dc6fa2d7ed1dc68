//! Dense complex linear algebra: Hermitian eigendecomposition, partial
//! traces and entropy-grade spectral functions.

mod density;
mod eigen;
mod matrix;

pub use density::{
    partial_trace, purity, spectral_entropy, von_neumann_entropy, Basis, DensityMatrix, Keep,
    StateDiagnostics, EIGEN_CLAMP, POSITIVITY_TOL, TRACE_TOL,
};
pub use eigen::{eig_hermitian, EigenSystem};
pub use matrix::{hermitize, ComplexMatrix, HermitianMatrix};
