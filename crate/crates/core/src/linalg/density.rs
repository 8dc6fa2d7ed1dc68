//! Density matrices, partial traces and spectral entropies.

use num_complex::Complex64;

use super::eigen::eig_hermitian;
use super::matrix::{hermitize, ComplexMatrix};
use crate::error::{Error, Result};

/// Which Hilbert space a density matrix lives on.
///
/// `Joint4` uses the ordering `b0 = |g1 g2>`, `b1 = |g1 e2>`, `b2 = |e1 g2>`,
/// `b3 = |e1 e2>`, i.e. joint index `2 * n1 + n2` with `g = 0`, `e = 1`.
/// The single-qubit bases order `g` before `e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Basis {
    Joint4,
    QubitA,
    QubitB,
    Lattice { n_max: usize },
}

impl Basis {
    pub fn dim(self) -> usize {
        match self {
            Basis::Joint4 => 4,
            Basis::QubitA | Basis::QubitB => 2,
            Basis::Lattice { n_max } => (2 * n_max + 2) * (2 * n_max + 2),
        }
    }
}

/// Which qubit survives a partial trace.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Keep {
    A,
    B,
}

pub const TRACE_TOL: f64 = 1e-10;
pub const POSITIVITY_TOL: f64 = 1e-10;
/// Eigenvalues below this are treated as exact zeros in entropies.
pub const EIGEN_CLAMP: f64 = 1e-12;

/// Validity diagnostics for a (possibly numerically perturbed) state.
#[derive(Clone, Copy, Debug)]
pub struct StateDiagnostics {
    pub trace_error: f64,
    pub hermiticity_error: f64,
    pub min_eigenvalue: f64,
}

impl StateDiagnostics {
    pub fn is_valid(&self) -> bool {
        self.trace_error <= TRACE_TOL && self.min_eigenvalue >= -POSITIVITY_TOL
    }
}

/// A density matrix tagged with its basis.
///
/// [`DensityMatrix::new`] enforces unit trace and positivity. Propagation
/// routines return their raw numerical output through
/// [`DensityMatrix::unchecked`] so that invariant violations stay visible to
/// diagnostics instead of becoming hard errors.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    basis: Basis,
}

impl DensityMatrix {
    pub fn new(matrix: ComplexMatrix, basis: Basis) -> Result<Self> {
        let rho = Self::unchecked(matrix, basis)?;
        let herm = rho.matrix.hermiticity_error();
        if herm > 1e-12 * (1.0 + rho.matrix.max_abs()) {
            return Err(Error::NotHermitian(herm));
        }
        let d = rho.diagnostics();
        if d.trace_error > TRACE_TOL {
            return Err(Error::InvalidTrace(rho.trace()));
        }
        if d.min_eigenvalue < -POSITIVITY_TOL {
            return Err(Error::NotPositive(d.min_eigenvalue));
        }
        Ok(rho)
    }

    /// Only the dimension is checked against the basis.
    pub fn unchecked(matrix: ComplexMatrix, basis: Basis) -> Result<Self> {
        if matrix.dim() != basis.dim() {
            return Err(Error::DimensionMismatch {
                expected: basis.dim(),
                got: matrix.dim(),
            });
        }
        Ok(DensityMatrix { matrix, basis })
    }

    /// Projector onto a normalized pure state.
    pub fn pure(amplitudes: &[Complex64], basis: Basis) -> Result<Self> {
        let norm: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::param("amplitudes", "zero vector"));
        }
        let n = amplitudes.len();
        let mut m = ComplexMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = amplitudes[i] * amplitudes[j].conj() / (norm * norm);
            }
        }
        Self::new(m, basis)
    }

    pub fn maximally_mixed(basis: Basis) -> Self {
        let n = basis.dim();
        DensityMatrix {
            matrix: ComplexMatrix::identity(n).scale_real(1.0 / n as f64),
            basis,
        }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace().re
    }

    /// Eigenvalues (ascending) of the Hermitian part.
    pub fn spectrum(&self) -> Vec<f64> {
        let h = hermitize(&self.matrix);
        match eig_hermitian(&h) {
            Ok(es) => es.values,
            Err(_) => vec![f64::NAN; self.dim()],
        }
    }

    pub fn diagnostics(&self) -> StateDiagnostics {
        let min_eigenvalue = self.spectrum().first().copied().unwrap_or(f64::NAN);
        StateDiagnostics {
            trace_error: (self.matrix.trace() - Complex64::new(1.0, 0.0)).norm(),
            hermiticity_error: self.matrix.hermiticity_error(),
            min_eigenvalue,
        }
    }

    /// Diagonal entries in basis order.
    pub fn populations(&self) -> Vec<f64> {
        self.matrix.diagonal_real()
    }
}

/// Reduced state of one qubit of a `Joint4` state.
pub fn partial_trace(rho: &DensityMatrix, keep: Keep) -> Result<DensityMatrix> {
    if rho.basis != Basis::Joint4 {
        return Err(Error::WrongBasis {
            expected: Basis::Joint4,
            got: rho.basis,
        });
    }
    let m = &rho.matrix;
    let mut out = ComplexMatrix::zeros(2);
    for i in 0..2 {
        for k in 0..2 {
            out[(i, k)] = match keep {
                Keep::A => (0..2).map(|j| m[(2 * i + j, 2 * k + j)]).sum(),
                Keep::B => (0..2).map(|j| m[(2 * j + i, 2 * j + k)]).sum(),
            };
        }
    }
    let basis = match keep {
        Keep::A => Basis::QubitA,
        Keep::B => Basis::QubitB,
    };
    Ok(DensityMatrix { matrix: out, basis })
}

/// Shannon entropy in bits of a probability spectrum, with eigenvalues
/// below [`EIGEN_CLAMP`] treated as zero.
pub fn spectral_entropy(values: &[f64]) -> f64 {
    values
        .iter()
        .filter(|&&l| l > EIGEN_CLAMP)
        .map(|&l| -l * l.log2())
        .sum()
}

/// `-tr(rho log2 rho)`
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    let s = spectral_entropy(&rho.spectrum());
    s.clamp(0.0, (rho.dim() as f64).log2())
}

/// `tr(rho^2)`
pub fn purity(rho: &DensityMatrix) -> f64 {
    let m = rho.matrix();
    let n = m.dim();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            acc += (m[(i, j)] * m[(j, i)]).re;
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn joint_diag(d: [f64; 4]) -> DensityMatrix {
        DensityMatrix::new(ComplexMatrix::from_diagonal(&d), Basis::Joint4).unwrap()
    }

    #[test]
    fn partial_trace_product_excited() {
        let rho = joint_diag([0.0, 0.0, 0.0, 1.0]);
        let a = partial_trace(&rho, Keep::A).unwrap();
        assert_eq!(a.matrix(), &ComplexMatrix::from_diagonal(&[0.0, 1.0]));
        assert_eq!(a.basis(), Basis::QubitA);
    }

    #[test]
    fn partial_trace_classical_mixture() {
        let rho = joint_diag([0.5, 0.0, 0.0, 0.5]);
        let a = partial_trace(&rho, Keep::A).unwrap();
        assert_eq!(a.matrix(), &ComplexMatrix::identity(2).scale_real(0.5));
    }

    #[test]
    fn partial_trace_bell() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let rho = DensityMatrix::pure(&[c(s), c(0.0), c(0.0), c(s)], Basis::Joint4).unwrap();
        let b = partial_trace(&rho, Keep::B).unwrap();
        assert!(
            b.matrix()
                .max_abs_diff(&ComplexMatrix::identity(2).scale_real(0.5))
                < 1e-15
        );
    }

    #[test]
    fn partial_trace_rejects_other_basis() {
        let rho = DensityMatrix::maximally_mixed(Basis::QubitA);
        assert!(matches!(
            partial_trace(&rho, Keep::A),
            Err(Error::WrongBasis { .. })
        ));
    }

    #[test]
    fn entropy_reference_values() {
        let pure = joint_diag([0.0, 1.0, 0.0, 0.0]);
        assert_eq!(von_neumann_entropy(&pure), 0.0);
        let half = DensityMatrix::maximally_mixed(Basis::QubitA);
        assert!((von_neumann_entropy(&half) - 1.0).abs() < 1e-15);
        let quarter = DensityMatrix::maximally_mixed(Basis::Joint4);
        assert!((von_neumann_entropy(&quarter) - 2.0).abs() < 1e-15);
    }

    #[test]
    fn entropy_survives_tiny_negative_eigenvalue() {
        let rho = DensityMatrix::unchecked(
            ComplexMatrix::from_diagonal(&[1.0 + 1e-15, -1e-15]),
            Basis::QubitA,
        )
        .unwrap();
        let s = von_neumann_entropy(&rho);
        assert!(s.is_finite() && s >= 0.0);
    }

    #[test]
    fn purity_reference_values() {
        assert!((purity(&joint_diag([1.0, 0.0, 0.0, 0.0])) - 1.0).abs() < 1e-15);
        assert!((purity(&DensityMatrix::maximally_mixed(Basis::QubitB)) - 0.5).abs() < 1e-15);
        assert!((purity(&DensityMatrix::maximally_mixed(Basis::Joint4)) - 0.25).abs() < 1e-15);
    }

    #[test]
    fn new_rejects_bad_trace_and_negative() {
        let bad_trace = ComplexMatrix::from_diagonal(&[0.5, 0.4]);
        assert!(matches!(
            DensityMatrix::new(bad_trace, Basis::QubitA),
            Err(Error::InvalidTrace(_))
        ));
        let negative = ComplexMatrix::from_diagonal(&[1.5, -0.5]);
        assert!(matches!(
            DensityMatrix::new(negative, Basis::QubitA),
            Err(Error::NotPositive(_))
        ));
        let wrong_dim = ComplexMatrix::identity(3);
        assert!(matches!(
            DensityMatrix::new(wrong_dim, Basis::Joint4),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
