//! Density-matrix evolution under intrinsic phase decoherence,
//!
//! ```text
//! d rho / dt = -i [H, rho] - (gamma / 2) [H, [H, rho]]      (hbar = 1)
//! ```
//!
//! In the energy eigenbasis the equation decouples element by element:
//! `rho_kl(t) = rho_kl(0) exp(-i w_kl t - (gamma / 2) w_kl^2 t)` with
//! `w_kl = E_k - E_l`. [`Propagator`] applies that closed form;
//! [`evolve_rk4`] integrates the matrix ODE directly and serves as an
//! independent reference.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{
    eig_hermitian, Basis, ComplexMatrix, DensityMatrix, EigenSystem, HermitianMatrix,
};
use crate::model::{B_EE, B_GG};

/// Upper bound on RK4 step counts.
pub const MAX_RK4_STEPS: f64 = 1e7;

/// Relative gap threshold (times the spectral spread) below which two
/// eigenvalues count as degenerate in the dephased limit.
pub const DEGENERACY_TOL: f64 = 1e-9;

/// Mixing angle of the initial classical mixture
/// `cos^2(xi/2) |e1e2><e1e2| + sin^2(xi/2) |g1g2><g1g2|`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InitialStateSpec {
    pub xi: f64,
}

impl InitialStateSpec {
    pub fn new(xi: f64) -> Result<Self> {
        if !(0.0..=std::f64::consts::PI).contains(&xi) {
            return Err(Error::param("xi", format!("must lie in [0, pi], got {xi}")));
        }
        Ok(InitialStateSpec { xi })
    }
}

pub fn make_initial_state(spec: InitialStateSpec) -> Result<DensityMatrix> {
    let spec = InitialStateSpec::new(spec.xi)?;
    let half = spec.xi / 2.0;
    let mut diag = [0.0; 4];
    diag[B_EE] = half.cos().powi(2);
    diag[B_GG] = half.sin().powi(2);
    DensityMatrix::new(ComplexMatrix::from_diagonal(&diag), Basis::Joint4)
}

/// Exact propagator built from the eigendecomposition of `H`.
#[derive(Clone, Debug)]
pub struct Propagator {
    eigen: EigenSystem,
    gamma: f64,
    decay_sign: f64,
}

impl Propagator {
    pub fn new(h: &HermitianMatrix, gamma: f64) -> Result<Self> {
        if !(gamma >= 0.0) || !gamma.is_finite() {
            return Err(Error::param(
                "gamma",
                format!("must be finite and >= 0, got {gamma}"),
            ));
        }
        Ok(Propagator {
            eigen: eig_hermitian(h)?,
            gamma,
            decay_sign: 1.0,
        })
    }

    pub fn eigensystem(&self) -> &EigenSystem {
        &self.eigen
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn dim(&self) -> usize {
        self.eigen.dim()
    }

    /// Smallest nonzero Bohr frequency `|E_k - E_l|`, if any.
    pub fn min_gap(&self) -> Option<f64> {
        let tol = DEGENERACY_TOL * self.eigen.spread();
        self.eigen
            .values
            .windows(2)
            .map(|w| w[1] - w[0])
            .filter(|&g| g > tol)
            .min_by(f64::total_cmp)
    }

    /// Test hook: a propagator whose coherences grow instead of decay.
    #[doc(hidden)]
    pub fn with_flipped_decay_sign(mut self) -> Self {
        self.decay_sign = -self.decay_sign;
        self
    }

    fn check_state(&self, rho0: &DensityMatrix) -> Result<()> {
        if rho0.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: rho0.dim(),
            });
        }
        Ok(())
    }

    /// `rho0` expressed in the energy eigenbasis.
    pub fn to_eigenbasis(&self, rho0: &DensityMatrix) -> Result<ComplexMatrix> {
        self.check_state(rho0)?;
        Ok(self.eigen.to_eigenbasis(rho0.matrix()))
    }

    /// Evolves an eigenbasis-represented state by `t`, returning the
    /// lab-frame matrix.
    fn propagate_eigenbasis(&self, rho_eig: &ComplexMatrix, t: f64) -> ComplexMatrix {
        let e = &self.eigen.values;
        let half_gamma = 0.5 * self.gamma * self.decay_sign;
        let evolved = rho_eig.map(|k, l, z| {
            if k == l {
                return z;
            }
            let w = e[k] - e[l];
            let factor = Complex64::new(-half_gamma * w * w * t, -w * t).exp();
            z * factor
        });
        self.eigen.from_eigenbasis(&evolved)
    }

    pub fn evolve(&self, rho0: &DensityMatrix, t: f64) -> Result<DensityMatrix> {
        check_time(t)?;
        let rho_eig = self.to_eigenbasis(rho0)?;
        DensityMatrix::unchecked(self.propagate_eigenbasis(&rho_eig, t), rho0.basis())
    }

    /// Evolves to each time in `times`, sharing the basis change.
    pub fn trajectory(&self, rho0: &DensityMatrix, times: &[f64]) -> Result<Vec<DensityMatrix>> {
        let rho_eig = self.to_eigenbasis(rho0)?;
        times
            .iter()
            .map(|&t| {
                check_time(t)?;
                DensityMatrix::unchecked(self.propagate_eigenbasis(&rho_eig, t), rho0.basis())
            })
            .collect()
    }

    /// The `t -> infinity` state: every coherence between distinct energies
    /// removed, coherences inside degenerate eigenspaces kept.
    pub fn dephased_limit(&self, rho0: &DensityMatrix) -> Result<DensityMatrix> {
        if !(self.gamma > 0.0) {
            return Err(Error::param("gamma", "dephased limit needs gamma > 0"));
        }
        let rho_eig = self.to_eigenbasis(rho0)?;
        let e = &self.eigen.values;
        let tol = DEGENERACY_TOL * self.eigen.spread();
        let kept = rho_eig.map(|k, l, z| {
            if (e[k] - e[l]).abs() > tol {
                Complex64::new(0.0, 0.0)
            } else {
                z
            }
        });
        DensityMatrix::unchecked(self.eigen.from_eigenbasis(&kept), rho0.basis())
    }
}

fn check_time(t: f64) -> Result<()> {
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::param(
            "t",
            format!("time must be finite and >= 0, got {t}"),
        ));
    }
    Ok(())
}

/// Free-function form of [`Propagator::evolve`].
pub fn evolve(prop: &Propagator, rho0: &DensityMatrix, t: f64) -> Result<DensityMatrix> {
    prop.evolve(rho0, t)
}

/// Free-function form of [`Propagator::dephased_limit`].
pub fn dephased_limit(prop: &Propagator, rho0: &DensityMatrix) -> Result<DensityMatrix> {
    prop.dephased_limit(rho0)
}

/// Right-hand side `-i [H, rho] - (gamma / 2) [H, [H, rho]]`.
pub fn master_equation_rhs(h: &ComplexMatrix, gamma: f64, rho: &ComplexMatrix) -> ComplexMatrix {
    let c1 = h.commutator(rho);
    let c2 = h.commutator(&c1);
    &c1.scale(Complex64::new(0.0, -1.0)) - &c2.scale_real(0.5 * gamma)
}

/// Classic fourth-order Runge-Kutta on the master equation with fixed step
/// `h`; the last step is shortened to land on `t`. The result is returned
/// as computed, without re-hermitizing or renormalizing.
pub fn evolve_rk4(
    hamiltonian: &HermitianMatrix,
    gamma: f64,
    rho0: &DensityMatrix,
    t: f64,
    h: f64,
) -> Result<DensityMatrix> {
    check_time(t)?;
    if !(h > 0.0) || !h.is_finite() {
        return Err(Error::param("h", format!("step must be positive, got {h}")));
    }
    if hamiltonian.dim() != rho0.dim() {
        return Err(Error::DimensionMismatch {
            expected: hamiltonian.dim(),
            got: rho0.dim(),
        });
    }
    let ratio = t / h;
    if ratio > MAX_RK4_STEPS {
        return Err(Error::TooManySteps(ratio));
    }
    // Round ratios that are integers up to floating noise.
    let steps = if (ratio - ratio.round()).abs() <= 1e-9 * ratio.max(1.0) {
        ratio.round() as usize
    } else {
        ratio.ceil() as usize
    };

    let hm = hamiltonian.as_matrix();
    let f = |r: &ComplexMatrix| master_equation_rhs(hm, gamma, r);
    let mut rho = rho0.matrix().clone();
    for k in 0..steps {
        let dt = if k + 1 == steps { t - k as f64 * h } else { h };
        let k1 = f(&rho);
        let k2 = f(&(&rho + &k1.scale_real(dt / 2.0)));
        let k3 = f(&(&rho + &k2.scale_real(dt / 2.0)));
        let k4 = f(&(&rho + &k3.scale_real(dt)));
        let incr = &(&k1 + &k2.scale_real(2.0)) + &(&k3.scale_real(2.0) + &k4);
        rho = &rho + &incr.scale_real(dt / 6.0);
    }
    DensityMatrix::unchecked(rho, rho0.basis())
}
