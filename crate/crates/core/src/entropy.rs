//! Reduced states, von Neumann entropies and the quantum mutual entropy
//! `I = S(rho_A) + S(rho_B) - S(rho_AB)`, all in bits.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    partial_trace, purity, von_neumann_entropy, Basis, DensityMatrix, HermitianMatrix, Keep,
};
use crate::model::{B_EE, B_EG, B_GE, B_GG};

/// Reduced coherences above this are flagged by [`ReducedEntropies`].
pub const REDUCED_COHERENCE_TOL: f64 = 1e-9;

/// Stray off-block elements tolerated by [`closed_form_joint_eigenvalues`].
pub const BLOCK_TOL: f64 = 1e-9;

fn require_joint(rho: &DensityMatrix) -> Result<()> {
    if rho.basis() != Basis::Joint4 {
        return Err(Error::WrongBasis {
            expected: Basis::Joint4,
            got: rho.basis(),
        });
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ReducedEntropies {
    pub s_a: f64,
    pub s_b: f64,
    /// Largest off-diagonal modulus of either reduced matrix.
    pub max_coherence: f64,
}

impl ReducedEntropies {
    /// True when a diagonal-only entropy formula would differ from the
    /// spectral one.
    pub fn has_coherence(&self) -> bool {
        self.max_coherence > REDUCED_COHERENCE_TOL
    }
}

/// Spectral entropies of both single-qubit reduced states.
pub fn reduced_entropies(rho: &DensityMatrix) -> Result<ReducedEntropies> {
    let a = partial_trace(rho, Keep::A)?;
    let b = partial_trace(rho, Keep::B)?;
    let max_coherence = a.matrix()[(0, 1)].norm().max(b.matrix()[(0, 1)].norm());
    Ok(ReducedEntropies {
        s_a: von_neumann_entropy(&a),
        s_b: von_neumann_entropy(&b),
        max_coherence,
    })
}

fn clamp_mutual(i: f64) -> f64 {
    if i < 0.0 && i > -1e-10 {
        0.0
    } else {
        i
    }
}

pub fn mutual_entropy(rho: &DensityMatrix) -> Result<f64> {
    require_joint(rho)?;
    let r = reduced_entropies(rho)?;
    Ok(clamp_mutual(r.s_a + r.s_b - von_neumann_entropy(rho)))
}

/// Joint eigenvalues `(l1, l2, l3, l4)` for states that are block diagonal
/// over `{|e1e2>}`, `{|g1g2>}` and `{|g1e2>, |e1g2>}`:
/// `l1 = <ee|rho|ee>`, `l2 = <gg|rho|gg>`, and `l3,4` the eigenvalues of the
/// central block, `(a + b)/2 +- sqrt((a - b)^2 + 4|c|^2)/2`.
pub fn closed_form_joint_eigenvalues(rho: &DensityMatrix) -> Result<[f64; 4]> {
    require_joint(rho)?;
    let m = rho.matrix();
    let central = [B_GE, B_EG];
    let mut stray: f64 = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            let same_block = i == j || (central.contains(&i) && central.contains(&j));
            if !same_block {
                stray = stray.max(m[(i, j)].norm());
            }
        }
    }
    if stray > BLOCK_TOL {
        return Err(Error::NotBlockStructured(stray));
    }
    let a = m[(B_EG, B_EG)].re;
    let b = m[(B_GE, B_GE)].re;
    let c = m[(B_EG, B_GE)].norm();
    let mean = 0.5 * (a + b);
    let root = 0.5 * ((a - b).powi(2) + 4.0 * c * c).sqrt();
    Ok([
        m[(B_EE, B_EE)].re,
        m[(B_GG, B_GG)].re,
        mean + root,
        mean - root,
    ])
}

/// Observables at one time point.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorrelationRecord {
    pub t: f64,
    pub s_a: f64,
    pub s_b: f64,
    pub s_ab: f64,
    pub mutual: f64,
    pub purity: f64,
    pub energy: f64,
    /// `(p_gg, p_ge, p_eg, p_ee)`
    pub populations: [f64; 4],
}

impl CorrelationRecord {
    /// `max(0, -I) + max(0, I - 2 min(S_A, S_B))`
    pub fn subadditivity_violation(&self) -> f64 {
        let lower = (-self.mutual).max(0.0);
        let upper = (self.mutual - 2.0 * self.s_a.min(self.s_b)).max(0.0);
        nan_as_inf(lower.max(upper), self.mutual)
    }

    /// `max(0, |S_A - S_B| - S_AB)`
    pub fn araki_lieb_violation(&self) -> f64 {
        let v = ((self.s_a - self.s_b).abs() - self.s_ab).max(0.0);
        nan_as_inf(v, self.s_ab)
    }

    pub fn population_sum(&self) -> f64 {
        self.populations.iter().sum()
    }
}

fn nan_as_inf(v: f64, probe: f64) -> f64 {
    if probe.is_nan() || v.is_nan() {
        f64::INFINITY
    } else {
        v
    }
}

/// Bundles entropies, purity, energy `tr(H rho)` and charge populations.
pub fn observe(h: &HermitianMatrix, rho: &DensityMatrix, t: f64) -> Result<CorrelationRecord> {
    require_joint(rho)?;
    if h.dim() != rho.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho.dim(),
            got: h.dim(),
        });
    }
    let r = reduced_entropies(rho)?;
    let s_ab = von_neumann_entropy(rho);
    let energy = (h.as_matrix() * rho.matrix()).trace().re;
    let p = rho.populations();
    Ok(CorrelationRecord {
        t,
        s_a: r.s_a,
        s_b: r.s_b,
        s_ab,
        mutual: clamp_mutual(r.s_a + r.s_b - s_ab),
        purity: purity(rho),
        energy,
        populations: [p[B_GG], p[B_GE], p[B_EG], p[B_EE]],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ComplexMatrix;
    use num_complex::Complex64;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn bell() -> DensityMatrix {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        DensityMatrix::pure(&[c(s), c(0.0), c(0.0), c(s)], Basis::Joint4).unwrap()
    }

    fn diag(d: [f64; 4]) -> DensityMatrix {
        DensityMatrix::new(ComplexMatrix::from_diagonal(&d), Basis::Joint4).unwrap()
    }

    #[test]
    fn mutual_reference_values() {
        assert_eq!(mutual_entropy(&diag([0.0, 0.0, 1.0, 0.0])).unwrap(), 0.0);
        assert!((mutual_entropy(&diag([0.5, 0.0, 0.0, 0.5])).unwrap() - 1.0).abs() < 1e-14);
        let b = bell();
        let i = mutual_entropy(&b).unwrap();
        let r = reduced_entropies(&b).unwrap();
        assert!((i - 2.0).abs() < 1e-12);
        assert!((i - 2.0 * r.s_a).abs() < 1e-12);
    }

    #[test]
    fn closed_form_diagonal() {
        let l = closed_form_joint_eigenvalues(&diag([0.1, 0.2, 0.3, 0.4])).unwrap();
        let expected = [0.4, 0.1, 0.3, 0.2];
        for (a, b) in l.iter().zip(expected) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn closed_form_rank_one_central_block() {
        let mut m = ComplexMatrix::from_diagonal(&[0.25, 0.25, 0.25, 0.25]);
        m[(B_GE, B_EG)] = Complex64::new(0.0, 0.25);
        m[(B_EG, B_GE)] = Complex64::new(0.0, -0.25);
        let rho = DensityMatrix::new(m, Basis::Joint4).unwrap();
        let l = closed_form_joint_eigenvalues(&rho).unwrap();
        assert!((l[2] - 0.5).abs() < 1e-15);
        assert!(l[3].abs() < 1e-15);
    }

    #[test]
    fn closed_form_rejects_outer_coherence() {
        assert!(matches!(
            closed_form_joint_eigenvalues(&bell()),
            Err(Error::NotBlockStructured(_))
        ));
    }

    #[test]
    fn reduced_reference_values() {
        let r = reduced_entropies(&diag([0.0, 0.0, 0.0, 1.0])).unwrap();
        assert_eq!((r.s_a, r.s_b), (0.0, 0.0));
        let r = reduced_entropies(&diag([0.5, 0.0, 0.0, 0.5])).unwrap();
        assert!((r.s_a - 1.0).abs() < 1e-14 && (r.s_b - 1.0).abs() < 1e-14);
        assert!(!r.has_coherence());
    }

    #[test]
    fn reduced_entropy_uses_spectrum_not_diagonal() {
        // |+>|g>: rho_A = [[.5, .5], [.5, .5]] has equal diagonals but is pure.
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let rho = DensityMatrix::pure(&[c(s), c(0.0), c(s), c(0.0)], Basis::Joint4).unwrap();
        let a = partial_trace(&rho, Keep::A).unwrap();
        assert!((a.matrix()[(0, 1)].re - 0.5).abs() < 1e-15);
        let r = reduced_entropies(&rho).unwrap();
        assert!(r.s_a.abs() < 1e-12);
        assert!(r.has_coherence());
    }

    #[test]
    fn observe_maximally_mixed() {
        let h = crate::linalg::hermitize(&ComplexMatrix::identity(4));
        let rec = observe(&h, &DensityMatrix::maximally_mixed(Basis::Joint4), 0.0).unwrap();
        assert!((rec.s_ab - 2.0).abs() < 1e-14);
        assert!((rec.s_a - 1.0).abs() < 1e-14 && (rec.s_b - 1.0).abs() < 1e-14);
        assert!(rec.mutual.abs() < 1e-14);
        assert!((rec.purity - 0.25).abs() < 1e-15);
        assert!((rec.energy - 1.0).abs() < 1e-15);
    }

    #[test]
    fn observe_bell() {
        let h = crate::linalg::hermitize(&ComplexMatrix::identity(4));
        let rec = observe(&h, &bell(), 0.0).unwrap();
        assert!((rec.mutual - 2.0).abs() < 1e-12);
        assert!((rec.purity - 1.0).abs() < 1e-14);
        assert_eq!(rec.subadditivity_violation(), 0.0);
    }

    #[test]
    fn nan_records_count_as_violations() {
        let rec = CorrelationRecord {
            t: 0.0,
            s_a: f64::NAN,
            s_b: 0.0,
            s_ab: f64::NAN,
            mutual: f64::NAN,
            purity: f64::NAN,
            energy: 0.0,
            populations: [0.0; 4],
        };
        assert_eq!(rec.subadditivity_violation(), f64::INFINITY);
        assert_eq!(rec.araki_lieb_violation(), f64::INFINITY);
    }
}
