//! Device Hamiltonians for two capacitively coupled Cooper pair boxes.
//!
//! Energies share one dimensionless unit with hbar = 1. Charge states
//! `|n1, n2>` count excess Cooper pairs on each box; the qubit states are
//! `|g> = |n = 0>` and `|e> = |n = 1>`.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{eig_hermitian, hermitize, ComplexMatrix, HermitianMatrix};

/// Upper bound on the lattice basis size.
pub const MAX_LATTICE_STATES: usize = 200 * 200;

/// Charging, coupling and Josephson energies plus the normalized gate
/// charges.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QubitEnergies {
    pub e_c1: f64,
    pub e_c2: f64,
    pub e_m: f64,
    pub e_j1: f64,
    pub e_j2: f64,
    pub n_g1: f64,
    pub n_g2: f64,
}

impl QubitEnergies {
    pub fn new(
        e_c1: f64,
        e_c2: f64,
        e_m: f64,
        e_j1: f64,
        e_j2: f64,
        n_g1: f64,
        n_g2: f64,
    ) -> Result<Self> {
        let p = QubitEnergies {
            e_c1,
            e_c2,
            e_m,
            e_j1,
            e_j2,
            n_g1,
            n_g2,
        };
        p.check()?;
        Ok(p)
    }

    /// Co-degeneracy point `n_g1 = n_g2 = 0.5`.
    pub fn at_degeneracy(e_c1: f64, e_c2: f64, e_m: f64, e_j1: f64, e_j2: f64) -> Result<Self> {
        Self::new(e_c1, e_c2, e_m, e_j1, e_j2, 0.5, 0.5)
    }

    pub fn check(&self) -> Result<()> {
        let all = [
            ("e_c1", self.e_c1),
            ("e_c2", self.e_c2),
            ("e_m", self.e_m),
            ("e_j1", self.e_j1),
            ("e_j2", self.e_j2),
            ("n_g1", self.n_g1),
            ("n_g2", self.n_g2),
        ];
        for (name, v) in all {
            if !v.is_finite() {
                return Err(Error::param(name, format!("must be finite, got {v}")));
            }
        }
        if self.e_c1 <= 0.0 {
            return Err(Error::param("e_c1", "charging energy must be positive"));
        }
        if self.e_c2 <= 0.0 {
            return Err(Error::param("e_c2", "charging energy must be positive"));
        }
        if self.e_j1 < 0.0 {
            return Err(Error::param(
                "e_j1",
                "Josephson energy must be non-negative",
            ));
        }
        if self.e_j2 < 0.0 {
            return Err(Error::param(
                "e_j2",
                "Josephson energy must be non-negative",
            ));
        }
        Ok(())
    }

    /// True when the parameters leave the `E_J, |E_m| < E_c` regime in which
    /// the four-level truncation is trustworthy.
    pub fn regime_warning(&self) -> bool {
        let ec = self.e_c1.min(self.e_c2);
        !(self.e_j1 < ec && self.e_j2 < ec && self.e_m.abs() < ec)
    }

    /// Same device with the two qubits relabelled.
    pub fn swapped(&self) -> Self {
        QubitEnergies {
            e_c1: self.e_c2,
            e_c2: self.e_c1,
            e_m: self.e_m,
            e_j1: self.e_j2,
            e_j2: self.e_j1,
            n_g1: self.n_g2,
            n_g2: self.n_g1,
        }
    }
}

/// Capacitance network and bias voltages of the two-box circuit.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CapacitanceSpec {
    pub c_sigma1: f64,
    pub c_sigma2: f64,
    pub c_m: f64,
    pub c_g1: f64,
    pub c_g2: f64,
    pub c_p: f64,
    pub v_g1: f64,
    pub v_g2: f64,
    pub v_p: f64,
    #[serde(default = "unit_charge")]
    pub e_charge: f64,
}

fn unit_charge() -> f64 {
    1.0
}

/// Converts a capacitance network into charging energies and gate charges.
/// The Josephson energies are independent inputs.
pub fn energies_from_capacitances(
    spec: &CapacitanceSpec,
    e_j1: f64,
    e_j2: f64,
) -> Result<QubitEnergies> {
    let positive = [
        ("c_sigma1", spec.c_sigma1),
        ("c_sigma2", spec.c_sigma2),
        ("c_g1", spec.c_g1),
        ("c_g2", spec.c_g2),
        ("c_p", spec.c_p),
        ("e_charge", spec.e_charge),
    ];
    for (name, v) in positive {
        if !(v > 0.0) || !v.is_finite() {
            return Err(Error::param(name, format!("must be positive, got {v}")));
        }
    }
    if !(spec.c_m >= 0.0) {
        return Err(Error::param(
            "c_m",
            format!("must be non-negative, got {}", spec.c_m),
        ));
    }
    let denom = spec.c_sigma1 * spec.c_sigma2 - spec.c_m * spec.c_m;
    if !(denom > 0.0) {
        return Err(Error::SingularGeometry(denom));
    }
    let e2 = spec.e_charge * spec.e_charge;
    QubitEnergies::new(
        4.0 * e2 * spec.c_sigma2 / (2.0 * denom),
        4.0 * e2 * spec.c_sigma1 / (2.0 * denom),
        4.0 * e2 * spec.c_m / denom,
        e_j1,
        e_j2,
        (spec.c_g1 * spec.v_g1 + spec.c_p * spec.v_p) / (2.0 * spec.e_charge),
        (spec.c_g2 * spec.v_g2 + spec.c_p * spec.v_p) / (2.0 * spec.e_charge),
    )
}

/// Electrostatic energy of the charge configuration `|n1, n2>`.
pub fn eta(p: &QubitEnergies, n1: i64, n2: i64) -> f64 {
    let d1 = p.n_g1 - n1 as f64;
    let d2 = p.n_g2 - n2 as f64;
    p.e_c1 * d1 * d1 + p.e_c2 * d2 * d2 + p.e_m * d1 * d2
}

/// Truncated charge lattice `n1, n2 in {-n_max, ..., n_max + 1}`, ordered
/// row-major over `(n1, n2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChargeWindow {
    pub n_max: usize,
}

impl ChargeWindow {
    pub fn new(n_max: usize) -> Result<Self> {
        if n_max < 1 {
            return Err(Error::param("n_max", "must be at least 1"));
        }
        let w = ChargeWindow { n_max };
        if w.width().saturating_mul(w.width()) > MAX_LATTICE_STATES {
            return Err(Error::LatticeTooLarge(w.width().saturating_mul(w.width())));
        }
        Ok(w)
    }

    pub fn width(&self) -> usize {
        2 * self.n_max + 2
    }

    pub fn dim(&self) -> usize {
        self.width() * self.width()
    }

    pub fn charges(&self) -> impl Iterator<Item = i64> {
        let lo = -(self.n_max as i64);
        lo..=self.n_max as i64 + 1
    }

    /// Basis index of `|n1, n2>`, or `None` outside the window.
    pub fn index(&self, n1: i64, n2: i64) -> Option<usize> {
        let lo = -(self.n_max as i64);
        let hi = self.n_max as i64 + 1;
        if n1 < lo || n1 > hi || n2 < lo || n2 > hi {
            return None;
        }
        Some((n1 - lo) as usize * self.width() + (n2 - lo) as usize)
    }
}

/// Full charge-basis Hamiltonian on the truncated lattice with open
/// boundaries.
pub fn build_lattice_hamiltonian(p: &QubitEnergies, n_max: usize) -> Result<HermitianMatrix> {
    let window = ChargeWindow::new(n_max)?;
    let mut m = ComplexMatrix::zeros(window.dim());
    let hop1 = Complex64::new(-p.e_j1 / 2.0, 0.0);
    let hop2 = Complex64::new(-p.e_j2 / 2.0, 0.0);
    for n1 in window.charges() {
        for n2 in window.charges() {
            let i = window.index(n1, n2).expect("in window");
            m[(i, i)] = Complex64::new(eta(p, n1, n2), 0.0);
            if let Some(j) = window.index(n1 + 1, n2) {
                m[(i, j)] = hop1;
                m[(j, i)] = hop1;
            }
            if let Some(j) = window.index(n1, n2 + 1) {
                m[(i, j)] = hop2;
                m[(j, i)] = hop2;
            }
        }
    }
    Ok(hermitize(&m))
}

/// Joint-basis index of a qubit pair, `b = 2 * n1 + n2`.
pub const B_GG: usize = 0;
pub const B_GE: usize = 1;
pub const B_EG: usize = 2;
pub const B_EE: usize = 3;

/// Four-level Hamiltonian on `{|g1g2>, |g1e2>, |e1g2>, |e1e2>}`.
pub fn build_four_level_hamiltonian(p: &QubitEnergies) -> HermitianMatrix {
    let mut m =
        ComplexMatrix::from_diagonal(&[eta(p, 0, 0), eta(p, 0, 1), eta(p, 1, 0), eta(p, 1, 1)]);
    let hop1 = Complex64::new(-p.e_j1 / 2.0, 0.0);
    let hop2 = Complex64::new(-p.e_j2 / 2.0, 0.0);
    for (a, b) in [(B_GG, B_EG), (B_GE, B_EE)] {
        m[(a, b)] = hop1;
        m[(b, a)] = hop1;
    }
    for (a, b) in [(B_GG, B_GE), (B_EG, B_EE)] {
        m[(a, b)] = hop2;
        m[(b, a)] = hop2;
    }
    hermitize(&m)
}

/// Lowest `levels` lattice eigenvalues over a gate-charge grid.
#[derive(Clone, Debug, PartialEq)]
pub struct BandStructure {
    pub n_g_grid: Vec<f64>,
    pub bands: Vec<Vec<f64>>,
}

impl BandStructure {
    pub fn levels(&self) -> usize {
        self.bands.first().map_or(0, Vec::len)
    }
}

/// Band energies with `n_g1 = n_g2` set to each grid value.
pub fn band_energies(
    p: &QubitEnergies,
    n_g_grid: &[f64],
    levels: usize,
    n_max: usize,
) -> Result<BandStructure> {
    let window = ChargeWindow::new(n_max)?;
    if levels == 0 || levels > window.dim() {
        return Err(Error::param(
            "levels",
            format!("must be in 1..={}, got {levels}", window.dim()),
        ));
    }
    let bands = n_g_grid
        .par_iter()
        .map(|&ng| {
            let q = QubitEnergies {
                n_g1: ng,
                n_g2: ng,
                ..*p
            };
            let h = build_lattice_hamiltonian(&q, n_max)?;
            let es = eig_hermitian(&h)?;
            Ok(es.values[..levels].to_vec())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BandStructure {
        n_g_grid: n_g_grid.to_vec(),
        bands,
    })
}

/// Four-level spectrum next to the lowest lattice eigenvalues.
#[derive(Clone, Debug)]
pub struct LatticeComparison {
    pub four_level: Vec<f64>,
    pub lattice: Vec<f64>,
}

impl LatticeComparison {
    pub fn four_level_spread(&self) -> f64 {
        self.four_level[3] - self.four_level[0]
    }

    /// Largest level deviation as a fraction of the four-level spread.
    pub fn max_relative_deviation(&self) -> f64 {
        let spread = self.four_level_spread();
        let worst = self
            .four_level
            .iter()
            .zip(&self.lattice)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        if spread > 0.0 {
            worst / spread
        } else {
            worst
        }
    }
}

pub fn compare_with_lattice(p: &QubitEnergies, n_max: usize) -> Result<LatticeComparison> {
    let four = eig_hermitian(&build_four_level_hamiltonian(p))?;
    let lattice = eig_hermitian(&build_lattice_hamiltonian(p, n_max)?)?;
    Ok(LatticeComparison {
        four_level: four.values,
        lattice: lattice.values[..4].to_vec(),
    })
}
