//! Invariant suite over a sweep grid.

use std::fmt;

use rayon::prelude::*;

use super::config::SweepConfig;
use super::run::{grid_points, setup_point, GridPoint};
use crate::dynamics::evolve_rk4;
use crate::entropy::observe;
use crate::error::Result;

pub const TRACE_TOL: f64 = 1e-10;
pub const POSITIVITY_TOL: f64 = 1e-10;
pub const ENERGY_TOL: f64 = 1e-9;
pub const PURITY_TOL: f64 = 1e-10;
pub const SPECTRUM_TOL: f64 = 1e-9;
pub const SUBADDITIVITY_TOL: f64 = 1e-9;
pub const ARAKI_LIEB_TOL: f64 = 1e-9;
pub const RK4_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug)]
pub struct ValidationOptions {
    /// RK4 step used for the oracle comparison.
    pub rk4_step: f64,
    /// Grid times beyond this are not compared against RK4.
    pub rk4_t_max: f64,
    /// Number of evenly spaced grid points compared against RK4.
    pub rk4_points: usize,
    /// Runs every point with a propagator whose decay sign is flipped.
    pub corrupt_decay: bool,
}

impl Default for ValidationOptions {
    fn default() -> Self {
        ValidationOptions {
            rk4_step: 1e-3,
            rk4_t_max: 10.0,
            rk4_points: 4,
            corrupt_decay: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct InvariantCheck {
    pub name: &'static str,
    pub max_violation: f64,
    pub tolerance: f64,
    pub samples: usize,
}

impl InvariantCheck {
    fn new(name: &'static str, tolerance: f64) -> Self {
        InvariantCheck {
            name,
            max_violation: 0.0,
            tolerance,
            samples: 0,
        }
    }

    fn record(&mut self, violation: f64) {
        self.samples += 1;
        self.max_violation = worst(self.max_violation, violation);
    }

    fn merge(&mut self, other: &InvariantCheck) {
        self.samples += other.samples;
        self.max_violation = worst(self.max_violation, other.max_violation);
    }

    pub fn passed(&self) -> bool {
        self.max_violation <= self.tolerance
    }
}

/// NaN counts as an infinite violation.
fn worst(a: f64, b: f64) -> f64 {
    if a.is_nan() || b.is_nan() {
        f64::INFINITY
    } else {
        a.max(b)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ValidationReport {
    pub checks: Vec<InvariantCheck>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(InvariantCheck::passed)
    }

    pub fn check(&self, name: &str) -> Option<&InvariantCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(
                f,
                "{:<4} {:<14} max violation {:.3e} (tol {:.0e}, {} samples)",
                if c.passed() { "PASS" } else { "FAIL" },
                c.name,
                c.max_violation,
                c.tolerance,
                c.samples
            )?;
        }
        write!(
            f,
            "overall: {}",
            if self.passed() { "PASS" } else { "FAIL" }
        )
    }
}

fn empty_checks() -> Vec<InvariantCheck> {
    vec![
        InvariantCheck::new("trace", TRACE_TOL),
        InvariantCheck::new("positivity", POSITIVITY_TOL),
        InvariantCheck::new("energy", ENERGY_TOL),
        InvariantCheck::new("purity", PURITY_TOL),
        InvariantCheck::new("spectrum", SPECTRUM_TOL),
        InvariantCheck::new("subadditivity", SUBADDITIVITY_TOL),
        InvariantCheck::new("araki-lieb", ARAKI_LIEB_TOL),
        InvariantCheck::new("rk4", RK4_TOL),
    ]
}

const TRACE: usize = 0;
const POSITIVITY: usize = 1;
const ENERGY: usize = 2;
const PURITY: usize = 3;
const SPECTRUM: usize = 4;
const SUBADD: usize = 5;
const ARAKI: usize = 6;
const RK4: usize = 7;

fn check_point(
    cfg: &SweepConfig,
    point: &GridPoint,
    times: &[f64],
    with_rk4: bool,
    opts: &ValidationOptions,
) -> Result<Vec<InvariantCheck>> {
    let base = cfg.base_energies()?;
    let setup = setup_point(&base, point)?;
    let prop = if opts.corrupt_decay {
        setup.propagator.with_flipped_decay_sign()
    } else {
        setup.propagator
    };
    let states = prop.trajectory(&setup.initial, times)?;
    let mut checks = empty_checks();

    let spectrum0 = setup.initial.spectrum();
    let mut e0 = None;
    let mut prev_purity = f64::NAN;
    for (rho, &t) in states.iter().zip(times) {
        let rec = observe(&setup.hamiltonian, rho, t)?;
        let diag = rho.diagnostics();
        checks[TRACE].record(diag.trace_error);
        checks[POSITIVITY].record((-diag.min_eigenvalue).max(0.0));
        let e0 = *e0.get_or_insert(rec.energy);
        checks[ENERGY].record((rec.energy - e0).abs());
        if point.gamma > 0.0 {
            if prev_purity.is_finite() {
                checks[PURITY].record((rec.purity - prev_purity).max(0.0));
            }
            prev_purity = rec.purity;
        } else {
            let drift = rho
                .spectrum()
                .iter()
                .zip(&spectrum0)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, worst);
            checks[SPECTRUM].record(drift);
        }
        checks[SUBADD].record(rec.subadditivity_violation());
        checks[ARAKI].record(rec.araki_lieb_violation());
    }

    if with_rk4 {
        // Chain the RK4 integration from one sample time to the next.
        let mut t_prev = times[0];
        let mut rk = if t_prev > 0.0 {
            evolve_rk4(
                &setup.hamiltonian,
                point.gamma,
                &setup.initial,
                t_prev,
                opts.rk4_step,
            )?
        } else {
            setup.initial.clone()
        };
        checks[RK4].record(rk.matrix().max_abs_diff(states[0].matrix()));
        for (rho, &t) in states.iter().zip(times).skip(1) {
            if t > opts.rk4_t_max {
                break;
            }
            rk = evolve_rk4(
                &setup.hamiltonian,
                point.gamma,
                &rk,
                t - t_prev,
                opts.rk4_step,
            )?;
            t_prev = t;
            checks[RK4].record(rk.matrix().max_abs_diff(rho.matrix()));
        }
    }
    Ok(checks)
}

/// Indices of `m` evenly spaced entries out of `n`.
fn subsample(n: usize, m: usize) -> Vec<usize> {
    match m {
        0 => Vec::new(),
        1 => vec![0],
        _ if m >= n => (0..n).collect(),
        _ => {
            let mut idx: Vec<usize> = (0..m)
                .map(|k| ((k * (n - 1)) as f64 / (m - 1) as f64).round() as usize)
                .collect();
            idx.dedup();
            idx
        }
    }
}

pub fn validate(cfg: &SweepConfig) -> Result<ValidationReport> {
    validate_with(cfg, &ValidationOptions::default())
}

pub fn validate_with(cfg: &SweepConfig, opts: &ValidationOptions) -> Result<ValidationReport> {
    cfg.check()?;
    let axes = cfg.axes()?;
    let points = grid_points(&axes);
    let times = cfg.t_grid.times();
    let rk4_set = subsample(points.len(), opts.rk4_points);

    let per_point = points
        .par_iter()
        .enumerate()
        .map(|(k, p)| check_point(cfg, p, &times, rk4_set.contains(&k), opts))
        .collect::<Result<Vec<_>>>()?;

    let mut checks = empty_checks();
    for point_checks in &per_point {
        for (acc, c) in checks.iter_mut().zip(point_checks) {
            acc.merge(c);
        }
    }
    Ok(ValidationReport { checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsample_spread() {
        assert_eq!(subsample(36, 4), vec![0, 12, 23, 35]);
        assert_eq!(subsample(3, 5), vec![0, 1, 2]);
        assert_eq!(subsample(10, 1), vec![0]);
    }

    #[test]
    fn nan_is_worst() {
        let mut c = InvariantCheck::new("x", 1.0);
        c.record(0.5);
        c.record(f64::NAN);
        c.record(0.1);
        assert!(!c.passed());
    }
}
