use rayon::prelude::*;

use super::config::{Axes, AxisName, SweepConfig};
use crate::dynamics::{make_initial_state, InitialStateSpec, Propagator};
use crate::entropy::{observe, CorrelationRecord};
use crate::error::{Error, Result};
use crate::linalg::{DensityMatrix, HermitianMatrix};
use crate::model::{build_four_level_hamiltonian, QubitEnergies};

/// One combination of the non-time sweep parameters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridPoint {
    pub e_m: f64,
    pub gamma: f64,
    pub xi: f64,
    pub e_j1: f64,
    pub e_j2: f64,
}

impl GridPoint {
    pub fn value(&self, axis: AxisName) -> f64 {
        match axis {
            AxisName::EM => self.e_m,
            AxisName::Gamma => self.gamma,
            AxisName::Xi => self.xi,
            AxisName::EJ1 => self.e_j1,
            AxisName::EJ2 => self.e_j2,
        }
    }

    pub fn energies(&self, base: &QubitEnergies) -> Result<QubitEnergies> {
        let p = QubitEnergies {
            e_m: self.e_m,
            e_j1: self.e_j1,
            e_j2: self.e_j2,
            ..*base
        };
        p.check()?;
        Ok(p)
    }

    fn annotate(&self, err: Error) -> Error {
        Error::AtGridPoint {
            e_m: self.e_m,
            gamma: self.gamma,
            xi: self.xi,
            e_j1: self.e_j1,
            e_j2: self.e_j2,
            source: Box::new(err),
        }
    }
}

/// Grid points in row order (`e_m` slowest, `e_j2` fastest).
pub fn grid_points(axes: &Axes) -> Vec<GridPoint> {
    let mut out = Vec::with_capacity(axes.point_count());
    for &e_m in &axes.e_m {
        for &gamma in &axes.gamma {
            for &xi in &axes.xi {
                for &e_j1 in &axes.e_j1 {
                    for &e_j2 in &axes.e_j2 {
                        out.push(GridPoint {
                            e_m,
                            gamma,
                            xi,
                            e_j1,
                            e_j2,
                        });
                    }
                }
            }
        }
    }
    out
}

/// Everything needed to evolve one grid point.
pub struct PointSetup {
    pub hamiltonian: HermitianMatrix,
    pub propagator: Propagator,
    pub initial: DensityMatrix,
    pub regime_warning: bool,
}

pub fn setup_point(base: &QubitEnergies, point: &GridPoint) -> Result<PointSetup> {
    let build = || -> Result<PointSetup> {
        let p = point.energies(base)?;
        let hamiltonian = build_four_level_hamiltonian(&p);
        let propagator = Propagator::new(&hamiltonian, point.gamma)?;
        let initial = make_initial_state(InitialStateSpec::new(point.xi)?)?;
        Ok(PointSetup {
            hamiltonian,
            propagator,
            initial,
            regime_warning: p.regime_warning(),
        })
    };
    build().map_err(|e| point.annotate(e))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepRow {
    pub point: GridPoint,
    pub record: CorrelationRecord,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepResult {
    pub axes: Axes,
    pub times: Vec<f64>,
    pub rows: Vec<SweepRow>,
    pub title: String,
    /// Grid points outside the four-level regime.
    pub warnings: Vec<String>,
}

impl SweepResult {
    /// Rows belonging to the grid point with index `k`.
    pub fn trajectory(&self, k: usize) -> &[SweepRow] {
        let n = self.times.len();
        &self.rows[k * n..(k + 1) * n]
    }

    pub fn trajectories(&self) -> impl Iterator<Item = &[SweepRow]> {
        self.rows.chunks(self.times.len().max(1))
    }

    pub fn mutual_series(&self, k: usize) -> Vec<f64> {
        self.trajectory(k).iter().map(|r| r.record.mutual).collect()
    }
}

fn run_point(
    base: &QubitEnergies,
    point: &GridPoint,
    times: &[f64],
) -> Result<(Vec<SweepRow>, bool)> {
    let setup = setup_point(base, point)?;
    let states = setup
        .propagator
        .trajectory(&setup.initial, times)
        .map_err(|e| point.annotate(e))?;
    let rows = states
        .iter()
        .zip(times)
        .map(|(rho, &t)| {
            observe(&setup.hamiltonian, rho, t)
                .map(|record| SweepRow {
                    point: *point,
                    record,
                })
                .map_err(|e| point.annotate(e))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((rows, setup.regime_warning))
}

/// Runs the sweep on the global rayon pool.
pub fn run_sweep(cfg: &SweepConfig) -> Result<SweepResult> {
    cfg.check()?;
    let axes = cfg.axes()?;
    let base = cfg.base_energies()?;
    let times = cfg.t_grid.times();
    let points = grid_points(&axes);

    let per_point = points
        .par_iter()
        .map(|p| run_point(&base, p, &times))
        .collect::<Result<Vec<_>>>()?;

    let mut rows = Vec::with_capacity(points.len() * times.len());
    let mut warnings = Vec::new();
    for (point, (point_rows, warn)) in points.iter().zip(per_point) {
        if warn {
            warnings.push(format!(
                "e_m={}, e_j1={}, e_j2={} leaves the E_J, |E_m| < E_c regime",
                point.e_m, point.e_j1, point.e_j2
            ));
        }
        rows.extend(point_rows);
    }
    Ok(SweepResult {
        axes,
        times,
        rows,
        title: cfg.title.clone(),
        warnings,
    })
}

/// Runs the sweep on a dedicated pool of `workers` threads. Output does not
/// depend on the worker count.
pub fn run_sweep_with_workers(cfg: &SweepConfig, workers: usize) -> Result<SweepResult> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::Config(format!("cannot start worker pool: {e}")))?;
    pool.install(|| run_sweep(cfg))
}
