//! Declarative sweep configuration and its TOML file form.
//!
//! ```toml
//! [model]
//! e_c1 = 100.0
//! e_c2 = 100.0
//! e_m = 1.0
//! e_j1 = 30.0
//! e_j2 = 30.0
//! n_g1 = 0.5
//! n_g2 = 0.5
//!
//! [initial]
//! xi = [0.0, 0.7853981633974483, 1.5707963267948966]
//!
//! [sweep]
//! gamma = [0.0, 0.01, 0.1, 0.5]
//! e_m = [0.0, 1.0, 5.0]
//! t_start = 0.0
//! t_end = 20.0
//! n_points = 201
//!
//! [output]
//! outputs = ["csv", "svg"]
//! plot = "lines"
//! title = "Mutual entropy"
//! ```
//!
//! A `[model]` section may instead describe the capacitance network
//! (`c_sigma1`, `c_sigma2`, `c_m`, `c_g1`, `c_g2`, `c_p`, `v_g1`, `v_g2`,
//! `v_p`, optional `e_charge`) together with `e_j1` and `e_j2`.

use std::f64::consts::PI;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{energies_from_capacitances, CapacitanceSpec, QubitEnergies};

/// Upper bound on rows produced by one sweep.
pub const MAX_GRID_POINTS: usize = 10_000_000;

/// Charging energy used by the built-in presets.
pub const DEFAULT_E_C: f64 = 100.0;
/// Josephson energy used by the built-in presets.
pub const DEFAULT_E_J: f64 = 30.0;

#[derive(Clone, Debug, PartialEq)]
pub enum ModelSpec {
    Energies(QubitEnergies),
    Capacitance {
        spec: CapacitanceSpec,
        e_j1: f64,
        e_j2: f64,
    },
}

impl ModelSpec {
    pub fn resolve(&self) -> Result<QubitEnergies> {
        match self {
            ModelSpec::Energies(p) => {
                p.check()?;
                Ok(*p)
            }
            ModelSpec::Capacitance { spec, e_j1, e_j2 } => {
                energies_from_capacitances(spec, *e_j1, *e_j2)
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TimeGrid {
    pub start: f64,
    pub end: f64,
    pub n_points: usize,
}

impl TimeGrid {
    pub fn new(start: f64, end: f64, n_points: usize) -> Result<Self> {
        let g = TimeGrid {
            start,
            end,
            n_points,
        };
        g.check()?;
        Ok(g)
    }

    pub fn check(&self) -> Result<()> {
        if !(self.start >= 0.0) || !(self.end > self.start) || !self.end.is_finite() {
            return Err(Error::Config(format!(
                "time grid needs t_end > t_start >= 0, got [{}, {}]",
                self.start, self.end
            )));
        }
        if self.n_points < 2 {
            return Err(Error::Config(format!(
                "n_points must be >= 2, got {}",
                self.n_points
            )));
        }
        Ok(())
    }

    /// Evenly spaced samples; the last equals `end` exactly.
    pub fn times(&self) -> Vec<f64> {
        let n = self.n_points;
        let step = (self.end - self.start) / (n - 1) as f64;
        (0..n)
            .map(|i| {
                if i + 1 == n {
                    self.end
                } else {
                    self.start + i as f64 * step
                }
            })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputKind {
    Csv,
    Svg,
    Validate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PlotKind {
    Lines,
    Heatmap,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepConfig {
    pub model: ModelSpec,
    pub xi: Vec<f64>,
    pub gamma: Vec<f64>,
    /// Overrides the model coupling when set.
    pub e_m: Option<Vec<f64>>,
    pub e_j1: Option<Vec<f64>>,
    pub e_j2: Option<Vec<f64>>,
    pub t_grid: TimeGrid,
    pub outputs: Vec<OutputKind>,
    pub plot: PlotKind,
    pub title: String,
}

/// Parameter axes of a sweep in row order: `e_m`, `gamma`, `xi`, `e_j1`,
/// `e_j2`, then time.
#[derive(Clone, Debug, PartialEq)]
pub struct Axes {
    pub e_m: Vec<f64>,
    pub gamma: Vec<f64>,
    pub xi: Vec<f64>,
    pub e_j1: Vec<f64>,
    pub e_j2: Vec<f64>,
}

/// Identifies one of the non-time axes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AxisName {
    EM,
    Gamma,
    Xi,
    EJ1,
    EJ2,
}

impl AxisName {
    pub const ALL: [AxisName; 5] = [
        AxisName::EM,
        AxisName::Gamma,
        AxisName::Xi,
        AxisName::EJ1,
        AxisName::EJ2,
    ];

    pub fn key(self) -> &'static str {
        match self {
            AxisName::EM => "e_m",
            AxisName::Gamma => "gamma",
            AxisName::Xi => "xi",
            AxisName::EJ1 => "e_j1",
            AxisName::EJ2 => "e_j2",
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            AxisName::EM => "E_m",
            AxisName::Gamma => "γ",
            AxisName::Xi => "ξ",
            AxisName::EJ1 => "E_J1",
            AxisName::EJ2 => "E_J2",
        }
    }
}

impl Axes {
    pub fn values(&self, name: AxisName) -> &[f64] {
        match name {
            AxisName::EM => &self.e_m,
            AxisName::Gamma => &self.gamma,
            AxisName::Xi => &self.xi,
            AxisName::EJ1 => &self.e_j1,
            AxisName::EJ2 => &self.e_j2,
        }
    }

    pub fn point_count(&self) -> usize {
        AxisName::ALL
            .iter()
            .map(|&a| self.values(a).len())
            .product()
    }

    /// Axes with more than one value.
    pub fn varied(&self) -> Vec<AxisName> {
        AxisName::ALL
            .iter()
            .copied()
            .filter(|&a| self.values(a).len() > 1)
            .collect()
    }
}

fn check_axis(name: &str, values: &[f64]) -> Result<()> {
    if values.is_empty() {
        return Err(Error::Config(format!("axis `{name}` is empty")));
    }
    if let Some(v) = values.iter().find(|v| !v.is_finite()) {
        return Err(Error::Config(format!(
            "axis `{name}` has non-finite value {v}"
        )));
    }
    Ok(())
}

impl SweepConfig {
    pub fn base_energies(&self) -> Result<QubitEnergies> {
        self.model.resolve()
    }

    pub fn axes(&self) -> Result<Axes> {
        let base = self.base_energies()?;
        Ok(Axes {
            e_m: self.e_m.clone().unwrap_or_else(|| vec![base.e_m]),
            gamma: self.gamma.clone(),
            xi: self.xi.clone(),
            e_j1: self.e_j1.clone().unwrap_or_else(|| vec![base.e_j1]),
            e_j2: self.e_j2.clone().unwrap_or_else(|| vec![base.e_j2]),
        })
    }

    pub fn check(&self) -> Result<()> {
        self.t_grid.check()?;
        let axes = self.axes()?;
        for name in AxisName::ALL {
            check_axis(name.key(), axes.values(name))?;
        }
        if let Some(g) = axes.gamma.iter().find(|&&g| g < 0.0) {
            return Err(Error::Config(format!("gamma must be >= 0, got {g}")));
        }
        if let Some(x) = axes.xi.iter().find(|&&x| !(0.0..=PI).contains(&x)) {
            return Err(Error::Config(format!("xi must lie in [0, pi], got {x}")));
        }
        let total = axes.point_count().saturating_mul(self.t_grid.n_points);
        if total > MAX_GRID_POINTS {
            return Err(Error::GridTooLarge(total));
        }
        Ok(())
    }

    /// Invariant-suite grid: `t in [0, 20]` x 201, `gamma in {0, 0.01, 0.1,
    /// 0.5}`, `xi in {0, pi/4, pi/2}`, `E_m in {0, 1, 5}`, `E_J1 = E_J2 =
    /// 30`, `E_c1 = E_c2 = 100` at the co-degeneracy point.
    pub fn default_grid() -> Self {
        SweepConfig {
            model: ModelSpec::Energies(QubitEnergies {
                e_c1: DEFAULT_E_C,
                e_c2: DEFAULT_E_C,
                e_m: 1.0,
                e_j1: DEFAULT_E_J,
                e_j2: DEFAULT_E_J,
                n_g1: 0.5,
                n_g2: 0.5,
            }),
            xi: vec![0.0, PI / 4.0, PI / 2.0],
            gamma: vec![0.0, 0.01, 0.1, 0.5],
            e_m: Some(vec![0.0, 1.0, 5.0]),
            e_j1: None,
            e_j2: None,
            t_grid: TimeGrid {
                start: 0.0,
                end: 20.0,
                n_points: 201,
            },
            outputs: vec![OutputKind::Csv],
            plot: PlotKind::Lines,
            title: "Quantum mutual entropy".to_string(),
        }
    }

    /// Time x coupling-energy surface at `gamma = 0`, `xi = pi/2`.
    pub fn coupling_surface() -> Self {
        SweepConfig {
            xi: vec![PI / 2.0],
            gamma: vec![0.0],
            e_m: Some((0..=40).map(|i| i as f64 * 0.25).collect()),
            plot: PlotKind::Heatmap,
            outputs: vec![OutputKind::Csv, OutputKind::Svg],
            title: "I(t) vs scaled time and E_m (E_J1 = E_J2 = 30, γ = 0)".to_string(),
            ..Self::default_grid()
        }
    }

    /// Three decoherence rates at fixed coupling, `xi = pi/2`.
    pub fn decoherence_curves() -> Self {
        SweepConfig {
            xi: vec![PI / 2.0],
            gamma: vec![0.01, 0.1, 0.5],
            e_m: Some(vec![5.0]),
            plot: PlotKind::Lines,
            outputs: vec![OutputKind::Csv, OutputKind::Svg],
            title: "I(t) for γ = 0.01, 0.1, 0.5 (E_J1 = E_J2 = 30)".to_string(),
            ..Self::default_grid()
        }
    }

    pub fn from_toml_str(text: &str) -> Result<Self> {
        let raw: RawConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        let cfg = raw.into_config()?;
        cfg.check()?;
        Ok(cfg)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml_str(&text).map_err(|e| match e {
            Error::Config(msg) => Error::Config(format!("{}: {msg}", path.display())),
            other => other,
        })
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum OneOrMany {
    One(f64),
    Many(Vec<f64>),
}

impl From<OneOrMany> for Vec<f64> {
    fn from(v: OneOrMany) -> Self {
        match v {
            OneOrMany::One(x) => vec![x],
            OneOrMany::Many(xs) => xs,
        }
    }
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    #[serde(default)]
    model: RawModel,
    #[serde(default)]
    initial: RawInitial,
    #[serde(default)]
    sweep: RawSweep,
    #[serde(default)]
    output: RawOutput,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawModel {
    e_c1: Option<f64>,
    e_c2: Option<f64>,
    e_m: Option<f64>,
    e_j1: Option<f64>,
    e_j2: Option<f64>,
    n_g1: Option<f64>,
    n_g2: Option<f64>,
    c_sigma1: Option<f64>,
    c_sigma2: Option<f64>,
    c_m: Option<f64>,
    c_g1: Option<f64>,
    c_g2: Option<f64>,
    c_p: Option<f64>,
    v_g1: Option<f64>,
    v_g2: Option<f64>,
    v_p: Option<f64>,
    e_charge: Option<f64>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawInitial {
    xi: Option<OneOrMany>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawSweep {
    gamma: Option<OneOrMany>,
    e_m: Option<OneOrMany>,
    e_j1: Option<OneOrMany>,
    e_j2: Option<OneOrMany>,
    t_start: Option<f64>,
    t_end: Option<f64>,
    n_points: Option<usize>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawOutput {
    outputs: Option<Vec<OutputKind>>,
    plot: Option<PlotKind>,
    title: Option<String>,
}

impl RawModel {
    fn capacitance_keys(&self) -> [(&'static str, Option<f64>); 9] {
        [
            ("c_sigma1", self.c_sigma1),
            ("c_sigma2", self.c_sigma2),
            ("c_m", self.c_m),
            ("c_g1", self.c_g1),
            ("c_g2", self.c_g2),
            ("c_p", self.c_p),
            ("v_g1", self.v_g1),
            ("v_g2", self.v_g2),
            ("v_p", self.v_p),
        ]
    }

    fn into_spec(self, default: &QubitEnergies) -> Result<ModelSpec> {
        let caps = self.capacitance_keys();
        let e_j1 = self.e_j1.unwrap_or(default.e_j1);
        let e_j2 = self.e_j2.unwrap_or(default.e_j2);
        if caps.iter().all(|(_, v)| v.is_none()) && self.e_charge.is_none() {
            return Ok(ModelSpec::Energies(QubitEnergies {
                e_c1: self.e_c1.unwrap_or(default.e_c1),
                e_c2: self.e_c2.unwrap_or(default.e_c2),
                e_m: self.e_m.unwrap_or(default.e_m),
                e_j1,
                e_j2,
                n_g1: self.n_g1.unwrap_or(default.n_g1),
                n_g2: self.n_g2.unwrap_or(default.n_g2),
            }));
        }
        let conflicting = [
            ("e_c1", self.e_c1),
            ("e_c2", self.e_c2),
            ("e_m", self.e_m),
            ("n_g1", self.n_g1),
            ("n_g2", self.n_g2),
        ];
        if let Some((name, _)) = conflicting.iter().find(|(_, v)| v.is_some()) {
            return Err(Error::Config(format!(
                "[model] `{name}` cannot be combined with capacitance keys"
            )));
        }
        let missing: Vec<&str> = caps
            .iter()
            .filter(|(_, v)| v.is_none())
            .map(|(k, _)| *k)
            .collect();
        if !missing.is_empty() {
            return Err(Error::Config(format!(
                "[model] capacitance form is missing {}",
                missing.join(", ")
            )));
        }
        let get = |v: Option<f64>| v.expect("checked above");
        Ok(ModelSpec::Capacitance {
            spec: CapacitanceSpec {
                c_sigma1: get(self.c_sigma1),
                c_sigma2: get(self.c_sigma2),
                c_m: get(self.c_m),
                c_g1: get(self.c_g1),
                c_g2: get(self.c_g2),
                c_p: get(self.c_p),
                v_g1: get(self.v_g1),
                v_g2: get(self.v_g2),
                v_p: get(self.v_p),
                e_charge: self.e_charge.unwrap_or(1.0),
            },
            e_j1,
            e_j2,
        })
    }
}

impl RawConfig {
    fn into_config(self) -> Result<SweepConfig> {
        let defaults = SweepConfig::default_grid();
        let ModelSpec::Energies(default_energies) = defaults.model else {
            unreachable!("default grid uses explicit energies")
        };
        let model_sets_coupling = self.model.e_m.is_some() || self.model.c_m.is_some();
        let model = self.model.into_spec(&default_energies)?;
        let t_grid = TimeGrid {
            start: self.sweep.t_start.unwrap_or(defaults.t_grid.start),
            end: self.sweep.t_end.unwrap_or(defaults.t_grid.end),
            n_points: self.sweep.n_points.unwrap_or(defaults.t_grid.n_points),
        };
        Ok(SweepConfig {
            model,
            xi: self.initial.xi.map(Into::into).unwrap_or(defaults.xi),
            gamma: self.sweep.gamma.map(Into::into).unwrap_or(defaults.gamma),
            // A coupling given in [model] replaces the default E_m axis.
            e_m: match self.sweep.e_m {
                Some(v) => Some(v.into()),
                None if model_sets_coupling => None,
                None => defaults.e_m,
            },
            e_j1: self.sweep.e_j1.map(Into::into),
            e_j2: self.sweep.e_j2.map(Into::into),
            t_grid,
            outputs: self.output.outputs.unwrap_or(defaults.outputs),
            plot: self.output.plot.unwrap_or(defaults.plot),
            title: self.output.title.unwrap_or(defaults.title),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_grid_is_valid() {
        let cfg = SweepConfig::default_grid();
        cfg.check().unwrap();
        let axes = cfg.axes().unwrap();
        assert_eq!(axes.point_count(), 36);
        assert_eq!(
            axes.varied(),
            vec![AxisName::EM, AxisName::Gamma, AxisName::Xi]
        );
    }

    #[test]
    fn empty_file_is_default_grid() {
        assert_eq!(
            SweepConfig::from_toml_str("").unwrap(),
            SweepConfig::default_grid()
        );
    }

    #[test]
    fn times_end_exactly() {
        let g = TimeGrid::new(0.0, 20.0, 201).unwrap();
        let t = g.times();
        assert_eq!(t.len(), 201);
        assert_eq!(t[0], 0.0);
        assert_eq!(t[200], 20.0);
        assert!((t[1] - 0.1).abs() < 1e-15);
    }

    #[test]
    fn time_grid_invariants() {
        assert!(TimeGrid::new(1.0, 1.0, 10).is_err());
        assert!(TimeGrid::new(-1.0, 1.0, 10).is_err());
        assert!(TimeGrid::new(0.0, 1.0, 1).is_err());
    }

    #[test]
    fn parses_scalars_lists_and_integers() {
        let cfg = SweepConfig::from_toml_str(
            r#"
            [model]
            e_c1 = 50
            e_m = 1
            e_j1 = 10
            [initial]
            xi = 1.0
            [sweep]
            gamma = [0, 0.1]
            e_j2 = [5.0, 10.0, 15.0]
            n_points = 11
            t_end = 2.0
            [output]
            outputs = ["csv", "validate"]
            plot = "heatmap"
            "#,
        )
        .unwrap();
        let base = cfg.base_energies().unwrap();
        assert_eq!(base.e_c1, 50.0);
        assert_eq!(base.e_c2, DEFAULT_E_C);
        assert_eq!(base.e_j1, 10.0);
        assert_eq!(cfg.xi, vec![1.0]);
        assert_eq!(cfg.gamma, vec![0.0, 0.1]);
        assert_eq!(cfg.e_m, None);
        let axes = cfg.axes().unwrap();
        assert_eq!(axes.e_m, vec![1.0]);
        assert_eq!(axes.e_j2, vec![5.0, 10.0, 15.0]);
        assert_eq!(cfg.t_grid.n_points, 11);
        assert_eq!(cfg.outputs, vec![OutputKind::Csv, OutputKind::Validate]);
        assert_eq!(cfg.plot, PlotKind::Heatmap);
    }

    #[test]
    fn capacitance_model() {
        let cfg = SweepConfig::from_toml_str(
            r#"
            [model]
            c_sigma1 = 2.0
            c_sigma2 = 2.0
            c_m = 1.0
            c_g1 = 1.0
            c_g2 = 1.0
            c_p = 1.0
            v_g1 = 1.0
            v_g2 = 1.0
            v_p = 0.0
            e_j1 = 0.1
            e_j2 = 0.1
            "#,
        )
        .unwrap();
        let base = cfg.base_energies().unwrap();
        assert!((base.e_c1 - 4.0 / 3.0).abs() < 1e-15);
        assert_eq!(base.n_g1, 0.5);
    }

    #[test]
    fn capacitance_model_incomplete_or_mixed() {
        let err = SweepConfig::from_toml_str("[model]\nc_sigma1 = 2.0\n").unwrap_err();
        assert!(err.to_string().contains("missing"));
        let err = SweepConfig::from_toml_str("[model]\nc_sigma1 = 2.0\ne_c1 = 3.0\n").unwrap_err();
        assert!(err.to_string().contains("cannot be combined"));
    }

    #[test]
    fn rejects_unknown_keys_and_bad_values() {
        assert!(SweepConfig::from_toml_str("[sweep]\ngama = 0.1\n").is_err());
        assert!(SweepConfig::from_toml_str("[sweep]\ngamma = []\n").is_err());
        assert!(SweepConfig::from_toml_str("[sweep]\ngamma = -0.1\n").is_err());
        assert!(SweepConfig::from_toml_str("[initial]\nxi = 4.0\n").is_err());
        assert!(SweepConfig::from_toml_str("[sweep]\nt_end = 0.0\n").is_err());
        assert!(SweepConfig::from_toml_str("[output]\noutputs = [\"pdf\"]\n").is_err());
    }

    #[test]
    fn grid_guard() {
        let mut cfg = SweepConfig::default_grid();
        cfg.t_grid.n_points = 1_000_000;
        assert!(matches!(cfg.check(), Err(Error::GridTooLarge(_))));
    }

    #[test]
    fn presets_are_valid() {
        SweepConfig::coupling_surface().check().unwrap();
        SweepConfig::decoherence_curves().check().unwrap();
        assert_eq!(
            SweepConfig::coupling_surface().axes().unwrap().varied(),
            vec![AxisName::EM]
        );
        assert_eq!(
            SweepConfig::decoherence_curves().axes().unwrap().varied(),
            vec![AxisName::Gamma]
        );
    }
}
