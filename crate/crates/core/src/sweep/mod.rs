//! Parameter sweeps over the coupled-qubit model and their file outputs.

pub mod config;
pub mod csv;
pub mod run;
pub mod svg;
pub mod validate;

pub use config::{Axes, AxisName, ModelSpec, OutputKind, PlotKind, SweepConfig, TimeGrid};
pub use csv::{read_csv, read_csv_from, write_bands_csv, write_csv, write_csv_to, HEADER};
pub use run::{
    grid_points, run_sweep, run_sweep_with_workers, setup_point, GridPoint, SweepResult, SweepRow,
};
pub use svg::{render_bands_svg, render_svg, sweep_svg};
pub use validate::{validate, validate_with, InvariantCheck, ValidationOptions, ValidationReport};
