//! Runs the invariant suite on a config file (or the default grid) and
//! prints the report.
//!
//!     cargo run --release --example invariant_report -- [config.toml]

use cpbox::sweep::{validate, SweepConfig};

fn main() -> cpbox::Result<()> {
    let cfg = match std::env::args().nth(1) {
        Some(path) => SweepConfig::from_file(path.as_ref())?,
        None => SweepConfig::default_grid(),
    };
    let report = validate(&cfg)?;
    println!("{report}");
    Ok(())
}
