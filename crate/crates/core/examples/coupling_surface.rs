//! Mutual entropy over scaled time and coupling energy at zero
//! decoherence, rendered as a heatmap.
//!
//!     cargo run --example coupling_surface -- [out_dir]

use std::path::PathBuf;

use cpbox::sweep::{render_svg, run_sweep, write_csv, SweepConfig};

fn main() -> cpbox::Result<()> {
    let out = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| ".".into()));
    let cfg = SweepConfig::coupling_surface();
    let res = run_sweep(&cfg)?;

    for (k, e_m) in res.axes.e_m.iter().enumerate().step_by(8) {
        let series = res.mutual_series(k);
        let min = series.iter().copied().fold(f64::INFINITY, f64::min);
        let mean = series.iter().sum::<f64>() / series.len() as f64;
        println!("E_m = {e_m:>5.2}  min I = {min:.4}  mean I = {mean:.4}");
    }

    write_csv(&res, &out.join("coupling_surface.csv"))?;
    render_svg(&res, cfg.plot, &out.join("coupling_surface.svg"))?;
    println!(
        "wrote coupling_surface.csv and coupling_surface.svg to {}",
        out.display()
    );
    Ok(())
}
