//! Lowest lattice bands along the diagonal n_g1 = n_g2, written as CSV and SVG.
//!
//!     cargo run --example band_structure -- [out_dir]

use std::path::PathBuf;

use cpbox::model::{band_energies, QubitEnergies};
use cpbox::sweep::{render_bands_svg, write_bands_csv};

fn main() -> cpbox::Result<()> {
    let out = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| ".".into()));
    let p = QubitEnergies::at_degeneracy(100.0, 100.0, 5.0, 30.0, 30.0)?;
    let grid: Vec<f64> = (0..=200).map(|i| -1.0 + 0.01 * i as f64).collect();
    let bands = band_energies(&p, &grid, 4, 4)?;

    // one full period apart
    let drift = bands.bands[0]
        .iter()
        .zip(&bands.bands[100])
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    println!("max |E_k(-1) - E_k(0)| = {drift:.2e}");

    write_bands_csv(&bands, &out.join("bands.csv"))?;
    render_bands_svg(
        &bands,
        "Lowest four bands, E_J = 30, E_m = 5",
        &out.join("bands.svg"),
    )?;
    println!("wrote bands.csv and bands.svg to {}", out.display());
    Ok(())
}
