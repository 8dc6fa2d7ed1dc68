//! I(t) for three decoherence rates at fixed coupling, with the dephased
//! limit each curve settles to.
//!
//!     cargo run --example decoherence_curves -- [out_dir]

use std::path::PathBuf;

use cpbox::dynamics::{make_initial_state, InitialStateSpec};
use cpbox::entropy::mutual_entropy;
use cpbox::sweep::{grid_points, render_svg, run_sweep, setup_point, write_csv, SweepConfig};

fn main() -> cpbox::Result<()> {
    let out = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| ".".into()));
    let cfg = SweepConfig::decoherence_curves();
    let res = run_sweep(&cfg)?;

    let base = cfg.base_energies()?;
    for (k, point) in grid_points(&res.axes).iter().enumerate() {
        let setup = setup_point(&base, point)?;
        let rho0 = make_initial_state(InitialStateSpec::new(point.xi)?)?;
        let limit = mutual_entropy(&setup.propagator.dephased_limit(&rho0)?)?;
        let series = res.mutual_series(k);
        let last = series[series.len() - 1];
        println!(
            "gamma = {:<5} I(t_end) = {last:.6}  dephased limit = {limit:.6}",
            point.gamma
        );
    }

    write_csv(&res, &out.join("decoherence.csv"))?;
    render_svg(&res, cfg.plot, &out.join("decoherence.svg"))?;
    println!(
        "wrote decoherence.csv and decoherence.svg to {}",
        out.display()
    );
    Ok(())
}
