#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use cpbox::model::{band_energies, compare_with_lattice};
use cpbox::sweep::{
    render_bands_svg, render_svg, run_sweep_with_workers, validate, write_bands_csv, write_csv,
    OutputKind, SweepConfig, SweepResult,
};
use cpbox::Error;

const EXIT_USAGE: u8 = 1;
const EXIT_VALIDATION: u8 = 2;
const EXIT_IO: u8 = 3;

#[derive(Parser)]
#[command(
    name = "cpbox",
    version,
    about = "Coupled Cooper-pair-box qubits under phase decoherence"
)]
struct Cli {
    /// TOML sweep configuration; the built-in default grid when omitted
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory
    #[arg(long, global = true, default_value = ".")]
    out: PathBuf,
    /// Worker threads (defaults to the number of cores)
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Files to write; falls back to the config's `outputs`
    #[arg(long, global = true)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Svg,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// One trajectory at the first value of every axis
    Simulate {
        #[arg(long)]
        gamma: Option<f64>,
        #[arg(long)]
        xi: Option<f64>,
        #[arg(long)]
        e_m: Option<f64>,
    },
    /// Full parameter sweep
    Sweep,
    /// Lattice band energies against gate charge
    Bands {
        #[arg(long, default_value_t = 4)]
        n_max: usize,
        #[arg(long, default_value_t = 4)]
        levels: usize,
        #[arg(long, default_value_t = 101)]
        points: usize,
        #[arg(long, default_value_t = -1.0, allow_hyphen_values = true)]
        ng_min: f64,
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        ng_max: f64,
    },
    /// Four-level spectrum against the lowest lattice levels
    CompareLattice {
        #[arg(long, default_value_t = 4)]
        n_max: usize,
    },
    /// Invariant suite over the sweep grid
    Validate,
}

enum Failure {
    Lib(Error),
    Validation,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Io { .. } => EXIT_IO,
        Error::AtGridPoint { source, .. } => exit_code(source),
        _ => EXIT_USAGE,
    }
}

fn load_config(cli: &Cli) -> Result<SweepConfig, Error> {
    match &cli.config {
        Some(path) => SweepConfig::from_file(path),
        None => Ok(SweepConfig::default_grid()),
    }
}

fn wants(cli: &Cli, cfg: &SweepConfig) -> (bool, bool) {
    match cli.format {
        Some(Format::Csv) => (true, false),
        Some(Format::Svg) => (false, true),
        Some(Format::Both) => (true, true),
        None => (
            cfg.outputs.contains(&OutputKind::Csv),
            cfg.outputs.contains(&OutputKind::Svg),
        ),
    }
}

fn out_path(cli: &Cli, name: &str) -> Result<PathBuf, Error> {
    std::fs::create_dir_all(&cli.out).map_err(|e| Error::Io {
        path: cli.out.clone(),
        source: e,
    })?;
    Ok(cli.out.join(name))
}

fn run(cli: &Cli, cfg: &SweepConfig) -> Result<SweepResult, Error> {
    let workers = cli
        .workers
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    run_sweep_with_workers(cfg, workers)
}

fn emit(cli: &Cli, cfg: &SweepConfig, res: &SweepResult, stem: &str) -> Result<(), Error> {
    for w in &res.warnings {
        eprintln!("warning: {w}");
    }
    let (csv, svg) = wants(cli, cfg);
    if csv {
        let path = out_path(cli, &format!("{stem}.csv"))?;
        write_csv(res, &path)?;
        println!("wrote {}", path.display());
    }
    if svg {
        let path = out_path(cli, &format!("{stem}.svg"))?;
        render_svg(res, cfg.plot, &path)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn report_validation(cfg: &SweepConfig) -> Result<(), Failure> {
    let report = validate(cfg)?;
    println!("{report}");
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Validation)
    }
}

fn dispatch(cli: &Cli) -> Result<(), Failure> {
    let mut cfg = load_config(cli)?;
    match &cli.command {
        Command::Simulate { gamma, xi, e_m } => {
            let axes = cfg.axes()?;
            cfg.gamma = vec![gamma.unwrap_or(axes.gamma[0])];
            cfg.xi = vec![xi.unwrap_or(axes.xi[0])];
            cfg.e_m = Some(vec![e_m.unwrap_or(axes.e_m[0])]);
            cfg.e_j1 = Some(vec![axes.e_j1[0]]);
            cfg.e_j2 = Some(vec![axes.e_j2[0]]);
            cfg.plot = cpbox::sweep::PlotKind::Lines;
            let res = run(cli, &cfg)?;
            emit(cli, &cfg, &res, "simulate")?;
        }
        Command::Sweep => {
            let res = run(cli, &cfg)?;
            emit(cli, &cfg, &res, "sweep")?;
            if cfg.outputs.contains(&OutputKind::Validate) {
                report_validation(&cfg)?;
            }
        }
        Command::Bands {
            n_max,
            levels,
            points,
            ng_min,
            ng_max,
        } => {
            if *points < 2 || !(ng_max > ng_min) {
                return Err(Error::Config(
                    "bands needs --points >= 2 and --ng-max > --ng-min".into(),
                )
                .into());
            }
            let grid: Vec<f64> = (0..*points)
                .map(|i| ng_min + (ng_max - ng_min) * i as f64 / (*points - 1) as f64)
                .collect();
            let bands = band_energies(&cfg.base_energies()?, &grid, *levels, *n_max)?;
            let (csv, svg) = wants(cli, &cfg);
            if csv {
                let path = out_path(cli, "bands.csv")?;
                write_bands_csv(&bands, &path)?;
                println!("wrote {}", path.display());
            }
            if svg {
                let path = out_path(cli, "bands.svg")?;
                render_bands_svg(
                    &bands,
                    &format!("Lowest {levels} lattice bands (n_max = {n_max})"),
                    &path,
                )?;
                println!("wrote {}", path.display());
            }
        }
        Command::CompareLattice { n_max } => {
            let cmp = compare_with_lattice(&cfg.base_energies()?, *n_max)?;
            println!("{:>3} {:>22} {:>22}", "k", "four-level", "lattice");
            for (k, (a, b)) in cmp.four_level.iter().zip(&cmp.lattice).enumerate() {
                println!("{k:>3} {a:>22.12} {b:>22.12}");
            }
            println!(
                "max deviation / spread = {:.3e}",
                cmp.max_relative_deviation()
            );
        }
        Command::Validate => report_validation(&cfg)?,
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match dispatch(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Validation) => ExitCode::from(EXIT_VALIDATION),
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
