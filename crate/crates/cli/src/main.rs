//! `qes`: verification suites, spectra and sl(2) decompositions for
//! quasi-exactly solvable models.

mod commands;
mod config;
mod error;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand};

use crate::config::{parse_param, FileConfig, ModelKind, Overrides, RunConfig};
use crate::error::CliError;
use crate::report::write_file;

#[derive(Parser, Debug)]
#[command(name = "qes", version, about = "Quasi-exactly solvable model toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the construction and algebra checks for a model.
    Verify {
        /// razavy, sextic or polynomial.
        model: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Lowest eigenvalues of a model potential.
    Spectrum {
        /// razavy, sextic, harmonic or polynomial.
        model: Option<String>,
        /// Number of eigenvalues.
        #[arg(short)]
        k: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// sl(2) decomposition of the gauge-transformed operator.
    Decompose {
        /// razavy, sextic, scalarfield or polynomial.
        model: Option<String>,
        #[arg(long = "B", allow_hyphen_values = true)]
        b: Option<f64>,
        #[arg(long = "C", allow_hyphen_values = true)]
        c: Option<f64>,
        #[command(flatten)]
        common: Common,
    },
    /// Soliton, fluctuation-mode and tower checks of the scalar-field model.
    Scalarfield {
        #[arg(long = "B", allow_hyphen_values = true)]
        b: Option<f64>,
        #[arg(long = "C", allow_hyphen_values = true)]
        c: Option<f64>,
        /// Highest tower index.
        #[arg(long)]
        nmax: Option<u32>,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// JSON config file; flags take precedence over it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Tolerance of the eigenvalue and residual checks.
    #[arg(long)]
    tol: Option<f64>,
    /// Model parameter, repeatable.
    #[arg(long = "param", value_name = "KEY=VALUE", value_parser = parse_param, allow_hyphen_values = true)]
    params: Vec<(String, f64)>,
    #[arg(long, allow_hyphen_values = true)]
    x_min: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    x_max: Option<f64>,
    /// Grid points of the coarse spectral grid.
    #[arg(long)]
    n: Option<usize>,
}

impl Common {
    fn overrides(&self, model: Option<String>) -> Overrides {
        Overrides {
            model,
            params: self.params.clone(),
            x_min: self.x_min,
            x_max: self.x_max,
            n: self.n,
            tol: self.tol,
            out: self.out.clone(),
            ..Default::default()
        }
    }
}

fn push_bc(o: &mut Overrides, b: Option<f64>, c: Option<f64>) {
    o.params.extend(b.map(|v| ("B".to_string(), v)));
    o.params.extend(c.map(|v| ("C".to_string(), v)));
}

fn resolve(
    common: &Common,
    flags: Overrides,
    default_model: Option<ModelKind>,
) -> Result<RunConfig, CliError> {
    let file = match &common.config {
        Some(p) => FileConfig::load(p)?,
        None => FileConfig::default(),
    };
    RunConfig::resolve(file, flags, default_model)
}

fn run(cli: Cli) -> Result<u8, CliError> {
    let started = Instant::now();
    let (name, cfg, outcome) = match cli.command {
        Command::Verify { model, common } => {
            let cfg = resolve(&common, common.overrides(model), None)?;
            let o = commands::verify(&cfg)?;
            ("verify", cfg, o)
        }
        Command::Spectrum { model, k, common } => {
            let flags = Overrides {
                k,
                ..common.overrides(model)
            };
            let cfg = resolve(&common, flags, None)?;
            let o = commands::spectrum(&cfg)?;
            ("spectrum", cfg, o)
        }
        Command::Decompose {
            model,
            b,
            c,
            common,
        } => {
            let mut flags = common.overrides(model);
            push_bc(&mut flags, b, c);
            let cfg = resolve(&common, flags, None)?;
            let o = commands::decompose(&cfg)?;
            ("decompose", cfg, o)
        }
        Command::Scalarfield { b, c, nmax, common } => {
            let mut flags = Overrides {
                nmax,
                ..common.overrides(None)
            };
            push_bc(&mut flags, b, c);
            let cfg = resolve(&common, flags, Some(ModelKind::ScalarField))?;
            let o = commands::scalarfield(&cfg)?;
            ("scalarfield", cfg, o)
        }
    };

    std::fs::create_dir_all(&cfg.out).map_err(|source| CliError::Write {
        path: cfg.out.clone(),
        source,
    })?;
    outcome.report.write(&cfg.out)?;
    for (file, body) in &outcome.tables {
        write_file(&cfg.out.join(file), body)?;
    }
    let unix = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map_or(0, |d| d.as_secs());
    let meta = serde_json::json!({
        "command": name,
        "model": cfg.model.name(),
        "params": cfg.params,
        "tol": cfg.tol,
        "version": env!("CARGO_PKG_VERSION"),
        "started_unix": unix,
        "elapsed_seconds": started.elapsed().as_secs_f64(),
    });
    write_file(&cfg.out.join("run-metadata.json"), &format!("{meta:#}\n"))?;

    print!("{}", outcome.report.text());
    Ok(u8::from(outcome.report.failures() > 0))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
