//! `gupdelta`: propagators, bound states and verification suites for the
//! GUP-deformed point interaction.
//!
//! Exit status: 0 success, 1 a suite check failed, 2 usage error,
//! 3 numerical failure.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use gupdelta_core::free::{free_euclidean, free_green, free_kernel};
use gupdelta_core::pathintegral::{
    bound_state_from_pole, delta_green_closed, delta_green_expanded, delta_propagator_time, DeltaGreenQuery,
};
use gupdelta_core::report::{
    compare_alpha_grid, compare_bound_states, emit, parse_alpha_grid, render, run_suite, Cell, Config, Format,
    Suite, Tabular,
};
use gupdelta_core::schrodinger::bound_state_schrodinger;
use gupdelta_core::spectral::bound_state_spectral;
use gupdelta_core::{BoundState, Error, GreenParts, PhysParams, PropagatorQuery, TimeArg};

#[derive(Parser, Debug)]
#[command(name = "gupdelta", version, about = "GUP-corrected point interaction in one dimension")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// Reduced Planck constant.
    #[arg(long, global = true, default_value_t = 1.0)]
    hbar: f64,
    /// Mass.
    #[arg(long, global = true, default_value_t = 1.0)]
    m: f64,
    /// GUP parameter.
    #[arg(long, global = true, default_value_t = 0.01)]
    alpha: f64,
    /// Strength of the point interaction v·δ(q); attractive when negative.
    #[arg(long, global = true, default_value_t = -1.0, allow_hyphen_values = true)]
    v: f64,
    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
    /// key = value file of tolerances and numerical settings.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Grid points of the spectral solver (overrides the config file).
    #[arg(long, global = true)]
    grid_points: Option<usize>,
    /// Box length of the spectral solver (overrides the config file).
    #[arg(long, global = true)]
    box_length: Option<f64>,
    /// Log more; repeat for debug output.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
    GnuplotDat,
}

impl From<OutputFormat> for Format {
    fn from(f: OutputFormat) -> Format {
        match f {
            OutputFormat::Json => Format::Json,
            OutputFormat::Csv => Format::Csv,
            OutputFormat::GnuplotDat => Format::GnuplotDat,
        }
    }
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct TimeChoice {
    /// Real time T.
    #[arg(long, allow_hyphen_values = true)]
    time: Option<f64>,
    /// Euclidean time τ.
    #[arg(long)]
    tau: Option<f64>,
    /// Energy parameter ε = E/ℏ.
    #[arg(long)]
    epsilon: Option<f64>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GreenFormArg {
    Closed,
    Expanded,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MethodArg {
    Schrodinger,
    PathIntegral,
    Spectral,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Free propagator: kernel at real time, Euclidean propagator, or Green's function.
    FreeKernel {
        #[arg(long, allow_hyphen_values = true)]
        qf: f64,
        #[arg(long, allow_hyphen_values = true)]
        q0: f64,
        #[command(flatten)]
        time: TimeChoice,
    },
    /// Propagator with the point interaction, in Euclidean time or energy.
    Green {
        #[arg(long, allow_hyphen_values = true)]
        qf: f64,
        #[arg(long, allow_hyphen_values = true)]
        q0: f64,
        /// Euclidean time τ.
        #[arg(long, conflicts_with = "epsilon", required_unless_present = "epsilon")]
        tau: Option<f64>,
        /// Energy parameter ε.
        #[arg(long)]
        epsilon: Option<f64>,
        /// Energy-domain expression.
        #[arg(long, value_enum, default_value_t = GreenFormArg::Closed)]
        form: GreenFormArg,
    },
    /// Bound state from one construction.
    BoundState {
        #[arg(long, value_enum)]
        method: MethodArg,
    },
    /// Schrödinger against path-integral bound state.
    Compare {
        /// Scan α over lo:hi:n instead of using --alpha.
        #[arg(long)]
        alpha_grid: Option<String>,
        /// Add the spectral σ → 0 estimate.
        #[arg(long)]
        with_spectral: bool,
    },
    /// Run a verification suite.
    Verify {
        /// numerics, free, delta-schrodinger, delta-pathintegral, spectral, laplace-table or all.
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

#[derive(Serialize)]
struct Value<T: Serialize> {
    params: PhysParams,
    #[serde(flatten)]
    value: T,
}

#[derive(Serialize)]
struct FreeValue {
    q_f: f64,
    q_0: f64,
    time: TimeArg,
    re: f64,
    im: f64,
}

impl Tabular for Value<FreeValue> {
    fn columns(&self) -> Vec<&'static str> {
        vec!["q_f", "q_0", "re", "im"]
    }

    fn rows(&self) -> Vec<Vec<Cell>> {
        let v = &self.value;
        vec![vec![Cell::Num(v.q_f), Cell::Num(v.q_0), Cell::Num(v.re), Cell::Num(v.im)]]
    }
}

#[derive(Serialize)]
struct GreenValue {
    query: DeltaGreenQuery,
    parts: GreenParts,
    total: f64,
}

impl Tabular for Value<GreenValue> {
    fn columns(&self) -> Vec<&'static str> {
        vec!["q_f", "q_0", "free", "correction", "total"]
    }

    fn rows(&self) -> Vec<Vec<Cell>> {
        let v = &self.value;
        vec![vec![
            Cell::Num(v.query.q_f),
            Cell::Num(v.query.q_0),
            Cell::Num(v.parts.free),
            Cell::Num(v.parts.correction),
            Cell::Num(v.total),
        ]]
    }
}

#[derive(Serialize)]
struct StateValue {
    state: BoundState,
    #[serde(skip_serializing_if = "Option::is_none")]
    error_estimate: Option<f64>,
}

impl Tabular for Value<StateValue> {
    fn columns(&self) -> Vec<&'static str> {
        vec!["method", "energy", "decay", "amplitude", "error_estimate"]
    }

    fn rows(&self) -> Vec<Vec<Cell>> {
        let s = &self.value.state;
        vec![vec![
            Cell::Text(s.method.to_string()),
            Cell::Num(s.energy),
            Cell::Num(s.decay()),
            Cell::Num(s.wavefunction.amplitude),
            self.value.error_estimate.map_or(Cell::Missing, Cell::Num),
        ]]
    }
}

/// A command's outcome: whether every check passed.
enum Outcome {
    Done,
    ChecksFailed,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.common.verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        _ => log::LevelFilter::Debug,
    };
    env_logger::Builder::new().filter_level(level).init();

    match run(cli) {
        Ok(Outcome::Done) => ExitCode::SUCCESS,
        Ok(Outcome::ChecksFailed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_numerical() { 3 } else { 2 })
        }
    }
}

fn load_config(common: &Common) -> Result<Config, Error> {
    let mut cfg = match &common.config {
        Some(path) => Config::from_file(path)?,
        None => Config::default(),
    };
    if let Some(n) = common.grid_points {
        cfg.grid.points = n;
    }
    if let Some(l) = common.box_length {
        cfg.grid.box_length = l;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn output<T: Tabular>(doc: &T, common: &Common) -> Result<(), Error> {
    let format = common.format.into();
    match &common.out {
        Some(path) => emit(doc, format, path),
        None => {
            print!("{}", render(doc, format)?);
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<Outcome, Error> {
    let common = &cli.common;
    let config = load_config(common)?;
    let p = PhysParams::new(common.hbar, common.m, common.alpha, common.v)?;

    match cli.command {
        Command::FreeKernel { qf, q0, time } => {
            let (query, value) = match (time.time, time.tau, time.epsilon) {
                (Some(t), _, _) => {
                    let q = PropagatorQuery::real(qf, q0, t)?;
                    (q, free_kernel(&p, &q)?)
                }
                (_, Some(tau), _) => {
                    let q = PropagatorQuery::euclidean(qf, q0, tau)?;
                    (q, free_euclidean(&p, &q)?.into())
                }
                (_, _, Some(eps)) => {
                    let q = PropagatorQuery::energy(qf, q0, eps)?;
                    (q, free_green(&p, &q)?.into())
                }
                _ => unreachable!("clap requires one time argument"),
            };
            let doc = Value {
                params: p,
                value: FreeValue {
                    q_f: qf,
                    q_0: q0,
                    time: query.time,
                    re: value.re,
                    im: value.im,
                },
            };
            output(&doc, common)?;
        }
        Command::Green {
            qf,
            q0,
            tau,
            epsilon,
            form,
        } => {
            let (query, parts) = match (tau, epsilon) {
                (Some(tau), _) => {
                    let q = DeltaGreenQuery::time(qf, q0, tau)?;
                    (q, delta_propagator_time(&p, &q)?)
                }
                (_, Some(eps)) => {
                    let q = DeltaGreenQuery::energy(qf, q0, eps)?;
                    let parts = match form {
                        GreenFormArg::Closed => delta_green_closed(&p, &q)?,
                        GreenFormArg::Expanded => delta_green_expanded(&p, &q)?,
                    };
                    (q, parts)
                }
                _ => unreachable!("clap requires tau or epsilon"),
            };
            let doc = Value {
                params: p,
                value: GreenValue {
                    query,
                    total: parts.total(),
                    parts,
                },
            };
            output(&doc, common)?;
        }
        Command::BoundState { method } => {
            let (state, error_estimate) = match method {
                MethodArg::Schrodinger => (bound_state_schrodinger(&p)?, None),
                MethodArg::PathIntegral => (bound_state_from_pole(&p)?.1, None),
                MethodArg::Spectral => {
                    let (limit, state) = bound_state_spectral(&p, &config.sigmas, &config.grid)?;
                    (state, Some(limit.error_estimate))
                }
            };
            let doc = Value {
                params: p,
                value: StateValue { state, error_estimate },
            };
            output(&doc, common)?;
        }
        Command::Compare {
            alpha_grid,
            with_spectral,
        } => match alpha_grid {
            Some(spec) => {
                let alphas = parse_alpha_grid(&spec)?;
                output(&compare_alpha_grid(&p, &alphas, with_spectral, &config)?, common)?;
            }
            None => output(&compare_bound_states(&p, with_spectral, &config)?, common)?,
        },
        Command::Verify { suite } => {
            let suite: Suite = suite.parse()?;
            let outcome = run_suite(suite, &config);
            output(&outcome, common)?;
            let failed = outcome.failures().count();
            if failed > 0 {
                eprintln!("{failed} of {} checks failed", outcome.checks.len());
                return Ok(Outcome::ChecksFailed);
            }
        }
    }
    Ok(Outcome::Done)
}
