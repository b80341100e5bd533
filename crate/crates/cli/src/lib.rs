//! The `lagstab` command line: `analyze`, `sweep`, `oracle`, `volume`.
//!
//! Exit codes: 0 for a stable verdict or a passed check, 10 for an
//! unstable verdict or a failed cross-check, 2 for bad input.

mod input;
mod render;
mod sweep;

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lagstab::geometry::{metric_hyperbolic, volume_euclidean, volume_from_metric, volume_hyperbolic};
use lagstab::oracle::{
    minimum_grid, second_variation_quadrature, second_variation_scale, second_variation_spectral, Phase,
    TrigMonomial,
};
use lagstab::stability::q_form;
use lagstab::{analyze_with, AnalyzeOptions, Error, Mode, OrbitSpec, Rational, Track};
use serde_json::json;

pub use input::{InputError, OrbitArgs, ParseScalar};
pub use render::TOOL_VERSION;
pub use sweep::{sweep_points, SweepPlan};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_UNSTABLE: i32 = 10;

/// Relative agreement required between the oracle routes on the float track.
pub const ORACLE_TOLERANCE: f64 = 1e-10;

#[derive(Parser, Debug)]
#[command(name = "lagstab", version, about = "Hamiltonian stability of Lagrangian torus orbits in CH^n")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Certified stability report for one orbit.
    Analyze {
        #[command(flatten)]
        orbit: OrbitOpts,
        #[command(flatten)]
        run: RunOpts,
        /// Enumerate up to this bound instead of the computed one. May only enlarge it.
        #[arg(long)]
        bound: Option<String>,
    },
    /// Analyze every point of a rational grid over the open moment simplex.
    Sweep {
        #[arg(long)]
        n: usize,
        /// Simplex grid: s = k/R with positive integers k summing to R.
        #[arg(long, default_value_t = 10)]
        resolution: u64,
        /// Comma-separated tanh^2 r values.
        #[arg(long = "t", conflicts_with = "t_steps")]
        t: Option<String>,
        /// Use t = j/(K+1) for j = 1..K.
        #[arg(long)]
        t_steps: Option<u64>,
        /// Draw this many random simplex points instead of the full grid.
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, env = "LAGSTAB_WORKERS")]
        workers: Option<usize>,
        #[command(flatten)]
        run: RunOpts,
    },
    /// Compare the stability form with the spectral and quadrature oracles.
    Oracle {
        #[command(flatten)]
        orbit: OrbitOpts,
        /// Integer mode, e.g. -1,1,1.
        #[arg(long, allow_hyphen_values = true)]
        mode: String,
        #[arg(long, value_enum, default_value_t = PhaseArg::Cos)]
        phase: PhaseArg,
        /// Points per angle; defaults to 4 (max|m_i| + 1).
        #[arg(long)]
        grid: Option<usize>,
        #[command(flatten)]
        run: RunOpts,
    },
    /// Volumes of the orbit in CH^n and in C^n.
    Volume {
        #[command(flatten)]
        orbit: OrbitOpts,
        #[command(flatten)]
        run: RunOpts,
    },
}

#[derive(Args, Debug, Clone)]
pub struct OrbitOpts {
    /// Circle radii r_1,...,r_n of the torus in C^n.
    #[arg(long)]
    pub radii: Option<String>,
    /// Moment-simplex point s_1,...,s_n (sums to 1).
    #[arg(long, conflicts_with = "radii")]
    pub simplex: Option<String>,
    /// tanh^2 r, used with --simplex.
    #[arg(long = "t", conflicts_with = "radii")]
    pub t: Option<String>,
}

impl OrbitOpts {
    fn args(&self) -> OrbitArgs {
        OrbitArgs { radii: self.radii.clone(), simplex: self.simplex.clone(), t: self.t.clone() }
    }
}

#[derive(Args, Debug, Clone)]
pub struct RunOpts {
    /// Defaults to exact unless an input is written as a decimal.
    #[arg(long, value_enum)]
    pub arithmetic: Option<Arithmetic>,
    #[arg(long, value_enum)]
    pub output: Option<OutputFormat>,
    /// Float-track band within which Q counts as zero, relative to 1 + |a1|.
    #[arg(long, default_value_t = lagstab::stability::DEFAULT_ZERO_BAND)]
    pub zero_band: f64,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Arithmetic {
    Exact,
    Float,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
    Text,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum PhaseArg {
    Cos,
    Sin,
}

/// A failure with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        match e {
            InputError::Domain(e) => e.into(),
            InputError::Usage(message) => Failure { code: EXIT_INPUT, message },
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::FastPathDisagreement { .. } => EXIT_UNSTABLE,
            _ => EXIT_INPUT,
        };
        Failure { code, message: e.to_string() }
    }
}

type CmdResult = Result<i32, Failure>;

/// Parses `args` (program name first), runs the command, and returns the
/// exit code. Records go to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli.command, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn track_for(run: &RunOpts, orbit: &OrbitArgs) -> Track {
    match run.arithmetic {
        Some(Arithmetic::Exact) => Track::Exact,
        Some(Arithmetic::Float) => Track::Float,
        None => orbit.default_track(),
    }
}

fn io(e: std::io::Error) -> Failure {
    Failure { code: EXIT_INPUT, message: format!("write failed: {e}") }
}

fn execute(command: &Command, out: &mut dyn Write) -> CmdResult {
    match command {
        Command::Analyze { orbit, run, bound } => {
            let args = orbit.args();
            match track_for(run, &args) {
                Track::Exact => cmd_analyze::<Rational>(&args, run, bound.as_deref(), out),
                Track::Float => cmd_analyze::<f64>(&args, run, bound.as_deref(), out),
            }
        }
        Command::Sweep { n, resolution, t, t_steps, samples, seed, workers, run } => {
            let plan = SweepPlan {
                n: *n,
                resolution: *resolution,
                t: t.clone(),
                t_steps: *t_steps,
                samples: samples.map(|k| (k, *seed)),
            };
            let workers = workers.unwrap_or(1).max(1);
            sweep::cmd_sweep(&plan, run, workers, out)
        }
        Command::Oracle { orbit, mode, phase, grid, run } => {
            let args = orbit.args();
            let phase = match phase {
                PhaseArg::Cos => Phase::Cos,
                PhaseArg::Sin => Phase::Sin,
            };
            let mode = Mode::new(input::parse_mode(mode)?)?;
            let u = TrigMonomial::new(mode, phase);
            match track_for(run, &args) {
                Track::Exact => cmd_oracle::<Rational>(&args, &u, *grid, run, out),
                Track::Float => cmd_oracle::<f64>(&args, &u, *grid, run, out),
            }
        }
        Command::Volume { orbit, run } => {
            let args = orbit.args();
            match track_for(run, &args) {
                Track::Exact => cmd_volume::<Rational>(&args, run, out),
                Track::Float => cmd_volume::<f64>(&args, run, out),
            }
        }
    }
}

fn emit_json(out: &mut dyn Write, value: &serde_json::Value) -> Result<(), Failure> {
    writeln!(out, "{}", serde_json::to_string_pretty(value).expect("serializable")).map_err(io)
}

pub fn cmd_analyze<S: ParseScalar>(
    args: &OrbitArgs,
    run: &RunOpts,
    bound: Option<&str>,
    out: &mut dyn Write,
) -> CmdResult {
    let orbit: OrbitSpec<S> = args.build()?;
    let options = AnalyzeOptions {
        bound_override: bound.map(S::parse_token).transpose()?,
        zero_band: run.zero_band,
    };
    let report = analyze_with(&orbit, &options)?;
    match run.output.unwrap_or(OutputFormat::Json) {
        OutputFormat::Json => emit_json(out, &render::report_json(&orbit, &report))?,
        OutputFormat::Text => write!(out, "{}", render::report_text(&orbit, &report)).map_err(io)?,
        OutputFormat::Csv => {
            let rec = render::Record::new(&orbit, &report);
            let exact = S::TRACK == Track::Exact;
            writeln!(out, "{}\n{}", render::Record::csv_header(orbit.n(), exact), rec.csv_row()).map_err(io)?;
        }
    }
    Ok(if report.verdict.is_stable() { EXIT_OK } else { EXIT_UNSTABLE })
}

pub fn cmd_oracle<S: ParseScalar>(
    args: &OrbitArgs,
    u: &TrigMonomial,
    grid: Option<usize>,
    run: &RunOpts,
    out: &mut dyn Write,
) -> CmdResult {
    let orbit: OrbitSpec<S> = args.build()?;
    let grid = grid.unwrap_or_else(|| minimum_grid(&u.mode));
    let s4 = orbit.sinh_sq().clone() * orbit.sinh_sq().clone();
    let s4f = s4.to_f64();
    let q = q_form(&orbit, &u.mode)?;
    let spectral = second_variation_spectral(&orbit, u)? * s4;
    let quadrature = second_variation_quadrature(&orbit, u, grid)? * s4f;
    let scale = second_variation_scale(&orbit, u)? * s4f;

    let rel = |a: f64, b: f64| (a - b).abs() / scale;
    let exact_diff = (q.clone() - spectral.clone()).abs();
    let q_spectral_ok = match S::TRACK {
        Track::Exact => exact_diff.is_zero(),
        Track::Float => exact_diff.to_f64() <= ORACLE_TOLERANCE * scale,
    };
    let (qf, sf) = (q.to_f64(), spectral.to_f64());
    let agree = q_spectral_ok && rel(qf, quadrature) <= ORACLE_TOLERANCE && rel(sf, quadrature) <= ORACLE_TOLERANCE;

    match run.output.unwrap_or(OutputFormat::Json) {
        OutputFormat::Json => {
            let record = json!({
                "orbit": render::orbit_json(&orbit),
                "mode": u.mode.entries(),
                "phase": match u.phase { Phase::Cos => "cos", Phase::Sin => "sin" },
                "grid": grid,
                "q_form": render::value_json(&q.to_value()),
                "spectral": render::value_json(&spectral.to_value()),
                "quadrature": quadrature,
                "scale": scale,
                "deviation": {
                    "q_spectral": render::value_json(&exact_diff.to_value()),
                    "q_quadrature": rel(qf, quadrature),
                    "spectral_quadrature": rel(sf, quadrature),
                },
                "agree": agree,
                "arithmetic_track": S::TRACK.to_string(),
                "tool_version": TOOL_VERSION,
            });
            emit_json(out, &record)?;
        }
        OutputFormat::Text | OutputFormat::Csv => {
            writeln!(
                out,
                "mode {}  grid {}\nq_form              {}\nsinh^4 r spectral   {}\nsinh^4 r quadrature {}\n|q - spectral|      {}\nrel q - quadrature  {:e}\nagree               {}",
                u.mode,
                grid,
                q.to_value(),
                spectral.to_value(),
                quadrature,
                exact_diff.to_value(),
                rel(qf, quadrature),
                agree
            )
            .map_err(io)?;
        }
    }
    Ok(if agree { EXIT_OK } else { EXIT_UNSTABLE })
}

pub fn cmd_volume<S: ParseScalar>(args: &OrbitArgs, run: &RunOpts, out: &mut dyn Write) -> CmdResult {
    let orbit: OrbitSpec<S> = args.build()?;
    let hyp = volume_hyperbolic(&orbit);
    let euc = volume_euclidean(&orbit);
    let from_metric = volume_from_metric(&orbit);
    let cosh = orbit.cosh_sq().to_f64().sqrt();
    let ratio = hyp / euc;
    let det = metric_hyperbolic(&orbit).determinant();
    let prod = orbit.radii_sq().iter().fold(S::one(), |a, r| a * r.clone());
    let det_closed = orbit.cosh_sq() * prod;
    let det_ok = det.approx_eq(&det_closed, 1e-12);
    let ratio_dev = (ratio - cosh).abs() / cosh;
    let metric_dev = (from_metric - hyp).abs() / hyp;
    let ok = det_ok && ratio_dev <= 1e-12 && metric_dev <= 1e-12;
    match run.output.unwrap_or(OutputFormat::Json) {
        OutputFormat::Json => emit_json(
            out,
            &json!({
                "orbit": render::orbit_json(&orbit),
                "hyperbolic": hyp,
                "euclidean": euc,
                "ratio": ratio,
                "cosh_r": cosh,
                "from_metric": from_metric,
                "determinant": render::value_json(&det.to_value()),
                "determinant_matches": det_ok,
                "consistent": ok,
                "tool_version": TOOL_VERSION,
            }),
        )?,
        OutputFormat::Text | OutputFormat::Csv => writeln!(
            out,
            "hyperbolic   {hyp}\neuclidean    {euc}\nratio        {ratio}\ncosh r       {cosh}\nfrom metric  {from_metric}\ndet G1       {}\nconsistent   {ok}",
            det.to_value()
        )
        .map_err(io)?,
    }
    Ok(if ok { EXIT_OK } else { EXIT_UNSTABLE })
}

