//! `wavemode`: figure data as CSV, single-mode solves and the verification suites.

mod commands;
mod csv;

use std::f64::consts::PI;
use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use wavemode_core::verify::Suite;
use wavemode_core::{ModeParams, TimeGrid};

#[derive(Debug, Parser)]
#[command(name = "wavemode", version, about = "Modal analysis of the forced wave equation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Forcing and response for frequencies bracketing resonance.
    Figure1 {
        #[command(flatten)]
        mode: Mode,
        /// Mode index with √μ = 2πk (default 3).
        #[arg(long, conflicts_with_all = ["sqrt_mu", "lambda"])]
        k: Option<u32>,
        /// Forcing frequencies as multiples of √μ.
        #[arg(long, value_delimiter = ',', value_parser = positive_f64, default_values_t = [0.8, 0.95, 1.0, 1.05, 1.2])]
        ratios: Vec<f64>,
        #[arg(long = "grid-n", value_parser = positive_usize)]
        grid_n: Option<usize>,
        #[command(flatten)]
        out: Out,
    },
    /// `1 + C` over a frequency sweep for √μ = 2πk, k in a range.
    Figure2 {
        #[arg(long = "k-min", default_value_t = 1, value_parser = positive_u32)]
        k_min: u32,
        #[arg(long = "k-max", default_value_t = 15, value_parser = positive_u32)]
        k_max: u32,
        #[arg(long, default_value_t = 1.0, value_parser = positive_f64)]
        c: f64,
        #[arg(long = "T", default_value_t = 1.0, value_parser = positive_f64)]
        horizon: f64,
        #[command(flatten)]
        sweep: Sweep,
        #[command(flatten)]
        out: Out,
    },
    /// Trial norm of the response against two data norms of the forcing.
    Figure3 {
        #[command(flatten)]
        mode: Mode,
        #[arg(long, default_value_t = 50, value_parser = positive_u32, conflicts_with_all = ["sqrt_mu", "lambda"])]
        k: u32,
        #[command(flatten)]
        sweep: Sweep,
        #[command(flatten)]
        out: Out,
    },
    /// `|W(ω_j, ω_ℓ)|` on the first J cosine-basis frequencies (default √μ = 200).
    Figure4 {
        #[command(flatten)]
        mode: Mode,
        #[arg(long = "J", default_value_t = 64, value_parser = positive_usize)]
        j: usize,
        #[command(flatten)]
        out: Out,
    },
    /// `C` and `1 + C` for one mode over a frequency sweep.
    Amplification {
        #[command(flatten)]
        mode: Mode,
        #[arg(long, conflicts_with_all = ["sqrt_mu", "lambda"])]
        k: Option<u32>,
        #[command(flatten)]
        sweep: Sweep,
        #[command(flatten)]
        out: Out,
    },
    /// Resonant amplification and inf-sup ratio for √μ = 2πk.
    Infsup {
        #[arg(long = "k-min", default_value_t = 1, value_parser = positive_u32)]
        k_min: u32,
        #[arg(long = "k-max", default_value_t = 50, value_parser = positive_u32)]
        k_max: u32,
        #[arg(long, default_value_t = 1.0, value_parser = positive_f64)]
        c: f64,
        #[arg(long = "T", default_value_t = 1.0, value_parser = positive_f64)]
        horizon: f64,
        #[command(flatten)]
        out: Out,
    },
    /// Signed kernel matrix `W(ω_j, ω_ℓ)` with a dominance summary on stderr.
    FourierKernel {
        #[command(flatten)]
        mode: Mode,
        #[arg(long, conflicts_with_all = ["sqrt_mu", "lambda"])]
        k: Option<u32>,
        #[arg(long = "J", default_value_t = 16, value_parser = positive_usize)]
        j: usize,
        #[command(flatten)]
        out: Out,
    },
    /// Pointwise energy balance for a cosine forcing.
    Energy {
        #[command(flatten)]
        mode: Mode,
        #[arg(long, conflicts_with_all = ["sqrt_mu", "lambda"])]
        k: Option<u32>,
        /// Forcing frequency (default √μ).
        #[arg(long, value_parser = positive_f64)]
        omega: Option<f64>,
        #[arg(long = "grid-n", value_parser = positive_usize)]
        grid_n: Option<usize>,
        #[command(flatten)]
        out: Out,
    },
    /// Closed-form mode solution for a harmonic forcing.
    Solve {
        #[command(flatten)]
        mode: Mode,
        #[arg(long, conflicts_with_all = ["sqrt_mu", "lambda"])]
        k: Option<u32>,
        /// Forcing frequency (default √μ for the wave mode, λ for Schrödinger).
        #[arg(long, value_parser = positive_f64)]
        omega: Option<f64>,
        #[arg(long, value_enum, default_value_t = commands::Equation::Wave)]
        equation: commands::Equation,
        #[arg(long = "grid-n", value_parser = positive_usize)]
        grid_n: Option<usize>,
        #[command(flatten)]
        out: Out,
    },
    /// Runs the invariant suites; exits 1 if any check fails.
    Verify {
        #[arg(long, default_value = "all", value_parser = parse_suite)]
        suite: Suite,
    },
}

/// Mode constants: either `--sqrt-mu` or `--lambda`, plus `--c` and `--T`.
#[derive(Debug, Clone, Args)]
struct Mode {
    #[arg(long = "sqrt-mu", value_parser = positive_f64, conflicts_with = "lambda")]
    sqrt_mu: Option<f64>,
    #[arg(long, value_parser = positive_f64)]
    lambda: Option<f64>,
    #[arg(long, default_value_t = 1.0, value_parser = positive_f64)]
    c: f64,
    #[arg(long = "T", default_value_t = 1.0, value_parser = positive_f64)]
    horizon: f64,
}

impl Mode {
    fn params(&self, default_sqrt_mu: f64) -> Result<ModeParams, CliError> {
        Ok(match (self.lambda, self.sqrt_mu) {
            (Some(l), _) => ModeParams::new(l, self.c, self.horizon)?,
            (None, Some(a)) => ModeParams::from_sqrt_mu(a, self.c, self.horizon)?,
            (None, None) => ModeParams::from_sqrt_mu(default_sqrt_mu, self.c, self.horizon)?,
        })
    }

    fn params_for_k(&self, k: Option<u32>, default_k: u32) -> Result<ModeParams, CliError> {
        let k = k.unwrap_or(default_k);
        if k == 0 {
            return Err(CliError::Invalid("k must be at least 1".into()));
        }
        self.params(2.0 * PI * k as f64)
    }
}

#[derive(Debug, Clone, Args)]
struct Sweep {
    #[arg(long = "omega-min", value_parser = positive_f64)]
    omega_min: Option<f64>,
    #[arg(long = "omega-max", value_parser = positive_f64)]
    omega_max: Option<f64>,
    #[arg(long = "omega-steps", value_parser = positive_usize)]
    omega_steps: Option<usize>,
}

impl Sweep {
    fn omegas(&self, lo: f64, hi: f64, steps: usize) -> Result<Vec<f64>, CliError> {
        let lo = self.omega_min.unwrap_or(lo);
        let hi = self.omega_max.unwrap_or(hi);
        if hi <= lo {
            return Err(CliError::Invalid(format!("omega-max {hi} must exceed omega-min {lo}")));
        }
        Ok(wavemode_core::norms::linear_sweep(lo, hi, self.omega_steps.unwrap_or(steps))?)
    }
}

#[derive(Debug, Clone, Args)]
struct Out {
    /// Output file (stdout if omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Out {
    fn emit(&self, text: &str) -> Result<(), CliError> {
        match &self.out {
            Some(path) => std::fs::write(path, text).map_err(|e| CliError::Io(path.clone(), e)),
            None => {
                use std::io::Write;
                std::io::stdout()
                    .lock()
                    .write_all(text.as_bytes())
                    .map_err(|e| CliError::Io(PathBuf::from("<stdout>"), e))
            }
        }
    }
}

/// `--grid-n` if given (checked against `frequency`), otherwise 1000 points per period.
fn time_grid(horizon: f64, frequency: f64, grid_n: Option<usize>) -> Result<TimeGrid, CliError> {
    Ok(match grid_n {
        Some(n) => {
            let g = TimeGrid::new(horizon, n)?;
            g.check_resolution(frequency)?;
            g
        }
        None => TimeGrid::resolving(horizon, frequency, 1000.0)?,
    })
}

#[derive(Debug)]
enum CliError {
    Invalid(String),
    Core(wavemode_core::Error),
    Io(PathBuf, std::io::Error),
    VerificationFailed(usize),
}

impl From<wavemode_core::Error> for CliError {
    fn from(e: wavemode_core::Error) -> Self {
        CliError::Core(e)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Invalid(m) => write!(f, "invalid arguments: {m}"),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(p, e) => write!(f, "cannot write {}: {e}", p.display()),
            CliError::VerificationFailed(n) => write!(f, "{n} verification checks failed"),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::VerificationFailed(_) => 1,
            CliError::Invalid(_) | CliError::Core(_) => 2,
            CliError::Io(..) => 3,
        }
    }
}

fn positive_f64(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(format!("expected a positive number, got {s}"))
    }
}

fn positive_usize(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(v) if v > 0 => Ok(v),
        _ => Err(format!("expected a positive integer, got {s}")),
    }
}

fn positive_u32(s: &str) -> Result<u32, String> {
    match s.parse::<u32>() {
        Ok(v) if v > 0 => Ok(v),
        _ => Err(format!("expected a positive integer, got {s}")),
    }
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: wavemode_core::Error| e.to_string())
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Figure1 { mode, k, ratios, grid_n, out } => {
            let p = mode.params_for_k(k, 3)?;
            out.emit(&commands::figure1(&p, &ratios, grid_n)?)
        }
        Command::Figure2 { k_min, k_max, c, horizon, sweep, out } => {
            out.emit(&commands::figure2(k_min, k_max, c, horizon, &sweep)?)
        }
        Command::Figure3 { mode, k, sweep, out } => {
            let p = mode.params_for_k(Some(k), k)?;
            out.emit(&commands::figure3(&p, &sweep)?)
        }
        Command::Figure4 { mode, j, out } => {
            let p = mode.params(200.0)?;
            out.emit(&commands::kernel_matrix(&p, j, true)?)
        }
        Command::Amplification { mode, k, sweep, out } => {
            let p = mode.params_for_k(k, 1)?;
            out.emit(&commands::amplification(&p, &sweep)?)
        }
        Command::Infsup { k_min, k_max, c, horizon, out } => out.emit(&commands::infsup(k_min, k_max, c, horizon)?),
        Command::FourierKernel { mode, k, j, out } => {
            let p = mode.params_for_k(k, 1)?;
            let text = commands::kernel_matrix(&p, j, false)?;
            eprintln!("{}", commands::dominance_summary(&p, j)?);
            out.emit(&text)
        }
        Command::Energy { mode, k, omega, grid_n, out } => {
            let p = mode.params_for_k(k, 1)?;
            let (text, summary) = commands::energy(&p, omega.unwrap_or(p.omega_res()), grid_n)?;
            eprintln!("{summary}");
            out.emit(&text)
        }
        Command::Solve { mode, k, omega, equation, grid_n, out } => {
            let p = mode.params_for_k(k, 1)?;
            out.emit(&commands::solve(&p, omega, equation, grid_n)?)
        }
        Command::Verify { suite } => {
            let report = wavemode_core::verify::run_suite(suite)?;
            print!("{}", report.render());
            if report.passed() {
                Ok(())
            } else {
                Err(CliError::VerificationFailed(report.failures()))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("wavemode: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
