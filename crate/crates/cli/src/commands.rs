//! Argument definitions and the body of every subcommand.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use anyon_core::bounds::{
    dyson_upper_dirichlet, dyson_upper_neumann, harmonic_lower, lt_kinetic_lower,
    lt_schroedinger_lower, LtInputs,
};
use anyon_core::{Alpha, BoundaryCondition};
use anyon_mc::{rayleigh_quotient, DysonTrialConfig, McEstimate};
use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::{CliError, Result, EXIT_OK, EXIT_VERIFY};
use crate::parse::{parse_alpha, parse_alpha_grid, parse_grids, parse_n};
use crate::report::{bounds_rows, write_csv, write_json};
use crate::verify::{self, CrossOracleParams, Suite, MC_SLACK};

#[derive(Debug, Parser)]
#[command(
    name = "anyon",
    version,
    about = "Energy bounds and numerical oracles for the ideal anyon gas in a square"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form bounds over a sweep of (alpha, N, bc).
    Bounds(BoundsArgs),
    /// Lattice two-anyon ground energy with its closed-form sandwich.
    E2(E2Args),
    /// Run one of the invariant suites.
    Verify(VerifyArgs),
    /// Monte Carlo energy of the Dyson trial state.
    Trial(TrialArgs),
    /// Lieb-Thirring type lower bounds for a caller-supplied constant.
    Lt(LtArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BcArg {
    Neumann,
    Dirichlet,
}

impl From<BcArg> for BoundaryCondition {
    fn from(b: BcArg) -> Self {
        match b {
            BcArg::Neumann => BoundaryCondition::Neumann,
            BcArg::Dirichlet => BoundaryCondition::Dirichlet,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BcChoice {
    Neumann,
    Dirichlet,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    /// Statistics parameter, as a float or an exact fraction p/q. Repeatable.
    #[arg(long = "alpha")]
    pub alpha: Vec<String>,
    /// Float sweep a:b:step, inclusive.
    #[arg(long)]
    pub alpha_grid: Option<String>,
    /// Particle number: 10, 2..20, 2:20 or a comma list.
    #[arg(long)]
    pub n: String,
    #[arg(long, value_enum, default_value = "both")]
    pub bc: BcChoice,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    /// Output file; stdout when absent or "-".
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct E2Args {
    #[arg(long)]
    pub alpha: String,
    #[arg(long, value_enum, default_value = "neumann")]
    pub bc: BcArg,
    /// Ascending grid sizes, at least three.
    #[arg(long, default_value = "8,12,16,20")]
    pub grids: String,
    /// Relative residual tolerance of the eigensolver.
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(subcommand)]
    pub suite: VerifySuite,
    /// Reduced grids and sample counts.
    #[arg(long, global = true)]
    pub quick: bool,
}

#[derive(Debug, Subcommand)]
pub enum VerifySuite {
    /// Lower bounds never exceed upper bounds; quadratic large-N limit.
    Ordering,
    /// Quadrature of the closed-form integrals behind the Dyson bound.
    Integrals {
        #[arg(long = "alpha")]
        alpha: Vec<String>,
        #[arg(long, default_value_t = verify::DEFAULT_QUAD_POINTS)]
        quad_points: usize,
    },
    /// alpha_N against brute force, alpha_star for odd numerators.
    Fractionality {
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Exact boson and fermion values, Bessel zero envelope.
    Endpoints,
    /// Monte Carlo, lattice and dense diagonalization against each other.
    CrossOracle,
}

#[derive(Debug, Args)]
pub struct TrialArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub alpha: String,
    #[arg(long, value_enum, default_value = "neumann")]
    pub bc: BcArg,
    #[arg(long, default_value_t = 100_000)]
    pub samples: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = anyon_mc::config::DEFAULT_FD_STEP)]
    pub fd_step: f64,
    #[arg(long, default_value_t = anyon_mc::config::DEFAULT_BATCHES)]
    pub batches: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[command(group(
    ArgGroup::new("form")
        .required(true)
        .args(["density_l2sq", "potential_neg_l2sq", "harmonic"])
))]
pub struct LtArgs {
    #[arg(long)]
    pub alpha: String,
    /// Lieb-Thirring constant C. Required; there is no default.
    #[arg(long)]
    pub constant: f64,
    /// Kinetic bound C·alpha·||rho||_2^2 from this squared density norm.
    #[arg(long)]
    pub density_l2sq: Option<f64>,
    /// Schroedinger bound -||V_-||_2^2 / (4 C alpha).
    #[arg(long)]
    pub potential_neg_l2sq: Option<f64>,
    /// Harmonic trap ground energy bound for --n particles.
    #[arg(long, requires = "n")]
    pub harmonic: bool,
    #[arg(long)]
    pub n: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn open_out(out: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    match out {
        Some(p) if p.as_os_str() != "-" => Ok(Box::new(BufWriter::new(File::create(p)?))),
        _ => Ok(Box::new(BufWriter::new(io::stdout().lock()))),
    }
}

fn emit_json<T: Serialize>(value: &T, out: &Option<PathBuf>) -> Result<()> {
    let mut w = open_out(out)?;
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

/// Runs a parsed command and returns the process exit code.
pub fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Bounds(a) => cmd_bounds(&a),
        Command::E2(a) => cmd_e2(&a),
        Command::Verify(a) => cmd_verify(&a),
        Command::Trial(a) => cmd_trial(&a),
        Command::Lt(a) => cmd_lt(&a),
    }
}

pub fn cmd_bounds(args: &BoundsArgs) -> Result<u8> {
    let mut alphas: Vec<Alpha> = args
        .alpha
        .iter()
        .map(|s| parse_alpha(s))
        .collect::<Result<_>>()?;
    if let Some(g) = &args.alpha_grid {
        alphas.extend(parse_alpha_grid(g)?);
    }
    if alphas.is_empty() {
        return Err(CliError::Usage("give --alpha or --alpha-grid".into()));
    }
    let ns = parse_n(&args.n)?;
    let bcs: &[BoundaryCondition] = match args.bc {
        BcChoice::Neumann => &[BoundaryCondition::Neumann],
        BcChoice::Dirichlet => &[BoundaryCondition::Dirichlet],
        BcChoice::Both => &[BoundaryCondition::Neumann, BoundaryCondition::Dirichlet],
    };
    let rows = bounds_rows(&alphas, &ns, bcs);
    let mut w = open_out(&args.out)?;
    match args.format {
        Format::Csv => write_csv(&rows, &mut w)?,
        Format::Json => write_json(&rows, &mut w)?,
    }
    w.flush()?;
    Ok(EXIT_OK)
}

pub fn cmd_e2(args: &E2Args) -> Result<u8> {
    let alpha = parse_alpha(&args.alpha)?;
    let grids = parse_grids(&args.grids)?;
    let report = verify::e2_sandwich(alpha, args.bc.into(), &grids, args.tol)?;
    emit_json(&report, &args.out)?;
    Ok(if report.sandwich.pass {
        EXIT_OK
    } else {
        EXIT_VERIFY
    })
}

pub fn run_suite(args: &VerifyArgs) -> Result<Suite> {
    match &args.suite {
        VerifySuite::Ordering => verify::ordering_suite(args.quick),
        VerifySuite::Integrals { alpha, quad_points } => {
            let alphas: Vec<Alpha> = if alpha.is_empty() {
                verify::DEFAULT_INTEGRAL_ALPHAS
                    .iter()
                    .map(|&x| Alpha::new(x))
                    .collect::<anyon_core::Result<_>>()?
            } else {
                alpha
                    .iter()
                    .map(|s| parse_alpha(s))
                    .collect::<Result<_>>()?
            };
            verify::integrals_suite(&alphas, *quad_points)
        }
        VerifySuite::Fractionality { seed } => {
            let samples = if args.quick {
                100
            } else {
                verify::FRACTIONALITY_SAMPLES
            };
            verify::fractionality_suite(*seed, samples)
        }
        VerifySuite::Endpoints => {
            let mut suite = verify::endpoints_suite()?;
            let bessel = verify::bessel_suite(100)?;
            suite.checks.extend(bessel.checks);
            suite.seconds += bessel.seconds;
            Ok(suite)
        }
        VerifySuite::CrossOracle => {
            let params = if args.quick {
                CrossOracleParams::quick()
            } else {
                CrossOracleParams::full()
            };
            verify::cross_oracle_suite(&params)
        }
    }
}

pub fn cmd_verify(args: &VerifyArgs) -> Result<u8> {
    let suite = run_suite(args)?;
    print!("{}", suite.render());
    Ok(if suite.passed() { EXIT_OK } else { EXIT_VERIFY })
}

#[derive(Debug, Serialize)]
pub struct TrialComparison {
    pub source: &'static str,
    pub closed_form: Option<f64>,
    pub valid: bool,
    pub note: String,
    /// mean − 3·stderr − slack ≤ closed form, or true when the bound does not apply.
    pub dominated: bool,
}

#[derive(Debug, Serialize)]
pub struct TrialReport {
    pub config: DysonTrialConfig,
    pub estimate: McEstimate,
    pub comparison: TrialComparison,
}

pub fn cmd_trial(args: &TrialArgs) -> Result<u8> {
    let alpha = parse_alpha(&args.alpha)?;
    let bc: BoundaryCondition = args.bc.into();
    let config = DysonTrialConfig::new(args.n, alpha, bc, args.samples, args.seed)?
        .with_fd_step(args.fd_step)?
        .with_batches(args.batches)?;
    let estimate = rayleigh_quotient(&config)?;
    let bound = match bc {
        BoundaryCondition::Neumann => dyson_upper_neumann(args.n as u64, &alpha)?,
        BoundaryCondition::Dirichlet => dyson_upper_dirichlet(args.n as u64, &alpha)?,
    };
    let dominated =
        !bound.valid || estimate.mean - 3.0 * estimate.stderr - MC_SLACK <= bound.energy;
    let report = TrialReport {
        config,
        estimate,
        comparison: TrialComparison {
            source: bound.source,
            closed_form: bound.valid.then_some(bound.energy),
            valid: bound.valid,
            note: bound.validity_reason.clone(),
            dominated,
        },
    };
    emit_json(&report, &args.out)?;
    Ok(if dominated { EXIT_OK } else { EXIT_VERIFY })
}

#[derive(Debug, Serialize)]
pub struct LtReport {
    pub alpha: f64,
    pub constant: f64,
    pub bound: &'static str,
    pub value: f64,
}

pub fn cmd_lt(args: &LtArgs) -> Result<u8> {
    let alpha = parse_alpha(&args.alpha)?;
    let c = args.constant;
    let (bound, value) = if let Some(rho) = args.density_l2sq {
        let inputs = LtInputs::new(rho, 0.0, c)?;
        ("kinetic", lt_kinetic_lower(&inputs, &alpha))
    } else if let Some(v) = args.potential_neg_l2sq {
        let inputs = LtInputs::new(0.0, v, c)?;
        ("schroedinger", lt_schroedinger_lower(&inputs, &alpha)?)
    } else {
        let n = args
            .n
            .ok_or_else(|| CliError::Usage("--harmonic needs --n".into()))?;
        ("harmonic", harmonic_lower(n, &alpha, c)?)
    };
    emit_json(
        &LtReport {
            alpha: alpha.value(),
            constant: c,
            bound,
            value,
        },
        &args.out,
    )?;
    Ok(EXIT_OK)
}
