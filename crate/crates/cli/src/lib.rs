//! Command-line front end for the `ads3s3` library.
//!
//! Exit codes: 0 success, 1 validation or usage error, 2 a numeric check
//! exceeded its tolerance.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use ads3s3::bridge::{self, InvariantBlock};
use ads3s3::charges::{charges_analytic, charges_numeric, ChargeSet};
use ads3s3::diff::Stencil;
use ads3s3::io::{self, GridSpec};
use ads3s3::solution::{SimpleFamilyPoint, SolutionParams};
use ads3s3::symplectic::poisson::{bracket_table, jacobi_residual};
use ads3s3::symplectic::string::orbit_block_coefficients;
use ads3s3::symplectic::{ParticleChartPoint, ParticlePhaseSpace, PhaseSpace, StringChartPoint, StringPhaseSpace};
use ads3s3::verify::{verify, VerificationReport};

#[derive(Debug, Parser)]
#[command(name = "ads3s3", version, about = "Particle-type strings on AdS3 x S3")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Particle,
    String,
}

/// Simple-family point `(f, b, n)`.
#[derive(Debug, Clone, Args)]
pub struct FamilyArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub f: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub b: Option<f64>,
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    pub n: i64,
}

/// Either a parameter file or a simple-family point.
#[derive(Debug, Clone, Args)]
pub struct SolutionArgs {
    /// JSON parameter file mirroring the solution parameter fields.
    #[arg(long, conflicts_with_all = ["f", "b"])]
    pub params: Option<PathBuf>,
    #[command(flatten)]
    pub family: FamilyArgs,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Invariants of the simple family at (f, b, n).
    Bridge(FamilyArgs),
    /// Parameter file for the simple-family point (f, b, n).
    Params(FamilyArgs),
    /// Residual report for a solution over a (tau, sigma) grid.
    Verify {
        #[command(flatten)]
        solution: SolutionArgs,
        #[arg(long, default_value = "tau=-0.5:0.5:3,sigma=-1.5:1.5:5")]
        grid: String,
        /// Tolerance overrides, e.g. `eom=1e-5,periodicity=1e-9`.
        #[arg(long, default_value = "")]
        tol: String,
    },
    /// Embedding mesh of the worldsheet with a stereographic S3 projection.
    Sample {
        #[command(flatten)]
        solution: SolutionArgs,
        #[arg(long, default_value_t = 64)]
        tau_steps: usize,
        #[arg(long, default_value_t = 64)]
        sigma_steps: usize,
    },
    /// Admissibility table over an (f, b) grid.
    Scan {
        #[arg(long, default_value = "f=1:3:21,b=1:2:11")]
        grid: String,
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        n: i64,
    },
    /// Isometry charges: closed form and quadrature.
    Charges {
        #[command(flatten)]
        solution: SolutionArgs,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        tau: f64,
        /// Quadrature points.
        #[arg(long, default_value_t = 256)]
        points: usize,
        /// sqrt(lambda); reports charges scaled by sqrt(lambda)/pi as well.
        #[arg(long, allow_negative_numbers = true)]
        coupling: Option<f64>,
    },
    /// Poisson brackets of the charges at random chart points.
    Brackets {
        #[arg(long, value_enum, default_value_t = Mode::Particle)]
        mode: Mode,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of random chart points (default 20 particle, 2 string).
        #[arg(long)]
        count: Option<usize>,
        /// Winding for string mode.
        #[arg(long, default_value_t = 1)]
        n: i64,
        /// Largest accepted algebra residual (default 1e-6 particle, 1e-5 string).
        #[arg(long)]
        tol: Option<f64>,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Lib(#[from] ads3s3::Error),
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

/// Rendered output and whether every numeric check passed.
#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub text: String,
    pub passed: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Self { text, passed: true }
    }

    pub fn exit_code(&self) -> u8 {
        if self.passed {
            0
        } else {
            2
        }
    }
}

fn json_only(format: Format, what: &str) -> Result<(), CliError> {
    match format {
        Format::Json => Ok(()),
        Format::Csv => Err(CliError::Usage(format!("{what} output is JSON only"))),
    }
}

fn read_file(path: &PathBuf) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.clone(),
        source,
    })
}

fn family_point(a: &FamilyArgs) -> Result<SimpleFamilyPoint, CliError> {
    match (a.f, a.b) {
        (Some(f), Some(b)) => Ok(SimpleFamilyPoint::new(f, b, a.n)?),
        _ => Err(CliError::Usage("give --f and --b (or --params)".into())),
    }
}

fn load_solution(a: &SolutionArgs) -> Result<SolutionParams, CliError> {
    match &a.params {
        Some(path) => Ok(io::parse_params_json(&read_file(path)?)?),
        None => Ok(family_point(&a.family)?.solution()?),
    }
}

fn grid_points(spec: &GridSpec) -> Result<Vec<(f64, f64)>, CliError> {
    let taus = spec.require("tau")?.values();
    let sigmas = spec.require("sigma")?.values();
    Ok(taus.iter().flat_map(|&t| sigmas.iter().map(move |&s| (t, s))).collect())
}

#[derive(Serialize)]
struct BridgeOutput<'a> {
    #[serde(flatten)]
    block: &'a InvariantBlock,
}

#[derive(Serialize)]
struct ChargesOutput {
    analytic: ChargeSet,
    quadrature: ChargeSet,
    points: usize,
    underresolved: bool,
    gap: f64,
    asymmetry: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    prefactor: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    scaled_casimirs: Option<[f64; 4]>,
}

#[derive(Serialize)]
struct PointSummary {
    point: Vec<f64>,
    algebra_residual: f64,
    casimir_residual: f64,
    condition_number: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    block_residual: Option<f64>,
}

#[derive(Serialize)]
struct BracketsOutput {
    mode: Mode,
    seed: u64,
    labels: Vec<String>,
    tolerance: f64,
    points: Vec<PointSummary>,
    max_algebra_residual: f64,
    max_casimir_residual: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    jacobi_residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    max_block_residual: Option<f64>,
    /// Full table at the first point.
    first: ads3s3::symplectic::BracketTable,
    passed: bool,
}

fn run_brackets(mode: Mode, seed: u64, count: Option<usize>, n: i64, tol: Option<f64>) -> Result<Output, CliError> {
    let st = Stencil::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (count, tol) = match mode {
        Mode::Particle => (count.unwrap_or(20), tol.unwrap_or(1e-6)),
        Mode::String => (count.unwrap_or(2), tol.unwrap_or(1e-5)),
    };
    if count == 0 {
        return Err(CliError::Usage("--count must be positive".into()));
    }
    if n <= 0 {
        return Err(CliError::Usage("--n must be positive".into()));
    }
    let mut points = Vec::with_capacity(count);
    let mut tables = Vec::with_capacity(count);
    let mut labels = Vec::new();
    let mut jacobi = None;
    for k in 0..count {
        let (table, block) = match mode {
            Mode::Particle => {
                let mass = rng.gen_range(0.0..2.0);
                let p = ParticleChartPoint::random(&mut rng, mass);
                let space = ParticlePhaseSpace { mass };
                let x = p.reduced_coords()?;
                if k == 0 {
                    labels = space.labels();
                    jacobi = Some(jacobi_residual(&space, &x, &st)?);
                }
                (bracket_table(&space, &x, &st)?, None)
            }
            Mode::String => {
                let p = StringChartPoint::random(&mut rng, n);
                let space = StringPhaseSpace { n, stencil: st };
                let x = p.coords()?;
                if k == 0 {
                    labels = space.labels();
                }
                let w = space.form(&x)?;
                let blocks = orbit_block_coefficients(&w, &x)?;
                let table = bracket_table(&space, &x, &st)?;
                let gap = blocks
                    .iter()
                    .zip(&table.observables.casimirs)
                    .fold(0.0_f64, |m, (a, b)| m.max((a - b).abs()));
                (table, Some(gap))
            }
        };
        points.push(PointSummary {
            point: table.point.clone(),
            algebra_residual: table.algebra_residual,
            casimir_residual: table.casimir_residual,
            condition_number: table.condition_number,
            block_residual: block,
        });
        tables.push(table);
    }
    let max_of = |f: &dyn Fn(&PointSummary) -> f64| points.iter().map(f).fold(0.0_f64, f64::max);
    let max_algebra = max_of(&|p| p.algebra_residual);
    let max_casimir = max_of(&|p| p.casimir_residual);
    let max_block = match mode {
        Mode::String => Some(max_of(&|p| p.block_residual.unwrap_or(0.0))),
        Mode::Particle => None,
    };
    let passed = max_algebra <= tol
        && max_casimir <= tol
        && max_block.is_none_or(|b| b <= tol)
        && jacobi.is_none_or(|j| j <= 1e-4);
    let out = BracketsOutput {
        mode,
        seed,
        labels,
        tolerance: tol,
        points,
        max_algebra_residual: max_algebra,
        max_casimir_residual: max_casimir,
        jacobi_residual: jacobi,
        max_block_residual: max_block,
        first: tables.swap_remove(0),
        passed,
    };
    Ok(Output {
        text: io::to_json(&out),
        passed,
    })
}

/// Parses a full argument vector, program name first.
pub fn parse_args<I, T>(args: I) -> Result<Cli, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    Cli::try_parse_from(args)
}

/// Runs one command and renders its output.
pub fn execute(cli: &Cli) -> Result<Output, CliError> {
    match &cli.command {
        Command::Bridge(a) => {
            json_only(cli.format, "bridge")?;
            let (f, b) = match (a.f, a.b) {
                (Some(f), Some(b)) => (f, b),
                _ => return Err(CliError::Usage("bridge needs --f and --b".into())),
            };
            let block = bridge::bridge(f, b, a.n)?;
            Ok(Output::ok(io::to_json(&BridgeOutput { block: &block })))
        }
        Command::Params(a) => {
            json_only(cli.format, "params")?;
            Ok(Output::ok(format!("{}\n", io::params_to_json(&family_point(a)?.solution()?))))
        }
        Command::Verify { solution, grid, tol } => {
            json_only(cli.format, "verify")?;
            let p = load_solution(solution)?;
            let points = grid_points(&io::parse_grid_spec(grid)?)?;
            let tol = io::parse_tolerances(tol)?;
            let report: VerificationReport = verify(&p, &points, &tol, &Stencil::default())?;
            Ok(Output {
                text: io::to_json(&report),
                passed: report.passed,
            })
        }
        Command::Sample {
            solution,
            tau_steps,
            sigma_steps,
        } => {
            let p = load_solution(solution)?;
            let rows = io::sample_mesh(&p, *tau_steps, *sigma_steps)?;
            let passed = rows.iter().all(|r| r.constraint_residual() <= 1e-12);
            let text = match cli.format {
                Format::Csv => io::mesh_csv(&rows),
                Format::Json => io::to_json(&rows),
            };
            Ok(Output { text, passed })
        }
        Command::Scan { grid, n } => {
            let spec = io::parse_grid_spec(grid)?;
            let rows = bridge::scan_region(spec.require("f")?.range(), spec.require("b")?.range(), *n)?;
            let text = match cli.format {
                Format::Csv => io::scan_csv(&rows),
                Format::Json => io::to_json(&rows),
            };
            Ok(Output::ok(text))
        }
        Command::Charges {
            solution,
            tau,
            points,
            coupling,
        } => {
            json_only(cli.format, "charges")?;
            if *points == 0 {
                return Err(CliError::Usage("--points must be positive".into()));
            }
            if let Some(c) = coupling {
                if !(c.is_finite() && *c > 0.0) {
                    return Err(CliError::Usage("--coupling must be a positive number".into()));
                }
            }
            let p = load_solution(solution)?;
            let analytic = charges_analytic(&p);
            let q = charges_numeric(&p, *tau, *points);
            let prefactor = coupling.map(|c| c / std::f64::consts::PI);
            let out = ChargesOutput {
                analytic,
                quadrature: q.charges,
                points: q.points,
                underresolved: q.underresolved,
                gap: q.charges.max_abs_diff(&analytic),
                asymmetry: analytic.asymmetry(),
                prefactor,
                scaled_casimirs: prefactor.map(|s| {
                    [analytic.m_l, analytic.m_r, analytic.m_l_s, analytic.m_r_s].map(|m| s * m)
                }),
            };
            Ok(Output::ok(io::to_json(&out)))
        }
        Command::Brackets {
            mode,
            seed,
            count,
            n,
            tol,
        } => {
            json_only(cli.format, "brackets")?;
            run_brackets(*mode, *seed, *count, *n, *tol)
        }
    }
}

/// Writes `text` to `--out` or stdout.
pub fn emit(cli: &Cli, text: &str) -> Result<(), CliError> {
    match &cli.out {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        }),
        None => {
            use std::io::Write;
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|source| CliError::Io {
                    path: PathBuf::from("<stdout>"),
                    source,
                })
        }
    }
}

/// One-line diagnostic for a failed command.
pub fn diagnostic(err: &CliError) -> String {
    let mut s = String::new();
    let _ = write!(s, "error: {err}");
    s
}
