//! The `identent` command line.
//!
//! [`run`] parses arguments, dispatches a subcommand and returns the process
//! exit code: 0 on success, 2 for invalid input, 3 when a factorization fails
//! its numerical certification.

pub mod error;
pub mod files;
pub mod json;
pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use identent::bell::{
    build_example_state, chsh, chsh_scan_grid, correlation, BellSetting, ExampleState, ScanGrid,
};
use identent::states::schmidt_data;
use identent::{attribute_properties, classify_with, expectation_e_p, Tolerances};
use serde::Serialize;

pub use error::{CliError, EXIT_NUMERICAL, EXIT_OK, EXIT_VALIDATION};
use files::{read_state, read_vector, Mode, StateFile};
use report::*;

/// Sphere scans above this many settings print a cost warning.
const SCAN_WARN: u128 = 100_000_000;

#[derive(Debug, Parser)]
#[command(
    name = "identent",
    version,
    about = "Entanglement of two identical particles"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BellState {
    ProductLike,
    EprBohm,
}

impl BellState {
    fn example(self) -> ExampleState {
        match self {
            BellState::ProductLike => ExampleState::ProductLike,
            BellState::EprBohm => ExampleState::EprBohm,
        }
    }

    fn name(self) -> &'static str {
        match self {
            BellState::ProductLike => "product-like",
            BellState::EprBohm => "epr-bohm",
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide whether a state is entangled.
    Classify {
        state: PathBuf,
        /// Classification tolerance; the factorization and rank tolerances scale with it.
        #[arg(long, value_name = "T")]
        tol: Option<f64>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Print the Slater or Schmidt decomposition.
    Decompose { state: PathBuf },
    /// Evaluate E_P for a projector, or attribute properties when none is given.
    Properties {
        state: PathBuf,
        #[arg(long, value_name = "VECTOR")]
        projector: Option<String>,
    },
    /// CHSH value of an example state at one setting or maximized over a grid.
    Bell {
        #[arg(value_enum)]
        state: BellState,
        /// Exhaustive scan with N angles per direction.
        #[arg(long, value_name = "N", conflicts_with = "setting")]
        scan: Option<usize>,
        /// Four x-z plane angles in degrees.
        #[arg(long, value_name = "a,b,c,d", value_delimiter = ',')]
        setting: Option<Vec<f64>>,
        /// Scan the full sphere instead of the x-z plane (N⁴-type cost, use small N).
        #[arg(long, requires = "scan")]
        sphere: bool,
    },
    /// Write a state file for an (anti)symmetrized product.
    MakeState {
        #[arg(long, value_enum)]
        mode: Mode,
        /// Inline JSON `[[re, im], ...]` or a path to such a file.
        #[arg(long)]
        phi: String,
        #[arg(long)]
        chi: String,
        #[arg(short, long)]
        output: PathBuf,
    },
}

/// Runs the CLI against the process's stdout and stderr.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// Runs the CLI with explicit output streams.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_VALIDATION
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let msg = e.to_string().replace('\n', " ");
            let _ = writeln!(err, "error: {msg}");
            e.exit_code()
        }
    }
}

fn emit<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<(), CliError> {
    let text = json::to_string(value).map_err(|e| CliError::Io(e.to_string()))?;
    out.write_all(text.as_bytes())
        .map_err(|e| CliError::Io(e.to_string()))
}

fn tolerances(tol: Option<f64>) -> Result<Tolerances, CliError> {
    match tol {
        None => Ok(Tolerances::default()),
        Some(t) if t.is_finite() && t > 0.0 && t < 1.0 => Ok(Tolerances::scaled(t)),
        Some(t) => Err(CliError::Input(format!("--tol must be in (0, 1), got {t}"))),
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    match cmd {
        Command::Classify { state, tol, format } => {
            let tol = tolerances(tol)?;
            let psi = read_state(&state)?;
            let c = classify_with(&psi, &tol)?;
            let report = Report::new(&c, psi.dim(), &tol);
            match format {
                Format::Json => emit(out, &report),
                Format::Text => {
                    write!(out, "{}", report.to_text()).map_err(|e| CliError::Io(e.to_string()))
                }
            }
        }
        Command::Decompose { state } => {
            let psi = read_state(&state)?;
            emit(out, &DecompositionReport::new(&schmidt_data(&psi)?))
        }
        Command::Properties { state, projector } => {
            let psi = read_state(&state)?;
            match projector {
                Some(p) => {
                    let p = read_vector(&p)?;
                    emit(out, &ProjectorReport::from(&expectation_e_p(&psi, &p)?))
                }
                None => {
                    let witness = attribute_properties(&psi, &Tolerances::default())?;
                    let witness = match witness {
                        Some(w) => Some(WitnessReports {
                            phi: ProjectorReport::from(&expectation_e_p(&psi, &w.phi)?),
                            chi: ProjectorReport::from(&expectation_e_p(&psi, &w.chi)?),
                        }),
                        None => None,
                    };
                    emit(
                        out,
                        &AttributionReport {
                            attributed: witness.is_some(),
                            witness,
                        },
                    )
                }
            }
        }
        Command::Bell {
            state,
            scan,
            setting,
            sphere,
        } => {
            let psi = build_example_state(state.example());
            if let Some(steps) = scan {
                let grid = if sphere {
                    ScanGrid::Sphere
                } else {
                    ScanGrid::Plane
                };
                let count = grid.settings_count(steps);
                if sphere && count > SCAN_WARN {
                    let _ = writeln!(
                        err,
                        "warning: sphere scan with {steps} steps evaluates {count} settings"
                    );
                }
                let r = chsh_scan_grid(&psi, steps, grid)?;
                let name = if sphere { "sphere" } else { "plane" };
                return emit(out, &ScanReport::new(state.name(), name, steps, count, &r));
            }
            let deg = setting.unwrap_or_else(|| vec![0.0, 45.0, 135.0, 90.0]);
            if deg.len() != 4 || deg.iter().any(|x| !x.is_finite()) {
                return Err(CliError::Input(format!(
                    "--setting needs four finite angles a,b,c,d, got {deg:?}"
                )));
            }
            let deg = [deg[0], deg[1], deg[2], deg[3]];
            let s = BellSetting::coplanar(deg[0], deg[1], deg[2], deg[3]);
            let correlations = Correlations {
                ab: correlation(&psi, &s.a, &s.b)?,
                ac: correlation(&psi, &s.a, &s.c)?,
                bd: correlation(&psi, &s.b, &s.d)?,
                cd: correlation(&psi, &s.c, &s.d)?,
            };
            let chsh = chsh(&psi, &s)?;
            emit(
                out,
                &BellReport {
                    state: state.name().to_string(),
                    setting_deg: deg,
                    correlations,
                    chsh,
                    classical_bound: 2.0,
                    violates_classical_bound: chsh > 2.0 + 1e-9,
                },
            )
        }
        Command::MakeState {
            mode,
            phi,
            chi,
            output,
        } => {
            let (phi, chi) = (read_vector(&phi)?, read_vector(&chi)?);
            let file = StateFile::from_product(&phi, &chi, mode);
            // refuse to write a file that would not load
            file.to_state()?;
            let text = json::to_string(&file).map_err(|e| CliError::Io(e.to_string()))?;
            std::fs::write(&output, text)
                .map_err(|e| CliError::Io(format!("{}: {e}", output.display())))
        }
    }
}
