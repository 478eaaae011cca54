//! Command-line front end for the diversity library: evaluate a diversity
//! on a point set, run randomized property suites, decide negative type
//! and linear embeddability for finite tables, convert between balanced
//! spherical measures and simplex kernels, and restrict a diversity on ℝᵏ
//! to labeled points.
//!
//! Exit codes form the CI contract: 0 success, 1 property or decision
//! failure, 2 parse error (including unknown suites; clap uses 2 for usage
//! errors as well), 3 domain error (dimension mismatches, caps, invalid
//! payloads), 4 unmet mathematical precondition (non-extremal input,
//! unbounded kernel slice, insufficient zonotope directions).

use std::fmt::Display;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use divrk_core::checkers::{
    check_axioms, check_deletion_inequality, check_linear, check_lipschitz, check_sublinear,
    check_translation_and_hull_invariance, CheckConfig, CheckReport,
};
use divrk_core::diversity::eval;
use divrk_core::kernels::{kernel_from_measure, measure_from_simplex_kernel};
use divrk_core::table::{negative_type, restrict};
use divrk_core::{DiscreteSphericalMeasure, DiversitySpec, DiversityTable, HPolytope, PointSet, Vector};

const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_DOMAIN: u8 = 3;
const EXIT_PRECONDITION: u8 = 4;

#[derive(Parser)]
#[command(
    name = "divrk",
    version,
    about = "Diversities on R^k: evaluate, check, decide, convert"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate a diversity spec on a point set and print the value
    Compute {
        /// Diversity spec JSON file
        #[arg(long)]
        spec: PathBuf,
        /// Point set JSON file: {"dim": k, "points": [[..], ..]}
        #[arg(long)]
        points: PathBuf,
        /// Also write {"value": ..} to this path
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a property suite against a diversity spec
    Check {
        #[arg(long)]
        spec: PathBuf,
        /// One of: axioms, sublinear, linear, invariance, deletion, lipschitz, all
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        /// Comparison tolerance (default 1e-8)
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide negative type for a finite diversity table
    Negtype {
        #[arg(long)]
        table: PathBuf,
        /// Eigenvalue tolerance (default 1e-9 times the largest entry)
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide embeddability into a linear diversity (negative type under
    /// its geometric name)
    EmbedDecide {
        #[arg(long)]
        table: PathBuf,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Convert between balanced spherical measures and simplex kernels
    Convert {
        direction: Direction,
        /// Input JSON file (measure or kernel, per direction)
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Restrict a diversity on R^k to labeled points, emitting a table
    Restrict {
        #[arg(long)]
        spec: PathBuf,
        /// Labeled points JSON file: [{"label": "a", "point": [..]}, ..]
        #[arg(long)]
        points: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Direction {
    MeasureToKernel,
    KernelToMeasure,
}

struct Failure {
    code: u8,
    message: String,
}

type CliResult<T> = Result<T, Failure>;

fn parse_failure(context: &Path, e: impl Display) -> Failure {
    Failure {
        code: EXIT_PARSE,
        message: format!("{}: {e}", context.display()),
    }
}

fn core_failure(e: divrk_core::Error) -> Failure {
    use divrk_core::Error as E;
    let code = match e {
        E::NotExtremal(_) | E::UnboundedSlice | E::DirectionsInsufficient | E::MalformedProgram(_) => {
            EXIT_PRECONDITION
        }
        _ => EXIT_DOMAIN,
    };
    Failure {
        code,
        message: e.to_string(),
    }
}

fn load_json<T: DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = fs::read_to_string(path).map_err(|e| parse_failure(path, e))?;
    serde_json::from_str(&text).map_err(|e| parse_failure(path, e))
}

fn load_points(path: &Path) -> CliResult<PointSet> {
    // the derive places no invariants on the fields; rebuild through the
    // validating constructor so dim mismatches surface as domain errors
    let raw: PointSet = load_json(path)?;
    PointSet::new(raw.dim, raw.points).map_err(core_failure)
}

#[derive(Deserialize)]
struct LabeledPoint {
    label: String,
    point: Vec<f64>,
}

fn emit<T: Serialize>(value: &T, out: &Option<PathBuf>) -> CliResult<String> {
    let s = serde_json::to_string_pretty(value).map_err(|e| Failure {
        code: EXIT_DOMAIN,
        message: format!("serialization failed: {e}"),
    })?;
    if let Some(path) = out {
        fs::write(path, format!("{s}\n")).map_err(|e| parse_failure(path, e))?;
    }
    Ok(s)
}

/// Decimal with `sig` significant digits, trailing zeros trimmed, falling
/// back to scientific notation outside a reasonable exponent window.
fn format_significant(v: f64, sig: usize) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    if !v.is_finite() {
        return format!("{v}");
    }
    let exp = v.abs().log10().floor() as i32;
    if exp < -4 || exp >= sig as i32 {
        let s = format!("{:.*e}", sig - 1, v);
        match s.find('e') {
            Some(pos) => {
                let (m, e) = s.split_at(pos);
                format!("{}{e}", m.trim_end_matches('0').trim_end_matches('.'))
            }
            None => s,
        }
    } else {
        let decimals = (sig as i32 - 1 - exp).max(0) as usize;
        let s = format!("{:.*}", decimals, v);
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    }
}

fn run_check(
    spec: &DiversitySpec,
    suite: &str,
    seed: u64,
    trials: usize,
    tol: Option<f64>,
) -> CliResult<Vec<CheckReport>> {
    let cfg = CheckConfig {
        seed,
        trials,
        dim: spec.required_dim().unwrap_or(2),
        tol: tol.unwrap_or(1e-8),
        ..CheckConfig::default()
    };
    let reports = match suite {
        "axioms" => vec![check_axioms(spec, &cfg).map_err(core_failure)?],
        "sublinear" => vec![check_sublinear(spec, &cfg).map_err(core_failure)?],
        "linear" => vec![check_linear(spec, &cfg).map_err(core_failure)?],
        "invariance" => {
            vec![check_translation_and_hull_invariance(spec, &cfg).map_err(core_failure)?]
        }
        "deletion" => vec![check_deletion_inequality(spec, &cfg).map_err(core_failure)?],
        "lipschitz" => vec![check_lipschitz(spec, &cfg).map_err(core_failure)?],
        "all" => {
            let mut v = vec![
                check_axioms(spec, &cfg).map_err(core_failure)?,
                check_sublinear(spec, &cfg).map_err(core_failure)?,
                check_linear(spec, &cfg).map_err(core_failure)?,
                check_translation_and_hull_invariance(spec, &cfg).map_err(core_failure)?,
                check_deletion_inequality(spec, &cfg).map_err(core_failure)?,
            ];
            // the polygon-sandwich bound is planar; skipped elsewhere
            if cfg.dim == 2 {
                v.push(check_lipschitz(spec, &cfg).map_err(core_failure)?);
            }
            v
        }
        other => {
            return Err(Failure {
                code: EXIT_PARSE,
                message: format!(
                    "unknown suite {other:?}: expected one of axioms, sublinear, linear, invariance, deletion, lipschitz, all"
                ),
            })
        }
    };
    Ok(reports)
}

fn decide_table(table: &Path, tol: Option<f64>, out: &Option<PathBuf>) -> CliResult<ExitCode> {
    let t: DiversityTable = load_json(table)?;
    let report = negative_type(&t, tol).map_err(core_failure)?;
    let s = emit(&report, out)?;
    println!("{s}");
    Ok(if report.decision {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_CHECK_FAILED)
    })
}

fn run(cli: Cli) -> CliResult<ExitCode> {
    match cli.cmd {
        Cmd::Compute { spec, points, out } => {
            let spec: DiversitySpec = load_json(&spec)?;
            let a = load_points(&points)?;
            let value = eval(&spec, &a).map_err(core_failure)?;
            println!("{}", format_significant(value, 12));
            if out.is_some() {
                emit(&serde_json::json!({ "value": value }), &out)?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Check {
            spec,
            suite,
            seed,
            trials,
            tol,
            out,
        } => {
            let spec: DiversitySpec = load_json(&spec)?;
            let reports = run_check(&spec, &suite, seed, trials, tol)?;
            let s = emit(&reports, &out)?;
            println!("{s}");
            Ok(if reports.iter().all(|r| r.pass) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_CHECK_FAILED)
            })
        }
        Cmd::Negtype { table, tol, out } | Cmd::EmbedDecide { table, tol, out } => {
            decide_table(&table, tol, &out)
        }
        Cmd::Convert {
            direction,
            spec,
            out,
        } => {
            match direction {
                Direction::MeasureToKernel => {
                    let nu: DiscreteSphericalMeasure = load_json(&spec)?;
                    let kernel = kernel_from_measure(&nu).map_err(core_failure)?;
                    let s = emit(&kernel, &out)?;
                    println!("{s}");
                }
                Direction::KernelToMeasure => {
                    let kernel: HPolytope = load_json(&spec)?;
                    let nu = measure_from_simplex_kernel(&kernel).map_err(core_failure)?;
                    let s = emit(&nu, &out)?;
                    println!("{s}");
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Restrict { spec, points, out } => {
            let spec: DiversitySpec = load_json(&spec)?;
            let raw: Vec<LabeledPoint> = load_json(&points)?;
            let labeled: Vec<(String, Vector)> = raw
                .into_iter()
                .map(|lp| (lp.label, Vector(lp.point)))
                .collect();
            let table = restrict(&spec, &labeled).map_err(core_failure)?;
            let s = emit(&table, &out)?;
            println!("{s}");
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::format_significant;

    #[test]
    fn significant_formatting() {
        assert_eq!(format_significant(3.0, 12), "3");
        assert_eq!(format_significant(0.0, 12), "0");
        assert_eq!(format_significant(0.5, 12), "0.5");
        assert_eq!(format_significant(-2.25, 12), "-2.25");
        assert_eq!(
            format_significant(2.0 + 2f64.sqrt(), 12),
            "3.41421356237"
        );
        assert_eq!(format_significant(1e-5, 12), "1e-5");
        assert_eq!(format_significant(1.23e15, 12), "1.23e15");
        assert_eq!(format_significant(123.456, 5), "123.46");
    }
}
