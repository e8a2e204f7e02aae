//! `qtorus`: JSON front end for the verification engine.
//!
//! Every invocation writes exactly one JSON document to stdout. Exit codes:
//! 0 success, 1 a verification found a counterexample, 2 usage or input error.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qtorus::exec::Execution;
use qtorus::goldman::{self, SweepOptions};
use qtorus::holonomy::{path_holonomy, to_torus_element};
use qtorus::lattice_paths::{signed_area_between, LatticePolygon, PLPath};
use qtorus::rational::format_rational;
use qtorus::sl2r_moduli::{self, ConjClass, CellDescriptor, Tolerances, TraceTriple};
use qtorus::triangular_rep::trirep_report;
use qtorus::{HolonomyElement, Mat2, TorusElement};
use serde::Serialize;
use serde_json::Value;

const WORKERS_ENV: &str = "GOLDMAN_SWEEP_WORKERS";
const MAX_LOOP_COORD: i64 = 1_000_000;
const MAX_SWEEP: i64 = 12;

#[derive(Parser)]
#[command(name = "qtorus", version, about = "Exact quantum torus and Goldman bracket checks")]
struct Cli {
    /// Indent the JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Quantized Goldman bracket checks.
    #[command(subcommand)]
    Goldman(GoldmanCommand),
    /// Same as `goldman sweep`.
    Sweep(SweepArgs),
    /// Signed area between two paths with common endpoints.
    Area {
        #[arg(long)]
        p1: String,
        #[arg(long)]
        p2: String,
    },
    /// Area, interior and boundary lattice-point counts of a simple lattice polygon.
    Pick {
        #[arg(long)]
        polygon: String,
    },
    /// Holonomy of a PL path.
    Holonomy {
        #[arg(long)]
        path: String,
    },
    /// Conjugacy class of an SL(2,R) matrix.
    Classify {
        #[arg(long)]
        matrix: String,
        #[arg(long, default_value_t = sl2r_moduli::DEFAULT_TOL)]
        tol: f64,
    },
    /// Joint normal form and trace triple of a commuting pair.
    ClassifyPair {
        #[arg(long)]
        m1: String,
        #[arg(long)]
        m2: String,
        #[arg(long, default_value_t = sl2r_moduli::DEFAULT_TOL)]
        tol: f64,
    },
    /// Triangular-sector checks.
    #[command(subcommand)]
    Trirep(TrirepCommand),
}

#[derive(Subcommand)]
enum GoldmanCommand {
    /// Check one quadruple exactly.
    Verify {
        #[arg(long, allow_hyphen_values = true, value_parser = coord)]
        m: i64,
        #[arg(long, allow_hyphen_values = true, value_parser = coord)]
        n: i64,
        #[arg(long, allow_hyphen_values = true, value_parser = coord)]
        s: i64,
        #[arg(long, allow_hyphen_values = true, value_parser = coord)]
        t: i64,
    },
    /// Check every quadruple with entries in [-max, max].
    Sweep(SweepArgs),
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, default_value_t = 5, allow_hyphen_values = true,
          value_parser = clap::value_parser!(i64).range(0..=MAX_SWEEP))]
    max: i64,
    /// Also check the classical limit.
    #[arg(long)]
    classical: bool,
    /// Also check the rerouted-loop form.
    #[arg(long)]
    rerouted: bool,
}

#[derive(Subcommand)]
enum TrirepCommand {
    /// Fundamental relation, internal relation and unit-diagonal obstruction.
    Verify,
}

fn coord(s: &str) -> Result<i64, String> {
    let v: i64 = s.trim().parse().map_err(|e| format!("`{s}`: {e}"))?;
    if v.abs() > MAX_LOOP_COORD {
        return Err(format!("{v} is outside [-{MAX_LOOP_COORD}, {MAX_LOOP_COORD}]"));
    }
    Ok(v)
}

/// Result of one command: the JSON document and whether every check passed.
struct Report {
    body: String,
    passed: bool,
}

impl Report {
    fn new<T: Serialize>(pretty: bool, body: &T, passed: bool) -> Result<Self, String> {
        let body = render(body, pretty)?;
        Ok(Self { body, passed })
    }
}

fn render<T: Serialize>(value: &T, pretty: bool) -> Result<String, String> {
    let text = if pretty {
        serde_json::to_string_pretty(value)
    } else {
        serde_json::to_string(value)
    };
    text.map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct ErrorBody {
    error: String,
}

#[derive(Serialize)]
struct AreaOut {
    signed_area: String,
}

#[derive(Serialize)]
struct PickOut {
    area: String,
    #[serde(rename = "I")]
    interior: u64,
    #[serde(rename = "B")]
    boundary: u64,
}

#[derive(Serialize)]
struct HolonomyOut {
    #[serde(flatten)]
    holonomy: HolonomyElement,
    #[serde(skip_serializing_if = "Option::is_none")]
    torus: Option<TorusElement>,
}

#[derive(Serialize)]
struct ClassifyOut {
    case: String,
    #[serde(flatten)]
    class: ConjClass,
}

#[derive(Serialize)]
struct PairOut {
    label: String,
    #[serde(flatten)]
    cell: CellDescriptor,
    traces: TraceTriple,
}

/// Inline JSON, or the contents of a file given as `@path`.
fn payload(arg: &str) -> Result<Value, String> {
    let text = match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?,
        None => arg.to_owned(),
    };
    serde_json::from_str(&text).map_err(|e| format!("malformed JSON: {e}"))
}

fn matrix(arg: &str) -> Result<Mat2, String> {
    let v = payload(arg)?;
    let v = if v.is_array() { serde_json::json!({ "rows": v }) } else { v };
    serde_json::from_value(v).map_err(|e| format!("bad matrix: {e}"))
}

fn tolerances(tol: f64) -> Result<Tolerances, String> {
    if !(tol.is_finite() && tol > 0.0 && tol < 1.0) {
        return Err(format!("tolerance must lie in (0, 1), got {tol}"));
    }
    Ok(Tolerances::with_tol(tol))
}

fn sweep_exec() -> Result<Execution, String> {
    let raw = std::env::var(WORKERS_ENV).ok();
    Execution::from_worker_env(raw.as_deref()).map_err(|e| format!("{WORKERS_ENV}: {e}"))
}

fn run_sweep(args: &SweepArgs, pretty: bool) -> Result<Report, String> {
    let report = goldman::sweep(SweepOptions {
        max: args.max,
        classical: args.classical,
        rerouted: args.rerouted,
        exec: sweep_exec()?,
    });
    Report::new(pretty, &report, report.verified)
}

fn run(command: &Command, pretty: bool) -> Result<Report, String> {
    let err = |e: qtorus::Error| e.to_string();
    match command {
        Command::Goldman(GoldmanCommand::Verify { m, n, s, t }) => {
            let r = goldman::verify_qgoldman(*m, *n, *s, *t);
            Report::new(pretty, &r, r.verified && r.classical)
        }
        Command::Goldman(GoldmanCommand::Sweep(args)) | Command::Sweep(args) => run_sweep(args, pretty),
        Command::Area { p1, p2 } => {
            let p1 = PLPath::from_json(&payload(p1)?).map_err(err)?;
            let p2 = PLPath::from_json(&payload(p2)?).map_err(err)?;
            let area = signed_area_between(&p1, &p2).map_err(err)?;
            Report::new(pretty, &AreaOut { signed_area: format_rational(&area) }, true)
        }
        Command::Pick { polygon } => {
            let poly = LatticePolygon::from_json(&payload(polygon)?).map_err(err)?;
            let out = PickOut {
                area: format_rational(&poly.shoelace_area()),
                interior: poly.interior_count(),
                boundary: poly.boundary_count(),
            };
            Report::new(pretty, &out, poly.pick_area() == poly.shoelace_area())
        }
        Command::Holonomy { path } => {
            let holonomy = path_holonomy(&PLPath::from_json(&payload(path)?).map_err(err)?);
            let torus = to_torus_element(&holonomy).ok();
            Report::new(pretty, &HolonomyOut { holonomy, torus }, true)
        }
        Command::Classify { matrix: m, tol } => {
            let class = sl2r_moduli::classify_with(&matrix(m)?, &tolerances(*tol)?).map_err(err)?;
            let case = class.tag.kind().case().to_string();
            Report::new(pretty, &ClassifyOut { case, class }, true)
        }
        Command::ClassifyPair { m1, m2, tol } => {
            let tols = tolerances(*tol)?;
            let (u1, u2) = (matrix(m1)?, matrix(m2)?);
            let cell = sl2r_moduli::classify_pair_with(&u1, &u2, &tols).map_err(err)?;
            let traces = sl2r_moduli::trace_triple(&u1, &u2, tols.tol).map_err(err)?;
            Report::new(pretty, &PairOut { label: cell.label(), cell, traces }, true)
        }
        Command::Trirep(TrirepCommand::Verify) => {
            let r = trirep_report();
            Report::new(pretty, &r, r.verified)
        }
    }
}

fn emit<T: Serialize>(value: &T, pretty: bool) {
    println!("{}", render(value, pretty).expect("reports always serialize"));
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let pretty = std::env::args().any(|a| a == "--pretty");
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    emit(&serde_json::json!({ "help": e.to_string() }), pretty);
                    ExitCode::SUCCESS
                }
                _ => {
                    let error = e.render().to_string().trim().to_owned();
                    emit(&ErrorBody { error }, pretty);
                    ExitCode::from(2)
                }
            };
        }
    };
    match run(&cli.command, cli.pretty) {
        Ok(report) => {
            println!("{}", report.body);
            if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(error) => {
            emit(&ErrorBody { error }, cli.pretty);
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::num::NonZeroUsize;

    #[test]
    fn worker_env_values() {
        assert_eq!(
            Execution::from_worker_env(Some("3")),
            Ok(Execution::Workers(NonZeroUsize::new(3).unwrap()))
        );
        assert!(Execution::from_worker_env(Some("0")).is_err());
        assert!(Execution::from_worker_env(Some("-2")).is_err());
    }

    #[test]
    fn coordinate_bounds() {
        assert_eq!(coord("-4"), Ok(-4));
        assert!(coord("2000000").is_err());
        assert!(coord("x").is_err());
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
