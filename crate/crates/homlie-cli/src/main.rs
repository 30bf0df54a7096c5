//! Command-line surface for the homlie library.
//!
//! Exit codes: 0 = pass, 1 = a check failed, 2 = hypotheses or validation
//! rejected the input, 3 = parse error. Failures print machine-readable
//! JSON on stderr; results print JSON on stdout. A file argument of `-`
//! reads stdin.

use clap::{Parser, Subcommand};
use homlie::io::{self, FormatError, ParsedAlgebra};
use homlie::linalg::{parse_scalar, Scalar};
use homlie::structure::{self, StructureError};
use homlie::{catalog, extension, verify, QuadraticHomLieAlgebra};
use serde_json::json;
use std::io::Read;

const EXIT_PASS: i32 = 0;
const EXIT_CHECK_FAILED: i32 = 1;
const EXIT_REJECTED: i32 = 2;
const EXIT_PARSE_ERROR: i32 = 3;

#[derive(Parser)]
#[command(name = "homlie", version, about = "Exact construction, verification and decomposition of quadratic Hom-Lie algebras over the rationals")]
struct Cli {
    /// Worker-thread hint; accepted for forward compatibility, the current
    /// implementation runs single-threaded.
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full axiom report on an algebra file and print it as JSON.
    Verify {
        /// Algebra file, or `-` for stdin.
        file: String,
        /// Comma-separated subset of checks that gate the exit code:
        /// skew, homlie_jacobi, classical_jacobi, centroid, metric.
        /// Default gate: skew, homlie_jacobi, centroid, and metric when a
        /// metric block is present.
        #[arg(long, value_delimiter = ',', value_name = "NAMES")]
        checks: Vec<String>,
    },
    /// Check extension hypotheses, build the algebra, and emit its file.
    Construct {
        /// Extension-data file, or `-` for stdin.
        file: String,
        /// Write the constructed algebra here instead of stdout.
        #[arg(short, long, value_name = "FILE")]
        output: Option<String>,
    },
    /// Fitting split, maximal ideal, full decomposition and its validation.
    Decompose {
        /// Algebra file with a metric block, or `-` for stdin.
        file: String,
        /// Write the result here instead of stdout.
        #[arg(short, long, value_name = "FILE")]
        output: Option<String>,
    },
    /// Print structural invariants: center, derived span, centroid, twist.
    Analyze {
        /// Algebra file, or `-` for stdin.
        file: String,
    },
    /// Emit a catalog algebra: the cotangent-style extension of sl2 or sl3.
    Example {
        /// `sl2` or `sl3`.
        name: String,
        /// Alternating seed `i,j,k=p/q` with 1-based indices into the
        /// underlying simple algebra; repeatable. Omitting every seed gives
        /// the classical (Lie) limit.
        #[arg(long, value_name = "I,J,K=P/Q")]
        mu: Vec<String>,
    },
    /// Decompose, rebuild, and compare against the input exactly.
    Roundtrip {
        /// Algebra file with a metric block, or `-` for stdin.
        file: String,
    },
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // --help and --version render through clap and exit 0
            if e.exit_code() == 0 {
                e.exit();
            }
            fail(
                EXIT_PARSE_ERROR,
                json!({ "error": "bad_usage", "message": e.to_string() }),
            );
        }
    };
    let code = match cli.command {
        Command::Verify { file, checks } => cmd_verify(&file, &checks),
        Command::Construct { file, output } => cmd_construct(&file, output.as_deref()),
        Command::Decompose { file, output } => cmd_decompose(&file, output.as_deref()),
        Command::Analyze { file } => cmd_analyze(&file),
        Command::Example { name, mu } => cmd_example(&name, &mu),
        Command::Roundtrip { file } => cmd_roundtrip(&file),
    };
    std::process::exit(code);
}

fn fail(code: i32, message: serde_json::Value) -> ! {
    eprintln!("{message}");
    std::process::exit(code);
}

/// Prints to stdout, exiting quietly if the downstream pipe has closed.
fn emit(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    if writeln!(out, "{text}").is_err() || out.flush().is_err() {
        std::process::exit(EXIT_PASS);
    }
}

fn read_input(path: &str) -> String {
    if path == "-" {
        let mut text = String::new();
        if let Err(e) = std::io::stdin().read_to_string(&mut text) {
            fail(
                EXIT_PARSE_ERROR,
                json!({ "error": "io", "message": format!("reading stdin: {e}") }),
            );
        }
        text
    } else {
        match std::fs::read_to_string(path) {
            Ok(text) => text,
            Err(e) => fail(
                EXIT_PARSE_ERROR,
                json!({ "error": "io", "message": format!("reading {path}: {e}") }),
            ),
        }
    }
}

fn write_output(output: Option<&str>, text: &str) {
    match output {
        None => emit(text),
        Some(path) => {
            if let Err(e) = std::fs::write(path, format!("{text}\n")) {
                fail(
                    EXIT_PARSE_ERROR,
                    json!({ "error": "io", "message": format!("writing {path}: {e}") }),
                );
            }
        }
    }
}

fn format_error(e: &FormatError) -> serde_json::Value {
    json!({ "error": e.code(), "message": e.to_string() })
}

fn structure_error(e: &StructureError) -> serde_json::Value {
    json!({ "error": e.code(), "message": e.to_string() })
}

fn parse_algebra_arg(path: &str) -> ParsedAlgebra {
    match io::parse_algebra(&read_input(path)) {
        Ok(parsed) => parsed,
        Err(e) => fail(EXIT_PARSE_ERROR, format_error(&e)),
    }
}

fn require_metric(parsed: &ParsedAlgebra) -> &QuadraticHomLieAlgebra {
    match parsed.quadratic() {
        Some(q) => q,
        None => fail(
            EXIT_REJECTED,
            json!({
                "error": "metric_required",
                "message": "this operation needs an algebra file with a metric block",
            }),
        ),
    }
}

fn cmd_verify(file: &str, checks: &[String]) -> i32 {
    let parsed = parse_algebra_arg(file);
    let report = match parsed.quadratic() {
        Some(q) => verify::full_report(q),
        None => verify::full_report_plain(parsed.algebra()),
    };
    let verdict = if checks.is_empty() {
        report.passed()
    } else {
        let mut verdict = true;
        for name in checks {
            verdict &= match name.as_str() {
                "skew" => report.skew.passed,
                "homlie_jacobi" => report.homlie_jacobi.passed,
                "classical_jacobi" => report.classical_jacobi.passed,
                "centroid" => report.centroid.passed,
                "metric" => report.metric.as_ref().is_some_and(|m| m.passed()),
                other => fail(
                    EXIT_PARSE_ERROR,
                    json!({
                        "error": "unknown_check",
                        "message": format!(
                            "unknown check {other:?}; expected skew, homlie_jacobi, \
                             classical_jacobi, centroid, or metric"
                        ),
                    }),
                ),
            };
        }
        verdict
    };
    emit(&serde_json::to_string_pretty(&report).expect("reports always serialize"));
    if verdict {
        EXIT_PASS
    } else {
        EXIT_CHECK_FAILED
    }
}

fn cmd_construct(file: &str, output: Option<&str>) -> i32 {
    let data = match io::parse_extension(&read_input(file)) {
        Ok(data) => data,
        Err(e) => fail(EXIT_PARSE_ERROR, format_error(&e)),
    };
    let hypotheses = extension::check_hypotheses(&data);
    if !hypotheses.all_passed() {
        fail(
            EXIT_REJECTED,
            json!({
                "error": "hypotheses_rejected",
                "failed": hypotheses.failures(),
                "report": hypotheses,
            }),
        );
    }
    let (algebra, report) = match extension::build_and_certify(&data) {
        Ok(result) => result,
        Err(e) => fail(
            EXIT_REJECTED,
            json!({ "error": "invalid_extension", "message": e.to_string() }),
        ),
    };
    if !report.passed() {
        fail(
            EXIT_CHECK_FAILED,
            json!({ "error": "certification_failed", "report": report }),
        );
    }
    write_output(output, &io::serialize_algebra(&algebra));
    EXIT_PASS
}

fn cmd_decompose(file: &str, output: Option<&str>) -> i32 {
    let parsed = parse_algebra_arg(file);
    let q = require_metric(&parsed);
    let split = match structure::fitting(q) {
        Ok(split) => split,
        Err(e) => fail(EXIT_REJECTED, structure_error(&e)),
    };
    let data = match structure::decompose(q) {
        Ok(data) => data,
        Err(e) => fail(EXIT_REJECTED, structure_error(&e)),
    };
    let validation = structure::validate_decomposition(&data, q);
    let decomposition: serde_json::Value =
        serde_json::from_str(&io::serialize_decomposition(&data))
            .expect("serialized decompositions are valid JSON");
    let result = json!({
        "fitting": {
            "ell": split.ell,
            "lie_dim": split.lie_part.dim(),
            "nilpotent_dim": split.nilpotent_part.dim(),
        },
        "maximal_ideal_dim": data.maximal_ideal.dim(),
        "decomposition": decomposition,
        "validation": validation,
    });
    write_output(
        output,
        &serde_json::to_string_pretty(&result).expect("results always serialize"),
    );
    if validation.passed() {
        EXIT_PASS
    } else {
        EXIT_CHECK_FAILED
    }
}

fn cmd_analyze(file: &str) -> i32 {
    let parsed = parse_algebra_arg(file);
    let g = parsed.algebra();
    let derived = g.derived_subalgebra();
    let center = g.center();
    let nilpotency = verify::nilpotency_index(g.twist());
    let result = json!({
        "dim": g.dim(),
        "is_lie": verify::check_classical_jacobi(g).passed,
        "derived_dim": derived.dim(),
        "is_perfect": derived.is_full(),
        "center_dim": center.dim(),
        "has_trivial_center": center.is_zero(),
        "centroid_dim": structure::centroid_space(g).dim(),
        "twist_rank": g.twist().rank(),
        "twist_kernel_dim": g.dim() - g.twist().rank(),
        "twist_nilpotent": nilpotency.is_some(),
        "nilpotency_index": nilpotency,
    });
    emit(&serde_json::to_string_pretty(&result).expect("results always serialize"));
    EXIT_PASS
}

/// Parses one `i,j,k=p/q` seed with 1-based indices.
fn parse_mu_seed(text: &str) -> Result<(usize, usize, usize, Scalar), String> {
    let (indices, value) = text
        .split_once('=')
        .ok_or_else(|| format!("expected i,j,k=p/q, got {text:?}"))?;
    let parts: Vec<&str> = indices.split(',').collect();
    if parts.len() != 3 {
        return Err(format!("expected three comma-separated indices in {text:?}"));
    }
    let mut idx = [0usize; 3];
    for (slot, part) in idx.iter_mut().zip(&parts) {
        let n: usize = part
            .trim()
            .parse()
            .map_err(|_| format!("bad index {part:?} in {text:?}"))?;
        if n == 0 {
            return Err(format!("indices are 1-based, got 0 in {text:?}"));
        }
        *slot = n - 1;
    }
    let scalar = parse_scalar(value.trim()).map_err(|e| format!("bad value in {text:?}: {e}"))?;
    Ok((idx[0], idx[1], idx[2], scalar))
}

fn cmd_example(name: &str, mu: &[String]) -> i32 {
    let rank = match name {
        "sl2" => 2,
        "sl3" => 3,
        other => fail(
            EXIT_PARSE_ERROR,
            json!({
                "error": "unknown_example",
                "message": format!("unknown example {other:?}; expected sl2 or sl3"),
            }),
        ),
    };
    let mut seeds = Vec::new();
    for text in mu {
        match parse_mu_seed(text) {
            Ok(seed) => seeds.push(seed),
            Err(message) => fail(
                EXIT_PARSE_ERROR,
                json!({ "error": "bad_mu_seed", "message": message }),
            ),
        }
    }
    let algebra = match catalog::coadjoint_extension(rank, &seeds) {
        Ok(algebra) => algebra,
        Err(e) => fail(
            EXIT_PARSE_ERROR,
            json!({ "error": "bad_mu_seed", "message": e.to_string() }),
        ),
    };
    emit(&io::serialize_algebra(&algebra));
    EXIT_PASS
}

fn cmd_roundtrip(file: &str) -> i32 {
    let parsed = parse_algebra_arg(file);
    let q = require_metric(&parsed);
    let data = match structure::decompose(q) {
        Ok(data) => data,
        Err(e) => fail(EXIT_REJECTED, structure_error(&e)),
    };
    let check = match structure::reassemble(&data, q) {
        Ok(check) => check,
        Err(e) => fail(EXIT_REJECTED, structure_error(&e)),
    };
    if check.passed {
        emit(
            &json!({
                "roundtrip": "exact match",
                "s_dim": data.s_dim(),
                "h_dim": data.h_dim(),
            })
            .to_string(),
        );
        EXIT_PASS
    } else {
        fail(
            EXIT_CHECK_FAILED,
            json!({ "error": "roundtrip_mismatch", "witness": check.witness }),
        );
    }
}
