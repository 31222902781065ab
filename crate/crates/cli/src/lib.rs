//! `multinv` command line.
//!
//! Exit codes: 0 on success (including a decomposition check that reports a
//! failure witness), 2 for unreadable, malformed or invalid input, 3 when
//! group closure exceeds `--cap`, 4 when an internal consistency check fails.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use multinv::catalog::{self, BUILTIN_PREFIX};
use multinv::format::parse_group_file;
use multinv::group::{GLattice, DEFAULT_CAP};
use multinv::isotropy::witness_report;
use multinv::obstruction::{check_necessary_conditions, copies_verdict, ObstructionReport, Verdict};
use multinv::orbit::{self, DecompositionCertificate, Preset};
use multinv::{Error, SCHEMA_VERSION};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CAP: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "multinv", version, about = "Cohen-Macaulay obstructions for multiplicative invariants")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Largest group order to enumerate before giving up.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    cap: usize,

    /// Accepted for scripting; every output is already deterministic.
    #[arg(long, global = true)]
    seed_free: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the necessary conditions for one lattice.
    Analyze {
        /// Group file path or `builtin:<name>`.
        target: String,
    },
    /// Analyze every `*.json` file of a directory, in filename order.
    Batch { dir: PathBuf },
    /// Analyze the direct sum of `r` copies of a lattice.
    Copies {
        target: String,
        #[arg(long)]
        r: usize,
    },
    /// Orbit-sum computations in the group algebra.
    Orbit {
        #[command(subcommand)]
        command: OrbitCommand,
    },
    /// List isotropy classes with witness vectors.
    Witness { target: String },
    /// List the builtin catalog.
    Builtins,
}

#[derive(Subcommand, Debug)]
enum OrbitCommand {
    /// Verify a free decomposition of an invariant ring in a bounded window.
    ///
    /// Presets: diag_sl, diag_sl_without_eta, laurent_trivial, alt. For `alt`
    /// the bound is the largest polynomial degree checked.
    Verify {
        preset: String,
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        bound: i64,
    },
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::CapExceeded { .. } => EXIT_CAP,
        Error::TheoremViolation(_) => EXIT_INTERNAL,
        _ => EXIT_INPUT,
    }
}

fn load(target: &str) -> Result<GLattice, (i32, String)> {
    if target.starts_with(BUILTIN_PREFIX) {
        return catalog::builtin(target).map_err(|e| (exit_code(&e), e.to_string()));
    }
    let bytes = std::fs::read(target).map_err(|e| (EXIT_INPUT, format!("cannot read {target}: {e}")))?;
    parse_group_file(&bytes).map_err(|e| (exit_code(&e), format!("{target}: {e}")))
}

/// A value, or an exit code with its message.
type Outcome<T> = Result<T, (i32, String)>;

fn lift<T>(r: multinv::Result<T>) -> Outcome<T> {
    r.map_err(|e| (exit_code(&e), e.to_string()))
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn report_output(report: &ObstructionReport, format: Format) -> String {
    match format {
        Format::Json => pretty(&serde_json::to_value(report).expect("reports serialize")),
        Format::Text => report.to_text(),
    }
}

/// Runs the command line `args` (program name first), writing reports to
/// `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_INPUT
                }
            };
        }
    };
    match execute(&cli) {
        Ok((text, code)) => {
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err((code, message)) => {
            let _ = writeln!(err, "error: {message}");
            code
        }
    }
}

fn execute(cli: &Cli) -> Result<(String, i32), (i32, String)> {
    let format = cli.format;
    let cap = cli.cap;
    match &cli.command {
        Command::Analyze { target } => {
            let lattice = load(target)?;
            let report = lift(check_necessary_conditions(&lattice, cap))?;
            Ok((report_output(&report, format), EXIT_OK))
        }
        Command::Copies { target, r } => {
            let lattice = load(target)?;
            let report = lift(copies_verdict(&lattice, *r, cap))?;
            Ok((report_output(&report, format), EXIT_OK))
        }
        Command::Witness { target } => {
            let lattice = load(target)?;
            let report = lift(witness_report(&lattice, cap))?;
            let text = match format {
                Format::Json => pretty(&serde_json::to_value(&report).expect("reports serialize")),
                Format::Text => report.to_text(),
            };
            Ok((text, EXIT_OK))
        }
        Command::Batch { dir } => batch(dir, format, cap),
        Command::Orbit {
            command: OrbitCommand::Verify { preset, rank, bound },
        } => orbit_verify(preset, *rank, *bound, format),
        Command::Builtins => {
            let entries: Vec<(String, usize)> = catalog::CATALOG
                .iter()
                .map(|n| (n.to_string(), catalog::expected_order(n).unwrap_or(0)))
                .collect();
            let text = match format {
                Format::Json => pretty(&json!({
                    "schema_version": SCHEMA_VERSION,
                    "builtins": entries.iter().map(|(n, o)| json!({"name": n, "order": o})).collect::<Vec<_>>(),
                })),
                Format::Text => entries
                    .iter()
                    .map(|(n, o)| format!("{BUILTIN_PREFIX}{n} (order {o})\n"))
                    .collect(),
            };
            Ok((text, EXIT_OK))
        }
    }
}

fn batch(dir: &Path, format: Format, cap: usize) -> Result<(String, i32), (i32, String)> {
    let entries = std::fs::read_dir(dir)
        .map_err(|e| (EXIT_INPUT, format!("cannot read directory {}: {e}", dir.display())))?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();

    let results: Vec<(String, Outcome<ObstructionReport>)> = files
        .iter()
        .map(|p| {
            let name = p.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
            let result = load(&p.to_string_lossy())
                .and_then(|l| lift(check_necessary_conditions(&l, cap)));
            (name, result)
        })
        .collect();

    let count = |v: Verdict| {
        results
            .iter()
            .filter(|(_, r)| matches!(r, Ok(rep) if rep.verdict == v))
            .count()
    };
    let (obstructed, inconclusive, trivially_cm) = (
        count(Verdict::Obstructed),
        count(Verdict::Inconclusive),
        count(Verdict::TriviallyCM),
    );
    let errors = results.iter().filter(|(_, r)| r.is_err()).count();
    let code = results
        .iter()
        .find_map(|(_, r)| r.as_ref().err().map(|(c, _)| *c))
        .unwrap_or(EXIT_OK);

    let text = match format {
        Format::Json => {
            let reports: Vec<Value> = results
                .iter()
                .map(|(name, r)| match r {
                    Ok(rep) => json!({"file": name, "report": rep}),
                    Err((c, m)) => json!({"file": name, "error": {"exit_code": c, "message": m}}),
                })
                .collect();
            pretty(&json!({
                "schema_version": SCHEMA_VERSION,
                "reports": reports,
                "summary": {
                    "obstructed": obstructed,
                    "inconclusive": inconclusive,
                    "trivially_cm": trivially_cm,
                    "errors": errors,
                },
            }))
        }
        Format::Text => {
            let mut s = String::new();
            for (name, r) in &results {
                s.push_str(&format!("== {name} ==\n"));
                match r {
                    Ok(rep) => s.push_str(&rep.to_text()),
                    Err((_, m)) => s.push_str(&format!("error: {m}\n")),
                }
            }
            s.push_str(&format!(
                "summary: obstructed {obstructed}, inconclusive {inconclusive}, trivially-cm {trivially_cm}, errors {errors}\n"
            ));
            s
        }
    };
    Ok((text, code))
}

fn certificate_text(cert: &DecompositionCertificate) -> String {
    let mut s = format!(
        "window bound: {}\ninterior bound: {}\norbit sums in window: {}\nproducts: {}\ntargets verified: {}\n",
        cert.bound,
        cert.interior_bound,
        cert.window_size,
        cert.products.len(),
        cert.targets.len()
    );
    for t in &cert.targets {
        let terms: Vec<String> = t
            .terms
            .iter()
            .map(|(i, c)| {
                let p = &cert.products[*i];
                let a: Vec<String> = p.exponents.iter().map(ToString::to_string).collect();
                format!("{c}*a^({})*f{}", a.join(","), p.module_generator)
            })
            .collect();
        let rep: Vec<String> = t.representative.iter().map(ToString::to_string).collect();
        s.push_str(&format!("  sigma({}) = {}\n", rep.join(","), terms.join(" + ")));
    }
    s
}

fn orbit_verify(preset: &str, rank: usize, bound: i64, format: Format) -> Result<(String, i32), (i32, String)> {
    let header = json!({"schema_version": SCHEMA_VERSION, "preset": preset, "rank": rank, "bound": bound});
    if preset == "alt" {
        let degree = usize::try_from(bound).map_err(|_| (EXIT_INPUT, "bound must be non-negative".to_string()))?;
        let rows = lift(orbit::alternating_polynomial_sector(rank, degree))?;
        let pass = rows.iter().all(|r| r.basis);
        let text = match format {
            Format::Json => {
                let mut v = header;
                v["status"] = json!(if pass { "pass" } else { "fail" });
                v["sector"] = json!("polynomial");
                v["degrees"] = serde_json::to_value(&rows).expect("rows serialize");
                pretty(&v)
            }
            Format::Text => {
                let mut s = format!(
                    "preset: alt (rank {rank}, polynomial sector, degrees 0..={degree})\nstatus: {}\n",
                    if pass { "pass" } else { "fail" }
                );
                s.push_str("note: inverting s_n shifts supports and adds no further check\n");
                for r in &rows {
                    s.push_str(&format!(
                        "  degree {}: products {}, span rank {}, invariant rank {}, basis {}\n",
                        r.degree,
                        r.products,
                        r.span_rank,
                        r.invariant_rank,
                        if r.basis { "yes" } else { "no" }
                    ));
                }
                s
            }
        };
        return Ok((text, EXIT_OK));
    }

    let p = Preset::parse(preset).ok_or_else(|| {
        (
            EXIT_INPUT,
            format!("unknown preset `{preset}` (expected diag_sl, diag_sl_without_eta, laurent_trivial or alt)"),
        )
    })?;
    let text = match orbit::verify_preset(p, rank, bound) {
        Ok(cert) => match format {
            Format::Json => {
                let mut v = header;
                v["status"] = json!("pass");
                v["certificate"] = serde_json::to_value(&cert).expect("certificates serialize");
                pretty(&v)
            }
            Format::Text => format!(
                "preset: {preset} (rank {rank})\nstatus: pass\n{}",
                certificate_text(&cert)
            ),
        },
        Err(Error::DecompositionFails(failure)) => match format {
            Format::Json => {
                let mut v = header;
                v["status"] = json!("fail");
                v["witness"] = serde_json::to_value(&*failure).expect("failures serialize");
                pretty(&v)
            }
            Format::Text => format!("preset: {preset} (rank {rank})\nstatus: fail\nwitness: {failure}\n"),
        },
        Err(e) => return Err((exit_code(&e), e.to_string())),
    };
    Ok((text, EXIT_OK))
}
