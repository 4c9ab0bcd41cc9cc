//! `multider`: reflection multi-arrangements, multi-derivation modules and
//! freeness certificates from the command line.

mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::json;

use multider::derivations::{
    free_basis_search, hilbert_dimension, is_member, parse_der, saito_check, write_der, SaitoFailure, SearchOptions,
    SearchOutcome,
};
use multider::reflgroup::{builtin_group, cache_dir_from_env};
use multider::{Error, MultiArrangement};

use report::{membership_table, plain_table, Outcome, Report};

/// Unknown count above which `free` needs `--allow-long`.
const DEFAULT_UNKNOWN_BUDGET: usize = 10_000;

#[derive(Parser)]
#[command(name = "multider", version, about = "Multi-derivations of reflection arrangements")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the reflection multi-arrangement of a group (G25, G26, G32 or G(r,p,l)).
    Group {
        name: String,
        /// Write the arrangement as a .marr file.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Print the defining polynomial Q(A,ν) and its degree.
    Q {
        arrangement: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Check a candidate basis with Saito's criterion.
    Verify {
        arrangement: PathBuf,
        basis: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Search for a homogeneous basis and certify it.
    Free {
        arrangement: PathBuf,
        /// Highest degree examined (default |ν|).
        #[arg(long)]
        max_degree: Option<u32>,
        /// Lift the limit on the size of the linear systems.
        #[arg(long)]
        allow_long: bool,
        /// Write the basis found as a .der file.
        #[arg(long)]
        emit_basis: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Print dim D(A,ν)_p.
    Hilbert {
        arrangement: PathBuf,
        #[arg(long)]
        degree: u32,
        #[arg(long)]
        json: bool,
    },
}

impl Command {
    fn json(&self) -> bool {
        match self {
            Command::Group { json, .. }
            | Command::Q { json, .. }
            | Command::Verify { json, .. }
            | Command::Free { json, .. }
            | Command::Hilbert { json, .. } => *json,
        }
    }
}

/// A command's report, its human-readable text and exit code.
struct Done {
    report: Report,
    text: String,
    code: u8,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::ResourceLimit(_) | Error::GroupBudget(_) => 3,
        _ => 2,
    }
}

fn read(path: &Path) -> Result<Vec<u8>, Error> {
    fs::read(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn text(bytes: &[u8], path: &Path) -> Result<String, Error> {
    String::from_utf8(bytes.to_vec()).map_err(|_| Error::Parse(format!("{} is not UTF-8", path.display())))
}

fn arrangement(bytes: &[u8], path: &Path) -> Result<MultiArrangement, Error> {
    MultiArrangement::from_marr(&text(bytes, path)?).map_err(|e| match e {
        Error::ParseLine { line, message } => Error::Parse(format!("{}:{line}: {message}", path.display())),
        other => other,
    })
}

fn braces(e: &[u32]) -> String {
    let parts: Vec<String> = e.iter().map(u32::to_string).collect();
    format!("{{{}}}", parts.join(", "))
}

fn cmd_group(argv: Vec<String>, name: &str, out: Option<&Path>) -> Result<Done, Error> {
    let mut report = Report::new(argv, &[name.as_bytes()]);
    let cache = cache_dir_from_env();
    let group = builtin_group(name, Some(&cache))?;
    let arr = group.reflection_arrangement()?;
    if let Some(path) = out {
        fs::write(path, arr.to_marr()).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    }
    let orders = group.reflection_orders();
    let breakdown: Vec<String> = orders.iter().map(|(o, n)| format!("{n} of order {o}")).collect();
    let mut text = format!("|A| = {}, |rho| = {}", arr.order(), arr.total_multiplicity());
    if !breakdown.is_empty() {
        text.push_str(&format!(", reflections: {}", breakdown.join(", ")));
    }
    text.push_str(&format!("\n|W| = {}", group.order()));
    report.hyperplane_table = plain_table(&arr);
    report.detail = Some(json!({
        "group_order": group.order(),
        "hyperplanes": arr.order(),
        "rho": arr.total_multiplicity(),
        "reflection_orders": orders.iter().map(|(o, n)| (o.to_string(), json!(n))).collect::<serde_json::Map<_, _>>(),
        "arrangement_sha256": arr.content_hash(),
    }));
    Ok(Done { report, text, code: 0 })
}

fn cmd_q(argv: Vec<String>, path: &Path) -> Result<Done, Error> {
    let bytes = read(path)?;
    let mut report = Report::new(argv, &[&bytes]);
    let arr = arrangement(&bytes, path)?;
    let q = arr.defining_polynomial();
    let degree = arr.total_multiplicity();
    report.hyperplane_table = plain_table(&arr);
    report.detail = Some(json!({ "polynomial": q.to_string(), "degree": degree }));
    Ok(Done {
        report,
        text: format!("{q}\ndegree {degree}"),
        code: 0,
    })
}

fn cmd_verify(argv: Vec<String>, arr_path: &Path, der_path: &Path) -> Result<Done, Error> {
    let arr_bytes = read(arr_path)?;
    let der_bytes = read(der_path)?;
    let mut report = Report::new(argv, &[&arr_bytes, &der_bytes]);
    let arr = arrangement(&arr_bytes, arr_path)?;
    let (field, nvars, basis) = parse_der(&text(&der_bytes, der_path)?)?;
    if field.conductor() != arr.conductor() {
        return Err(Error::ConductorMismatch(field.conductor(), arr.conductor()));
    }
    if nvars != arr.nvars() {
        return Err(Error::VariableMismatch(nvars, arr.nvars()));
    }
    let memberships = basis.iter().map(|t| is_member(t, &arr)).collect::<Result<Vec<_>, _>>()?;
    report.hyperplane_table = membership_table(&arr, &memberships);
    match saito_check(&basis, &arr) {
        Ok(cert) => {
            let e = cert.exponents();
            let sum: u32 = e.iter().sum();
            report.outcome = Outcome::Certificate;
            report.scalar_c = Some(cert.scalar.to_string());
            report.exponents = Some(e.clone());
            Ok(Done {
                report,
                text: format!(
                    "certified: exponents {}, sum {sum} = |nu|\nscalar c = {}",
                    braces(&e),
                    cert.scalar
                ),
                code: 0,
            })
        }
        Err(SaitoFailure::Invalid(e)) => Err(e),
        Err(failure) => {
            let mut text = format!("not certified: {failure}");
            for row in report.hyperplane_table.iter().filter(|r| !r.ok) {
                text.push_str(&format!(
                    "\n  hyperplane {} ({}) multiplicity {}: achieved {:?}",
                    row.index,
                    row.form,
                    row.multiplicity,
                    row.achieved.as_deref().unwrap_or(&[])
                ));
            }
            report.outcome = Outcome::Failure;
            report.detail = Some(json!({ "reason": failure.to_string() }));
            Ok(Done { report, text, code: 1 })
        }
    }
}

fn cmd_free(
    argv: Vec<String>,
    path: &Path,
    max_degree: Option<u32>,
    allow_long: bool,
    emit: Option<&Path>,
) -> Result<Done, Error> {
    let bytes = read(path)?;
    let mut report = Report::new(argv, &[&bytes]);
    let arr = arrangement(&bytes, path)?;
    report.hyperplane_table = plain_table(&arr);
    let options = SearchOptions {
        max_degree,
        unknown_budget: (!allow_long).then_some(DEFAULT_UNKNOWN_BUDGET),
        ..Default::default()
    };
    let outcome = free_basis_search(&arr, &options)?;
    let generators = match &outcome {
        SearchOutcome::Free(cert) => &cert.basis,
        SearchOutcome::Undetermined { generators, .. } => generators,
    };
    if let Some(out) = emit {
        fs::write(out, write_der(arr.field(), arr.nvars(), generators))
            .map_err(|e| Error::Io(format!("{}: {e}", out.display())))?;
    }
    match outcome {
        SearchOutcome::Free(cert) => {
            let e = cert.exponents();
            let sum: u32 = e.iter().sum();
            report.outcome = Outcome::Certificate;
            report.scalar_c = Some(cert.scalar.to_string());
            report.exponents = Some(e.clone());
            report.detail = Some(json!({ "degrees": cert.degrees }));
            Ok(Done {
                report,
                text: format!("exponents {}, sum {sum} = |nu|\nscalar c = {}", braces(&e), cert.scalar),
                code: 0,
            })
        }
        SearchOutcome::Undetermined {
            generators,
            degree_bound,
        } => {
            report.outcome = Outcome::Undetermined;
            let degrees: Vec<u32> = generators.iter().filter_map(|g| g.pdeg()).collect();
            report.detail = Some(json!({ "degree_bound": degree_bound, "generator_degrees": degrees }));
            Ok(Done {
                report,
                text: format!(
                    "undetermined up to degree {degree_bound} ({} generator(s) of degrees {})",
                    degrees.len(),
                    braces(&degrees)
                ),
                code: 1,
            })
        }
    }
}

fn cmd_hilbert(argv: Vec<String>, path: &Path, degree: u32) -> Result<Done, Error> {
    let bytes = read(path)?;
    let mut report = Report::new(argv, &[&bytes]);
    let arr = arrangement(&bytes, path)?;
    let dim = hilbert_dimension(&arr, degree)?;
    report.hyperplane_table = plain_table(&arr);
    report.detail = Some(json!({ "degree": degree, "dimension": dim }));
    Ok(Done {
        report,
        text: dim.to_string(),
        code: 0,
    })
}

/// Print to stdout; a closed pipe is not an error.
fn emit(s: &str) {
    use std::io::Write;
    let _ = writeln!(std::io::stdout().lock(), "{s}");
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let argv: Vec<String> = std::env::args().collect();
    let cli = Cli::parse();
    let json = cli.command.json();
    let start = Instant::now();
    let result = match &cli.command {
        Command::Group { name, out, .. } => cmd_group(argv.clone(), name, out.as_deref()),
        Command::Q { arrangement, .. } => cmd_q(argv.clone(), arrangement),
        Command::Verify { arrangement, basis, .. } => cmd_verify(argv.clone(), arrangement, basis),
        Command::Free {
            arrangement,
            max_degree,
            allow_long,
            emit_basis,
            ..
        } => cmd_free(argv.clone(), arrangement, *max_degree, *allow_long, emit_basis.as_deref()),
        Command::Hilbert { arrangement, degree, .. } => cmd_hilbert(argv.clone(), arrangement, *degree),
    };
    let elapsed = start.elapsed().as_millis() as u64;
    match result {
        Ok(mut done) => {
            done.report.elapsed_ms = elapsed;
            emit(&if json { done.report.to_json() } else { done.text });
            ExitCode::from(done.code)
        }
        Err(e) => {
            let code = exit_code(&e);
            eprintln!("error: {e}");
            if json {
                let mut report = Report::new(argv, &[]);
                report.outcome = if code == 3 { Outcome::ResourceLimit } else { Outcome::Error };
                report.elapsed_ms = elapsed;
                report.detail = Some(json!({ "error": e.to_string() }));
                emit(&report.to_json());
            }
            ExitCode::from(code)
        }
    }
}
