//! `pa` — build, verify, export and inspect the simple
//! permutoassociahedra `PA_{n,c}` and their summands.
//!
//! Exit codes: 0 when every requested check passes, 1 when a verification
//! or equivalence check fails, 2 on malformed input.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};

use pa_core::construct::{assemble_pa, f_beta_and_m, n_beta, nestohedron_of_beta};
use pa_core::json;
use pa_core::rat::{format_rat, parse_rat, Rat};
use pa_core::verify::verify_minkowski_realisation_with_deadline;

#[derive(Parser)]
#[command(name = "pa", about = "exact permutoassociahedron toolkit", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BuildFormat {
    Json,
    Off,
    Ineq,
}

#[derive(Subcommand)]
enum Command {
    /// Build PA_{n,c} as a Minkowski sum and write it out.
    Build {
        #[arg(long)]
        n: usize,
        /// Exact rational truncation depth in (0, 1], e.g. "1" or "1/2".
        #[arg(long, default_value = "1")]
        c: String,
        #[arg(long, value_enum, default_value = "json")]
        format: BuildFormat,
        /// Output file (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the assembly log (truncation steps) to a file.
        #[arg(long)]
        log: Option<PathBuf>,
    },
    /// Build and verify the full certificate; prints a JSON report.
    Verify {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "1")]
        c: String,
        /// Check normal equivalence against the half-space reference model.
        #[arg(long)]
        against_reference: bool,
        /// Allow n = 4, where the reference comparison is gated behind
        /// PA_TIME_BUDGET_SECS.
        #[arg(long)]
        partial: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the nestohedron of a label chain plus its functional data.
    Nestohedron {
        #[arg(long)]
        n: usize,
        /// Chain as JSON, outermost block first, e.g. "[[1,2,4],[1,2],[1]]".
        #[arg(long)]
        beta: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the face counts of a polytope file.
    Fvector { file: PathBuf },
    /// Convert a polytope file to another format.
    Export {
        file: PathBuf,
        #[arg(long, value_enum)]
        format: BuildFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exit 0 iff the two polytope files are normally equivalent.
    CheckEquiv { file_a: PathBuf, file_b: PathBuf },
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn parse_c(c: &str) -> anyhow::Result<Rat> {
    let c = parse_rat(c).map_err(|e| anyhow!("{e}"))?;
    if c <= pa_core::rat::rat_int(0) || c > pa_core::rat::rat_int(1) {
        return Err(anyhow!("c must lie in (0, 1], got {}", format_rat(&c)));
    }
    Ok(c)
}

fn time_budget_deadline() -> Option<Instant> {
    std::env::var("PA_TIME_BUDGET_SECS")
        .ok()
        .and_then(|s| s.parse::<u64>().ok())
        .map(|secs| Instant::now() + Duration::from_secs(secs))
}

fn write_out(out: Option<&PathBuf>, content: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => fs::write(path, content)
            .with_context(|| format!("writing {}", path.display()))?,
        None => print!("{content}"),
    }
    Ok(())
}

fn run() -> anyhow::Result<ExitCode> {
    let cli = Cli::parse();
    match cli.command {
        Command::Build {
            n,
            c,
            format,
            out,
            log,
        } => {
            if n < 2 {
                return Err(anyhow!("n must be at least 2"));
            }
            if format == BuildFormat::Off && n != 3 {
                return Err(anyhow!("OFF export is only defined for n = 3"));
            }
            let c = parse_c(&c)?;
            if n >= 4 {
                eprintln!("note: the n = {n} assembly is exact but slow");
            }
            let (pa, steps) = assemble_pa(n, &c, log.is_some())?;
            let content = match format {
                BuildFormat::Json => json::polytope_to_json(&pa.poly)?,
                BuildFormat::Off => json::off_export(&pa.poly)?,
                BuildFormat::Ineq => json::ineq_export(pa.poly.equalities(), pa.poly.facets()),
            };
            write_out(out.as_ref(), &content)?;
            if let Some(path) = log {
                fs::write(&path, json::assembly_log_to_json(&steps)?)
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            n,
            c,
            against_reference,
            partial,
            out,
        } => {
            let c = parse_c(&c)?;
            if !(2..=3).contains(&n) && !(n == 4 && partial) {
                return Err(anyhow!(
                    "n must be 2 or 3 (or 4 with --partial), got {n}"
                ));
            }
            let deadline = if n >= 4 { time_budget_deadline() } else { None };
            let report = verify_minkowski_realisation_with_deadline(n, &c, deadline)?;
            if against_reference {
                let has_reference = report
                    .checks
                    .iter()
                    .any(|chk| chk.name == "reference_equivalence"
                        && chk.status != pa_core::verify::CheckStatus::Skipped);
                if !has_reference {
                    eprintln!(
                        "warning: reference comparison skipped (set PA_TIME_BUDGET_SECS to enable at n = 4)"
                    );
                }
            }
            let rendered = json::report_to_json(&report);
            write_out(out.as_ref(), &format!("{rendered}\n"))?;
            Ok(if report.pass() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Nestohedron { n, beta, out } => {
            let beta = json::beta_from_json(&beta, n)?;
            if beta.is_singleton() {
                return Err(anyhow!("the chain must have at least two blocks"));
            }
            let nest = nestohedron_of_beta(&beta, n)?;
            let (m, face) = f_beta_and_m(&beta, n)?;
            let summand = n_beta(&beta, n)?;
            let rendered = serde_json::to_string_pretty(&serde_json::json!({
                "beta": beta.to_lists(),
                "nestohedron": serde_json::from_str::<serde_json::Value>(
                    &json::polytope_to_json(&nest)?)?,
                "m_beta": format_rat(&m),
                "f_beta_vertices": face
                    .iter()
                    .map(|v| v.iter().map(format_rat).collect::<Vec<_>>())
                    .collect::<Vec<_>>(),
                "n_beta": serde_json::from_str::<serde_json::Value>(
                    &json::polytope_to_json(&summand)?)?,
            }))?;
            write_out(out.as_ref(), &format!("{rendered}\n"))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Fvector { file } => {
            let text = fs::read_to_string(&file)
                .with_context(|| format!("reading {}", file.display()))?;
            let poly = json::polytope_from_json(&text)?;
            let f = poly.f_vector();
            println!("dim: {}", poly.dim());
            println!("f-vector: {:?}", f.0);
            Ok(ExitCode::SUCCESS)
        }
        Command::Export { file, format, out } => {
            let text = fs::read_to_string(&file)
                .with_context(|| format!("reading {}", file.display()))?;
            let poly = json::polytope_from_json(&text)?;
            let content = match format {
                BuildFormat::Json => json::polytope_to_json(&poly)?,
                BuildFormat::Off => json::off_export(&poly)?,
                BuildFormat::Ineq => json::ineq_export(poly.equalities(), poly.facets()),
            };
            write_out(out.as_ref(), &content)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::CheckEquiv { file_a, file_b } => {
            let a = json::polytope_from_json(
                &fs::read_to_string(&file_a)
                    .with_context(|| format!("reading {}", file_a.display()))?,
            )?;
            let b = json::polytope_from_json(
                &fs::read_to_string(&file_b)
                    .with_context(|| format!("reading {}", file_b.display()))?,
            )?;
            if a.normally_equivalent(&b)? {
                println!("normally equivalent");
                Ok(ExitCode::SUCCESS)
            } else {
                println!("not normally equivalent");
                Ok(ExitCode::from(1))
            }
        }
    }
}
