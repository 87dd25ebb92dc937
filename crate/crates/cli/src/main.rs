//! `stabctx`: verification runs, certificate emission, equivalence
//! queries, and figure-geometry export for the single-qubit stabilizer
//! subtheory engine.
//!
//! Exit codes are uniform across commands: 0 means verified/true, 1 means
//! a check failed or the answer is false, 2 means a usage or I/O error.

mod geometry;

use std::env;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use stabctx_core::algebra::Rational;
use stabctx_core::nogo::{
    all_cell_relabelings, clifford_cell_relabelings, relabel_search_with, theorem1_certificate,
    theorem2_certificate, Certificate,
};
use stabctx_core::ontology::{
    extremal_triples, predict, predict_with_faulty_hadamard, twirl_triples, verify_with_model,
    Triple,
};
use stabctx_core::operational::{
    channel_equivalent, effect_equivalent, make_t1, make_t2, prep_equivalent, BlochState, Channel,
    Effect,
};

const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser)]
#[command(name = "stabctx", version, about = "Exact verification engine for the single-qubit stabilizer subtheory")]
struct Cli {
    /// Output format for reports.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,

    /// Write output to this path instead of stdout. Relative paths are
    /// resolved against STABCTX_OUT_DIR when that variable is set.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Print progress notes to stderr.
    #[arg(long, global = true)]
    verbose: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Check the 8-state model against the Born rule on the full extremal
    /// grid plus the two equivalent mixtures.
    VerifyBorn {
        /// Self-test: corrupt the model by reading the Hadamard as the
        /// identity, and confirm the checker reports mismatches.
        #[arg(long)]
        inject_fault: bool,
    },
    /// Emit the no-go certificate for theorem 1 or 2.
    Replay {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=2))]
        theorem: u8,
    },
    /// Decide operational equivalence of two serialized procedures.
    Equiv {
        kind: EquivKind,
        a: PathBuf,
        b: PathBuf,
    },
    /// Export the ontic cube, parity tetrahedra, octahedron, and the two
    /// coarse-map arrow sets as plot-ready JSON.
    ExportCube,
    /// Search cell relabelings for an escape from the contradiction.
    RelabelSearch {
        /// Search only the 24 relabelings induced by the Clifford group.
        #[arg(long)]
        cliffords_only: bool,
        /// Cap the number of relabelings tried (must be at least 1).
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        limit: Option<u64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum EquivKind {
    Prep,
    Channel,
    Effect,
}

#[derive(Serialize)]
struct Versioned<T: Serialize> {
    #[serde(rename = "toolVersion")]
    tool_version: &'static str,
    #[serde(flatten)]
    body: T,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    match &cli.command {
        Command::VerifyBorn { inject_fault } => cmd_verify_born(&cli, *inject_fault),
        Command::Replay { theorem } => cmd_replay(&cli, *theorem),
        Command::Equiv { kind, a, b } => cmd_equiv(*kind, a, b),
        Command::ExportCube => cmd_export_cube(&cli),
        Command::RelabelSearch {
            cliffords_only,
            limit,
        } => cmd_relabel_search(&cli, *cliffords_only, limit.map(|n| n as usize)),
    }
}

fn cmd_verify_born(cli: &Cli, inject_fault: bool) -> Result<u8> {
    let mut triples = extremal_triples();
    triples.extend(twirl_triples());
    let model = |p: &BlochState, t: &Channel, e: &Effect| -> Rational {
        if inject_fault {
            predict_with_faulty_hadamard(p, t, e)
        } else {
            predict(p, t, e).expect("grid effects lie in the Pauli-generated set")
        }
    };
    let report = verify_with_model(&triples, model);
    if cli.verbose {
        eprintln!(
            "checked {} triples, {} mismatches",
            report.checked,
            report.mismatches.len()
        );
    }
    let verified = report.mismatches.is_empty();
    let content = match cli.format {
        OutputFormat::Json => to_json(&Versioned {
            tool_version: TOOL_VERSION,
            body: report,
        })?,
        OutputFormat::Csv => born_csv(&triples, model),
    };
    emit(&cli.out, &content)?;
    Ok(if verified { 0 } else { 1 })
}

fn born_csv(triples: &[Triple], model: impl Fn(&BlochState, &Channel, &Effect) -> Rational) -> String {
    let mut out = String::from("prep,channel,effect,model,quantum,matches\n");
    for triple in triples {
        let predicted = model(&triple.prep, &triple.channel, &triple.effect);
        let quantum = stabctx_core::operational::born_probability(
            &triple.prep,
            &triple.channel,
            &triple.effect,
        );
        let row = [
            triple.prep.to_string(),
            triple.channel.to_string(),
            triple.effect.to_string(),
            predicted.to_string(),
            quantum.to_string(),
            (predicted == quantum).to_string(),
        ];
        out.push_str(&row.map(|field| csv_field(&field)).join(","));
        out.push('\n');
    }
    out
}

fn cmd_replay(cli: &Cli, theorem: u8) -> Result<u8> {
    if cli.format == OutputFormat::Csv {
        bail!("certificates are emitted as JSON only");
    }
    let built = match theorem {
        1 => theorem1_certificate(),
        2 => theorem2_certificate(),
        _ => unreachable!("clap enforces the 1..=2 range"),
    };
    let certificate: Certificate = match built {
        Ok(certificate) => certificate,
        Err(falsification) => {
            eprintln!("replay failed: {falsification}");
            return Ok(1);
        }
    };
    emit(&cli.out, &to_json(&certificate)?)?;
    if cli.verbose {
        eprintln!("theorem {theorem}: {}", certificate.conclusion);
    }
    Ok(if certificate.recheck().is_ok() { 0 } else { 1 })
}

fn cmd_equiv(kind: EquivKind, a: &PathBuf, b: &PathBuf) -> Result<u8> {
    let read = |path: &PathBuf| -> Result<String> {
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
    };
    let raw_a = read(a)?;
    let raw_b = read(b)?;
    let parse_context = |path: &PathBuf| format!("cannot parse {}", path.display());
    let equivalent = match kind {
        EquivKind::Prep => {
            let pa: BlochState = serde_json::from_str(&raw_a).with_context(|| parse_context(a))?;
            let pb: BlochState = serde_json::from_str(&raw_b).with_context(|| parse_context(b))?;
            prep_equivalent(&pa, &pb)
        }
        EquivKind::Channel => {
            let ta: Channel = serde_json::from_str(&raw_a).with_context(|| parse_context(a))?;
            let tb: Channel = serde_json::from_str(&raw_b).with_context(|| parse_context(b))?;
            channel_equivalent(&ta, &tb)
        }
        EquivKind::Effect => {
            let ea: Effect = serde_json::from_str(&raw_a).with_context(|| parse_context(a))?;
            let eb: Effect = serde_json::from_str(&raw_b).with_context(|| parse_context(b))?;
            effect_equivalent(&ea, &eb)
        }
    };
    println!("{equivalent}");
    Ok(if equivalent { 0 } else { 1 })
}

fn cmd_export_cube(cli: &Cli) -> Result<u8> {
    if cli.format == OutputFormat::Csv {
        bail!("cube geometry is emitted as JSON only");
    }
    emit(&cli.out, &to_json(&geometry::cube_geometry())?)?;
    Ok(0)
}

fn cmd_relabel_search(cli: &Cli, cliffords_only: bool, limit: Option<usize>) -> Result<u8> {
    let mut relabelings = if cliffords_only {
        clifford_cell_relabelings()
    } else {
        all_cell_relabelings()
    };
    if let Some(n) = limit {
        relabelings.truncate(n);
    }
    if cli.verbose {
        eprintln!("searching {} relabelings", relabelings.len());
    }
    let report = relabel_search_with(&make_t1(), &make_t2(), &relabelings);
    let content = match cli.format {
        OutputFormat::Json => to_json(&Versioned {
            tool_version: TOOL_VERSION,
            body: report,
        })?,
        OutputFormat::Csv => format!("candidates,escapes\n{},{}\n", report.candidates, report.escapes),
    };
    emit(&cli.out, &content)?;
    Ok(if report.escapes == 0 { 0 } else { 1 })
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut json = serde_json::to_string_pretty(value)?;
    json.push('\n');
    Ok(json)
}

fn csv_field(field: &str) -> String {
    format!("\"{}\"", field.replace('"', "\"\""))
}

/// Resolves the output target: absolute paths pass through, relative paths
/// are rebased onto STABCTX_OUT_DIR when set, and no path means stdout.
fn resolve_out(out: &Option<PathBuf>) -> Option<PathBuf> {
    let path = out.as_ref()?;
    if path.is_absolute() {
        return Some(path.clone());
    }
    match env::var_os("STABCTX_OUT_DIR") {
        Some(dir) => Some(PathBuf::from(dir).join(path)),
        None => Some(path.clone()),
    }
}

fn emit(out: &Option<PathBuf>, content: &str) -> Result<()> {
    match resolve_out(out) {
        Some(path) => {
            if let Some(parent) = path.parent() {
                if !parent.as_os_str().is_empty() {
                    fs::create_dir_all(parent)
                        .with_context(|| format!("cannot create {}", parent.display()))?;
                }
            }
            fs::write(&path, content).with_context(|| format!("cannot write {}", path.display()))
        }
        None => io::stdout()
            .write_all(content.as_bytes())
            .context("cannot write to stdout"),
    }
}
