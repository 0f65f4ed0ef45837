//! `fibrato` command-line driver.

mod report;
mod search;

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde_json::json;

use fibrato::bounds::table;
use fibrato::constructions::Family;
use fibrato::datum::{invariants_with, validate, GenusGDatum};
use fibrato::fibration::{audit, AuditRecord};
use fibrato::germs::{classify, even_resolve_with, parse_germ, ResolveOptions, DEFAULT_MAX_DEPTH};
use fibrato::hurwitz::{solve_source_genus, BranchDatum};

use report::Output;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(
    name = "fibrato",
    version,
    about = "Exact invariants of fibred surfaces from genus-g data"
)]
struct Cli {
    /// Machine-readable JSON on standard output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a record of invariants against every applicable inequality.
    Audit {
        /// JSON record, or `-` for standard input.
        record: PathBuf,
    },
    /// Run the even resolution of a germ.
    Resolve {
        germ: String,
        /// List every infinitely near point.
        #[arg(long)]
        trace: bool,
    },
    /// Build one of the known families and compute its invariants.
    Example {
        family: String,
        #[arg(long)]
        genus: u32,
        /// Print the datum as JSON instead of the invariants.
        #[arg(long)]
        emit_json: bool,
    },
    /// Print the summary tables.
    Tables {
        #[arg(default_value = "all")]
        which: String,
        #[arg(long, value_enum, default_value_t = Format::Md)]
        format: Format,
    },
    /// Check a Hurwitz branch datum.
    Hurwitz { datum: PathBuf },
    /// Validate a genus-g datum, compute its invariants and check semi-stability.
    Datum { datum: PathBuf },
    /// Experimental grid search over binomial germs; reports, never claims.
    Search {
        #[arg(long)]
        genus: u32,
        #[arg(long)]
        max_n: u32,
        /// `a=LO..HI,b=LO..HI` for germs `y^a - z^b`.
        #[arg(long)]
        germ_grid: String,
        #[arg(long, default_value_t = 1)]
        base_genus: u32,
        /// Number of critical fibers, including the singular one.
        #[arg(long, default_value_t = 4)]
        fibers: u32,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Md,
    Csv,
}

/// Outcome of a command that ran to completion.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Status {
    Success,
    Failed,
}

impl Status {
    fn from_ok(ok: bool) -> Self {
        if ok {
            Status::Success
        } else {
            Status::Failed
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = Output::new(cli.json);
    match run(&cli, &mut out) {
        Ok(status) => {
            out.finish();
            match status {
                Status::Success => ExitCode::SUCCESS,
                Status::Failed => ExitCode::from(1),
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn resolve_options() -> Result<ResolveOptions> {
    let max_depth = match std::env::var("FIBRATO_MAX_DEPTH") {
        Ok(v) => v
            .trim()
            .parse()
            .with_context(|| format!("FIBRATO_MAX_DEPTH={v:?} is not a non-negative integer"))?,
        Err(_) => DEFAULT_MAX_DEPTH,
    };
    Ok(ResolveOptions {
        max_depth,
        ..ResolveOptions::default()
    })
}

fn read_input(path: &PathBuf) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .context("reading standard input")?;
        Ok(text)
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn parse_json<T: DeserializeOwned>(path: &PathBuf, what: &str) -> Result<T> {
    let text = read_input(path)?;
    let value: serde_json::Value = serde_json::from_str(&text)
        .with_context(|| format!("{} is not valid JSON", path.display()))?;
    if let Some(v) = value.get("schema_version") {
        if v.as_u64() != Some(u64::from(SCHEMA_VERSION)) {
            bail!("unsupported schema_version {v} (expected {SCHEMA_VERSION})");
        }
    }
    serde_json::from_str(&text)
        .with_context(|| format!("{} does not match the {what} schema", path.display()))
}

fn run(cli: &Cli, out: &mut Output) -> Result<Status> {
    match &cli.command {
        Command::Audit { record } => {
            let record: AuditRecord = parse_json(record, "audit record")?;
            let report = record.audit();
            out.audit(&report);
            Ok(Status::from_ok(report.passed()))
        }
        Command::Resolve { germ, trace } => {
            let g = parse_germ(germ).map_err(|e| anyhow!("cannot parse germ {germ:?}: {e}"))?;
            let t = even_resolve_with(&g, &resolve_options()?)?;
            let label = classify(&g).ok();
            out.resolution(&g, &t, label, *trace);
            Ok(Status::Success)
        }
        Command::Example {
            family,
            genus,
            emit_json,
        } => {
            let family: Family = family.parse()?;
            let c = family.build(*genus)?;
            if *emit_json {
                let mut value = serde_json::to_value(&c.datum)?;
                value["schema_version"] = json!(SCHEMA_VERSION);
                println!("{}", serde_json::to_string_pretty(&value)?);
                return Ok(Status::Success);
            }
            let r = invariants_with(&c.datum, &resolve_options()?)?;
            let matches = r.invariants.chi == c.expected.chi
                && r.speed.as_ref() == Some(&c.expected.speed)
                && c.expected
                    .omega_sq
                    .as_ref()
                    .is_none_or(|w| *w == r.invariants.omega_sq)
                && c.expected
                    .slope
                    .as_ref()
                    .is_none_or(|l| Some(l) == r.slope.as_ref());
            let audited = audit(&r.invariants, None, &[]);
            out.example(&c, &r, matches, &audited);
            Ok(Status::from_ok(
                matches && r.semistable.passed() && audited.passed(),
            ))
        }
        Command::Tables { which, format } => {
            let numbers: Vec<u8> = match which.as_str() {
                "all" => vec![1, 2, 3],
                n => vec![n
                    .parse()
                    .ok()
                    .filter(|k| (1..=3).contains(k))
                    .ok_or_else(|| anyhow!("unknown table {n:?}; use 1, 2, 3 or all"))?],
            };
            let tables: Vec<_> = numbers.into_iter().filter_map(table).collect();
            out.tables(&tables, matches!(format, Format::Csv));
            Ok(Status::Success)
        }
        Command::Hurwitz { datum } => {
            let b: BranchDatum = parse_json(datum, "branch datum")?;
            b.validate()?;
            let solved = solve_source_genus(b.g_target, b.d, &b.partitions);
            let with_genus = BranchDatum {
                g_source: b.g_source.or(solved.as_ref().ok().copied()),
                ..b.clone()
            };
            let compatible = with_genus.g_source.is_some() && with_genus.is_compatible()?;
            let realizable = if compatible {
                Some(with_genus.realizability()?)
            } else {
                None
            };
            out.hurwitz(&with_genus, &solved, compatible, realizable);
            Ok(Status::from_ok(compatible))
        }
        Command::Datum { datum } => {
            let d: GenusGDatum = parse_json(datum, "genus-g datum")?;
            let violations = validate(&d);
            if !violations.is_empty() {
                out.violations(&violations);
                return Ok(Status::Failed);
            }
            let r = invariants_with(&d, &resolve_options()?)?;
            let audited = audit(&r.invariants, None, &[]);
            out.datum(&r, &audited);
            Ok(Status::from_ok(r.semistable.passed() && audited.passed()))
        }
        Command::Search {
            genus,
            max_n,
            germ_grid,
            base_genus,
            fibers,
        } => {
            let grid = search::Grid::parse(germ_grid)?;
            let rows = search::run(
                *genus,
                *max_n,
                &grid,
                *base_genus,
                *fibers,
                &resolve_options()?,
            )?;
            out.search(*genus, &rows);
            Ok(Status::Success)
        }
    }
}
