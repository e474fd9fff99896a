//! Command-line front end.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use thiserror::Error;

use crate::engine::{
    crosscheck, extremal_label, f_polynomial, f_table, path_computation, test_words, EngineError, FRequest, Method,
};
use crate::network::{build_network, enumerate_families, export_dot, families_json, Variant};
use crate::weyl::{CoxeterWord, Family, LieType};

/// Exit status for an invalid configuration.
pub const EXIT_CONFIG: i32 = 2;
/// Exit status when a check fails.
pub const EXIT_CHECK: i32 = 1;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("check failed: {0}")]
    Check(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => EXIT_CONFIG,
            CliError::Check(_) | CliError::Io(_) => EXIT_CHECK,
        }
    }
}

impl From<EngineError> for CliError {
    fn from(e: EngineError) -> Self {
        match e {
            EngineError::Disagreement { .. } | EngineError::InvalidResult { .. } | EngineError::Network(_) => {
                CliError::Check(e.to_string())
            }
            other => CliError::Config(other.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "fpoly",
    version,
    about = "F-polynomials of classical cluster algebras from chip networks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// One F-polynomial F_{c^m omega_k}.
    Compute {
        #[command(flatten)]
        seed: SeedArgs,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, value_enum, default_value_t = MethodArg::Paths)]
        method: MethodArg,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Every (k, m) with 0 <= m <= h(k;c).
    Table {
        #[command(flatten)]
        seed: SeedArgs,
        #[arg(long, value_enum, default_value_t = MethodArg::Paths)]
        method: MethodArg,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Compare path sums with representation minors; exit 1 on any failure.
    /// Without --coxeter, runs the built-in word test set.
    Crosscheck {
        #[arg(long = "type", value_parser = parse_family)]
        family: Family,
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        coxeter: Option<String>,
    },
    /// Write the network as a Graphviz DOT digraph.
    ExportDot {
        #[command(flatten)]
        seed: SeedArgs,
        /// Use the spin network (type B only).
        #[arg(long)]
        spin: bool,
        /// Highlight a family of the label c^m omega_k (needs --m).
        #[arg(long, requires = "m")]
        k: Option<usize>,
        #[arg(long, requires = "k")]
        m: Option<usize>,
        /// Index of the highlighted family in enumeration order.
        #[arg(long = "family", default_value_t = 0)]
        family_index: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Dump the path families of c^m omega_k as JSON.
    Families {
        #[command(flatten)]
        seed: SeedArgs,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: usize,
    },
}

#[derive(Debug, Args)]
pub struct SeedArgs {
    #[arg(long = "type", value_parser = parse_family)]
    pub family: Family,
    #[arg(long)]
    pub rank: usize,
    /// Comma list, e.g. 1,3,2
    #[arg(long)]
    pub coxeter: String,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum MethodArg {
    Paths,
    Rep,
    Both,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Paths => Method::Paths,
            MethodArg::Rep => Method::Rep,
            MethodArg::Both => Method::Both,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse::<Family>().map_err(|e| e.to_string())
}

fn config<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Config(e.to_string())
}

fn lie_type(family: Family, rank: usize) -> Result<LieType, CliError> {
    LieType::new(family, rank).map_err(config)
}

fn coxeter(ty: LieType, s: &str) -> Result<CoxeterWord, CliError> {
    let w: CoxeterWord = s.parse().map_err(config)?;
    CoxeterWord::for_type(ty, w.entries().to_vec()).map_err(config)
}

fn seed(args: &SeedArgs) -> Result<(LieType, CoxeterWord), CliError> {
    let ty = lie_type(args.family, args.rank)?;
    let c = coxeter(ty, &args.coxeter)?;
    Ok((ty, c))
}

/// Executes one command, writing its output to `out`.
pub fn run(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Compute {
            seed: s,
            k,
            m,
            method,
            format,
        } => {
            let (ty, c) = seed(&s)?;
            let r = f_polynomial(&FRequest {
                ty,
                c,
                k,
                m,
                method: method.into(),
            })?;
            match format {
                Format::Text => writeln!(out, "{}", r.polynomial)?,
                Format::Json => writeln!(out, "{}", r.polynomial.to_json())?,
            }
        }
        Command::Table {
            seed: s,
            method,
            format,
        } => {
            let (ty, c) = seed(&s)?;
            let table = f_table(ty, &c, method.into())?;
            match format {
                Format::Text => {
                    for ((k, m), r) in &table {
                        writeln!(out, "k={} m={} h={} label={}: {}", k, m, r.h, r.label, r.polynomial)?;
                    }
                }
                Format::Json => {
                    let rows: Vec<_> = table
                        .values()
                        .map(|r| {
                            json!({
                                "k": r.k,
                                "m": r.m,
                                "h": r.h,
                                "label": r.label.letters().iter().map(|x| x.0).collect::<Vec<_>>(),
                                "polynomial": r.polynomial,
                            })
                        })
                        .collect();
                    writeln!(out, "{}", serde_json::Value::Array(rows))?;
                }
            }
        }
        Command::Crosscheck {
            family,
            rank,
            coxeter: word,
        } => {
            let ty = lie_type(family, rank)?;
            let words = match word {
                Some(w) => vec![coxeter(ty, &w)?],
                None => test_words(rank),
            };
            let mut failures = Vec::new();
            for c in &words {
                let report = crosscheck(ty, c);
                writeln!(out, "{}", report)?;
                if !report.passed() {
                    failures.push(report.summary());
                }
            }
            if !failures.is_empty() {
                return Err(CliError::Check(failures.join("; ")));
            }
        }
        Command::ExportDot {
            seed: s,
            spin,
            k,
            m,
            family_index,
            output,
        } => {
            let (ty, c) = seed(&s)?;
            let variant = match (ty.family(), spin) {
                (Family::B, true) => Variant::BSpin,
                (_, true) => return Err(CliError::Config("--spin applies to type B only".into())),
                (f, false) => Variant::vector(f),
            };
            let net = build_network(variant, ty.rank(), &c).map_err(config)?;
            let highlight = match (k, m) {
                (Some(k), Some(m)) => {
                    let (label, _) = extremal_label(ty, &c, k, m)?;
                    let comp = path_computation(ty, &c, &label)?;
                    if comp.network.scheme().variant() != variant {
                        return Err(CliError::Config(format!(
                            "label {} lives on the {:?} network",
                            label,
                            comp.network.scheme().variant()
                        )));
                    }
                    let fam = comp.families.get(family_index).cloned().ok_or_else(|| {
                        CliError::Config(format!(
                            "family {} out of range ({} families)",
                            family_index,
                            comp.families.len()
                        ))
                    })?;
                    Some(fam)
                }
                _ => None,
            };
            let dot = export_dot(&net, highlight.as_ref());
            match output {
                Some(path) => std::fs::write(path, dot)?,
                None => out.write_all(dot.as_bytes())?,
            }
        }
        Command::Families { seed: s, k, m } => {
            let (ty, c) = seed(&s)?;
            let (label, _) = extremal_label(ty, &c, k, m)?;
            let comp = path_computation(ty, &c, &label)?;
            let fams = enumerate_families(&comp.network, &label, comp.bundled).map_err(config)?;
            writeln!(out, "{}", families_json(&label, &fams))?;
        }
    }
    Ok(())
}

/// Caps the global thread pool from `FPOLY_THREADS` when set.
pub fn init_threads() {
    if let Some(n) = std::env::var("FPOLY_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
    {
        if n > 0 {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
}
