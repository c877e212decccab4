//! The `dualpair` command line: instance ingestion, command dispatch and report
//! emission.
//!
//! Exit codes: 0 when every check passes (or is not applicable or skipped),
//! 1 when a theorem check fails, 2 on usage or input errors.

mod commands;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::instance::{InstanceDocument, RingSpec};

pub use commands::{
    alpha_report, analyze_report, check_report, default_rings, ring_table, AlphaReport, AnalyzeReport, InstanceCheckReport,
    Opened, RingRow, RingsReport, SubmoduleRow,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// Pretty-printed JSON with a fixed key order.
    Machine,
    /// A short text summary.
    Human,
}

#[derive(Debug, Parser)]
#[command(name = "dualpair", version, about = "Dual pairings of modules over finite rings")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, global = true, value_enum, default_value = "human")]
    pub format: Format,
    /// Also write report.json and summary.txt into this directory.
    #[arg(long, global = true, value_name = "DIR")]
    pub out: Option<PathBuf>,
    /// Seed for sampled corpora; overrides the instance's config.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Size caps as inline JSON, a JSON file, or `key=value,...`.
    #[arg(long, global = true)]
    pub caps: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closures, perps, density, Hausdorff property and completion of a pairing.
    Analyze {
        #[arg(long)]
        instance: PathBuf,
        /// Pairing name (defaults to `P` or the only pairing).
        #[arg(long)]
        pairing: Option<String>,
    },
    /// Decide the α-condition of a pairing.
    Alpha {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        pairing: Option<String>,
    },
    /// Run a suite, or check an instance against the registry.
    Theorems {
        #[arg(long, conflicts_with = "instance")]
        suite: Option<String>,
        #[arg(long)]
        instance: Option<PathBuf>,
        /// Restrict an instance check to one entry.
        #[arg(long, requires = "instance")]
        theorem: Option<String>,
        /// Comma-separated rings: moduli (`4,6`), `zmodN`, or library names.
        #[arg(long, requires = "suite")]
        rings: Option<String>,
        /// List the registry instead of checking anything.
        #[arg(long, conflicts_with_all = ["suite", "instance"])]
        list: bool,
    },
    /// Search for counterexamples once hypotheses are dropped.
    Mine {
        #[arg(long)]
        theorem: String,
        /// Hypothesis names to drop, comma-separated.
        #[arg(long, value_delimiter = ',', required = true)]
        drop: Vec<String>,
        #[arg(long)]
        rings: Option<String>,
        /// Largest module cardinality searched.
        #[arg(long, default_value_t = 16)]
        max_card: u128,
    },
    /// Predicate table of rings.
    Rings {
        #[arg(long)]
        rings: Option<String>,
    },
}

/// A finished command: both renderings and the exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub machine: String,
    pub human: String,
    pub code: i32,
}

impl Outcome {
    fn new<T: Serialize>(report: &T, human: String, failed: bool) -> Outcome {
        let mut machine = serde_json::to_string_pretty(report).expect("reports serialize");
        machine.push('\n');
        Outcome {
            machine,
            human,
            code: failed as i32,
        }
    }
}

/// Reads and fully validates an instance file. Errors name the file, and
/// syntax errors quote the offending line.
pub fn parse_instance(path: &Path) -> Result<InstanceDocument> {
    let text = fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    let doc = InstanceDocument::from_json(&text).map_err(|e| prefix(path, e))?;
    doc.load().map_err(|e| prefix(path, e))?;
    Ok(doc)
}

fn prefix(path: &Path, e: Error) -> Error {
    match e {
        Error::Input(m) => Error::Input(format!("{}: {m}", path.display())),
        other => Error::Input(format!("{}: {other}", path.display())),
    }
}

/// Parses `--caps`: inline JSON, a path to a JSON file, or `key=value` pairs.
pub fn parse_caps(text: &str) -> Result<Caps> {
    let bad = |e: &dyn std::fmt::Display| Error::Input(format!("--caps: {e}"));
    let t = text.trim();
    if t.starts_with('{') {
        return serde_json::from_str(t).map_err(|e| bad(&e));
    }
    if !t.contains('=') {
        let body = fs::read_to_string(t).map_err(|e| bad(&format!("{t}: {e}")))?;
        return serde_json::from_str(&body).map_err(|e| bad(&format!("{t}: {e}")));
    }
    let mut map = serde_json::Map::new();
    for pair in t.split(',').filter(|p| !p.is_empty()) {
        let (k, v) = pair
            .split_once('=')
            .ok_or_else(|| bad(&format!("expected key=value, got `{pair}`")))?;
        let n: u64 = v
            .trim()
            .parse()
            .map_err(|_| bad(&format!("`{v}` is not a number")))?;
        map.insert(k.trim().to_string(), serde_json::Value::from(n));
    }
    serde_json::from_value(serde_json::Value::Object(map)).map_err(|e| bad(&e))
}

/// Parses `--rings`: `4,6`, `zmod4`, or library ring names.
pub fn parse_rings(text: &str) -> Result<Vec<RingSpec>> {
    let specs: Vec<RingSpec> = text
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            let digits = s.strip_prefix("zmod").unwrap_or(s);
            match digits.parse::<u64>() {
                Ok(n) => RingSpec::Zmod(n),
                Err(_) => RingSpec::Named(s.to_string()),
            }
        })
        .collect();
    if specs.is_empty() {
        return Err(Error::Input("--rings: empty ring list".into()));
    }
    for s in &specs {
        s.build().map_err(|e| Error::Input(format!("--rings: {e}")))?;
    }
    Ok(specs)
}

/// Runs a parsed command line.
pub fn execute(cli: &Cli) -> Result<Outcome> {
    let caps = cli.caps.as_deref().map(parse_caps).transpose()?;
    let ctx = commands::Context { seed: cli.seed, caps };
    match &cli.command {
        Command::Analyze { instance, pairing } => commands::analyze(&ctx, instance, pairing.as_deref()),
        Command::Alpha { instance, pairing } => commands::alpha(&ctx, instance, pairing.as_deref()),
        Command::Theorems {
            suite,
            instance,
            theorem,
            rings,
            list,
        } => {
            if *list {
                return Ok(commands::list());
            }
            match (suite, instance) {
                (Some(s), None) => {
                    let rings = rings.as_deref().map(parse_rings).transpose()?;
                    commands::suite(&ctx, s, rings)
                }
                (None, Some(path)) => commands::check_instance(&ctx, path, theorem.as_deref()),
                _ => Err(Error::Input("theorems needs --suite, --instance or --list".into())),
            }
        }
        Command::Mine {
            theorem,
            drop,
            rings,
            max_card,
        } => {
            let rings = rings.as_deref().map(parse_rings).transpose()?;
            commands::mine(&ctx, theorem, drop, rings, *max_card)
        }
        Command::Rings { rings } => {
            let rings = rings.as_deref().map(parse_rings).transpose()?;
            commands::rings(&ctx, rings)
        }
    }
}

/// Writes `report.json` and `summary.txt` into `dir`, creating it if needed.
pub fn emit_report(outcome: &Outcome, dir: &Path) -> Result<()> {
    let io = |e: std::io::Error| Error::Input(format!("{}: {e}", dir.display()));
    fs::create_dir_all(dir).map_err(io)?;
    fs::write(dir.join("report.json"), &outcome.machine).map_err(io)?;
    fs::write(dir.join("summary.txt"), &outcome.human).map_err(io)?;
    Ok(())
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Internal(_) => 1,
        _ => 2,
    }
}

/// Parses `args`, runs the command and prints its report; returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let outcome = match execute(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code(&e);
        }
    };
    if let Some(dir) = &cli.out {
        if let Err(e) = emit_report(&outcome, dir) {
            eprintln!("error: {e}");
            return 2;
        }
    }
    let text = match cli.format {
        Format::Machine => &outcome.machine,
        Format::Human => &outcome.human,
    };
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(text.as_bytes());
    let _ = stdout.flush();
    outcome.code
}
