//! Command-line front end.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::classify::{enumerate, ClassificationQuery, ClassifyError, DEFAULT_RESOURCE_CAP};
use crate::invariants::{delta_bound, CoxCandidate, InvariantReport};
use crate::ring::{describe, RingDoc};
use crate::tables::{compare, parse_csv, render_csv, render_json, render_markdown, ReferenceTable};
use crate::tdiv::{parse_fan, solve_discrepancies};

/// Exit status of a run.
pub mod exit {
    pub const OK: i32 = 0;
    pub const MISMATCH: i32 = 1;
    pub const INVALID_INPUT: i32 = 2;
    pub const RESOURCE_CAP: i32 = 3;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Markdown,
    Csv,
    Json,
}

#[derive(Clone, Debug, Parser)]
#[command(
    name = "trinomial-fano",
    version,
    about = "Fano varieties with a torus action of complexity one and class group Z"
)]
pub struct CommandConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Output format; markdown on a terminal, csv otherwise.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write to this file instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Debug, Subcommand)]
pub enum Command {
    /// Classify Fano varieties of given dimension and Picard index.
    Classify(ClassifyArgs),
    /// Re-run a reference classification and compare with the shipped table.
    Verify(VerifyArgs),
    /// Invariants of a single ring given in a TOML or JSON file.
    Invariants {
        #[arg(long)]
        ring: PathBuf,
    },
    /// Discrepancies of a refined polyhedral divisor given in a fan file.
    Discrepancy {
        #[arg(long)]
        fan: PathBuf,
    },
    /// Upper bound on the number of deformation types.
    Bound {
        #[arg(long)]
        dim: u64,
        #[arg(long = "picard-index")]
        picard_index: u64,
    },
}

#[derive(Clone, Debug, Args)]
pub struct ClassifyArgs {
    #[arg(long)]
    pub dim: usize,
    /// A single index `N` or an inclusive range `A..B`.
    #[arg(long = "picard-index", value_parser = parse_index_range)]
    pub picard_index: IndexRange,
    #[arg(long)]
    pub include_toric: bool,
    #[arg(long, env = "TRINOMIAL_FANO_RESOURCE_CAP", default_value_t = DEFAULT_RESOURCE_CAP)]
    pub resource_cap: u64,
    /// Run the search on one thread.
    #[arg(long)]
    pub serial: bool,
}

#[derive(Clone, Debug, Args)]
pub struct VerifyArgs {
    /// Table id; all tables when omitted.
    #[arg(long)]
    pub table: Option<String>,
    /// Compare this CSV file instead of re-running the classification.
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long, env = "TRINOMIAL_FANO_RESOURCE_CAP", default_value_t = DEFAULT_RESOURCE_CAP)]
    pub resource_cap: u64,
}

/// Inclusive range of Picard indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IndexRange {
    pub first: u64,
    pub last: u64,
}

pub fn parse_index_range(s: &str) -> Result<IndexRange, String> {
    let num = |t: &str| t.trim().parse::<u64>().map_err(|e| format!("{t:?}: {e}"));
    let (first, last) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.trim_start_matches('='))?),
        None => {
            let n = num(s)?;
            (n, n)
        }
    };
    if first == 0 || first > last {
        return Err(format!("{s:?} is not a nonempty range of positive indices"));
    }
    Ok(IndexRange { first, last })
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Classify(ClassifyError::ResourceCapExceeded { .. }) => exit::RESOURCE_CAP,
            _ => exit::INVALID_INPUT,
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn read_ring(path: &Path) -> Result<CoxCandidate, CliError> {
    let text = read(path)?;
    let bad = |e: String| CliError::Input(format!("{}: {e}", path.display()));
    let doc: RingDoc = match path.extension().and_then(|e| e.to_str()) {
        Some("json") => serde_json::from_str(&text).map_err(|e| bad(e.to_string()))?,
        _ => toml::from_str(&text).map_err(|e| bad(e.to_string()))?,
    };
    CoxCandidate::from_doc(&doc).map_err(|e| bad(e.to_string()))
}

/// Runs one command, writing results to `out` (or the output file) and
/// diagnostics to `err`. Returns the exit status.
pub fn run(config: &CommandConfig, is_terminal: bool, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let format = config
        .format
        .unwrap_or(if is_terminal { Format::Markdown } else { Format::Csv });
    let mut text = String::new();
    let code = match execute(&config.command, format, &mut text, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return e.code();
        }
    };
    let written = match &config.output {
        Some(path) => std::fs::write(path, &text),
        None => out.write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        let _ = writeln!(err, "error: cannot write output: {e}");
        return exit::INVALID_INPUT;
    }
    code
}

/// Parses `args` and runs. Help and version requests exit with 0.
pub fn run_args<I, T>(args: I, is_terminal: bool, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match CommandConfig::try_parse_from(args) {
        Ok(config) => run(&config, is_terminal, out, err),
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            if e.use_stderr() {
                exit::INVALID_INPUT
            } else {
                exit::OK
            }
        }
    }
}

fn execute(cmd: &Command, format: Format, out: &mut String, err: &mut dyn Write) -> Result<i32, CliError> {
    match cmd {
        Command::Classify(args) => {
            let mut query = ClassificationQuery::new(args.dim, args.picard_index.first..=args.picard_index.last);
            query.include_toric = args.include_toric;
            query.resource_cap = args.resource_cap;
            query.parallel = !args.serial;
            query.validate().map_err(|e| CliError::Input(e.to_string()))?;
            let records = enumerate(&query)?;
            out.push_str(&match format {
                Format::Markdown => render_markdown(&records),
                Format::Csv => render_csv(&records),
                Format::Json => render_json(&records) + "\n",
            });
            if records.iter().any(|r| r.candidate.triple.r() >= 3) {
                writeln!(err, "note: families with r >= 3 are listed once per discrete datum")?;
            }
            Ok(exit::OK)
        }
        Command::Verify(args) => {
            let tables: Vec<ReferenceTable> = match &args.table {
                Some(id) => vec![ReferenceTable::from_id(id).ok_or_else(|| {
                    let ids: Vec<&str> = ReferenceTable::ALL.iter().map(|t| t.id()).collect();
                    CliError::Input(format!("unknown table {id:?}; known: {}", ids.join(", ")))
                })?],
                None => ReferenceTable::ALL.to_vec(),
            };
            let mut reports = Vec::new();
            for table in tables {
                let report = match &args.input {
                    Some(path) => {
                        let records =
                            parse_csv(&read(path)?).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
                        let records: Vec<_> = records
                            .into_iter()
                            .map(|mut r| {
                                r.candidate = crate::classify::canonicalize(&r.candidate);
                                r
                            })
                            .collect();
                        compare(table, &records)
                    }
                    None => {
                        let mut query = table.query();
                        query.resource_cap = args.resource_cap;
                        compare(table, &enumerate(&query)?)
                    }
                };
                reports.push(report);
            }
            match format {
                Format::Json => {
                    out.push_str(&serde_json::to_string_pretty(&reports).expect("serializable"));
                    out.push('\n');
                }
                _ => {
                    for r in &reports {
                        let _ = writeln!(out, "{}", r.summary());
                        for k in &r.missing {
                            let _ = writeln!(out, "  missing {k}");
                        }
                        for k in &r.extra {
                            let _ = writeln!(out, "  extra {k}");
                        }
                        for k in &r.mismatched {
                            let _ = writeln!(out, "  mismatched {k}");
                        }
                    }
                }
            }
            Ok(if reports.iter().all(|r| r.passed()) {
                exit::OK
            } else {
                exit::MISMATCH
            })
        }
        Command::Invariants { ring } => {
            let c = read_ring(ring)?;
            let report = InvariantReport::compute(&c).map_err(|e| CliError::Input(e.to_string()))?;
            match format {
                Format::Json => {
                    out.push_str(&serde_json::to_string_pretty(&report).expect("serializable"));
                    out.push('\n');
                }
                Format::Csv => {
                    let _ = writeln!(out, "gamma,mu,minus_k,minus_k_power_d,fano,locally_factorial");
                    let _ = writeln!(
                        out,
                        "{},{},{},{},{},{}",
                        report.gamma,
                        report.mu,
                        report.minus_k,
                        report.minus_k_power_d,
                        report.fano,
                        report.locally_factorial
                    );
                }
                Format::Markdown => {
                    out.push_str(&describe(&c.triple));
                    let _ = writeln!(out, "weights = {:?}, u = {:?}", c.weights, c.free_weights);
                    let _ = writeln!(out, "| gamma | mu | -K | (-K)^d | Fano | locally factorial |");
                    let _ = writeln!(out, "|---|---|---|---|---|---|");
                    let _ = writeln!(
                        out,
                        "| {} | {} | {} | {} | {} | {} |",
                        report.gamma,
                        report.mu,
                        report.minus_k,
                        report.minus_k_power_d,
                        report.fano,
                        report.locally_factorial
                    );
                }
            }
            Ok(exit::OK)
        }
        Command::Discrepancy { fan } => {
            let data = parse_fan(&read(fan)?).map_err(|e| CliError::Input(format!("{}: {e}", fan.display())))?;
            let report = solve_discrepancies(&data).map_err(|e| CliError::Input(e.to_string()))?;
            match format {
                Format::Json => {
                    out.push_str(&report.to_json());
                    out.push('\n');
                }
                Format::Csv => {
                    let _ = writeln!(out, "divisor,discrepancy");
                    for (d, v) in &report.discrepancies {
                        let _ = writeln!(out, "{d},{v}");
                    }
                }
                Format::Markdown => {
                    let u: Vec<String> = report.u.iter().map(ToString::to_string).collect();
                    let alpha: Vec<String> = report.alpha.iter().map(|(y, a)| format!("{y}: {a}")).collect();
                    let _ = writeln!(out, "u = ({}), alpha = {{{}}}", u.join(","), alpha.join(", "));
                    let _ = writeln!(out, "| divisor | discrepancy |");
                    let _ = writeln!(out, "|---|---|");
                    for (d, v) in &report.discrepancies {
                        let _ = writeln!(out, "| {d} | {v} |");
                    }
                    let class = serde_json::to_value(report.classification).expect("serializable");
                    let _ = writeln!(out, "classification: {}", class.as_str().unwrap_or_default());
                }
            }
            Ok(exit::OK)
        }
        Command::Bound { dim, picard_index } => {
            if *dim == 0 || *picard_index == 0 {
                return Err(CliError::Input("dimension and Picard index must be positive".into()));
            }
            let _ = writeln!(out, "{}", delta_bound(*dim, *picard_index));
            Ok(exit::OK)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_ranges() {
        assert_eq!(parse_index_range("3"), Ok(IndexRange { first: 3, last: 3 }));
        assert_eq!(parse_index_range("1..6"), Ok(IndexRange { first: 1, last: 6 }));
        assert_eq!(parse_index_range("1..=6"), Ok(IndexRange { first: 1, last: 6 }));
        assert!(parse_index_range("0").is_err());
        assert!(parse_index_range("5..2").is_err());
    }

    #[test]
    fn bound_command() {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run_args(
            ["trinomial-fano", "bound", "--dim", "2", "--picard-index", "1"],
            false,
            &mut out,
            &mut err,
        );
        assert_eq!(code, exit::OK);
        assert_eq!(String::from_utf8(out).unwrap(), "2985984\n");
    }

    #[test]
    fn bad_flags_are_invalid_input() {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        assert_eq!(
            run_args(["trinomial-fano", "classify"], false, &mut out, &mut err),
            exit::INVALID_INPUT
        );
    }
}
