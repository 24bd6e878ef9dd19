//! The `verify` command: argument parsing, running the engines, writing the
//! report, and choosing the exit code.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::arith::primes_between;
use crate::outcome::{sort_outcomes, CheckOutcome};
use crate::report::{write_records, Format, ReportRecord};
use crate::suite::{all_check_ids, congruence_registry, identity_registry, run_identities, CongruenceSpec, Engine, IdentitySpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Identities,
    Congruences,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Parser, Debug)]
#[command(name = "supercong", version, about = "Verify binomial-sum identities and supercongruences exactly")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the selected checks and write one record per instance.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Which family of checks to run.
    #[arg(long, value_enum, default_value_t = Mode::All)]
    mode: Mode,
    /// Inclusive prime range for congruences, as LO..HI.
    #[arg(long, default_value = "5..199", value_parser = parse_range)]
    primes: (u64, u64),
    /// Bound N for identity domains.
    #[arg(long = "max-n", default_value_t = 60)]
    max_n: u64,
    /// Comma-separated check ids, or `all`.
    #[arg(long, default_value = "all")]
    checks: String,
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    jobs: u64,
}

fn parse_range(s: &str) -> Result<(u64, u64), String> {
    let (lo, hi) = s
        .split_once("..")
        .ok_or_else(|| format!("expected LO..HI, got `{s}`"))?;
    let lo = lo.trim().parse::<u64>().map_err(|e| format!("bad lower bound: {e}"))?;
    let hi = hi.trim().parse::<u64>().map_err(|e| format!("bad upper bound: {e}"))?;
    Ok((lo, hi))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckSelection {
    All,
    Ids(Vec<String>),
}

impl CheckSelection {
    fn includes(&self, id: &str) -> bool {
        match self {
            CheckSelection::All => true,
            CheckSelection::Ids(ids) => ids.iter().any(|i| i == id),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub mode: Mode,
    pub min_prime: u64,
    pub max_prime: u64,
    pub max_n: u64,
    pub checks: CheckSelection,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub jobs: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            mode: Mode::All,
            min_prime: 5,
            max_prime: 199,
            max_n: 60,
            checks: CheckSelection::All,
            format: Format::Json,
            out: None,
            jobs: 1,
        }
    }
}

#[derive(Debug)]
pub enum UsageError {
    Clap(clap::Error),
    Invalid(String),
}

impl UsageError {
    /// `--help` and `--version` surface as clap "errors" with exit code 0.
    pub fn exit_code(&self) -> i32 {
        match self {
            UsageError::Clap(e) if !e.use_stderr() => EXIT_OK,
            _ => EXIT_USAGE,
        }
    }

    pub fn print(&self) {
        match self {
            UsageError::Clap(e) => {
                let _ = e.print();
            }
            UsageError::Invalid(msg) => eprintln!("error: {msg}"),
        }
    }
}

pub fn parse_args<I, T>(argv: I) -> Result<RunConfig, UsageError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(UsageError::Clap)?;
    let Command::Verify(args) = cli.command;
    let (min_prime, max_prime) = args.primes;
    if min_prime < 5 {
        return Err(UsageError::Invalid(format!(
            "--primes lower bound must be at least 5, got {min_prime}"
        )));
    }
    if min_prime > max_prime {
        return Err(UsageError::Invalid(format!(
            "--primes range {min_prime}..{max_prime} is empty"
        )));
    }
    let checks = if args.checks.trim() == "all" {
        CheckSelection::All
    } else {
        let known = all_check_ids();
        let mut ids = Vec::new();
        for id in args.checks.split(',').map(str::trim) {
            if !known.iter().any(|k| k == id) {
                return Err(UsageError::Invalid(format!("unknown check id `{id}`")));
            }
            if !ids.iter().any(|i| i == id) {
                ids.push(id.to_string());
            }
        }
        CheckSelection::Ids(ids)
    };
    Ok(RunConfig {
        mode: args.mode,
        min_prime,
        max_prime,
        max_n: args.max_n,
        checks,
        format: match args.format {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        },
        out: args.out,
        jobs: args.jobs as usize,
    })
}

/// The specs a run will evaluate.
pub struct Selection {
    pub identities: Vec<IdentitySpec>,
    pub congruences: Vec<CongruenceSpec>,
}

impl Selection {
    pub fn from_config(config: &RunConfig) -> Self {
        let identities = match config.mode {
            Mode::Congruences => Vec::new(),
            _ => identity_registry()
                .into_iter()
                .filter(|s| config.checks.includes(s.id))
                .collect(),
        };
        let congruences = match config.mode {
            Mode::Identities => Vec::new(),
            _ => congruence_registry()
                .into_iter()
                .filter(|s| config.checks.includes(&s.id))
                .collect(),
        };
        Self {
            identities,
            congruences,
        }
    }
}

/// Runs `selection`, returning sorted outcomes and any warnings.
pub fn collect(config: &RunConfig, selection: &Selection) -> (Vec<CheckOutcome>, Vec<String>) {
    let mut warnings = Vec::new();
    let mut outcomes = run_identities(&selection.identities, config.max_n, config.jobs);
    if !selection.congruences.is_empty() {
        let primes = primes_between(config.min_prime, config.max_prime);
        let admitted = primes
            .iter()
            .any(|&p| selection.congruences.iter().any(|s| s.filter.admits(p)));
        if !admitted {
            warnings.push(format!(
                "no admissible primes in {}..{}; no congruence records written",
                config.min_prime, config.max_prime
            ));
        } else {
            let engine = Engine::new(config.max_prime);
            outcomes.extend(engine.run(&selection.congruences, &primes, config.jobs));
        }
    }
    sort_outcomes(&mut outcomes);
    (outcomes, warnings)
}

/// Runs `selection` and writes the report; returns the process exit code.
pub fn execute_selection(config: &RunConfig, selection: &Selection) -> i32 {
    let (outcomes, warnings) = collect(config, selection);
    for w in &warnings {
        eprintln!("warning: {w}");
    }
    let records: Vec<ReportRecord> = outcomes.iter().map(ReportRecord::from).collect();
    let written = match &config.out {
        Some(path) => File::create(path)
            .map_err(|e| format!("cannot create {}: {e}", path.display()))
            .and_then(|f| {
                write_records(&records, config.format, BufWriter::new(f)).map_err(|e| e.to_string())
            }),
        None => write_records(&records, config.format, io::stdout().lock()).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return EXIT_USAGE;
    }
    let failed = records.iter().filter(|r| !r.pass).count();
    let _ = writeln!(
        io::stderr(),
        "{} records, {} passed, {} failed",
        records.len(),
        records.len() - failed,
        failed
    );
    if failed == 0 {
        EXIT_OK
    } else {
        EXIT_FAILED
    }
}

pub fn execute(config: &RunConfig) -> i32 {
    execute_selection(config, &Selection::from_config(config))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults() {
        let cfg = parse_args(["supercong", "verify"]).unwrap();
        assert_eq!(cfg, RunConfig::default());
    }

    #[test]
    fn check_list_and_range() {
        let cfg = parse_args(["supercong", "verify", "--checks", "den8,den16", "--primes", "5..50"]).unwrap();
        assert_eq!(cfg.checks, CheckSelection::Ids(vec!["den8".into(), "den16".into()]));
        assert_eq!((cfg.min_prime, cfg.max_prime), (5, 50));
        let sel = Selection::from_config(&cfg);
        assert_eq!(sel.congruences.len(), 2);
        assert!(sel.identities.is_empty());
    }

    #[test]
    fn usage_errors() {
        for argv in [
            vec!["supercong", "verify", "--primes", "50..5"],
            vec!["supercong", "verify", "--checks", "nonsense"],
            vec!["supercong", "verify", "--primes", "3..50"],
            vec!["supercong", "verify", "--primes", "5-50"],
            vec!["supercong", "verify", "--jobs", "0"],
            vec!["supercong", "verify", "--format", "xml"],
            vec!["supercong", "verify", "--bogus"],
            vec!["supercong"],
        ] {
            let err = parse_args(argv.clone()).unwrap_err();
            assert_eq!(err.exit_code(), EXIT_USAGE, "{argv:?}");
        }
        assert_eq!(parse_args(["supercong", "--help"]).unwrap_err().exit_code(), EXIT_OK);
    }

    #[test]
    fn empty_prime_range_warns() {
        let cfg = parse_args(["supercong", "verify", "--mode", "congruences", "--primes", "24..28"]).unwrap();
        let (out, warnings) = collect(&cfg, &Selection::from_config(&cfg));
        assert!(out.is_empty());
        assert_eq!(warnings.len(), 1);
    }

    #[test]
    fn mode_filters_families() {
        let cfg = parse_args(["supercong", "verify", "--mode", "identities", "--checks", "id1,rv"]).unwrap();
        let sel = Selection::from_config(&cfg);
        assert_eq!(sel.identities.len(), 1);
        assert!(sel.congruences.is_empty());
    }
}
