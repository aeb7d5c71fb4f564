use std::path::PathBuf;

use clap::{Parser, Subcommand};

use blocklab::analyze::{analyze, entry_seed, is_prime};
use blocklab::corpus::{default_corpus, load_group_file, run_corpus};
use blocklab::junit::junit_xml;
use blocklab::report::{report_to_json, AnalysisReport, EntryStatus, VerdictStatus};
use blocklab_core::{named, Error, FiniteGroup};

/// Exit codes: 0 all assertions pass, 1 at least one assertion falsified,
/// 2 configuration or input error, 3 internal invariant violation.
const EXIT_OK: i32 = 0;
const EXIT_FALSIFIED: i32 = 1;
const EXIT_CONFIG: i32 = 2;
const EXIT_INTERNAL: i32 = 3;

#[derive(Parser)]
#[command(
    name = "blocklab",
    version,
    about = "Block decomposition workbench for modular group algebras"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Analyze one group at one prime and emit a JSON report.
    Analyze {
        /// Name of a built-in group (e.g. s4, a5, q8, d12, c7, sl23, f21).
        #[arg(long)]
        named: Option<String>,
        /// Path to a JSON group file {"name", "degree", "generators"}
        /// with 0-based permutation images.
        #[arg(long)]
        file: Option<PathBuf>,
        /// The characteristic to analyze at.
        #[arg(long)]
        prime: u32,
        /// Global seed; the working seed is derived from it and the
        /// group name, matching what a corpus run would use.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run every corpus entry and verify every named assertion.
    Verify {
        /// Corpus to run (only "default" exists).
        #[arg(long, default_value = "default")]
        corpus: String,
        /// Worker threads (default: all cores).
        #[arg(long)]
        jobs: Option<usize>,
        /// Global seed for the run.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also write a JUnit XML summary here.
        #[arg(long)]
        junit: Option<PathBuf>,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Inspect the built-in corpus.
    Corpus {
        #[command(subcommand)]
        action: CorpusCmd,
    },
}

#[derive(Subcommand)]
enum CorpusCmd {
    /// Print the default corpus entries, one "name prime" per line.
    List,
}

fn main() {
    std::process::exit(run());
}

/// Best-effort stdout write: a downstream consumer closing the pipe early
/// (e.g. `blocklab corpus list | head`) must not turn into a panic.
fn emit(text: &str) {
    use std::io::Write;
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn run() -> i32 {
    match Cli::parse().cmd {
        Cmd::Analyze { named, file, prime, seed, out } => cmd_analyze(named, file, prime, seed, out),
        Cmd::Verify { corpus, jobs, seed, junit, out } => cmd_verify(corpus, jobs, seed, junit, out),
        Cmd::Corpus { action: CorpusCmd::List } => cmd_corpus_list(),
    }
}

fn cmd_analyze(
    name: Option<String>,
    file: Option<PathBuf>,
    prime: u32,
    seed: u64,
    out: Option<PathBuf>,
) -> i32 {
    let group: FiniteGroup = match (name, file) {
        (Some(n), None) => match named::by_name(&n) {
            Ok(g) => g,
            Err(e) => {
                eprintln!("error: {e}");
                return EXIT_CONFIG;
            }
        },
        (None, Some(p)) => match load_group_file(&p) {
            Ok(g) => g,
            Err(e) => {
                eprintln!("error: {e}");
                return EXIT_CONFIG;
            }
        },
        _ => {
            eprintln!("error: exactly one of --named or --file is required");
            return EXIT_CONFIG;
        }
    };
    if !is_prime(prime) {
        eprintln!("error: {prime} is not a prime");
        return EXIT_CONFIG;
    }
    let working_seed = entry_seed(seed, group.name(), prime);
    let report = match analyze(&group, prime, working_seed) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code_for(&e);
        }
    };
    describe_report(&report);
    if let Some(path) = out {
        if let Err(e) = std::fs::write(&path, report_to_json(&report)) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return EXIT_CONFIG;
        }
    } else {
        emit(&report_to_json(&report));
    }
    if report.all_verdicts_pass() {
        EXIT_OK
    } else {
        EXIT_FALSIFIED
    }
}

fn describe_report(r: &AnalysisReport) {
    let simples: usize = r.blocks.iter().map(|b| b.simple_count).sum();
    eprintln!(
        "{} (order {}) mod {} over GF({}): {} block(s), {} simple module(s)",
        r.group.name,
        r.group.order,
        r.prime,
        r.field.q,
        r.blocks.len(),
        simples
    );
    for v in &r.verdicts {
        let tag = match v.status {
            VerdictStatus::Pass => "pass",
            VerdictStatus::Fail => "FAIL",
            VerdictStatus::NotApplicable => "n/a ",
        };
        eprintln!("  {tag} {} (checked {})", v.name, v.checked);
        if v.status == VerdictStatus::Fail {
            eprintln!("       {}", v.detail);
        }
    }
}

fn cmd_verify(
    corpus: String,
    jobs: Option<usize>,
    seed: u64,
    junit: Option<PathBuf>,
    out: Option<PathBuf>,
) -> i32 {
    if corpus != "default" {
        eprintln!("error: unknown corpus '{corpus}' (only \"default\" exists)");
        return EXIT_CONFIG;
    }
    let entries = default_corpus();
    let report = match run_corpus(&entries, seed, jobs) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_CONFIG;
        }
    };
    for entry in &report.entries {
        let tag = match entry.status {
            EntryStatus::Pass => "pass ",
            EntryStatus::Fail => "FAIL ",
            EntryStatus::Error => "ERROR",
        };
        eprintln!("{tag} {} p={}", entry.name, entry.prime);
        if let Some(err) = &entry.error {
            eprintln!("      {err}");
        }
        if let Some(analysis) = &entry.report {
            for v in analysis.verdicts.iter().filter(|v| v.status == VerdictStatus::Fail) {
                eprintln!("      FAIL {}: {}", v.name, v.detail);
            }
        }
    }
    eprintln!(
        "{} entries: {} passed, {} failed, {} errored",
        report.summary.entries, report.summary.passed, report.summary.failed, report.summary.errored
    );
    if let Some(path) = &junit {
        if let Err(e) = std::fs::write(path, junit_xml(&report)) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return EXIT_CONFIG;
        }
    }
    let json = report.to_json();
    if let Some(path) = &out {
        if let Err(e) = std::fs::write(path, json) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return EXIT_CONFIG;
        }
    } else {
        emit(&json);
    }
    if report.summary.errored > 0 {
        EXIT_INTERNAL
    } else if report.summary.failed > 0 {
        EXIT_FALSIFIED
    } else {
        EXIT_OK
    }
}

fn cmd_corpus_list() -> i32 {
    let mut text = String::new();
    for e in default_corpus() {
        text.push_str(&format!("{} {}\n", e.name, e.prime));
    }
    emit(&text);
    EXIT_OK
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::NonBijectiveGenerator { .. }
        | Error::BadGeneratorLength { .. }
        | Error::OrderCapExceeded { .. }
        | Error::SubgroupCapExceeded { .. }
        | Error::NotPrime(_)
        | Error::UnknownGroupName(_)
        | Error::BadExtensionDegree { .. } => EXIT_CONFIG,
        _ => EXIT_INTERNAL,
    }
}
