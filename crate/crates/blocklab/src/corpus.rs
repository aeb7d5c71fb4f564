//! The built-in verification corpus and entry execution.

use std::path::Path;

use rayon::prelude::*;
use serde::Deserialize;

use blocklab_core::{named, FiniteGroup};

use crate::analyze::{analyze, entry_seed};
use crate::report::{EntryReport, EntryStatus, VerifyReport};

#[derive(Clone, Copy, Debug)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub prime: u32,
}

/// The default corpus: every built-in group at every prime dividing its
/// order, plus two degenerate entries (the trivial group, and s3 at a
/// prime not dividing its order) that keep the edge cases exercised.
/// Sorted by (name, prime) so report order is stable.
pub fn default_corpus() -> Vec<CorpusEntry> {
    let specs: &[(&str, &[u32])] = &[
        ("trivial", &[2]),
        ("c2", &[2]),
        ("c6", &[2, 3]),
        ("s3", &[2, 3, 5]),
        ("d8", &[2]),
        ("q8", &[2]),
        ("a4", &[2, 3]),
        ("s4", &[2, 3]),
        ("sl23", &[2, 3]),
        ("f21", &[3, 7]),
        ("a5", &[2, 3, 5]),
        ("s5", &[2, 3, 5]),
    ];
    let mut entries: Vec<CorpusEntry> = specs
        .iter()
        .flat_map(|&(name, primes)| primes.iter().map(move |&prime| CorpusEntry { name, prime }))
        .collect();
    entries.sort_by(|a, b| (a.name, a.prime).cmp(&(b.name, b.prime)));
    entries
}

/// JSON description of a permutation group: `degree` points acted on,
/// `generators` as 0-based image lists.
#[derive(Deserialize)]
pub struct GroupFile {
    pub name: String,
    pub degree: usize,
    pub generators: Vec<Vec<usize>>,
}

/// Load a group from a JSON file; all failure modes here are configuration
/// errors, reported as strings for the CLI to surface with exit code 2.
pub fn load_group_file(path: &Path) -> Result<FiniteGroup, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let gf: GroupFile =
        serde_json::from_str(&text).map_err(|e| format!("cannot parse {}: {e}", path.display()))?;
    let mut g = FiniteGroup::from_generators(gf.degree, &gf.generators)
        .map_err(|e| format!("bad group in {}: {e}", path.display()))?;
    g.set_name(&gf.name);
    Ok(g)
}

/// Run one corpus entry with its derived seed and fold the outcome into an
/// `EntryReport`; computation errors become entry-level errors rather than
/// aborting the whole corpus. The seed derives from the canonical group
/// name, so `analyze` on the same group reproduces the same report.
pub fn run_entry(name: &str, prime: u32, global_seed: u64) -> EntryReport {
    let result = named::by_name(name).and_then(|g| {
        let seed = entry_seed(global_seed, g.name(), prime);
        analyze(&g, prime, seed)
    });
    match result {
        Ok(report) => {
            let status = if report.all_verdicts_pass() {
                EntryStatus::Pass
            } else {
                EntryStatus::Fail
            };
            EntryReport {
                name: name.to_string(),
                prime,
                status,
                error: None,
                report: Some(report),
            }
        }
        Err(e) => EntryReport {
            name: name.to_string(),
            prime,
            status: EntryStatus::Error,
            error: Some(e.to_string()),
            report: None,
        },
    }
}

/// Run a corpus on a dedicated thread pool. `jobs` of `None` or `Some(0)`
/// uses the rayon default. Entry order in the output matches input order
/// regardless of scheduling.
pub fn run_corpus(
    entries: &[CorpusEntry],
    global_seed: u64,
    jobs: Option<usize>,
) -> Result<VerifyReport, String> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .map_err(|e| format!("cannot build thread pool: {e}"))?;
    let reports: Vec<EntryReport> = pool.install(|| {
        entries
            .par_iter()
            .map(|e| run_entry(e.name, e.prime, global_seed))
            .collect()
    });
    Ok(VerifyReport::new("default", global_seed, reports))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_has_23_sorted_entries() {
        let entries = default_corpus();
        assert_eq!(entries.len(), 23);
        let mut sorted = entries.iter().map(|e| (e.name, e.prime)).collect::<Vec<_>>();
        sorted.sort();
        assert_eq!(sorted, entries.iter().map(|e| (e.name, e.prime)).collect::<Vec<_>>());
        assert!(entries.iter().any(|e| e.name == "s3" && e.prime == 5));
        assert!(entries.iter().any(|e| e.name == "trivial" && e.prime == 2));
    }

    #[test]
    fn entry_errors_are_contained() {
        let r = run_entry("no-such-group", 2, 0);
        assert_eq!(r.status, EntryStatus::Error);
        assert!(r.error.is_some());
        assert!(r.report.is_none());
    }

    #[test]
    fn group_file_roundtrip() {
        let dir = std::env::temp_dir().join(format!("blocklab-test-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("s3.json");
        std::fs::write(
            &path,
            r#"{"name": "my-s3", "degree": 3, "generators": [[1, 0, 2], [1, 2, 0]]}"#,
        )
        .unwrap();
        let g = load_group_file(&path).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(g.name(), "my-s3");
        std::fs::remove_dir_all(&dir).ok();
    }

    #[test]
    fn bad_group_file_is_a_string_error() {
        let dir = std::env::temp_dir().join(format!("blocklab-test-bad-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("bad.json");
        std::fs::write(&path, r#"{"name": "x", "degree": 2, "generators": [[0, 0]]}"#).unwrap();
        assert!(load_group_file(&path).is_err());
        assert!(load_group_file(&dir.join("missing.json")).is_err());
        std::fs::remove_dir_all(&dir).ok();
    }
}
