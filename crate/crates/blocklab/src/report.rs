//! Serializable analysis reports.
//!
//! Every report is emitted through [`serde_json`] with struct field order and
//! `BTreeMap` keys only, so a fixed seed yields byte-identical output across
//! runs and worker counts. The layout is versioned via the `schema` field.

use serde::Serialize;
use std::collections::BTreeMap;

pub const SCHEMA_VERSION: u32 = 1;

/// Full result of analyzing one `(group, prime)` pair.
#[derive(Serialize, Clone, Debug)]
pub struct AnalysisReport {
    pub schema: u32,
    pub group: GroupInfo,
    pub prime: u32,
    pub field: FieldInfo,
    pub seed: u64,
    pub structure: StructureInfo,
    pub class_count: usize,
    pub p_regular_class_count: usize,
    /// Conjugacy classes of p-subgroups, ascending by order; other fields
    /// reference these by position.
    pub subgroup_classes: Vec<SubgroupClassInfo>,
    pub blocks: Vec<BlockReport>,
    pub verdicts: Vec<Verdict>,
}

impl AnalysisReport {
    pub fn all_verdicts_pass(&self) -> bool {
        self.verdicts.iter().all(|v| v.status != VerdictStatus::Fail)
    }
}

#[derive(Serialize, Clone, Debug)]
pub struct GroupInfo {
    pub name: String,
    pub order: usize,
}

#[derive(Serialize, Clone, Debug)]
pub struct FieldInfo {
    pub p: u32,
    pub m: u32,
    pub q: u32,
}

#[derive(Serialize, Clone, Debug)]
pub struct StructureInfo {
    pub is_p_solvable: bool,
    pub is_p_nilpotent: bool,
    pub o_p_order: usize,
    pub o_pprime_order: usize,
    pub sylow_order: usize,
    pub p_regular_exponent: usize,
}

#[derive(Serialize, Clone, Debug)]
pub struct SubgroupClassInfo {
    pub index: usize,
    pub order: usize,
    pub is_abelian: bool,
    pub is_elementary_abelian: bool,
}

#[derive(Serialize, Clone, Debug)]
pub struct BlockReport {
    pub label: usize,
    pub dim: usize,
    pub is_principal: bool,
    /// True when the truncation of the block idempotent to each centralizer
    /// C_G(Q), for Q running over subgroup classes inside the defect group,
    /// is a single block idempotent of kC_G(Q).
    pub is_principal_type: bool,
    pub defect_class: usize,
    pub defect_order: usize,
    pub simple_count: usize,
    /// The p-regular classes distributed to this block.
    pub class_distribution: Vec<ClassInfo>,
    /// Nonzero lower-defect multiplicities, ascending by subgroup class.
    pub lower_defect: Vec<LowerDefectEntry>,
    pub simples: Vec<SimpleInfo>,
    pub cartan: Vec<Vec<usize>>,
    pub cartan_det: i64,
    pub elementary_divisors: Vec<i64>,
    /// Matching between distributed classes and simple modules with nonzero
    /// Brauer-character trace: `sigma[i]` is the position (within `simples`)
    /// paired with the `i`-th entry of `class_distribution`.
    pub sigma: Vec<usize>,
}

#[derive(Serialize, Clone, Debug)]
pub struct ClassInfo {
    pub class_index: usize,
    pub size: usize,
    pub representative_order: usize,
    pub defect_class: usize,
    pub defect_order: usize,
}

#[derive(Serialize, Clone, Debug)]
pub struct LowerDefectEntry {
    pub subgroup_class: usize,
    pub subgroup_order: usize,
    pub multiplicity: usize,
}

#[derive(Serialize, Clone, Debug)]
pub struct SimpleInfo {
    pub dim: usize,
    pub vertex_class: usize,
    pub vertex_order: usize,
}

#[derive(Serialize, Clone, Copy, Debug, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum VerdictStatus {
    Pass,
    Fail,
    NotApplicable,
}

/// One named assertion, with the number of concrete instances exercised and a
/// human-readable diagnostic payload.
#[derive(Serialize, Clone, Debug)]
pub struct Verdict {
    pub name: String,
    pub status: VerdictStatus,
    pub checked: usize,
    pub detail: String,
}

impl Verdict {
    pub fn pass(name: &str, checked: usize, detail: impl Into<String>) -> Verdict {
        Verdict {
            name: name.to_string(),
            status: VerdictStatus::Pass,
            checked,
            detail: detail.into(),
        }
    }

    pub fn fail(name: &str, checked: usize, detail: impl Into<String>) -> Verdict {
        Verdict {
            name: name.to_string(),
            status: VerdictStatus::Fail,
            checked,
            detail: detail.into(),
        }
    }

    pub fn not_applicable(name: &str, detail: impl Into<String>) -> Verdict {
        Verdict {
            name: name.to_string(),
            status: VerdictStatus::NotApplicable,
            checked: 0,
            detail: detail.into(),
        }
    }
}

#[derive(Serialize, Clone, Copy, Debug, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum EntryStatus {
    Pass,
    Fail,
    Error,
}

#[derive(Serialize, Clone, Debug)]
pub struct EntryReport {
    pub name: String,
    pub prime: u32,
    pub status: EntryStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<AnalysisReport>,
}

#[derive(Serialize, Clone, Debug, Default)]
pub struct VerdictCounts {
    pub pass: usize,
    pub fail: usize,
    pub not_applicable: usize,
}

#[derive(Serialize, Clone, Debug)]
pub struct Summary {
    pub entries: usize,
    pub passed: usize,
    pub failed: usize,
    pub errored: usize,
    pub verdicts: BTreeMap<String, VerdictCounts>,
}

/// Aggregate output of a corpus run.
#[derive(Serialize, Clone, Debug)]
pub struct VerifyReport {
    pub schema: u32,
    pub corpus: String,
    pub seed: u64,
    pub summary: Summary,
    pub entries: Vec<EntryReport>,
}

impl VerifyReport {
    pub fn new(corpus: &str, seed: u64, entries: Vec<EntryReport>) -> VerifyReport {
        let mut summary = Summary {
            entries: entries.len(),
            passed: 0,
            failed: 0,
            errored: 0,
            verdicts: BTreeMap::new(),
        };
        for e in &entries {
            match e.status {
                EntryStatus::Pass => summary.passed += 1,
                EntryStatus::Fail => summary.failed += 1,
                EntryStatus::Error => summary.errored += 1,
            }
            if let Some(rep) = &e.report {
                for v in &rep.verdicts {
                    let c = summary.verdicts.entry(v.name.clone()).or_default();
                    match v.status {
                        VerdictStatus::Pass => c.pass += 1,
                        VerdictStatus::Fail => c.fail += 1,
                        VerdictStatus::NotApplicable => c.not_applicable += 1,
                    }
                }
            }
        }
        VerifyReport {
            schema: SCHEMA_VERSION,
            corpus: corpus.to_string(),
            seed,
            summary,
            entries,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialization");
        s.push('\n');
        s
    }
}

pub fn report_to_json(report: &AnalysisReport) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serialization");
    s.push('\n');
    s
}
