//! End-to-end analysis pipeline for one (group, prime) pair.
//!
//! `analyze` builds the group algebra over a splitting field, decomposes it
//! into blocks, computes lower defect multiplicities, simple modules,
//! vertices, Cartan matrices, and matchings, runs every verdict check, and
//! assembles the JSON report.

use blocklab_core::algebra::Algebra;
use blocklab_core::blocks::{self, Block};
use blocklab_core::cartan::{self, CartanData};
use blocklab_core::invariant;
use blocklab_core::lowerdefect::{self, ClassAssignment, LowerDefect};
use blocklab_core::meataxe::{self, BlockModules};
use blocklab_core::rng::SplitMix64;
use blocklab_core::structure;
use blocklab_core::subgroup::{self, Subgroup};
use blocklab_core::vertex::{self, VertexData};
use blocklab_core::{Error, Fe, Field, FiniteGroup, Mat};

use crate::checks;
use crate::matching::perfect_matching;
use crate::report::{
    AnalysisReport, BlockReport, ClassInfo, FieldInfo, GroupInfo, LowerDefectEntry, SimpleInfo,
    StructureInfo, SubgroupClassInfo, SCHEMA_VERSION,
};

/// Deterministic RNG stream labels. Every random draw in an analysis comes
/// from `SplitMix64::stream(seed, label)` with a label from this table, so
/// two runs with the same seed see identical streams regardless of timing.
pub const STREAM_BLOCKS: u64 = 1;
pub const STREAM_MEATAXE: u64 = 0x100;
pub const STREAM_CENTRALIZER: u64 = 0x10000;
pub const STREAM_NORMAL: u64 = 0x20000;
pub const STREAM_INERTIAL: u64 = 0x30000;

/// Everything the pipeline computes for one (group, prime) pair, in the
/// shape the checks consume: indices into `p_subgroups` throughout.
pub struct Pipeline {
    pub seed: u64,
    /// Conjugacy-class representatives of the p-subgroups, sorted by
    /// (order, members); the last entry is a Sylow p-subgroup.
    pub p_subgroups: Vec<Subgroup>,
    pub blocks: Vec<Block>,
    pub lower: LowerDefect,
    /// Per block: simple modules with Brauer-character fingerprints.
    pub modules: Vec<BlockModules>,
    /// Per block, per simple: vertex data.
    pub vertices: Vec<Vec<VertexData>>,
    pub cartans: Vec<CartanData>,
    /// Per block: the matching from distributed classes (in class order) to
    /// simples, witnessing the nonsingular trace matrix.
    pub sigmas: Vec<Vec<usize>>,
    /// Per block: whether every Brauer correspondent at a nontrivial
    /// subgroup of the defect group is a single block of the centralizer.
    pub principal_type: Vec<bool>,
    /// Global indices of the p-regular conjugacy classes.
    pub prc: Vec<usize>,
}

impl Pipeline {
    /// The lower-defect class assignments belonging to block `bi`, in
    /// increasing class order.
    pub fn assigned(&self, bi: usize) -> Vec<&ClassAssignment> {
        self.lower.assignments.iter().filter(|a| a.block == bi).collect()
    }
}

/// 64-bit FNV-1a, used to derive per-entry RNG stream labels from names.
pub fn fnv1a(s: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in s.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

/// The seed used for a corpus entry, derived from the global seed and the
/// entry identity so entries are independent of corpus order and job count.
pub fn entry_seed(global_seed: u64, name: &str, prime: u32) -> u64 {
    SplitMix64::stream(global_seed, fnv1a(&format!("{name}/{prime}"))).next_u64()
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Least `m >= 1` with `p^m = 1 (mod e)`; requires `gcd(p, e) = 1`.
pub fn splitting_degree(p: u32, e: usize) -> u32 {
    if e <= 1 {
        return 1;
    }
    let e = e as u64;
    let base = p as u64 % e;
    let mut pw = 1u64;
    for m in 1..=e as u32 {
        pw = pw * base % e;
        if pw == 1 {
            return m;
        }
    }
    unreachable!("p is a unit modulo the p-regular exponent");
}

/// Run the full analysis of `g` at `p` and return the report. The field is
/// GF(p^m) with m the order of p modulo the p-regular exponent, which
/// splits the group algebra and every subgroup and quotient algebra the
/// checks build along the way.
pub fn analyze(g: &FiniteGroup, p: u32, seed: u64) -> Result<AnalysisReport, Error> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let e = structure::pprime_exponent(g, p);
    let m = splitting_degree(p, e);
    let field = Field::new(p, m)?;
    let alg = Algebra::new(g, &field);
    let data = run_pipeline(&alg, seed)?;
    let verdicts = checks::run_all(&alg, &data)?;
    Ok(build_report(&alg, &data, e, verdicts))
}

pub fn run_pipeline<'a>(alg: &Algebra<'a>, seed: u64) -> Result<Pipeline, Error> {
    let g = alg.group;
    let p = alg.p();
    let p_subgroups = subgroup::p_subgroups_up_to_conjugacy(g, p)?;

    let mut rng = SplitMix64::stream(seed, STREAM_BLOCKS);
    let blocks = blocks::decompose(alg, &p_subgroups, &mut rng)?;
    let lower = lowerdefect::compute(alg, &p_subgroups, &blocks)?;

    let mut modules = Vec::with_capacity(blocks.len());
    for b in &blocks {
        let mut rb = SplitMix64::stream(seed, STREAM_MEATAXE + b.index as u64);
        modules.push(meataxe::simples_of_block(alg, b, &mut rb)?);
    }

    let mut vertices = Vec::with_capacity(blocks.len());
    for bm in &modules {
        let mut vs = Vec::with_capacity(bm.simples.len());
        for s in &bm.simples {
            vs.push(vertex::vertex_of(g, alg.field, s, p, &p_subgroups)?);
        }
        vertices.push(vs);
    }

    let mut cartans = Vec::with_capacity(blocks.len());
    for (b, bm) in blocks.iter().zip(&modules) {
        cartans.push(cartan::cartan_of_block(alg, b, bm)?);
    }

    let prc = alg.p_regular_class_indices();
    let mut sigmas = Vec::with_capacity(blocks.len());
    for bi in 0..blocks.len() {
        sigmas.push(sigma_for_block(alg, &lower, &modules, bi, &prc)?);
    }

    let principal_type = principal_type_flags(alg, &p_subgroups, &blocks, seed)?;

    Ok(Pipeline {
        seed,
        p_subgroups,
        blocks,
        lower,
        modules,
        vertices,
        cartans,
        sigmas,
        principal_type,
        prc,
    })
}

/// The matching underpinning a block's trace matrix: rows are the block's
/// simples, columns its distributed classes, entry (i, j) the Brauer
/// character of simple i at the class of column j. The matrix must be
/// square and nonsingular; the returned permutation sends each column to a
/// simple with a nonzero entry there.
fn sigma_for_block(
    alg: &Algebra,
    lower: &LowerDefect,
    modules: &[BlockModules],
    bi: usize,
    prc: &[usize],
) -> Result<Vec<usize>, Error> {
    let f = alg.field;
    let assigned: Vec<usize> = lower
        .assignments
        .iter()
        .filter(|a| a.block == bi)
        .map(|a| a.class_index)
        .collect();
    let l = modules[bi].simples.len();
    invariant!(
        assigned.len() == l,
        "block {bi}: {} distributed classes but {l} simple modules",
        assigned.len()
    );
    let mut positions = Vec::with_capacity(l);
    for &ci in &assigned {
        let Some(pos) = prc.iter().position(|&x| x == ci) else {
            invariant!(false, "block {bi}: distributed class {ci} is not p-regular");
            unreachable!()
        };
        positions.push(pos);
    }
    let rows: Vec<Vec<Fe>> = (0..l)
        .map(|si| positions.iter().map(|&pos| modules[bi].fingerprints[si][pos]).collect())
        .collect();
    let t = Mat::from_rows(rows.clone());
    invariant!(
        t.det(f) != f.zero(),
        "block {bi}: the simple-by-class trace matrix is singular"
    );
    // Columns (classes) on the left, simples on the right; an edge where
    // the trace entry is nonzero. A nonsingular matrix always has one
    // nonzero generalized diagonal, so the matching exists.
    let adj: Vec<Vec<usize>> = (0..l)
        .map(|j| (0..l).filter(|&si| rows[si][j] != f.zero()).collect())
        .collect();
    let Some(sigma) = perfect_matching(&adj, l) else {
        invariant!(false, "block {bi}: nonsingular trace matrix without a matching");
        unreachable!()
    };
    Ok(sigma)
}

struct CentralizerBlocks {
    members: Vec<usize>,
    group: FiniteGroup,
    embed: Vec<usize>,
    idempotents: Vec<Vec<Fe>>,
}

/// For each block b, decide whether the Brauer correspondent of b at every
/// nontrivial subgroup Q of its defect group is a single block of
/// k C_G(Q). The correspondent is the truncation of the block idempotent
/// to C_G(Q), a sum of blocks there; we count the summands.
fn principal_type_flags(
    alg: &Algebra,
    p_subgroups: &[Subgroup],
    blocks: &[Block],
    seed: u64,
) -> Result<Vec<bool>, Error> {
    let g = alg.group;
    let f = alg.field;
    let p = alg.p();
    let mut cache: Vec<CentralizerBlocks> = Vec::new();
    let mut counter = 0u64;
    let mut flags = Vec::with_capacity(blocks.len());
    for b in blocks {
        let mut single = true;
        for (qi, q) in p_subgroups.iter().enumerate() {
            // Positive Brauer correspondents occur exactly at the classes
            // meeting the defect group; the trivial subgroup gives back b
            // itself and a central Q gives the whole algebra, so both are
            // single-block by construction.
            if !b.brauer_nonzero[qi] || q.is_trivial() {
                continue;
            }
            let c = subgroup::centralizer(g, q);
            if c.order() == g.order() {
                continue;
            }
            let idx = match cache.iter().position(|e| e.members == c.members()) {
                Some(i) => i,
                None => {
                    let (cg, embed) = g.subgroup_group(&c);
                    let subs_c = subgroup::p_subgroups_up_to_conjugacy(&cg, p)?;
                    let alg_c = Algebra::new(&cg, f);
                    let mut rng = SplitMix64::stream(seed, STREAM_CENTRALIZER + counter);
                    counter += 1;
                    let cblocks = blocks::decompose(&alg_c, &subs_c, &mut rng)?;
                    cache.push(CentralizerBlocks {
                        members: c.members().to_vec(),
                        group: cg,
                        embed,
                        idempotents: cblocks.into_iter().map(|x| x.idempotent).collect(),
                    });
                    cache.len() - 1
                }
            };
            let entry = &cache[idx];
            let alg_c = Algebra::new(&entry.group, f);
            let trunc = alg.truncate_to(&b.idempotent, &entry.members);
            let tc: Vec<Fe> = entry.embed.iter().map(|&x| trunc[x]).collect();
            let mut total = alg_c.zero();
            let mut summands = 0usize;
            for e in &entry.idempotents {
                let prod = alg_c.mul(&tc, e);
                if &prod == e {
                    summands += 1;
                    total = alg_c.add(&total, e);
                } else {
                    invariant!(
                        alg_c.is_zero(&prod),
                        "truncated idempotent times a centralizer block is neither 0 nor the block"
                    );
                }
            }
            invariant!(
                total == tc,
                "truncated idempotent is not the sum of its centralizer blocks"
            );
            if summands != 1 {
                single = false;
            }
        }
        flags.push(single);
    }
    Ok(flags)
}

fn build_report(
    alg: &Algebra,
    data: &Pipeline,
    pprime_exponent: usize,
    verdicts: Vec<crate::report::Verdict>,
) -> AnalysisReport {
    let g = alg.group;
    let f = alg.field;
    let p = alg.p();
    let classes = alg.classes();

    let subgroup_classes = data
        .p_subgroups
        .iter()
        .enumerate()
        .map(|(i, s)| SubgroupClassInfo {
            index: i,
            order: s.order(),
            is_abelian: s.is_abelian(g),
            is_elementary_abelian: s.is_elementary_abelian(g, p),
        })
        .collect();

    let mut block_reports = Vec::with_capacity(data.blocks.len());
    for (bi, b) in data.blocks.iter().enumerate() {
        let assigned = data.assigned(bi);
        let class_distribution = assigned
            .iter()
            .map(|a| ClassInfo {
                class_index: a.class_index,
                size: classes[a.class_index].size(),
                representative_order: g.order_of(classes[a.class_index].rep),
                defect_class: a.class_defect_index,
                defect_order: a.defect_order,
            })
            .collect();
        let lower_defect = data.lower.multiplicities[bi]
            .iter()
            .enumerate()
            .filter(|&(_, &m)| m > 0)
            .map(|(qi, &m)| LowerDefectEntry {
                subgroup_class: qi,
                subgroup_order: data.p_subgroups[qi].order(),
                multiplicity: m,
            })
            .collect();
        let simples = data.modules[bi]
            .simples
            .iter()
            .zip(&data.vertices[bi])
            .map(|(s, v)| SimpleInfo {
                dim: s.dim,
                vertex_class: v.q_index,
                vertex_order: v.vertex_order,
            })
            .collect();
        block_reports.push(BlockReport {
            label: bi,
            dim: b.dim,
            is_principal: b.is_principal,
            is_principal_type: data.principal_type[bi],
            defect_class: b.defect_index,
            defect_order: b.defect_order,
            simple_count: data.modules[bi].simples.len(),
            class_distribution,
            lower_defect,
            simples,
            cartan: data.cartans[bi].matrix.clone(),
            cartan_det: data.cartans[bi].det,
            elementary_divisors: data.cartans[bi].divisors.clone(),
            sigma: data.sigmas[bi].clone(),
        });
    }

    AnalysisReport {
        schema: SCHEMA_VERSION,
        group: GroupInfo { name: g.name().to_string(), order: g.order() },
        prime: p,
        field: FieldInfo { p: f.p(), m: f.m(), q: f.q() },
        seed: data.seed,
        structure: StructureInfo {
            is_p_solvable: structure::is_p_solvable(g, p),
            is_p_nilpotent: structure::is_p_nilpotent(g, p),
            o_p_order: structure::o_p(g, p).order(),
            o_pprime_order: structure::o_pprime(g, p).order(),
            sylow_order: subgroup::p_part(g.order(), p),
            p_regular_exponent: pprime_exponent,
        },
        class_count: classes.len(),
        p_regular_class_count: data.prc.len(),
        subgroup_classes,
        blocks: block_reports,
        verdicts,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        assert!(is_prime(2));
        assert!(is_prime(97));
        assert!(!is_prime(1));
        assert!(!is_prime(91));
    }

    #[test]
    fn splitting_degrees() {
        // ord(2 mod 3) = 2, ord(2 mod 7) = 3, ord(3 mod 8) = 2,
        // ord(5 mod 12) = 2, and anything mod 1 is degree 1.
        assert_eq!(splitting_degree(2, 3), 2);
        assert_eq!(splitting_degree(2, 7), 3);
        assert_eq!(splitting_degree(3, 8), 2);
        assert_eq!(splitting_degree(5, 12), 2);
        assert_eq!(splitting_degree(7, 1), 1);
    }

    #[test]
    fn entry_seed_depends_on_identity() {
        let a = entry_seed(7, "s3", 2);
        let b = entry_seed(7, "s3", 3);
        let c = entry_seed(7, "s4", 2);
        let again = entry_seed(7, "s3", 2);
        assert_eq!(a, again);
        assert_ne!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn non_prime_is_rejected() {
        let g = blocklab_core::named::by_name("s3").unwrap();
        assert!(matches!(analyze(&g, 6, 0), Err(Error::NotPrime(6))));
    }
}
