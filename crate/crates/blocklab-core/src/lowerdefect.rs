//! First lower defect group multiplicities of blocks, computed by two
//! independent formulas that must agree, plus the induced distribution of
//! p-regular classes to blocks at matching defect levels.

use crate::algebra::{Algebra, El};
use crate::blocks::Block;
use crate::error::Error;
use crate::matrix::{RowSpan, Subspace};
use crate::subgroup::{self, Subgroup};

/// Where one p-regular conjugacy class landed in the distribution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassAssignment {
    /// Global conjugacy class index.
    pub class_index: usize,
    /// Block label the class is attributed to.
    pub block: usize,
    /// Order of the defect group of the class (a Sylow p-subgroup of the
    /// centralizer of a representative).
    pub defect_order: usize,
    /// Index of that defect group's conjugacy class in the shared
    /// p-subgroup list.
    pub class_defect_index: usize,
}

#[derive(Clone, Debug)]
pub struct LowerDefect {
    /// `multiplicities[block][q]` = first lower defect multiplicity of the
    /// q-th p-subgroup class in that block.
    pub multiplicities: Vec<Vec<usize>>,
    /// One entry per p-regular class, sorted by class index.
    pub assignments: Vec<ClassAssignment>,
}

impl LowerDefect {
    /// Number of nonzero multiplicity entries summed over a block: equals
    /// the number of irreducible modules in the block.
    pub fn block_total(&self, block: usize) -> usize {
        self.multiplicities[block].iter().sum()
    }
}

/// The defect group of a conjugacy class: a Sylow p-subgroup of the
/// centralizer of a representative.
pub fn class_defect_group(g: &crate::group::FiniteGroup, p: u32, rep: usize) -> Subgroup {
    let c = subgroup::centralizer_of_set(g, &[rep]);
    subgroup::sylow_in(g, &c, p)
}

/// Span of relative traces from Q to G of Q-orbit sums of p-regular
/// elements, in class coordinates.
fn trace_span(alg: &Algebra, q: &Subgroup, p_regular: &[usize]) -> Result<Subspace, Error> {
    let f = alg.field;
    let l = alg.classes().len();
    let mut rows = Vec::new();
    for s in alg.orbit_sums_under(q, p_regular) {
        let tr = alg.relative_trace_to_whole(&s, q)?;
        rows.push(alg.central_coords(&tr)?);
    }
    Ok(Subspace::from_rows(&rows, l, f))
}

/// dim of { z b : z in span } for a span given in class coordinates.
fn image_dim(alg: &Algebra, span: &Subspace, b: &El) -> Result<usize, Error> {
    let f = alg.field;
    let l = alg.classes().len();
    let mut rs = RowSpan::new(l);
    for i in 0..span.dim() {
        let el = alg.from_central_coords(span.basis().row(i));
        let prod = alg.mul(&el, b);
        rs.insert(alg.central_coords(&prod)?, f);
    }
    Ok(rs.dim())
}

pub fn compute(
    alg: &Algebra,
    p_subgroups: &[Subgroup],
    blocks: &[Block],
) -> Result<LowerDefect, Error> {
    let g = alg.group;
    let f = alg.field;
    let p = alg.p();
    let nq = p_subgroups.len();
    let p_regular = alg.p_regular_elements();

    // --- formula one: quotients of global trace spans -----------------
    let m_spans: Vec<Subspace> = p_subgroups
        .iter()
        .map(|q| trace_span(alg, q, &p_regular))
        .collect::<Result<_, _>>()?;
    let mut b_spans: Vec<Subspace> = Vec::with_capacity(nq);
    for (qi, q) in p_subgroups.iter().enumerate() {
        if q.is_trivial() {
            b_spans.push(Subspace::zero(alg.classes().len()));
            continue;
        }
        let mut acc = Subspace::zero(alg.classes().len());
        for r in subgroup::maximal_subgroups_of_p_group(g, q, p)? {
            let ri = p_subgroups
                .iter()
                .position(|cand| subgroup::conjugate_eq(g, &r, cand).is_some())
                .ok_or_else(|| {
                    Error::InvariantViolation("maximal subgroup missing from class list".into())
                })?;
            crate::invariant!(ri < qi, "subgroup class list is not sorted by order");
            acc = acc.sum(&m_spans[ri], f);
        }
        crate::invariant!(
            acc.is_subspace_of(&m_spans[qi], f),
            "trace spans are not monotone in the subgroup"
        );
        b_spans.push(acc);
    }

    let mut multiplicities: Vec<Vec<usize>> = vec![vec![0; nq]; blocks.len()];
    for (bi, b) in blocks.iter().enumerate() {
        for qi in 0..nq {
            let top = image_dim(alg, &m_spans[qi], &b.idempotent)?;
            let bot = image_dim(alg, &b_spans[qi], &b.idempotent)?;
            crate::invariant!(bot <= top, "trace span images out of order");
            multiplicities[bi][qi] = top - bot;
        }
    }

    // --- formula two: local spans over the centralizer ----------------
    for (qi, q) in p_subgroups.iter().enumerate() {
        let n = subgroup::normalizer(g, q);
        let c = subgroup::centralizer(g, q);
        for (bi, b) in blocks.iter().enumerate() {
            let brb = alg.truncate_to(&b.idempotent, c.members());
            let local = if alg.is_zero(&brb) {
                0
            } else {
                let mut rs = RowSpan::new(g.order());
                for &x in c.members() {
                    if !g.is_p_regular(x, p) {
                        continue;
                    }
                    let tr = alg.relative_trace(&alg.basis(x), q, &n)?;
                    rs.insert(alg.mul(&tr, &brb), f);
                }
                rs.dim()
            };
            crate::invariant!(
                local == multiplicities[bi][qi],
                "lower defect formulas disagree at block {bi}, subgroup class {qi}: \
                 quotient gives {}, local span gives {local}",
                multiplicities[bi][qi]
            );
        }
    }

    // --- structural facts the multiplicities must satisfy -------------
    for (bi, b) in blocks.iter().enumerate() {
        crate::invariant!(
            multiplicities[bi][b.defect_index] == 1,
            "defect group multiplicity is not one in block {bi}"
        );
        for qi in 0..nq {
            if !b.brauer_nonzero[qi] {
                crate::invariant!(
                    multiplicities[bi][qi] == 0,
                    "nonzero multiplicity above the defect group in block {bi}"
                );
            }
        }
    }

    // --- class defect groups and the filtration check ------------------
    let class_indices = alg.p_regular_class_indices();
    let mut class_defect: Vec<(usize, usize)> = Vec::new(); // (q index, order)
    for &ci in &class_indices {
        let d = class_defect_group(g, p, alg.classes()[ci].rep);
        let qi = p_subgroups
            .iter()
            .position(|cand| subgroup::conjugate_eq(g, &d, cand).is_some())
            .ok_or_else(|| {
                Error::InvariantViolation("class defect group missing from class list".into())
            })?;
        class_defect.push((qi, d.order()));
    }

    let mut levels: Vec<usize> = p_subgroups.iter().map(|q| q.order()).collect();
    levels.sort_unstable();
    levels.dedup();

    // Central coordinates of (class sum) * (block idempotent) for every
    // p-regular class and block.
    let mut vec_of: Vec<Vec<Vec<crate::field::Fe>>> = Vec::with_capacity(class_indices.len());
    for &ci in &class_indices {
        let csum = alg.class_sum(ci);
        let mut per_block = Vec::with_capacity(blocks.len());
        for b in blocks {
            per_block.push(alg.central_coords(&alg.mul(&csum, &b.idempotent))?);
        }
        vec_of.push(per_block);
    }

    // For each block, the dimension of span{ C b : |D(C)| <= level } must
    // match the cumulative multiplicities up to that level; and globally
    // each level must account for exactly the classes of that defect order.
    let l = alg.classes().len();
    let mut frozen: Vec<RowSpan> = (0..blocks.len()).map(|_| RowSpan::new(l)).collect();
    let mut assignments: Vec<ClassAssignment> = Vec::new();
    let mut filt: Vec<RowSpan> = (0..blocks.len()).map(|_| RowSpan::new(l)).collect();
    let mut cum: Vec<usize> = vec![0; blocks.len()];
    for &level in &levels {
        let ground: Vec<usize> = (0..class_indices.len())
            .filter(|&k| class_defect[k].1 == level)
            .collect();
        let mut caps: Vec<usize> = vec![0; blocks.len()];
        for (bi, row) in multiplicities.iter().enumerate() {
            for qi in 0..nq {
                if p_subgroups[qi].order() == level {
                    caps[bi] += row[qi];
                }
            }
        }
        crate::invariant!(
            caps.iter().sum::<usize>() == ground.len(),
            "multiplicities at defect order {level} do not account for the classes there"
        );
        for (bi, _) in blocks.iter().enumerate() {
            for &k in &ground {
                filt[bi].insert(vec_of[k][bi].clone(), f);
            }
            cum[bi] += caps[bi];
            crate::invariant!(
                filt[bi].dim() == cum[bi],
                "filtration dimension mismatch in block {bi} at defect order {level}"
            );
        }

        // Assign this level's classes to blocks: a matroid-union matching
        // where a class fits a block if its vector extends independence
        // over the block's frozen lower levels and capacity remains.
        let fits = |frozen_b: &RowSpan, cur: &[usize], cand: &[usize], bi: usize| -> bool {
            let mut rs = frozen_b.clone();
            for &k in cur.iter().chain(cand) {
                if !rs.insert(vec_of[k][bi].clone(), f) {
                    return false;
                }
            }
            true
        };
        let mut cur: Vec<Vec<usize>> = vec![Vec::new(); blocks.len()];
        for &x in &ground {
            // Breadth-first augmenting search over exchange moves.
            let mut parent: Vec<Option<usize>> = vec![None; class_indices.len()];
            let mut seen: Vec<bool> = vec![false; class_indices.len()];
            let mut queue = std::collections::VecDeque::new();
            queue.push_back(x);
            seen[x] = true;
            let mut sink: Option<(usize, usize)> = None; // (element, block)
            'bfs: while let Some(y) = queue.pop_front() {
                for bi in 0..blocks.len() {
                    if cur[bi].len() < caps[bi] && fits(&frozen[bi], &cur[bi], &[y], bi) {
                        sink = Some((y, bi));
                        break 'bfs;
                    }
                }
                for bi in 0..blocks.len() {
                    for idx in 0..cur[bi].len() {
                        let z = cur[bi][idx];
                        if seen[z] {
                            continue;
                        }
                        let mut without: Vec<usize> = cur[bi].clone();
                        without.remove(idx);
                        if fits(&frozen[bi], &without, &[y], bi) {
                            seen[z] = true;
                            parent[z] = Some(y);
                            queue.push_back(z);
                        }
                    }
                }
            }
            let (mut elem, bi_final) = sink.ok_or_else(|| {
                Error::InvariantViolation(
                    "could not realize a class distribution matching the multiplicities".into(),
                )
            })?;
            // Walk back: each hop moves `elem` into the block its child
            // vacates; the path ends by inserting into `bi_final`.
            let mut target = bi_final;
            loop {
                let prev_block = cur
                    .iter()
                    .position(|s| s.contains(&elem))
                    .filter(|_| elem != x);
                if let Some(pb) = prev_block {
                    cur[pb].retain(|&k| k != elem);
                }
                cur[target].push(elem);
                match parent[elem] {
                    Some(par) => {
                        target = prev_block.expect("interior path nodes are assigned");
                        elem = par;
                    }
                    None => break,
                }
            }
            for (bi, s) in cur.iter().enumerate() {
                crate::invariant!(
                    s.len() <= caps[bi] && fits(&frozen[bi], s, &[], bi),
                    "class distribution bookkeeping failed after augmentation"
                );
            }
        }
        for (bi, s) in cur.iter().enumerate() {
            crate::invariant!(
                s.len() == caps[bi],
                "class distribution does not fill block {bi} at defect order {level}"
            );
            for &k in s {
                crate::invariant!(
                    frozen[bi].insert(vec_of[k][bi].clone(), f),
                    "frozen span failed to grow"
                );
                assignments.push(ClassAssignment {
                    class_index: class_indices[k],
                    block: bi,
                    defect_order: level,
                    class_defect_index: class_defect[k].0,
                });
            }
        }
    }
    assignments.sort_by_key(|a| a.class_index);
    crate::invariant!(
        assignments.len() == class_indices.len(),
        "each p-regular class must be assigned exactly once"
    );

    Ok(LowerDefect {
        multiplicities,
        assignments,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::named;
    use crate::rng::SplitMix64;

    fn full(
        name: &str,
        p: u32,
        m: u32,
    ) -> (
        crate::group::FiniteGroup,
        Field,
        Vec<Subgroup>,
        Vec<Block>,
        LowerDefect,
    ) {
        let g = named::by_name(name).unwrap();
        let f = Field::new(p, m).unwrap();
        let subs = subgroup::p_subgroups_up_to_conjugacy(&g, p).unwrap();
        let (blocks, ld) = {
            let alg = Algebra::new(&g, &f);
            let mut rng = SplitMix64::new(7);
            let blocks = crate::blocks::decompose(&alg, &subs, &mut rng).unwrap();
            let ld = compute(&alg, &subs, &blocks).unwrap();
            (blocks, ld)
        };
        (g, f, subs, blocks, ld)
    }

    #[test]
    fn s3_mod_2_multiplicities() {
        let (_, _, subs, _, ld) = full("s3", 2, 1);
        let orders: Vec<usize> = subs.iter().map(|q| q.order()).collect();
        assert_eq!(orders, vec![1, 2]);
        assert_eq!(ld.multiplicities, vec![vec![0, 1], vec![1, 0]]);
        // Identity class sits in the principal block at full defect; the
        // 3-cycle class carries the defect-zero block.
        let by_class: Vec<(usize, usize)> = ld
            .assignments
            .iter()
            .map(|a| (a.block, a.defect_order))
            .collect();
        assert_eq!(by_class, vec![(0, 2), (1, 1)]);
    }

    #[test]
    fn c4_mod_2_only_full_defect() {
        let (_, _, subs, _, ld) = full("c4", 2, 1);
        let orders: Vec<usize> = subs.iter().map(|q| q.order()).collect();
        assert_eq!(orders, vec![1, 2, 4]);
        assert_eq!(ld.multiplicities, vec![vec![0, 0, 1]]);
    }

    #[test]
    fn a4_mod_2_multiplicities() {
        let (_, _, subs, _, ld) = full("a4", 2, 2);
        let orders: Vec<usize> = subs.iter().map(|q| q.order()).collect();
        assert_eq!(orders, vec![1, 2, 4]);
        assert_eq!(ld.multiplicities, vec![vec![2, 0, 1]]);
        assert_eq!(ld.block_total(0), 3);
        // Identity at the Klein four level, the two 3-cycle classes at the
        // trivial level.
        let mut dist: Vec<usize> = ld.assignments.iter().map(|a| a.defect_order).collect();
        dist.sort_unstable();
        assert_eq!(dist, vec![1, 1, 4]);
    }

    #[test]
    fn s4_mod_2_multiplicities() {
        let (_, _, subs, _, ld) = full("s4", 2, 2);
        let mut expect = vec![0; subs.len()];
        expect[0] = 1;
        let d8 = subs.iter().position(|q| q.order() == 8).unwrap();
        expect[d8] = 1;
        assert_eq!(ld.multiplicities, vec![expect]);
    }

    #[test]
    fn sl23_mod_3_multiplicities() {
        let (_, _, subs, blocks, ld) = full("sl23", 3, 2);
        let orders: Vec<usize> = subs.iter().map(|q| q.order()).collect();
        assert_eq!(orders, vec![1, 3]);
        assert_eq!(
            ld.multiplicities,
            vec![vec![0, 1], vec![0, 1], vec![1, 0]]
        );
        for bi in 0..blocks.len() {
            assert_eq!(ld.block_total(bi), 1);
        }
    }

    #[test]
    fn f21_mod_7_multiplicities() {
        let (_, _, subs, blocks, ld) = full("f21", 7, 1);
        assert_eq!(blocks.len(), 1);
        let orders: Vec<usize> = subs.iter().map(|q| q.order()).collect();
        assert_eq!(orders, vec![1, 7]);
        assert_eq!(ld.multiplicities, vec![vec![2, 1]]);
    }

    #[test]
    fn q8_mod_2_class_distribution() {
        let (_, _, _, _, ld) = full("q8", 2, 1);
        // Only the identity class is 2-regular; it carries the full defect.
        assert_eq!(ld.assignments.len(), 1);
        assert_eq!(ld.assignments[0].defect_order, 8);
        assert_eq!(ld.assignments[0].block, 0);
    }

    #[test]
    fn a5_mod_2_totals() {
        let (_, _, subs, blocks, ld) = full("a5", 2, 4);
        assert_eq!(blocks.len(), 2);
        // Principal block holds three simples, the defect-zero block one.
        assert_eq!(ld.block_total(0), 3);
        assert_eq!(ld.block_total(1), 1);
        let v4 = subs.iter().position(|q| q.order() == 4).unwrap();
        assert_eq!(ld.multiplicities[0][v4], 1);
        assert_eq!(ld.multiplicities[1][0], 1);
    }

    #[test]
    fn class_defect_group_is_sylow_of_centralizer() {
        let g = named::by_name("s4").unwrap();
        // A transposition's centralizer has order 4, all of it a 2-group.
        let t = (0..24).find(|&x| {
            g.order_of(x) == 2 && subgroup::centralizer_of_set(&g, &[x]).order() == 4
        });
        let t = t.unwrap();
        let d = class_defect_group(&g, 2, t);
        assert_eq!(d.order(), 4);
    }
}
