//! The named assertions verified against every analyzed (group, prime) pair.
//!
//! Each check returns a `Verdict`: `pass`/`fail` with the number of concrete
//! instances exercised, or `not_applicable` when the hypotheses of the
//! statement are not met by this entry. Failures mean the mathematical
//! assertion itself was falsified by the computed data; breakage of facts the
//! computation is entitled to (a trace that should be a block idempotent but
//! is not, a matrix that should be nonsingular but is not) surfaces as an
//! internal error instead.

use std::collections::BTreeSet;

use blocklab_core::algebra::Algebra;
use blocklab_core::invariant;
use blocklab_core::lowerdefect;
use blocklab_core::matrix::RowSpan;
use blocklab_core::rng::SplitMix64;
use blocklab_core::structure;
use blocklab_core::subgroup::{self, Subgroup};
use blocklab_core::{blocks, Error, Fe};

use crate::analyze::{Pipeline, STREAM_INERTIAL, STREAM_NORMAL};
use crate::matching::perfect_matching;
use crate::report::Verdict;

pub fn run_all(alg: &Algebra, data: &Pipeline) -> Result<Vec<Verdict>, Error> {
    Ok(vec![
        lower_defect_consistency(alg, data)?,
        cartan_divisor_match(alg, data)?,
        class_vertex_matching(alg, data)?,
        principal_type_gap(alg, data)?,
        nilpotency_product_equality(alg, data)?,
        self_centralizing_vanishing(alg, data)?,
        solvable_strict_matching(alg, data)?,
        solvable_cartan_bound(alg, data)?,
        inertial_multiplicity_transfer(alg, data)?,
        defect_zero_trace_vanishing(alg, data)?,
        normal_core_quotient_dims(alg, data)?,
        elementary_abelian_index_bound(alg, data)?,
        abelian_defect_vertices(alg, data)?,
    ])
}

fn finish(name: &str, checked: usize, problems: Vec<String>, ok_detail: String) -> Verdict {
    if problems.is_empty() {
        Verdict::pass(name, checked, ok_detail)
    } else {
        Verdict::fail(name, checked, problems.join("; "))
    }
}

/// Is `a` conjugate to a subgroup of `b`?
fn leq(g: &blocklab_core::FiniteGroup, a: &Subgroup, b: &Subgroup) -> bool {
    subgroup::conjugate_into(g, a, b).is_some()
}

/// The lower defect tables are internally consistent: the two computations
/// behind them already agreed entrywise (that agreement is asserted during
/// construction), the per-block total equals the number of simple modules,
/// the full defect group carries multiplicity exactly 1, positive
/// multiplicities only occur inside the defect group, and the multiset of
/// orders in the table matches the defect-group orders of the block's
/// distributed p-regular classes.
pub fn lower_defect_consistency(alg: &Algebra, data: &Pipeline) -> Result<Verdict, Error> {
    const NAME: &str = "lower_defect_consistency";
    let g = alg.group;
    let mut checked = 0usize;
    let mut problems = Vec::new();
    let mut distributed = 0usize;
    for (bi, b) in data.blocks.iter().enumerate() {
        let mult = &data.lower.multiplicities[bi];
        let total: usize = mult.iter().sum();
        let l = data.modules[bi].simples.len();
        let assigned = data.assigned(bi);
        distributed += assigned.len();
        checked += 1;
        if total != l || assigned.len() != l {
            problems.push(format!(
                "block {bi}: multiplicity total {total} and {} distributed classes against {l} simple modules",
                assigned.len()
            ));
        }
        if mult[b.defect_index] != 1 {
            problems.push(format!(
                "block {bi}: defect group multiplicity {} instead of 1",
                mult[b.defect_index]
            ));
        }
        for (qi, &mq) in mult.iter().enumerate() {
            checked += 1;
            if mq > 0 && !leq(g, &data.p_subgroups[qi], &data.p_subgroups[b.defect_index]) {
                problems.push(format!(
                    "block {bi}: positive multiplicity at subgroup class {qi} not contained in the defect group"
                ));
            }
        }
        let mut class_orders: Vec<usize> = assigned.iter().map(|a| a.defect_order).collect();
        class_orders.sort_unstable();
        let mut table_orders: Vec<usize> = mult
            .iter()
            .enumerate()
            .flat_map(|(qi, &mq)| std::iter::repeat(data.p_subgroups[qi].order()).take(mq))
            .collect();
        table_orders.sort_unstable();
        if class_orders != table_orders {
            problems.push(format!(
                "block {bi}: class defect orders {class_orders:?} differ from table orders {table_orders:?}"
            ));
        }
    }
    if distributed != data.prc.len() {
        problems.push(format!(
            "{distributed} classes distributed over blocks but {} p-regular classes exist",
            data.prc.len()
        ));
    }
    Ok(finish(
        NAME,
        checked,
        problems,
        format!(
            "both multiplicity formulas agreed entrywise for {} block(s); totals, defect normalization, and order multisets are consistent",
            data.blocks.len()
        ),
    ))
}

/// Per block, the multiset of elementary divisors of the Cartan matrix
/// equals the multiset of subgroup orders in the lower defect table
/// (orders repeated with their multiplicity).
pub fn cartan_divisor_match(alg: &Algebra, data: &Pipeline) -> Result<Verdict, Error> {
    const NAME: &str = "cartan_divisor_match";
    let _ = alg;
    let mut problems = Vec::new();
    let mut checked = 0usize;
    for (bi, cd) in data.cartans.iter().enumerate() {
        let mut divisors = cd.divisors.clone();
        divisors.sort_unstable();
        let mut orders: Vec<i64> = data.lower.multiplicities[bi]
            .iter()
            .enumerate()
            .flat_map(|(qi, &mq)| {
                std::iter::repeat(data.p_subgroups[qi].order() as i64).take(mq)
            })
            .collect();
        orders.sort_unstable();
        checked += 1;
        if divisors != orders {
            problems.push(format!(
                "block {bi}: elementary divisors {divisors:?} differ from lower defect orders {orders:?}"
            ));
        }
    }
    Ok(finish(
        NAME,
        checked,
        problems,
        format!(
            "elementary divisors match lower defect order multisets for {} block(s)",
            data.blocks.len()
        ),
    ))
}

/// Per block, the matching from distributed classes to simple modules
/// places each class defect group inside (a conjugate of) the vertex of its
/// partner, and the product of the class defect orders is bounded by the
/// product of the vertex orders.
pub fn class_vertex_matching(alg: &Algebra, data: &Pipeline) -> Result<Verdict, Error> {
    const NAME: &str = "class_vertex_matching";
    let g = alg.group;
    let mut problems = Vec::new();
    let mut checked = 0usize;
    let mut matched = 0usize;
    for bi in 0..data.blocks.len() {
        let assigned = data.assigned(bi);
        let sigma = &data.sigmas[bi];
        let mut class_product: u128 = 1;
        let mut vertex_product: u128 = 1;
        for (i, a) in assigned.iter().enumerate() {
            let v = &data.vertices[bi][sigma[i]];
            checked += 1;
            matched += 1;
            if !leq(g, &data.p_subgroups[a.class_defect_index], &data.p_subgroups[v.q_index]) {
                problems.push(format!(
                    "block {bi}: class {} has defect order {} not contained in the matched vertex of order {}",
                    a.class_index, a.defect_order, v.vertex_order
                ));
            }
            class_product *= a.defect_order as u128;
        }
        for v in &data.vertices[bi] {
            vertex_product *= v.vertex_order as u128;
        }
        checked += 1;
        if class_product > vertex_product {
            problems.push(format!(
                "block {bi}: class defect order product {class_product} exceeds vertex order product {vertex_product}"
            ));
        }
    }
    Ok(finish(
        NAME,
        checked,
        problems,
        format!(
            "matched {matched} class(es) across {} block(s); all containments and product bounds hold",
            data.blocks.len()
        ),
    ))
}

/// In a block whose correspondents at every nontrivial subgroup of the
/// defect group stay a single block of the centralizer, the lower defect
/// multiplicity vanishes at every class lying strictly between a vertex of
/// one of the block's simples and the defect group.
pub fn principal_type_gap(alg: &Algebra, data: &Pipeline) -> Result<Verdict, Error> {
    const NAME: &str = "principal_type_gap";
    let g = alg.group;
    let mut problems = Vec::new();
    let mut checked = 0usize;
    let mut blocks_seen = 0usize;
    for (bi, b) in data.blocks.iter().enumerate() {
        if !data.principal_type[bi] {
            continue;
        }
        blocks_seen += 1;
        let d = &data.p_subgroups[b.defect_index];
        for v in &data.vertices[bi] {
            let r = &data.p_subgroups[v.q_index];
            for (qi, q) in data.p_subgroups.iter().enumerate() {
                if q.order() >= d.order() || !leq(g, r, q) || !leq(g, q, d) {
                    continue;
                }
                checked += 1;
                if data.lower.multiplicities[bi][qi] != 0 {
                    problems.push(format!(
                        "block {bi}: multiplicity {} at subgroup class {qi} (order {}) between a vertex of order {} and the defect group of order {}",
                        data.lower.multiplicities[bi][qi],
                        q.order(),
                        v.vertex_order,
                        d.order()
                    ));
                }
            }
        }
    }
    Ok(finish(
        NAME,
        checked,
        problems,
        format!(
            "multiplicities vanish at all {checked} intermediate (simple, subgroup class) pair(s) in {blocks_seen} qualifying block(s)"
        ),
    ))
}

/// Over the whole algebra, the product of all class defect orders is at
/// most the product of all vertex orders, with equality exactly when the
/// group is p-nilpotent.
pub fn nilpotency_product_equality(alg: &Algebra, data: &Pipeline) -> Result<Verdict, Error> {
    const NAME: &str = "nilpotency_product_equality";
    let g = alg.group;
    let p = alg.p();
    let class_product: u128 = data
        .lower
        .assignments
        .iter()
        .map(|a| a.defect_order as u128)
        .product();
    let vertex_product: u128 = data
        .vertices
        .iter()
        .flatten()
        .map(|v| v.vertex_order as u128)
        .product();
    let nilpotent = structure::is_p_nilpotent(g, p);
    let mut problems = Vec::new();
    if class_product > vertex_product {
        problems.push(format!(
            "class defect order product {class_product} exceeds vertex order product {vertex_product}"
        ));
    }
    if (class_product == vertex_product) != nilpotent {
        problems.push(format!(
            "product equality is {} but p-nilpotency is {}",
            class_product == vertex_product,
            nilpotent
        ));
    }
    Ok(finish(
        NAME,
        2,
        problems,
        format!(
            "class defect product {class_product}, vertex product {vertex_product}, p-nilpotent: {nilpotent}"
        ),
    ))
}

/// If a proper subgroup Q of the defect group is self-centralizing in
/// every conjugate of the defect group containing it (the centralizer
/// taken inside that conjugate equals the center of Q), then the lower
/// defect multiplicity at Q vanishes.
pub fn self_centralizing_vanishing(alg: &Algebra, data: &Pipeline) -> Result<Verdict, Error> {
    const NAME: &str = "self_centralizing_vanishing";
    let g = alg.group;
    let n = g.order();
    let mut problems = Vec::new();
    let mut checked = 0usize;
    for (bi, b) in data.blocks.iter().enumerate() {
        let d = &data.p_subgroups[b.defect_index];
        let conjugates: BTreeSet<Vec<usize>> =
            (0..n).map(|t| d.conjugate(g, t).members().to_vec()).collect();
        for (qi, q) in data.p_subgroups.iter().enumerate() {
            if q.order() >= d.order() || !leq(g, q, d) {
                continue;
            }
            let qm = q.members();
            let zq: Vec<usize> = qm
                .iter()
                .copied()
                .filter(|&x| qm.iter().all(|&y| g.commutes(x, y)))
                .collect();
            let containing: Vec<&Vec<usize>> = conjugates
                .iter()
                .filter(|pm| qm.iter().all(|x| pm.binary_search(x).is_ok()))
                .collect();
            invariant!(
                !containing.is_empty(),
                "subgroup class {qi} lies under the defect group but in none of its conjugates"
            );
            let hypothesis = containing.iter().all(|pm| {
                let cpq: Vec<usize> = pm
                    .iter()
                    .copied()
                    .filter(|&x| qm.iter().all(|&y| g.commutes(x, y)))
                    .collect();
                cpq == zq
            });
            if !hypothesis {
                continue;
            }
            checked += 1;
            if data.lower.multiplicities[bi][qi] != 0 {
                problems.push(format!(
                    "block {bi}: multiplicity {} at self-centralizing subgroup class {qi} (order {})",
                    data.lower.multiplicities[bi][qi],
                    q.order()
                ));
            }
        }
    }
    Ok(finish(
        NAME,
        checked,
        problems,
        format!("multiplicity vanishes at all {checked} qualifying (block, subgroup class) pair(s)"),
    ))
}

/// For p-solvable groups there is a matching as in `class_vertex_matching`
/// that is strict: each class defect group is properly contained in the
/// matched vertex unless the class defect group is a defect group of the
/// block. Found by an independent matching search, not reuse of sigma.
pub fn solvable_strict_matching(alg: &Algebra, data: &Pipeline) -> Result<Verdict, Error> {
    const NAME: &str = "solvable_strict_matching";
    let g = alg.group;
    let p = alg.p();
    if !structure::is_p_solvable(g, p) {
        return Ok(Verdict::not_applicable(NAME, format!("the group is not {p}-solvable")));
    }
    let mut problems = Vec::new();
    let mut checked = 0usize;
    for (bi, b) in data.blocks.iter().enumerate() {
        let assigned = data.assigned(bi);
        let l = assigned.len();
        let adj: Vec<Vec<usize>> = assigned
            .iter()
            .map(|a| {
                let qs = &data.p_subgroups[a.class_defect_index];
                (0..l)
                    .filter(|&j| {
                        let vs = &data.p_subgroups[data.vertices[bi][j].q_index];
                        leq(g, qs, vs)
                            && (a.class_defect_index == b.defect_index || qs.order() < vs.order())
                    })
                    .collect()
            })
            .collect();
        checked += 1;
        if perfect_matching(&adj, l).is_none() {
            problems.push(format!(
                "block {bi}: no strict matching from distributed classes to vertices"
            ));
        }
    }
    Ok(finish(
        NAME,
        checked,
        problems,
        format!("strict matchings exist for all {} block(s)", data.blocks.len()),
    ))
}

/// For p-solvable groups the Cartan determinant of each block is at most
/// the product of the vertex orders of its simples, with equality exactly
/// when the block has a single simple module.
pub fn solvable_cartan_bound(alg: &Algebra, data: &Pipeline) -> Result<Verdict, Error> {
    const NAME: &str = "solvable_cartan_bound";
    let g = alg.group;
    let p = alg.p();
    if !structure::is_p_solvable(g, p) {
        return Ok(Verdict::not_applicable(NAME, format!("the group is not {p}-solvable")));
    }
    let mut problems = Vec::new();
    let mut checked = 0usize;
    for (bi, cd) in data.cartans.iter().enumerate() {
        let det = cd.det as u128;
        let vertex_product: u128 = data.vertices[bi].iter().map(|v| v.vertex_order as u128).product();
        let l = data.modules[bi].simples.len();
        checked += 1;
        if det > vertex_product {
            problems.push(format!(
                "block {bi}: Cartan determinant {det} exceeds vertex order product {vertex_product}"
            ));
        }
        if (det == vertex_product) != (l == 1) {
            problems.push(format!(
                "block {bi}: determinant {det} vs vertex product {vertex_product} with {l} simple module(s)"
            ));
        }
    }
    Ok(finish(
        NAME,
        checked,
        problems,
        format!(
            "determinant bounds and equality criteria hold for all {} block(s)",
            data.blocks.len()
        ),
    ))
}

/// For a p-solvable group with nontrivial p'-core N, each covered block c
/// of kN with proper inertial group H gives correspondent blocks d of kH
/// whose relative traces are blocks b of kG; the correspondence preserves
/// the number of simple modules and, summed over the H-classes of
/// p-subgroups fusing to one G-class, the lower defect multiplicities.
pub fn inertial_multiplicity_transfer(alg: &Algebra, data: &Pipeline) -> Result<Verdict, Error> {
    const NAME: &str = "inertial_multiplicity_transfer";
    let g = alg.group;
    let f = alg.field;
    let p = alg.p();
    if !structure::is_p_solvable(g, p) {
        return Ok(Verdict::not_applicable(NAME, format!("the group is not {p}-solvable")));
    }
    let core = structure::o_pprime(g, p);
    if core.is_trivial() {
        return Ok(Verdict::not_applicable(NAME, "the p'-core is trivial"));
    }
    if core.order() == g.order() {
        return Ok(Verdict::not_applicable(NAME, "the p'-core is the whole group"));
    }

    let (ng, n_embed) = g.subgroup_group(&core);
    let alg_n = Algebra::new(&ng, f);
    let subs_n = subgroup::p_subgroups_up_to_conjugacy(&ng, p)?;
    let mut rng_n = SplitMix64::stream(data.seed, STREAM_INERTIAL);
    let nblocks = blocks::decompose(&alg_n, &subs_n, &mut rng_n)?;
    let embedded: Vec<Vec<Fe>> = nblocks
        .iter()
        .map(|c| {
            let mut v = alg.zero();
            for (i, &x) in n_embed.iter().enumerate() {
                v[x] = c.idempotent[i];
            }
            v
        })
        .collect();

    let mut problems = Vec::new();
    let mut checked = 0usize;
    let mut instances = 0usize;
    let mut counter = 1u64;
    let mut seen: Vec<Vec<Fe>> = Vec::new();
    for v in &embedded {
        if seen.iter().any(|w| w == v) {
            continue;
        }
        let mut stab: Vec<usize> = Vec::new();
        let mut orbit: Vec<Vec<Fe>> = Vec::new();
        for t in 0..g.order() {
            let w = alg.conj_el(v, t);
            if &w == v {
                stab.push(t);
            }
            if !orbit.iter().any(|u| u == &w) {
                orbit.push(w);
            }
        }
        seen.extend(orbit);
        let h = Subgroup::from_members(g, stab)?;
        if h.order() == g.order() {
            continue;
        }
        instances += 1;

        let (hg, h_embed) = g.subgroup_group(&h);
        let alg_h = Algebra::new(&hg, f);
        let subs_h = subgroup::p_subgroups_up_to_conjugacy(&hg, p)?;
        let mut rng_h = SplitMix64::stream(data.seed, STREAM_INERTIAL + counter);
        counter += 1;
        let hblocks = blocks::decompose(&alg_h, &subs_h, &mut rng_h)?;
        let lower_h = lowerdefect::compute(&alg_h, &subs_h, &hblocks)?;

        // Fuse each H-class of p-subgroups into its ambient G-class.
        let mut gclass_of = Vec::with_capacity(subs_h.len());
        for sh in &subs_h {
            let members: Vec<usize> = sh.members().iter().map(|&x| h_embed[x]).collect();
            let emb = Subgroup::from_members(g, members)?;
            let gi = data
                .p_subgroups
                .iter()
                .position(|q| subgroup::conjugate_eq(g, &emb, q).is_some());
            invariant!(
                gi.is_some(),
                "a p-subgroup of the inertial group fuses into no ambient class"
            );
            gclass_of.push(gi.unwrap());
        }

        let ch: Vec<Fe> = h_embed.iter().map(|&x| v[x]).collect();
        for d in &hblocks {
            let dc = alg_h.mul(&d.idempotent, &ch);
            if dc != d.idempotent {
                invariant!(
                    alg_h.is_zero(&dc),
                    "inertial block times covered idempotent is neither 0 nor the block"
                );
                continue;
            }
            let mut w = alg.zero();
            for (i, &x) in h_embed.iter().enumerate() {
                w[x] = d.idempotent[i];
            }
            let b_el = alg.relative_trace_to_whole(&w, &h)?;
            let bi = data.blocks.iter().position(|b| b.idempotent == b_el);
            invariant!(
                bi.is_some(),
                "the relative trace of an inertial correspondent is not a block idempotent"
            );
            let bi = bi.unwrap();
            checked += 1;
            if alg.mul(&w, &data.blocks[bi].idempotent) != w {
                problems.push(format!(
                    "block {bi}: its idempotent does not act as identity on the inertial correspondent"
                ));
            }
            let l_d = lower_h.block_total(d.index);
            let l_b = data.modules[bi].simples.len();
            if l_d != l_b {
                problems.push(format!(
                    "block {bi}: {l_b} simple module(s) against {l_d} for the inertial correspondent"
                ));
            }
            for (ui, uq) in data.p_subgroups.iter().enumerate() {
                let lhs: usize = (0..subs_h.len())
                    .filter(|&hj| gclass_of[hj] == ui)
                    .map(|hj| lower_h.multiplicities[d.index][hj])
                    .sum();
                let rhs = data.lower.multiplicities[bi][ui];
                checked += 1;
                if lhs != rhs {
                    problems.push(format!(
                        "block {bi}, subgroup class {ui} (order {}): inertial multiplicity sum {lhs} against ambient multiplicity {rhs}",
                        uq.order()
                    ));
                }
            }
        }
    }
    if instances == 0 {
        return Ok(Verdict::not_applicable(
            NAME,
            "every covered block of the p'-core has the whole group as inertial group",
        ));
    }
    Ok(finish(
        NAME,
        checked,
        problems,
        format!("multiplicity transfer verified for {instances} proper inertial instance(s)"),
    ))
}

/// A defect-zero block b of a proper nontrivial normal subgroup H whose
/// inertial group has index divisible by p annihilates the span of the full
/// conjugation traces of the elements of H.
pub fn defect_zero_trace_vanishing(alg: &Algebra, data: &Pipeline) -> Result<Verdict, Error> {
    const NAME: &str = "defect_zero_trace_vanishing";
    let g = alg.group;
    let f = alg.field;
    let p = alg.p() as usize;
    let mut problems = Vec::new();
    let mut checked = 0usize;
    let mut applicable = 0usize;
    let mut counter = 0u64;
    for h in subgroup::normal_subgroups(g) {
        if h.is_trivial() || h.order() == g.order() {
            continue;
        }
        let (hg, h_embed) = g.subgroup_group(&h);
        let alg_h = Algebra::new(&hg, f);
        let subs_h = subgroup::p_subgroups_up_to_conjugacy(&hg, alg.p())?;
        let mut rng = SplitMix64::stream(data.seed, STREAM_NORMAL + counter);
        counter += 1;
        let hblocks = blocks::decompose(&alg_h, &subs_h, &mut rng)?;
        for bh in hblocks.iter().filter(|b| b.defect_order == 1) {
            let mut v = alg.zero();
            for (i, &x) in h_embed.iter().enumerate() {
                v[x] = bh.idempotent[i];
            }
            let stab_order = (0..g.order()).filter(|&t| alg.conj_el(&v, t) == v).count();
            invariant!(
                stab_order % h.order() == 0,
                "the inertial group of a covered block does not contain the normal subgroup"
            );
            if (stab_order / h.order()) % p != 0 {
                continue;
            }
            applicable += 1;
            for &x in h.members() {
                let mut tr = alg.zero();
                for t in 0..g.order() {
                    let y = g.conj(x, t);
                    tr[y] = f.add(tr[y], f.one());
                }
                checked += 1;
                if !alg.is_zero(&alg.mul(&v, &tr)) {
                    problems.push(format!(
                        "normal subgroup of order {}: defect-zero block does not annihilate the conjugation trace of element {x}",
                        h.order()
                    ));
                }
            }
        }
    }
    if applicable == 0 {
        return Ok(Verdict::not_applicable(
            NAME,
            "no defect-zero block of a proper nontrivial normal subgroup has inertial index divisible by p",
        ));
    }
    Ok(finish(
        NAME,
        checked,
        problems,
        format!("annihilation verified for {applicable} (normal subgroup, block) pair(s)"),
    ))
}

/// With Q the p-core, each block satisfies a dimension identity between
/// the b-part of the span of relative traces from Q of p-regular
/// centralizer elements, and the image-block part of the span of full
/// traces of p-regular elements of Q C_G(Q)/Q in the quotient G/Q.
pub fn normal_core_quotient_dims(alg: &Algebra, data: &Pipeline) -> Result<Verdict, Error> {
    const NAME: &str = "normal_core_quotient_dims";
    let g = alg.group;
    let f = alg.field;
    let p = alg.p();
    let q = structure::o_p(g, p);
    if q.is_trivial() {
        return Ok(Verdict::not_applicable(NAME, "the p-core is trivial"));
    }
    let c = subgroup::centralizer(g, &q);
    let mut qc: BTreeSet<usize> = BTreeSet::new();
    for &a in q.members() {
        for &b in c.members() {
            qc.insert(g.mul(a, b));
        }
    }
    let (qg, coset_of) = g.quotient_group(&q)?;
    let alg_q = Algebra::new(&qg, f);
    let hbar: BTreeSet<usize> = qc.iter().map(|&x| coset_of[x]).collect();

    let mut problems = Vec::new();
    let mut checked = 0usize;
    for (bi, b) in data.blocks.iter().enumerate() {
        let mut span = RowSpan::new(g.order());
        for &x in c.members() {
            if !g.is_p_regular(x, p) {
                continue;
            }
            let tr = alg.relative_trace_to_whole(&alg.basis(x), &q)?;
            span.insert(alg.mul(&tr, &b.idempotent), f);
        }
        let upstairs = span.dim();

        let mut bbar = alg_q.zero();
        for x in 0..g.order() {
            bbar[coset_of[x]] = f.add(bbar[coset_of[x]], b.idempotent[x]);
        }
        let mut span_q = RowSpan::new(qg.order());
        for &xb in &hbar {
            if !qg.is_p_regular(xb, p) {
                continue;
            }
            let mut tr = alg_q.zero();
            for t in 0..qg.order() {
                let y = qg.conj(xb, t);
                tr[y] = f.add(tr[y], f.one());
            }
            span_q.insert(alg_q.mul(&tr, &bbar), f);
        }
        let downstairs = span_q.dim();

        checked += 1;
        if upstairs != downstairs {
            problems.push(format!(
                "block {bi}: dimension {upstairs} against {downstairs} in the quotient"
            ));
        }
    }
    Ok(finish(
        NAME,
        checked,
        problems,
        format!(
            "dimension identity holds for all {} block(s) over a p-core of order {}",
            data.blocks.len(),
            q.order()
        ),
    ))
}

/// For every subgroup Q of a Sylow p-subgroup P: the index in Q of a
/// maximal-order elementary abelian subgroup of Q is at most the index in
/// P of a maximal-order elementary abelian subgroup of P.
pub fn elementary_abelian_index_bound(alg: &Algebra, data: &Pipeline) -> Result<Verdict, Error> {
    const NAME: &str = "elementary_abelian_index_bound";
    let g = alg.group;
    let p = alg.p();
    let _ = data;
    let syl = subgroup::sylow_subgroup(g, p);
    let subs = subgroup::subgroups_within(g, &syl, subgroup::DEFAULT_SUBGROUP_CAP)?;
    let elab: Vec<bool> = subs.iter().map(|s| s.is_elementary_abelian(g, p)).collect();
    let e_max = subs
        .iter()
        .zip(&elab)
        .filter(|&(_, &e)| e)
        .map(|(s, _)| s.order())
        .max()
        .unwrap_or(1);
    let mut problems = Vec::new();
    let mut checked = 0usize;
    for qsub in &subs {
        let f_max = subs
            .iter()
            .zip(&elab)
            .filter(|&(s, &e)| e && s.members().iter().all(|&x| qsub.contains(x)))
            .map(|(s, _)| s.order())
            .max()
            .unwrap_or(1);
        checked += 1;
        if qsub.order() * e_max > syl.order() * f_max {
            problems.push(format!(
                "subgroup of order {} with top elementary abelian order {} violates the bound (Sylow order {}, top order {})",
                qsub.order(),
                f_max,
                syl.order(),
                e_max
            ));
        }
    }
    Ok(finish(
        NAME,
        checked,
        problems,
        format!(
            "index bound holds for all {checked} subgroup(s) of a Sylow subgroup of order {}",
            syl.order()
        ),
    ))
}

/// In a block with abelian defect group, every simple module has vertex
/// equal to the defect group.
pub fn abelian_defect_vertices(alg: &Algebra, data: &Pipeline) -> Result<Verdict, Error> {
    const NAME: &str = "abelian_defect_vertices";
    let g = alg.group;
    let mut problems = Vec::new();
    let mut checked = 0usize;
    let mut abelian_blocks = 0usize;
    for (bi, b) in data.blocks.iter().enumerate() {
        if !data.p_subgroups[b.defect_index].is_abelian(g) {
            continue;
        }
        abelian_blocks += 1;
        for (si, v) in data.vertices[bi].iter().enumerate() {
            checked += 1;
            if v.vertex_order != b.defect_order {
                problems.push(format!(
                    "block {bi}, simple {si}: vertex order {} against abelian defect order {}",
                    v.vertex_order, b.defect_order
                ));
            }
        }
    }
    Ok(finish(
        NAME,
        checked,
        problems,
        format!(
            "all {checked} simple module(s) in {abelian_blocks} abelian-defect block(s) have vertex equal to the defect group"
        ),
    ))
}

#[cfg(test)]
mod tests {
    use crate::analyze::analyze;
    use crate::report::VerdictStatus;

    #[test]
    fn s3_mod_2_all_verdicts_non_fail() {
        let g = blocklab_core::named::by_name("s3").unwrap();
        let report = analyze(&g, 2, 0).unwrap();
        assert_eq!(report.verdicts.len(), 13);
        for v in &report.verdicts {
            assert_ne!(v.status, VerdictStatus::Fail, "{}: {}", v.name, v.detail);
        }
        // The p'-core C3 has proper inertial instances here.
        let transfer = report
            .verdicts
            .iter()
            .find(|v| v.name == "inertial_multiplicity_transfer")
            .unwrap();
        assert_eq!(transfer.status, VerdictStatus::Pass);
        assert!(transfer.checked >= 1);
    }

    #[test]
    fn q8_mod_2_single_nilpotent_block() {
        let g = blocklab_core::named::by_name("q8").unwrap();
        let report = analyze(&g, 2, 0).unwrap();
        assert_eq!(report.blocks.len(), 1);
        let nil = report
            .verdicts
            .iter()
            .find(|v| v.name == "nilpotency_product_equality")
            .unwrap();
        assert_eq!(nil.status, VerdictStatus::Pass);
        assert!(report.structure.is_p_nilpotent);
        for v in &report.verdicts {
            assert_ne!(v.status, VerdictStatus::Fail, "{}: {}", v.name, v.detail);
        }
    }
}
