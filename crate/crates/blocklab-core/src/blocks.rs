//! Block decomposition of kG: the primitive central idempotents, found by
//! splitting the semisimple quotient of the center and Newton-lifting, plus
//! per-block defect groups via the Brauer homomorphism.

use crate::algebra::{Algebra, El};
use crate::error::Error;
use crate::field::Fe;
use crate::matrix::{Mat, Subspace};
use crate::poly;
use crate::rng::SplitMix64;
use crate::subgroup::{self, Subgroup};

/// One block of kG. `defect_index` points into the shared list of
/// p-subgroup classes the decomposition was computed against.
#[derive(Clone, Debug)]
pub struct Block {
    pub index: usize,
    pub idempotent: El,
    /// Class coordinates of the idempotent.
    pub coords: Vec<Fe>,
    pub is_principal: bool,
    pub defect_index: usize,
    pub defect_order: usize,
    /// dim_k of the block algebra b kG.
    pub dim: usize,
    /// Row-space basis of b kG inside kG.
    pub span: Subspace,
    /// Whether Br_Q(b) is nonzero, per p-subgroup class.
    pub brauer_nonzero: Vec<bool>,
}

/// The central character of the trivial module evaluated on a central
/// element with the given class coordinates: sum of coefficient times
/// class size.
pub fn omega_trivial(alg: &Algebra, coords: &[Fe]) -> Fe {
    let f = alg.field;
    let mut acc = f.zero();
    for (ci, c) in alg.classes().iter().enumerate() {
        let size = f.embed_int(c.size() as i64);
        acc = f.add(acc, f.mul(coords[ci], size));
    }
    acc
}

/// Decompose kG into blocks. `p_subgroups` must be the p-subgroup classes
/// of G up to conjugacy (ascending by order), as produced by
/// [`subgroup::p_subgroups_up_to_conjugacy`]; defect groups are reported as
/// indices into it.
pub fn decompose(
    alg: &Algebra,
    p_subgroups: &[Subgroup],
    rng: &mut SplitMix64,
) -> Result<Vec<Block>, Error> {
    let f = alg.field;
    let g = alg.group;
    let l = alg.classes().len();

    // --- nilradical of the center -------------------------------------
    // J(Z) is the kernel of the p^t-power map for p^t >= dim Z. The map is
    // p^t-semilinear, so solve sum d_i (C_i)^(p^t) = 0 linearly in d and
    // pull the coefficients back through the inverse Frobenius.
    let mut t = 0;
    let mut pt: u64 = 1;
    while pt < l as u64 {
        pt *= alg.p() as u64;
        t += 1;
    }
    let mut power_rows = Vec::with_capacity(l);
    for ci in 0..l {
        let powered = alg.pth_power_iterated(&alg.class_sum(ci), t);
        power_rows.push(alg.central_coords(&powered)?);
    }
    let m = Mat::from_rows(power_rows);
    let kernel = m.left_kernel(f);
    let mut j_rows = Vec::with_capacity(kernel.rows);
    for i in 0..kernel.rows {
        let mut c = kernel.row_vec(i);
        for x in c.iter_mut() {
            for _ in 0..t {
                *x = f.frobenius_inv(*x);
            }
        }
        j_rows.push(c);
    }
    let radical = Subspace::from_rows(&j_rows, l, f);
    let n_blocks = l - radical.dim();

    // Free coordinates: class indices that are not radical pivots. Reduced
    // (residual) vectors live in their span, giving coordinates on Z/J.
    let free: Vec<usize> = {
        let mut is_pivot = vec![false; l];
        for i in 0..radical.dim() {
            let row = radical.basis().row(i);
            let p = row.iter().position(|&x| x != 0).expect("nonzero basis row");
            is_pivot[p] = true;
        }
        (0..l).filter(|&i| !is_pivot[i]).collect()
    };
    let s_dim = free.len();
    crate::invariant!(s_dim == n_blocks, "free coordinate count mismatch");
    let expand = |v: &[Fe]| -> Vec<Fe> {
        let mut out = vec![0; l];
        for (k, &fc) in free.iter().enumerate() {
            out[fc] = v[k];
        }
        out
    };
    let restrict = |v: &[Fe]| -> Vec<Fe> { free.iter().map(|&fc| v[fc]).collect() };

    // Multiplication-by-class-sum operators on Z/J in free coordinates.
    let mut ops: Vec<Mat> = Vec::with_capacity(l);
    for ci in 0..l {
        let csum = alg.class_sum(ci);
        let mut rows = Vec::with_capacity(s_dim);
        for &fc in &free {
            let prod = alg.mul(&alg.class_sum(fc), &csum);
            let coords = alg.central_coords(&prod)?;
            rows.push(restrict(&radical.residual(&coords, f)));
        }
        ops.push(Mat::from_rows(rows));
    }

    // --- split Z/J into its one-dimensional block components ----------
    // The commuting operators are simultaneously diagonalizable over a
    // splitting field; refine the full space into common eigenspaces.
    let mut parts: Vec<Subspace> = vec![Subspace::full(s_dim)];
    for op in &ops {
        if parts.iter().all(|v| v.dim() == 1) {
            break;
        }
        let mut next = Vec::with_capacity(parts.len());
        for v in parts {
            if v.dim() == 1 {
                next.push(v);
                continue;
            }
            // Matrix of the operator restricted to v (the eigenspaces of
            // earlier operators are stable because the operators commute).
            let mut rows = Vec::with_capacity(v.dim());
            for i in 0..v.dim() {
                let img = op.apply_left(v.basis().row(i), f);
                let coords = v
                    .coords(&img, f)
                    .ok_or_else(|| Error::InvariantViolation("eigenspace not stable".into()))?;
                rows.push(coords);
            }
            let restricted = Mat::from_rows(rows);
            let mp = poly::minpoly(&restricted, f);
            let factors = poly::factor(&mp, f, rng);
            for (fac, mult) in &factors {
                if fac.deg() > 1 {
                    return Err(Error::FieldTooSmall);
                }
                crate::invariant!(
                    *mult == 1,
                    "multiplication operator not semisimple on the center quotient"
                );
            }
            if factors.len() == 1 {
                next.push(v);
                continue;
            }
            let mut split_total = 0;
            for (fac, _) in &factors {
                let lambda = f.neg(fac.c[0]);
                let mut shifted = restricted.clone();
                for i in 0..shifted.rows {
                    let d = shifted.at(i, i);
                    shifted.set(i, i, f.sub(d, lambda));
                }
                let ker = shifted.left_kernel(f);
                let mut eig_rows = Vec::with_capacity(ker.rows);
                for i in 0..ker.rows {
                    eig_rows.push(v.basis().apply_left(ker.row(i), f));
                }
                let eig = Subspace::from_rows(&eig_rows, s_dim, f);
                split_total += eig.dim();
                next.push(eig);
            }
            crate::invariant!(split_total == v.dim(), "eigenspace dimensions do not add up");
        }
        parts = next;
    }
    crate::invariant!(
        parts.len() == n_blocks && parts.iter().all(|v| v.dim() == 1),
        "class sums failed to separate the center quotient"
    );

    // Normalize each one-dimensional component to its idempotent: v^2 = c v
    // forces the idempotent to be v / c.
    let mut sbar: Vec<Vec<Fe>> = Vec::with_capacity(n_blocks);
    for v in &parts {
        let vec_free = v.basis().row_vec(0);
        let el = alg.from_central_coords(&expand(&vec_free));
        let sq = alg.mul(&el, &el);
        let sq_coords = restrict(&radical.residual(&alg.central_coords(&sq)?, f));
        let pos = vec_free.iter().position(|&x| x != 0).expect("nonzero");
        let c = f.div(sq_coords[pos], vec_free[pos]);
        crate::invariant!(c != 0, "component square degenerated");
        let inv = f.inv(c);
        let scaled: Vec<Fe> = vec_free.iter().map(|&x| f.mul(x, inv)).collect();
        crate::invariant!(
            sq_coords
                .iter()
                .zip(&vec_free)
                .all(|(&s, &o)| s == f.mul(c, o)),
            "component is not one-dimensional as an algebra"
        );
        sbar.push(scaled);
    }

    // --- Newton-lift to orthogonal central idempotents -----------------
    let lift_cap = (usize::BITS - l.leading_zeros()) as usize + 4;
    let mut idems: Vec<El> = Vec::with_capacity(n_blocks);
    for (bi, sb) in sbar.iter().enumerate() {
        if bi + 1 == n_blocks {
            break; // the last one is forced by the partition of unity
        }
        let e0 = alg.from_central_coords(&expand(sb));
        // Orthogonalize against the already-lifted idempotents, then lift.
        let mut x = e0.clone();
        for prev in &idems {
            let correction = alg.mul(&e0, prev);
            x = alg.sub(&x, &correction);
        }
        let mut steps = 0;
        loop {
            let xx = alg.mul(&x, &x);
            if xx == x {
                break;
            }
            if steps >= lift_cap {
                return Err(Error::LiftDiverged { steps });
            }
            // x <- 3x^2 - 2x^3
            let xxx = alg.mul(&xx, &x);
            let three = f.embed_int(3);
            let two = f.embed_int(2);
            x = alg.sub(&alg.scale(&xx, three), &alg.scale(&xxx, two));
            steps += 1;
        }
        crate::invariant!(!alg.is_zero(&x), "idempotent lift collapsed to zero");
        for prev in &idems {
            crate::invariant!(
                alg.is_zero(&alg.mul(&x, prev)) && alg.is_zero(&alg.mul(prev, &x)),
                "lifted idempotents are not orthogonal"
            );
        }
        let back = restrict(&radical.residual(&alg.central_coords(&x)?, f));
        crate::invariant!(&back == sb, "lift does not reduce to its seed idempotent");
        idems.push(x);
    }
    let mut last = alg.one();
    for e in &idems {
        last = alg.sub(&last, e);
    }
    crate::invariant!(
        alg.mul(&last, &last) == last && !alg.is_zero(&last),
        "complementary idempotent is not idempotent"
    );
    for e in &idems {
        crate::invariant!(
            alg.is_zero(&alg.mul(&last, e)),
            "complementary idempotent not orthogonal"
        );
    }
    if n_blocks >= 1 {
        let back = restrict(&radical.residual(&alg.central_coords(&last)?, f));
        crate::invariant!(
            &back == &sbar[n_blocks - 1],
            "complementary idempotent does not reduce correctly"
        );
    }
    idems.push(last);

    // --- per-block data -------------------------------------------------
    let centralizers: Vec<Subgroup> = p_subgroups
        .iter()
        .map(|q| subgroup::centralizer(g, q))
        .collect();
    let sylow_order = subgroup::p_part(g.order(), alg.p());

    let mut blocks = Vec::with_capacity(n_blocks);
    let mut principal_seen = 0usize;
    for b in idems {
        crate::invariant!(
            alg.is_p_regular_supported(&b),
            "block idempotent has p-singular support"
        );
        let coords = alg.central_coords(&b)?;

        let omega = omega_trivial(alg, &coords);
        crate::invariant!(
            omega == f.zero() || omega == f.one(),
            "trivial central character of an idempotent must be 0 or 1"
        );
        let is_principal = omega == f.one();
        if is_principal {
            principal_seen += 1;
        }

        let brauer_nonzero: Vec<bool> = centralizers
            .iter()
            .map(|c| !alg.is_zero(&alg.truncate_to(&b, c.members())))
            .collect();
        crate::invariant!(brauer_nonzero[0], "Brauer map at the trivial subgroup vanished");
        let defect_order = brauer_nonzero
            .iter()
            .enumerate()
            .filter(|&(_, &nz)| nz)
            .map(|(qi, _)| p_subgroups[qi].order())
            .max()
            .expect("some Brauer image is nonzero");
        let at_max: Vec<usize> = (0..p_subgroups.len())
            .filter(|&qi| brauer_nonzero[qi] && p_subgroups[qi].order() == defect_order)
            .collect();
        crate::invariant!(
            at_max.len() == 1,
            "defect group is not unique up to conjugacy"
        );
        let defect_index = at_max[0];
        for (qi, q) in p_subgroups.iter().enumerate() {
            let should = subgroup::conjugate_into(g, q, &p_subgroups[defect_index]).is_some();
            crate::invariant!(
                brauer_nonzero[qi] == should,
                "Brauer support is not the set of subgroups below the defect group"
            );
        }
        let op = crate::structure::o_p(g, alg.p());
        crate::invariant!(
            subgroup::conjugate_into(g, &op, &p_subgroups[defect_index]).is_some(),
            "defect group does not contain the p-core"
        );
        if is_principal {
            crate::invariant!(
                defect_order == sylow_order,
                "principal block defect group is not a Sylow subgroup"
            );
        }

        // Row space of b kG.
        let mut rows = Vec::with_capacity(g.order());
        for x in 0..g.order() {
            let xi = g.inv(x);
            let row: Vec<Fe> = (0..g.order()).map(|y| b[g.mul(y, xi)]).collect();
            rows.push(row);
        }
        let span = Subspace::from_rows(&rows, g.order(), f);
        let dim = span.dim();

        blocks.push(Block {
            index: 0,
            idempotent: b,
            coords,
            is_principal,
            defect_index,
            defect_order,
            dim,
            span,
            brauer_nonzero,
        });
    }
    crate::invariant!(principal_seen == 1, "expected exactly one principal block");
    let total: usize = blocks.iter().map(|b| b.dim).sum();
    crate::invariant!(total == g.order(), "block dimensions do not sum to |G|");

    // Deterministic labels: principal first, then descending defect order,
    // then smallest supported element, then coordinate vector.
    blocks.sort_by(|a, b| {
        let ka = (
            !a.is_principal,
            std::cmp::Reverse(a.defect_order),
            a.idempotent.iter().position(|&c| c != 0),
            a.coords.clone(),
        );
        let kb = (
            !b.is_principal,
            std::cmp::Reverse(b.defect_order),
            b.idempotent.iter().position(|&c| c != 0),
            b.coords.clone(),
        );
        ka.cmp(&kb)
    });
    for (i, b) in blocks.iter_mut().enumerate() {
        b.index = i;
    }
    Ok(blocks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::named;

    fn setup(
        name: &str,
        p: u32,
        m: u32,
    ) -> (crate::group::FiniteGroup, Field) {
        let g = named::by_name(name).unwrap();
        let f = Field::new(p, m).unwrap();
        (g, f)
    }

    fn run(g: &crate::group::FiniteGroup, f: &Field) -> (Vec<Block>, Vec<Subgroup>) {
        let alg = Algebra::new(g, f);
        let subs = subgroup::p_subgroups_up_to_conjugacy(g, f.p()).unwrap();
        let mut rng = SplitMix64::new(7);
        let blocks = decompose(&alg, &subs, &mut rng).unwrap();
        (blocks, subs)
    }

    #[test]
    fn s3_mod_2_blocks() {
        let (g, f) = setup("s3", 2, 1);
        let alg = Algebra::new(&g, &f);
        let (blocks, subs) = run(&g, &f);
        assert_eq!(blocks.len(), 2);
        let b0 = &blocks[0];
        let b1 = &blocks[1];
        assert!(b0.is_principal && !b1.is_principal);
        // Principal: e + both 3-cycles; other: the two 3-cycles.
        let three: Vec<usize> = (0..6).filter(|&x| g.order_of(x) == 3).collect();
        let mut want0 = alg.basis(0);
        for &x in &three {
            want0[x] = 1;
        }
        let mut want1 = alg.zero();
        for &x in &three {
            want1[x] = 1;
        }
        assert_eq!(b0.idempotent, want0);
        assert_eq!(b1.idempotent, want1);
        assert_eq!((b0.dim, b1.dim), (2, 4));
        assert_eq!(subs[b0.defect_index].order(), 2);
        assert_eq!(subs[b1.defect_index].order(), 1);
    }

    #[test]
    fn s3_mod_2_against_exhaustive_central_idempotents() {
        // Independent oracle: enumerate all central elements over GF(2) in
        // class coordinates and find the primitive idempotents by hand.
        let (g, f) = setup("s3", 2, 1);
        let alg = Algebra::new(&g, &f);
        let mut idems = Vec::new();
        for mask in 0..8u32 {
            let coords: Vec<Fe> = (0..3).map(|i| (mask >> i) & 1).collect();
            let el = alg.from_central_coords(&coords);
            if !alg.is_zero(&el) && alg.mul(&el, &el) == el {
                idems.push(el);
            }
        }
        // Nonzero central idempotents of kS3 mod 2: b0, b1, and 1.
        assert_eq!(idems.len(), 3);
        let (blocks, _) = run(&g, &f);
        for b in &blocks {
            assert!(idems.contains(&b.idempotent));
        }
        let sum = alg.add(&blocks[0].idempotent, &blocks[1].idempotent);
        assert_eq!(sum, alg.one());
    }

    #[test]
    fn s3_mod_3_single_block() {
        let (g, f) = setup("s3", 3, 1);
        let alg = Algebra::new(&g, &f);
        let (blocks, subs) = run(&g, &f);
        assert_eq!(blocks.len(), 1);
        assert_eq!(blocks[0].idempotent, alg.one());
        assert!(blocks[0].is_principal);
        assert_eq!(blocks[0].dim, 6);
        assert_eq!(subs[blocks[0].defect_index].order(), 3);
    }

    #[test]
    fn s3_mod_5_three_blocks_of_defect_zero() {
        let (g, f) = setup("s3", 5, 1);
        let (blocks, _) = run(&g, &f);
        assert_eq!(blocks.len(), 3);
        let dims: Vec<usize> = blocks.iter().map(|b| b.dim).collect();
        assert_eq!(dims, vec![1, 1, 4]);
        assert!(blocks.iter().all(|b| b.defect_order == 1));
        assert!(blocks[0].is_principal);
        // The principal idempotent is the average of all group elements.
        let sixth = f.inv(f.embed_int(6));
        let want: El = (0..6).map(|_| sixth).collect();
        assert_eq!(blocks[0].idempotent, want);
    }

    #[test]
    fn c6_mod_2_three_blocks_with_defect_two() {
        let (g, f) = setup("c6", 2, 2); // GF(4) splits C3
        let (blocks, subs) = run(&g, &f);
        assert_eq!(blocks.len(), 3);
        for b in &blocks {
            assert_eq!(b.dim, 2);
            assert_eq!(subs[b.defect_index].order(), 2);
        }
        assert!(blocks[0].is_principal);
    }

    #[test]
    fn a4_mod_2_single_block() {
        let (g, f) = setup("a4", 2, 2);
        let alg = Algebra::new(&g, &f);
        let (blocks, subs) = run(&g, &f);
        assert_eq!(blocks.len(), 1);
        assert_eq!(blocks[0].idempotent, alg.one());
        assert_eq!(subs[blocks[0].defect_index].order(), 4);
    }

    #[test]
    fn s4_mod_2_single_block() {
        let (g, f) = setup("s4", 2, 2);
        let (blocks, subs) = run(&g, &f);
        assert_eq!(blocks.len(), 1);
        assert_eq!(blocks[0].dim, 24);
        assert_eq!(subs[blocks[0].defect_index].order(), 8);
    }

    #[test]
    fn s4_mod_3_three_blocks() {
        let (g, f) = setup("s4", 3, 2); // GF(9)
        let (blocks, subs) = run(&g, &f);
        assert_eq!(blocks.len(), 3);
        assert!(blocks[0].is_principal);
        assert_eq!(subs[blocks[0].defect_index].order(), 3);
        assert_eq!(blocks[0].dim, 6);
        // Two defect-zero blocks of dimension 9 each.
        for b in &blocks[1..] {
            assert_eq!(b.defect_order, 1);
            assert_eq!(b.dim, 9);
        }
    }

    #[test]
    fn sl23_mod_3_three_blocks() {
        let (g, f) = setup("sl23", 3, 2); // GF(9)
        let (blocks, subs) = run(&g, &f);
        assert_eq!(blocks.len(), 3);
        let dims: Vec<usize> = blocks.iter().map(|b| b.dim).collect();
        let defects: Vec<usize> = blocks
            .iter()
            .map(|b| subs[b.defect_index].order())
            .collect();
        assert!(blocks[0].is_principal);
        assert_eq!(defects, vec![3, 3, 1]);
        assert_eq!(dims, vec![3, 12, 9]);
    }

    #[test]
    fn f21_mod_3_three_blocks() {
        let (g, f) = setup("f21", 3, 6); // GF(729)
        let (blocks, _) = run(&g, &f);
        assert_eq!(blocks.len(), 3);
        let dims: Vec<usize> = blocks.iter().map(|b| b.dim).collect();
        assert_eq!(dims, vec![3, 9, 9]);
        assert_eq!(blocks[0].defect_order, 3);
        assert_eq!(blocks[1].defect_order, 1);
    }

    #[test]
    fn a5_mod_2_two_blocks() {
        let (g, f) = setup("a5", 2, 4); // GF(16)
        let (blocks, subs) = run(&g, &f);
        assert_eq!(blocks.len(), 2);
        assert!(blocks[0].is_principal);
        assert_eq!(subs[blocks[0].defect_index].order(), 4);
        assert_eq!(blocks[0].dim, 44);
        assert_eq!(blocks[1].defect_order, 1);
        assert_eq!(blocks[1].dim, 16);
    }

    #[test]
    fn q8_mod_2_single_block_full_defect() {
        let (g, f) = setup("q8", 2, 1);
        let (blocks, subs) = run(&g, &f);
        assert_eq!(blocks.len(), 1);
        assert_eq!(blocks[0].dim, 8);
        assert_eq!(subs[blocks[0].defect_index].order(), 8);
    }

    #[test]
    fn decomposition_is_deterministic() {
        let (g, f) = setup("sl23", 3, 2);
        let alg = Algebra::new(&g, &f);
        let subs = subgroup::p_subgroups_up_to_conjugacy(&g, 3).unwrap();
        let mut r1 = SplitMix64::new(1);
        let mut r2 = SplitMix64::new(999);
        let b1 = decompose(&alg, &subs, &mut r1).unwrap();
        let b2 = decompose(&alg, &subs, &mut r2).unwrap();
        assert_eq!(b1.len(), b2.len());
        for (x, y) in b1.iter().zip(&b2) {
            assert_eq!(x.idempotent, y.idempotent);
            assert_eq!(x.defect_index, y.defect_index);
        }
    }

    #[test]
    fn trivial_group_single_block() {
        let g = named::trivial();
        let f = Field::new(2, 1).unwrap();
        let (blocks, _) = run(&g, &f);
        assert_eq!(blocks.len(), 1);
        assert!(blocks[0].is_principal);
        assert_eq!(blocks[0].dim, 1);
        assert_eq!(blocks[0].defect_order, 1);
    }
}
