//! Composition factors of modules by the MeatAxe: random algebra elements,
//! kernel spinning, and Norton's irreducibility criterion with the
//! transposed-module certificate.

use crate::algebra::Algebra;
use crate::blocks::Block;
use crate::error::Error;
use crate::field::{Fe, Field};
use crate::matrix::{Mat, RowSpan, Subspace};
use crate::poly;
use crate::rep::{self, Representation};
use crate::rng::SplitMix64;

const MAX_ATTEMPTS: usize = 200;

/// Smallest subspace containing v that is stable under all `gens`.
pub fn spin(v: &[Fe], gens: &[Mat], f: &Field) -> Subspace {
    let mut span = RowSpan::new(v.len());
    if !span.insert(v.to_vec(), f) {
        return span.into_subspace(f);
    }
    let mut queue: Vec<Vec<Fe>> = vec![span.rows().last().unwrap().clone()];
    while let Some(w) = queue.pop() {
        for m in gens {
            let img = m.apply_left(&w, f);
            if span.insert(img, f) {
                queue.push(span.rows().last().unwrap().clone());
            }
        }
    }
    span.into_subspace(f)
}

fn is_stable(w: &Subspace, gens: &[Mat], f: &Field) -> bool {
    (0..w.dim()).all(|i| {
        gens.iter()
            .all(|m| w.contains(&m.apply_left(w.basis().row(i), f), f))
    })
}

/// The action restricted to a stable subspace, in that subspace's basis.
pub fn submodule_rep(
    rep: &Representation,
    w: &Subspace,
    f: &Field,
) -> Result<Representation, Error> {
    let mut gens = Vec::with_capacity(rep.gens.len());
    for m in &rep.gens {
        let mut rows = Vec::with_capacity(w.dim());
        for i in 0..w.dim() {
            let img = m.apply_left(w.basis().row(i), f);
            let coords = w
                .coords(&img, f)
                .ok_or_else(|| Error::InvariantViolation("submodule is not stable".into()))?;
            rows.push(coords);
        }
        gens.push(Mat::from_rows(rows));
    }
    Ok(Representation::new(w.dim(), rep.gen_elems.clone(), gens))
}

/// The quotient module by a stable subspace, on the coordinates that are
/// not pivots of the subspace's echelon basis.
pub fn quotient_rep(
    rep: &Representation,
    w: &Subspace,
    f: &Field,
) -> Result<Representation, Error> {
    let d = rep.dim;
    let mut is_pivot = vec![false; d];
    for i in 0..w.dim() {
        let row = w.basis().row(i);
        let p = row.iter().position(|&x| x != 0).expect("nonzero basis row");
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..d).filter(|&i| !is_pivot[i]).collect();
    let mut gens = Vec::with_capacity(rep.gens.len());
    for m in &rep.gens {
        let mut rows = Vec::with_capacity(free.len());
        for &fc in &free {
            let res = w.residual(m.row(fc), f);
            rows.push(free.iter().map(|&c| res[c]).collect::<Vec<_>>());
        }
        gens.push(Mat::from_rows(rows));
    }
    Ok(Representation::new(free.len(), rep.gen_elems.clone(), gens))
}

fn random_algebra_element(rep: &Representation, f: &Field, rng: &mut SplitMix64) -> Mat {
    let d = rep.dim;
    let q = f.q() as u64;
    let mut pick = || rng.below(q) as Fe;
    let mut acc = Mat::identity(d).scale(pick(), f);
    for m in &rep.gens {
        acc = acc.add(&m.scale(pick(), f), f);
    }
    for a in &rep.gens {
        for b in &rep.gens {
            acc = acc.add(&a.mul(b, f).scale(pick(), f), f);
        }
    }
    acc
}

enum SplitOutcome {
    Irreducible,
    Proper(Subspace),
}

fn try_split(
    rep: &Representation,
    f: &Field,
    rng: &mut SplitMix64,
) -> Result<SplitOutcome, Error> {
    let d = rep.dim;
    crate::invariant!(d > 0, "zero module reached the splitter");
    if d == 1 {
        return Ok(SplitOutcome::Irreducible);
    }
    if rep.gens.is_empty() {
        // Trivial acting group: every line is a submodule.
        let mut v = vec![0; d];
        v[0] = 1;
        return Ok(SplitOutcome::Proper(Subspace::from_rows(&[v], d, f)));
    }
    for _ in 0..MAX_ATTEMPTS {
        let a = random_algebra_element(rep, f, rng);
        let mp = poly::minpoly(&a, f);
        let factors = poly::factor(&mp, f, rng);
        for (fac, _) in &factors {
            let theta = fac.eval_mat(&a, f);
            let n = theta.left_kernel(f);
            crate::invariant!(
                n.rows > 0,
                "a minimal polynomial factor must have a kernel"
            );
            for i in 0..n.rows {
                let w = spin(n.row(i), &rep.gens, f);
                crate::invariant!(w.dim() > 0, "spin of a nonzero vector vanished");
                if w.dim() < d {
                    return Ok(SplitOutcome::Proper(w));
                }
            }
            if n.rows == fac.deg() {
                // Norton's criterion: the kernel is a single orbit of the
                // local algebra, every kernel vector generates everything,
                // so only a complementary submodule could remain; it would
                // show up as a proper spin in the transposed module.
                let nt = theta.kernel(f);
                crate::invariant!(
                    nt.rows == fac.deg(),
                    "transposed kernel has a different dimension"
                );
                let gens_t: Vec<Mat> = rep.gens.iter().map(|m| m.transpose()).collect();
                let u = spin(nt.row(0), &gens_t, f);
                if u.dim() == d {
                    return Ok(SplitOutcome::Irreducible);
                }
                crate::invariant!(u.dim() > 0, "dual spin vanished");
                let ann = u.basis().kernel(f);
                let rows: Vec<Vec<Fe>> = (0..ann.rows).map(|i| ann.row_vec(i)).collect();
                let w = Subspace::from_rows(&rows, d, f);
                crate::invariant!(
                    w.dim() > 0 && w.dim() < d && is_stable(&w, &rep.gens, f),
                    "annihilator of a dual submodule must be a proper submodule"
                );
                return Ok(SplitOutcome::Proper(w));
            }
        }
    }
    Err(Error::MeatAxeStalled {
        attempts: MAX_ATTEMPTS,
    })
}

/// All composition factors of the module, with repetition, in the order
/// the recursive splitting finds them.
pub fn chop(
    rep: &Representation,
    f: &Field,
    rng: &mut SplitMix64,
) -> Result<Vec<Representation>, Error> {
    match try_split(rep, f, rng)? {
        SplitOutcome::Irreducible => Ok(vec![rep.clone()]),
        SplitOutcome::Proper(w) => {
            let mut out = chop(&submodule_rep(rep, &w, f)?, f, rng)?;
            out.extend(chop(&quotient_rep(rep, &w, f)?, f, rng)?);
            Ok(out)
        }
    }
}

/// A module map X with a(g) X = X b(g) for all generators, if one exists
/// with full rank. For simple modules over a splitting field this decides
/// isomorphism.
pub fn intertwiner(a: &Representation, b: &Representation, f: &Field) -> Option<Mat> {
    if a.dim != b.dim || a.gen_elems != b.gen_elems {
        return None;
    }
    let d = a.dim;
    let mut rows = Vec::with_capacity(a.gens.len() * d * d);
    for (am, bm) in a.gens.iter().zip(&b.gens) {
        for i in 0..d {
            for j in 0..d {
                let mut row = vec![0; d * d];
                for k in 0..d {
                    row[k * d + j] = f.add(row[k * d + j], am.at(i, k));
                }
                for l in 0..d {
                    row[i * d + l] = f.sub(row[i * d + l], bm.at(l, j));
                }
                rows.push(row);
            }
        }
    }
    let ker = Mat::from_rows(rows).kernel(f);
    for r in 0..ker.rows {
        let mut x = Mat::zeros(d, d);
        for k in 0..d {
            for l in 0..d {
                x.set(k, l, ker.at(r, k * d + l));
            }
        }
        if x.rank(f) == d {
            return Some(x);
        }
    }
    None
}

pub fn is_isomorphic(a: &Representation, b: &Representation, f: &Field) -> bool {
    intertwiner(a, b, f).is_some()
}

/// The simple modules of one block with their composition multiplicities
/// in the block algebra, sorted by (dimension, Brauer character values at
/// the p-regular class representatives).
pub struct BlockModules {
    pub simples: Vec<Representation>,
    pub multiplicities: Vec<usize>,
    /// Character values at p-regular class representatives, in global
    /// class order.
    pub fingerprints: Vec<Vec<Fe>>,
}

pub fn simples_of_block(
    alg: &Algebra,
    block: &Block,
    rng: &mut SplitMix64,
) -> Result<BlockModules, Error> {
    let f = alg.field;
    let g = alg.group;
    let reg = rep::regular_rep_of_block(alg, block)?;
    let comps = chop(&reg, f, rng)?;
    let mut simples: Vec<Representation> = Vec::new();
    let mut multiplicities: Vec<usize> = Vec::new();
    for c in comps {
        match simples.iter().position(|s| is_isomorphic(s, &c, f)) {
            Some(i) => multiplicities[i] += 1,
            None => {
                simples.push(c);
                multiplicities.push(1);
            }
        }
    }
    let total: usize = simples
        .iter()
        .zip(&multiplicities)
        .map(|(s, &m)| s.dim * m)
        .sum();
    crate::invariant!(
        total == block.dim,
        "composition factors do not fill the block algebra"
    );

    let prc = alg.p_regular_class_indices();
    let fingerprints: Vec<Vec<Fe>> = simples
        .iter()
        .map(|s| {
            prc.iter()
                .map(|&ci| s.character_at(g, f, alg.classes()[ci].rep))
                .collect()
        })
        .collect();
    let mut order: Vec<usize> = (0..simples.len()).collect();
    order.sort_by(|&i, &j| {
        (simples[i].dim, &fingerprints[i]).cmp(&(simples[j].dim, &fingerprints[j]))
    });
    for w in order.windows(2) {
        crate::invariant!(
            (simples[w[0]].dim, &fingerprints[w[0]]) != (simples[w[1]].dim, &fingerprints[w[1]]),
            "two simple modules share dimension and Brauer character"
        );
    }
    let simples_s: Vec<Representation> = order.iter().map(|&i| simples[i].clone()).collect();
    let mult_s: Vec<usize> = order.iter().map(|&i| multiplicities[i]).collect();
    let fp_s: Vec<Vec<Fe>> = order.iter().map(|&i| fingerprints[i].clone()).collect();
    Ok(BlockModules {
        simples: simples_s,
        multiplicities: mult_s,
        fingerprints: fp_s,
    })
}
