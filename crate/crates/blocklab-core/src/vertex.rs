//! Vertices of modules by Higman's criterion: a module is projective
//! relative to Q exactly when the identity endomorphism is a relative
//! trace from Q; the vertex is the smallest such Q up to conjugacy.

use crate::error::Error;
use crate::field::{Fe, Field};
use crate::group::FiniteGroup;
use crate::matrix::Mat;
use crate::rep::Representation;
use crate::subgroup::{self, Subgroup};

/// Outcome of the vertex search for one module, with checkable data: a
/// certificate endomorphism whose relative trace is the identity, and for
/// each maximal subgroup of the vertex a functional killing every relative
/// trace while not killing the identity.
#[derive(Clone, Debug)]
pub struct VertexData {
    /// Index of the vertex class in the shared p-subgroup list.
    pub q_index: usize,
    pub vertex_order: usize,
    /// Coefficients over the Q-endomorphism basis whose trace is the
    /// identity.
    pub certificate: Vec<Fe>,
    pub endo_basis_dim: usize,
    pub minimality_witnesses: Vec<MinimalityWitness>,
}

#[derive(Clone, Debug)]
pub struct MinimalityWitness {
    pub subgroup_order: usize,
    /// A vector orthogonal to every relative trace from that subgroup but
    /// not to the identity matrix (both flattened row-major).
    pub functional: Vec<Fe>,
}

/// Basis of { X : rho(q) X = X rho(q) for q in gens }. With no generators
/// this is all of the matrix ring.
fn endo_basis(images: &[Mat], q_gens: &[usize], d: usize, f: &Field) -> Vec<Mat> {
    if q_gens.is_empty() {
        let mut out = Vec::with_capacity(d * d);
        for k in 0..d {
            for l in 0..d {
                let mut e = Mat::zeros(d, d);
                e.set(k, l, 1);
                out.push(e);
            }
        }
        return out;
    }
    let mut rows = Vec::with_capacity(q_gens.len() * d * d);
    for &qg in q_gens {
        let m = &images[qg];
        for i in 0..d {
            for j in 0..d {
                let mut row = vec![0; d * d];
                for k in 0..d {
                    row[k * d + j] = f.add(row[k * d + j], m.at(i, k));
                }
                for l in 0..d {
                    row[i * d + l] = f.sub(row[i * d + l], m.at(l, j));
                }
                rows.push(row);
            }
        }
    }
    let ker = Mat::from_rows(rows).kernel(f);
    (0..ker.rows)
        .map(|r| {
            let mut x = Mat::zeros(d, d);
            for k in 0..d {
                for l in 0..d {
                    x.set(k, l, ker.at(r, k * d + l));
                }
            }
            x
        })
        .collect()
}

/// Relative trace from Q to G of an endomorphism: sum of conjugates over
/// right coset representatives.
fn rel_trace(
    g: &FiniteGroup,
    f: &Field,
    images: &[Mat],
    q: &Subgroup,
    x: &Mat,
) -> Mat {
    let d = x.rows;
    let mut acc = Mat::zeros(d, d);
    for r in subgroup::right_coset_reps(g, q) {
        let conj = images[g.inv(r)].mul(x, f).mul(&images[r], f);
        acc = acc.add(&conj, f);
    }
    acc
}

/// The scalar lambda with t = lambda * id, if t is scalar.
fn as_scalar(t: &Mat, f: &Field) -> Option<Fe> {
    let lam = t.at(0, 0);
    for i in 0..t.rows {
        for j in 0..t.cols {
            let want = if i == j { lam } else { f.zero() };
            if t.at(i, j) != want {
                return None;
            }
        }
    }
    Some(lam)
}

pub fn vertex_of(
    g: &FiniteGroup,
    f: &Field,
    rep: &Representation,
    p: u32,
    p_subgroups: &[Subgroup],
) -> Result<VertexData, Error> {
    let d = rep.dim;
    let images = rep.images(g, f);
    let nq = p_subgroups.len();

    // lambda-values of the relative traces of an endomorphism basis; the
    // module is Q-projective exactly when one of them is nonzero, because
    // every relative trace is a G-endomorphism, hence scalar here.
    let trace_scalars = |q: &Subgroup| -> Result<(Vec<Mat>, Vec<Fe>), Error> {
        let basis = endo_basis(images, q.gens(), d, f);
        let mut lams = Vec::with_capacity(basis.len());
        for x in &basis {
            let t = rel_trace(g, f, images, q, x);
            let lam = as_scalar(&t, f).ok_or_else(|| {
                Error::InvariantViolation(
                    "relative trace of an endomorphism is not scalar; module not absolutely simple"
                        .into(),
                )
            })?;
            lams.push(lam);
        }
        Ok((basis, lams))
    };

    let mut flags = vec![false; nq];
    let mut found: Option<(usize, Vec<Fe>)> = None; // (q index, certificate)
    for (qi, q) in p_subgroups.iter().enumerate() {
        let (basis, lams) = trace_scalars(q)?;
        let hit = lams.iter().position(|&l| l != 0);
        flags[qi] = hit.is_some();
        if let (Some(h), None) = (hit, &found) {
            let mut cert = vec![0; basis.len()];
            cert[h] = f.inv(lams[h]);
            // Verify the certificate by recomputation.
            let mut endo = Mat::zeros(d, d);
            for (c, x) in cert.iter().zip(&basis) {
                if *c != 0 {
                    endo = endo.add(&x.scale(*c, f), f);
                }
            }
            let t = rel_trace(g, f, images, q, &endo);
            crate::invariant!(
                t == Mat::identity(d),
                "certificate endomorphism does not trace to the identity"
            );
            found = Some((qi, cert));
        }
    }
    let (q_index, certificate) =
        found.ok_or_else(|| Error::InvariantViolation("module not even Sylow-projective".into()))?;
    let vx = &p_subgroups[q_index];

    // The projective classes must be exactly those above the vertex.
    for (qi, q) in p_subgroups.iter().enumerate() {
        let expected = subgroup::conjugate_into(g, vx, q).is_some();
        crate::invariant!(
            flags[qi] == expected,
            "relative projectivity is not the up-set of the vertex"
        );
    }
    let op = crate::structure::o_p(g, p);
    crate::invariant!(
        subgroup::conjugate_into(g, &op, vx).is_some(),
        "vertex does not contain the p-core"
    );

    // For each maximal subgroup of the vertex: a functional annihilating
    // all relative traces but not the identity.
    let mut minimality_witnesses = Vec::new();
    let vec_id: Vec<Fe> = {
        let id = Mat::identity(d);
        (0..d * d).map(|k| id.at(k / d, k % d)).collect()
    };
    for r in subgroup::maximal_subgroups_of_p_group(g, vx, p)? {
        let basis = endo_basis(images, r.gens(), d, f);
        let mut rows = Vec::with_capacity(basis.len());
        for x in &basis {
            let t = rel_trace(g, f, images, &r, x);
            rows.push((0..d * d).map(|k| t.at(k / d, k % d)).collect::<Vec<_>>());
        }
        let span = Mat::from_rows(rows);
        let ker = span.kernel(f);
        let witness = (0..ker.rows)
            .map(|i| ker.row_vec(i))
            .find(|w| {
                let dot = w
                    .iter()
                    .zip(&vec_id)
                    .fold(f.zero(), |acc, (&a, &b)| f.add(acc, f.mul(a, b)));
                dot != f.zero()
            })
            .ok_or_else(|| {
                Error::InvariantViolation(
                    "identity is a relative trace from a maximal subgroup of the vertex".into(),
                )
            })?;
        minimality_witnesses.push(MinimalityWitness {
            subgroup_order: r.order(),
            functional: witness,
        });
    }

    Ok(VertexData {
        q_index,
        vertex_order: vx.order(),
        certificate,
        endo_basis_dim: endo_basis(images, vx.gens(), d, f).len(),
        minimality_witnesses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;
    use crate::blocks;
    use crate::meataxe;
    use crate::named;
    use crate::rng::SplitMix64;

    fn vertices_by_block(name: &str, p: u32, m: u32) -> Vec<Vec<(usize, usize, bool)>> {
        // per block: (simple dim, vertex order, vertex normal in G)
        let g = named::by_name(name).unwrap();
        let f = Field::new(p, m).unwrap();
        let alg = Algebra::new(&g, &f);
        let subs = subgroup::p_subgroups_up_to_conjugacy(&g, p).unwrap();
        let mut rng = SplitMix64::new(7);
        let blocks = blocks::decompose(&alg, &subs, &mut rng).unwrap();
        blocks
            .iter()
            .map(|b| {
                let bm = meataxe::simples_of_block(&alg, b, &mut rng).unwrap();
                bm.simples
                    .iter()
                    .map(|s| {
                        let v = vertex_of(&g, &f, s, p, &subs).unwrap();
                        (
                            s.dim,
                            v.vertex_order,
                            subs[v.q_index].is_normal_in_whole(&g),
                        )
                    })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn s3_mod_2_vertices() {
        let got = vertices_by_block("s3", 2, 1);
        assert_eq!(got[0], vec![(1, 2, false)]);
        assert_eq!(got[1], vec![(2, 1, true)]);
    }

    #[test]
    fn s4_mod_2_vertices() {
        // Trivial module: Sylow vertex. Two-dimensional simple: the
        // normal Klein four group, which acts trivially on it.
        let got = vertices_by_block("s4", 2, 2);
        assert_eq!(got[0], vec![(1, 8, false), (2, 4, true)]);
    }

    #[test]
    fn a4_mod_2_vertices() {
        let got = vertices_by_block("a4", 2, 2);
        assert_eq!(got[0], vec![(1, 4, true), (1, 4, true), (1, 4, true)]);
    }

    #[test]
    fn sl23_mod_3_vertices() {
        let got = vertices_by_block("sl23", 3, 2);
        assert_eq!(got[0], vec![(1, 3, false)]);
        assert_eq!(got[1], vec![(2, 3, false)]);
        assert_eq!(got[2], vec![(3, 1, true)]);
    }

    #[test]
    fn a5_mod_2_vertices_match_abelian_defect() {
        let got = vertices_by_block("a5", 2, 4);
        assert_eq!(
            got[0],
            vec![(1, 4, false), (2, 4, false), (2, 4, false)]
        );
        assert_eq!(got[1], vec![(4, 1, true)]);
    }

    #[test]
    fn certificate_and_witness_shapes() {
        let g = named::by_name("s3").unwrap();
        let f = Field::new(2, 1).unwrap();
        let triv = crate::rep::trivial_representation(&g);
        let subs = subgroup::p_subgroups_up_to_conjugacy(&g, 2).unwrap();
        let v = vertex_of(&g, &f, &triv, 2, &subs).unwrap();
        assert_eq!(v.vertex_order, 2);
        assert_eq!(v.certificate.len(), v.endo_basis_dim);
        // One maximal subgroup below a C2 vertex: the trivial group.
        assert_eq!(v.minimality_witnesses.len(), 1);
        assert_eq!(v.minimality_witnesses[0].subgroup_order, 1);
    }
}
