//! Matrix representations over a finite field. Modules are row spaces: a
//! vector v is acted on by v * rho(g), and rho(gh) = rho(g) rho(h).

use std::sync::OnceLock;

use crate::algebra::Algebra;
use crate::blocks::Block;
use crate::error::Error;
use crate::field::{Fe, Field};
use crate::group::FiniteGroup;
use crate::matrix::Mat;

/// A representation given by the matrices of a generating set. The full
/// image table is built lazily when an arbitrary element's matrix is
/// needed.
#[derive(Debug)]
pub struct Representation {
    pub dim: usize,
    /// Group element indices (in the owning group) of the generators.
    pub gen_elems: Vec<usize>,
    /// Their matrices, in the same order.
    pub gens: Vec<Mat>,
    images: OnceLock<Vec<Mat>>,
}

impl Clone for Representation {
    fn clone(&self) -> Self {
        Representation {
            dim: self.dim,
            gen_elems: self.gen_elems.clone(),
            gens: self.gens.clone(),
            images: OnceLock::new(),
        }
    }
}

impl Representation {
    pub fn new(dim: usize, gen_elems: Vec<usize>, gens: Vec<Mat>) -> Representation {
        assert_eq!(gen_elems.len(), gens.len());
        for m in &gens {
            assert_eq!((m.rows, m.cols), (dim, dim));
        }
        Representation {
            dim,
            gen_elems,
            gens,
            images: OnceLock::new(),
        }
    }

    /// Matrices for all group elements, built by closing the generator
    /// images over the multiplication table.
    pub fn images(&self, g: &FiniteGroup, f: &Field) -> &[Mat] {
        self.images.get_or_init(|| {
            let mut table: Vec<Option<Mat>> = vec![None; g.order()];
            table[0] = Some(Mat::identity(self.dim));
            let mut frontier = vec![0usize];
            while let Some(x) = frontier.pop() {
                for (t, gen) in self.gen_elems.iter().enumerate() {
                    let y = g.mul(x, *gen);
                    if table[y].is_none() {
                        let m = table[x].as_ref().unwrap().mul(&self.gens[t], f);
                        table[y] = Some(m);
                        frontier.push(y);
                    }
                }
            }
            table
                .into_iter()
                .map(|m| m.expect("generators reach every element"))
                .collect()
        })
    }

    pub fn image(&self, g: &FiniteGroup, f: &Field, x: usize) -> &Mat {
        &self.images(g, f)[x]
    }

    /// Trace of the matrix of element x.
    pub fn character_at(&self, g: &FiniteGroup, f: &Field, x: usize) -> Fe {
        self.image(g, f, x).trace(f)
    }

    /// The same module viewed over a subset of elements (for restriction
    /// to a subgroup, pass the subgroup's generators).
    pub fn restricted_to(&self, g: &FiniteGroup, f: &Field, elems: &[usize]) -> Representation {
        let gens = elems.iter().map(|&x| self.image(g, f, x).clone()).collect();
        Representation::new(self.dim, elems.to_vec(), gens)
    }

    /// Check rho(x) rho(y) = rho(xy) for all pairs; test support.
    pub fn is_homomorphism(&self, g: &FiniteGroup, f: &Field) -> bool {
        let imgs = self.images(g, f);
        for x in 0..g.order() {
            for y in 0..g.order() {
                if imgs[x].mul(&imgs[y], f) != imgs[g.mul(x, y)] {
                    return false;
                }
            }
        }
        true
    }
}

/// The one-dimensional trivial representation.
pub fn trivial_representation(g: &FiniteGroup) -> Representation {
    let gens = g
        .generators()
        .iter()
        .map(|_| Mat::identity(1))
        .collect::<Vec<_>>();
    Representation::new(1, g.generators().to_vec(), gens)
}

/// The block algebra b kG as a right kG-module under multiplication,
/// with basis the echelon basis of the block's row space.
pub fn regular_rep_of_block(alg: &Algebra, block: &Block) -> Result<Representation, Error> {
    let g = alg.group;
    let f = alg.field;
    let span = &block.span;
    let d = span.dim();
    let mut gens = Vec::with_capacity(g.generators().len());
    for &gen in g.generators() {
        let gi = g.inv(gen);
        let mut rows = Vec::with_capacity(d);
        for i in 0..d {
            let b = span.basis().row(i);
            // (v g)[y] = v[y g^{-1}]
            let moved: Vec<Fe> = (0..g.order()).map(|y| b[g.mul(y, gi)]).collect();
            let coords = span.coords(&moved, f).ok_or_else(|| {
                Error::InvariantViolation("block span is not right-invariant".into())
            })?;
            rows.push(coords);
        }
        gens.push(Mat::from_rows(rows));
    }
    Ok(Representation::new(d, g.generators().to_vec(), gens))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blocks;
    use crate::named;
    use crate::rng::SplitMix64;
    use crate::subgroup;

    fn block_rep(name: &str, p: u32, m: u32, which: usize) -> (FiniteGroup, Field, Representation) {
        let g = named::by_name(name).unwrap();
        let f = Field::new(p, m).unwrap();
        let rep = {
            let alg = Algebra::new(&g, &f);
            let subs = subgroup::p_subgroups_up_to_conjugacy(&g, p).unwrap();
            let mut rng = SplitMix64::new(7);
            let blocks = blocks::decompose(&alg, &subs, &mut rng).unwrap();
            regular_rep_of_block(&alg, &blocks[which]).unwrap()
        };
        (g, f, rep)
    }

    #[test]
    fn q8_regular_block_is_a_homomorphism() {
        let (g, f, rep) = block_rep("q8", 2, 1, 0);
        assert_eq!(rep.dim, 8);
        assert!(rep.is_homomorphism(&g, &f));
        assert_eq!(rep.character_at(&g, &f, 0), f.embed_int(8));
    }

    #[test]
    fn s3_principal_block_rep() {
        let (g, f, rep) = block_rep("s3", 2, 1, 0);
        assert_eq!(rep.dim, 2);
        assert!(rep.is_homomorphism(&g, &f));
        // Restriction to a subgroup keeps the action matrices.
        let c2 = subgroup::Subgroup::generated(&g, &[1]);
        let res = rep.restricted_to(&g, &f, c2.gens());
        assert_eq!(res.dim, 2);
        assert_eq!(res.gens[0], *rep.image(&g, &f, 1));
    }

    #[test]
    fn s3_nonprincipal_block_rep_dimension() {
        let (g, f, rep) = block_rep("s3", 2, 1, 1);
        assert_eq!(rep.dim, 4);
        assert!(rep.is_homomorphism(&g, &f));
    }

    #[test]
    fn trivial_rep_of_s4() {
        let g = named::by_name("s4").unwrap();
        let f = Field::new(2, 1).unwrap();
        let t = trivial_representation(&g);
        assert!(t.is_homomorphism(&g, &f));
        for x in 0..g.order() {
            assert_eq!(t.character_at(&g, &f, x), f.one());
        }
    }

    #[test]
    fn clone_resets_image_cache_but_matches() {
        let (g, f, rep) = block_rep("s3", 3, 1, 0);
        let _ = rep.images(&g, &f);
        let c = rep.clone();
        for x in 0..g.order() {
            assert_eq!(rep.image(&g, &f, x), c.image(&g, &f, x));
        }
    }
}
