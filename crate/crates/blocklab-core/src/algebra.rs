//! The group algebra kG as dense coefficient vectors over the element
//! basis, plus the center-related operations the block machinery needs:
//! class sums, conjugation, truncation, and relative traces.

use crate::error::Error;
use crate::field::{Fe, Field};
use crate::group::{ConjClass, FiniteGroup};
use crate::subgroup::{self, Subgroup};

/// A group-algebra element: coefficient vector indexed by group element.
pub type El = Vec<Fe>;

pub struct Algebra<'a> {
    pub group: &'a FiniteGroup,
    pub field: &'a Field,
    classes: Vec<ConjClass>,
    class_of: Vec<usize>,
}

impl<'a> Algebra<'a> {
    pub fn new(group: &'a FiniteGroup, field: &'a Field) -> Algebra<'a> {
        let classes = group.conjugacy_classes(field.p());
        let mut class_of = vec![0usize; group.order()];
        for (ci, c) in classes.iter().enumerate() {
            for &m in &c.members {
                class_of[m] = ci;
            }
        }
        Algebra {
            group,
            field,
            classes,
            class_of,
        }
    }

    pub fn p(&self) -> u32 {
        self.field.p()
    }

    pub fn classes(&self) -> &[ConjClass] {
        &self.classes
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    /// Indices (into `classes`) of the p-regular classes.
    pub fn p_regular_class_indices(&self) -> Vec<usize> {
        (0..self.classes.len())
            .filter(|&i| self.classes[i].p_regular)
            .collect()
    }

    pub fn p_regular_elements(&self) -> Vec<usize> {
        (0..self.group.order())
            .filter(|&x| self.group.is_p_regular(x, self.p()))
            .collect()
    }

    pub fn zero(&self) -> El {
        vec![0; self.group.order()]
    }

    pub fn one(&self) -> El {
        self.basis(0)
    }

    pub fn basis(&self, x: usize) -> El {
        let mut v = self.zero();
        v[x] = 1;
        v
    }

    pub fn is_zero(&self, a: &El) -> bool {
        a.iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &El, b: &El) -> El {
        a.iter()
            .zip(b.iter())
            .map(|(&x, &y)| self.field.add(x, y))
            .collect()
    }

    pub fn sub(&self, a: &El, b: &El) -> El {
        a.iter()
            .zip(b.iter())
            .map(|(&x, &y)| self.field.sub(x, y))
            .collect()
    }

    pub fn scale(&self, a: &El, c: Fe) -> El {
        a.iter().map(|&x| self.field.mul(x, c)).collect()
    }

    /// Convolution product, skipping zero coefficients.
    pub fn mul(&self, a: &El, b: &El) -> El {
        let mut out = self.zero();
        let f = self.field;
        let g = self.group;
        for (x, &ax) in a.iter().enumerate() {
            if ax == 0 {
                continue;
            }
            for (y, &by) in b.iter().enumerate() {
                if by == 0 {
                    continue;
                }
                let z = g.mul(x, y);
                out[z] = f.add(out[z], f.mul(ax, by));
            }
        }
        out
    }

    pub fn support(&self, a: &El) -> Vec<usize> {
        (0..a.len()).filter(|&x| a[x] != 0).collect()
    }

    /// Sum of the elements of class `ci`.
    pub fn class_sum(&self, ci: usize) -> El {
        let mut v = self.zero();
        for &m in &self.classes[ci].members {
            v[m] = 1;
        }
        v
    }

    /// t^{-1} a t as an algebra element.
    pub fn conj_el(&self, a: &El, t: usize) -> El {
        let mut out = self.zero();
        for (x, &c) in a.iter().enumerate() {
            if c != 0 {
                out[self.group.conj(x, t)] = c;
            }
        }
        out
    }

    pub fn is_central(&self, a: &El) -> bool {
        (0..self.group.order()).all(|t| &self.conj_el(a, t) == a)
    }

    /// Class-coordinate vector of a central element (coefficient at each
    /// class representative); checks class-constancy.
    pub fn central_coords(&self, a: &El) -> Result<Vec<Fe>, Error> {
        let mut coords = Vec::with_capacity(self.classes.len());
        for c in &self.classes {
            let v = a[c.rep];
            crate::invariant!(
                c.members.iter().all(|&m| a[m] == v),
                "element is not constant on a conjugacy class"
            );
            coords.push(v);
        }
        Ok(coords)
    }

    pub fn from_central_coords(&self, coords: &[Fe]) -> El {
        assert_eq!(coords.len(), self.classes.len());
        let mut v = self.zero();
        for (ci, c) in self.classes.iter().enumerate() {
            if coords[ci] != 0 {
                for &m in &c.members {
                    v[m] = coords[ci];
                }
            }
        }
        v
    }

    /// Zero out all coefficients outside the given member set.
    pub fn truncate_to(&self, a: &El, members: &[usize]) -> El {
        let mut out = self.zero();
        for &m in members {
            out[m] = a[m];
        }
        out
    }

    /// Zero out coefficients on p-singular elements.
    pub fn truncate_p_regular(&self, a: &El) -> El {
        let p = self.p();
        let mut out = a.clone();
        for x in 0..self.group.order() {
            if !self.group.is_p_regular(x, p) {
                out[x] = 0;
            }
        }
        out
    }

    pub fn is_p_regular_supported(&self, a: &El) -> bool {
        let p = self.p();
        (0..self.group.order()).all(|x| a[x] == 0 || self.group.is_p_regular(x, p))
    }

    /// Is `a` fixed by conjugation by every element of `h`?
    pub fn is_invariant_under(&self, a: &El, h: &Subgroup) -> bool {
        h.gens().iter().all(|&t| &self.conj_el(a, t) == a)
    }

    /// Relative trace from H to K (H <= K): sum of conjugates over right
    /// coset representatives of H in K. Requires `a` to be H-invariant.
    pub fn relative_trace(&self, a: &El, h: &Subgroup, k: &Subgroup) -> Result<El, Error> {
        if !self.is_invariant_under(a, h) {
            return Err(Error::NotInvariant);
        }
        let reps = subgroup::right_coset_reps_in(self.group, h, k);
        let mut out = self.zero();
        for r in reps {
            let c = self.conj_el(a, r);
            out = self.add(&out, &c);
        }
        Ok(out)
    }

    pub fn relative_trace_to_whole(&self, a: &El, h: &Subgroup) -> Result<El, Error> {
        self.relative_trace(a, h, &Subgroup::whole(self.group))
    }

    /// Orbit sums of `elements` under conjugation by `h`, each as an
    /// algebra element, ordered by smallest orbit member.
    pub fn orbit_sums_under(&self, h: &Subgroup, elements: &[usize]) -> Vec<El> {
        let mut remaining: Vec<usize> = elements.to_vec();
        remaining.sort_unstable();
        let mut out = Vec::new();
        let mut used = vec![false; self.group.order()];
        for &x in &remaining {
            if used[x] {
                continue;
            }
            let mut sum = self.zero();
            for &t in h.members() {
                let y = self.group.conj(x, t);
                if !used[y] {
                    used[y] = true;
                    sum[y] = 1;
                }
            }
            out.push(sum);
        }
        out
    }

    /// x^(p^t) by t successive p-th powers.
    pub fn pth_power_iterated(&self, a: &El, t: u32) -> El {
        let p = self.p();
        let mut acc = a.clone();
        for _ in 0..t {
            // acc <- acc^p by square-and-multiply on the exponent p.
            let mut r = self.one();
            let mut base = acc.clone();
            let mut e = p;
            while e > 0 {
                if e & 1 == 1 {
                    r = self.mul(&r, &base);
                }
                e >>= 1;
                if e > 0 {
                    base = self.mul(&base, &base);
                }
            }
            acc = r;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;

    #[test]
    fn convolution_matches_group_multiplication() {
        let g = named::by_name("s3").unwrap();
        let f = Field::new(2, 1).unwrap();
        let a = Algebra::new(&g, &f);
        for x in 0..6 {
            for y in 0..6 {
                let prod = a.mul(&a.basis(x), &a.basis(y));
                assert_eq!(prod, a.basis(g.mul(x, y)));
            }
        }
    }

    #[test]
    fn class_sums_are_central_and_multiply_centrally() {
        let g = named::by_name("s4").unwrap();
        let f = Field::new(3, 1).unwrap();
        let a = Algebra::new(&g, &f);
        for ci in 0..a.classes().len() {
            let s = a.class_sum(ci);
            assert!(a.is_central(&s));
        }
        let s1 = a.class_sum(1);
        let s2 = a.class_sum(2);
        let prod = a.mul(&s1, &s2);
        assert!(a.is_central(&prod));
        assert_eq!(a.mul(&s1, &s2), a.mul(&s2, &s1));
        let coords = a.central_coords(&prod).unwrap();
        assert_eq!(a.from_central_coords(&coords), prod);
    }

    #[test]
    fn s3_class_sum_square_identity() {
        // Over GF(2): (sum of 3-cycles)^2 = 2e + (sum of 3-cycles) = itself.
        let g = named::by_name("s3").unwrap();
        let f = Field::new(2, 1).unwrap();
        let a = Algebra::new(&g, &f);
        let three_cycles: Vec<usize> = (0..6).filter(|&x| g.order_of(x) == 3).collect();
        let ci = a.class_of(three_cycles[0]);
        let c = a.class_sum(ci);
        assert_eq!(a.mul(&c, &c), c);
    }

    #[test]
    fn relative_trace_of_identity_scales_by_index() {
        let g = named::by_name("s3").unwrap();
        let f = Field::new(2, 1).unwrap();
        let a = Algebra::new(&g, &f);
        // Tr from C2 to G of e = [G:C2] e = 3e = e over GF(2).
        let t = (1..6).find(|&x| g.order_of(x) == 2).unwrap();
        let c2 = Subgroup::generated(&g, &[t]);
        let tr = a.relative_trace_to_whole(&a.one(), &c2).unwrap();
        assert_eq!(tr, a.one());
        // Tr from the trivial subgroup of a 3-cycle = centralizer-order
        // times its class sum: 3 * class sum = class sum over GF(2).
        let x3 = (1..6).find(|&x| g.order_of(x) == 3).unwrap();
        let tr = a
            .relative_trace_to_whole(&a.basis(x3), &Subgroup::trivial())
            .unwrap();
        assert_eq!(tr, a.class_sum(a.class_of(x3)));
    }

    #[test]
    fn trace_transitivity() {
        let g = named::by_name("s4").unwrap();
        let f = Field::new(2, 1).unwrap();
        let a = Algebra::new(&g, &f);
        let syl = crate::subgroup::sylow_subgroup(&g, 2);
        let v4 = crate::structure::o_p(&g, 2);
        assert!(v4.is_subgroup_of(&syl));
        // Tr_{V4}^G = Tr_{Syl}^G of Tr_{V4}^{Syl} on a V4-invariant element.
        let el = a.one();
        let direct = a.relative_trace_to_whole(&el, &v4).unwrap();
        let step = a.relative_trace(&el, &v4, &syl).unwrap();
        let composed = a.relative_trace_to_whole(&step, &syl).unwrap();
        assert_eq!(direct, composed);
    }

    #[test]
    fn orbit_sums_partition() {
        let g = named::by_name("s3").unwrap();
        let f = Field::new(2, 1).unwrap();
        let a = Algebra::new(&g, &f);
        let t = (1..6).find(|&x| g.order_of(x) == 2).unwrap();
        let c2 = Subgroup::generated(&g, &[t]);
        let regular = a.p_regular_elements();
        assert_eq!(regular.len(), 3); // e and the two 3-cycles
        let sums = a.orbit_sums_under(&c2, &regular);
        // Orbits: {e} and {the two 3-cycles} (conjugation by t inverts).
        assert_eq!(sums.len(), 2);
        let total: El = sums.iter().fold(a.zero(), |acc, s| a.add(&acc, s));
        let mut expect = a.zero();
        for &x in &regular {
            expect[x] = 1;
        }
        assert_eq!(total, expect);
    }

    #[test]
    fn pth_power_iterated_matches_repeated_multiplication() {
        let g = named::by_name("s3").unwrap();
        let f = Field::new(3, 1).unwrap();
        let a = Algebra::new(&g, &f);
        let mut el = a.class_sum(1);
        el = a.add(&el, &a.scale(&a.class_sum(2), 2));
        // el^3 by brute force.
        let cube = a.mul(&a.mul(&el, &el), &el);
        assert_eq!(a.pth_power_iterated(&el, 1), cube);
        let nine = a.mul(&a.mul(&cube, &cube), &cube);
        assert_eq!(a.pth_power_iterated(&el, 2), nine);
    }

    #[test]
    fn truncation_and_regular_support() {
        let g = named::by_name("s3").unwrap();
        let f = Field::new(2, 1).unwrap();
        let a = Algebra::new(&g, &f);
        let mut el = a.zero();
        for x in 0..6 {
            el[x] = 1;
        }
        let reg = a.truncate_p_regular(&el);
        assert!(a.is_p_regular_supported(&reg));
        assert_eq!(a.support(&reg).len(), 3);
        let t = (1..6).find(|&x| g.order_of(x) == 2).unwrap();
        let c = crate::subgroup::centralizer_of_set(&g, &[t]);
        let tr = a.truncate_to(&el, c.members());
        assert_eq!(a.support(&tr).len(), 2);
    }
}
