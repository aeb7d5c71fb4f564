use std::collections::HashMap;

use crate::error::Error;
use crate::subgroup::Subgroup;

/// Default ceiling on group order for closure construction.
pub const DEFAULT_ORDER_CAP: usize = 1000;

/// Permutation generators kept for I/O and reproduction of the group.
#[derive(Clone, Debug)]
pub struct PermGens {
    pub degree: usize,
    pub images: Vec<Vec<usize>>,
}

/// A finite group as a full multiplication table on indices `0..order`,
/// with the identity always at index 0.
#[derive(Clone)]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    elem_order: Vec<u32>,
    /// Indices of a generating set (possibly empty for the trivial group).
    generators: Vec<usize>,
    perm: Option<PermGens>,
    name: String,
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.name, self.order)
    }
}

/// A conjugacy class: sorted member indices and the smallest member as
/// representative. `p_regular` records whether the order of the members is
/// prime to the ambient prime.
#[derive(Clone, Debug)]
pub struct ConjClass {
    pub rep: usize,
    pub members: Vec<usize>,
    pub p_regular: bool,
}

impl ConjClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    // Points act on the right: x^(ab) = (x^a)^b.
    a.iter().map(|&x| b[x]).collect()
}

impl FiniteGroup {
    /// Closure of permutation generators on `degree` points, capped.
    pub fn from_generators(degree: usize, gens: &[Vec<usize>]) -> Result<FiniteGroup, Error> {
        Self::from_generators_capped(degree, gens, DEFAULT_ORDER_CAP)
    }

    pub fn from_generators_capped(
        degree: usize,
        gens: &[Vec<usize>],
        cap: usize,
    ) -> Result<FiniteGroup, Error> {
        assert!(degree >= 1, "degree must be positive");
        for (index, g) in gens.iter().enumerate() {
            if g.len() != degree {
                return Err(Error::BadGeneratorLength {
                    index,
                    len: g.len(),
                    degree,
                });
            }
            let mut seen = vec![false; degree];
            for &x in g {
                if x >= degree || seen[x] {
                    return Err(Error::NonBijectiveGenerator { index, degree });
                }
                seen[x] = true;
            }
        }

        let identity: Vec<usize> = (0..degree).collect();
        let mut elems: Vec<Vec<usize>> = vec![identity.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
        index.insert(identity, 0);
        let mut frontier = 0;
        while frontier < elems.len() {
            let cur = elems[frontier].clone();
            for g in gens {
                let next = compose(&cur, g);
                if !index.contains_key(&next) {
                    if elems.len() >= cap {
                        return Err(Error::OrderCapExceeded { cap });
                    }
                    index.insert(next.clone(), elems.len());
                    elems.push(next);
                }
            }
            frontier += 1;
        }

        let order = elems.len();
        let mut mul = vec![0u32; order * order];
        for a in 0..order {
            for b in 0..order {
                let prod = compose(&elems[a], &elems[b]);
                mul[a * order + b] = index[&prod] as u32;
            }
        }
        let gen_indices: Vec<usize> = gens.iter().map(|g| index[g]).collect();
        let mut group = FiniteGroup::from_table(order, mul)?;
        group.generators = dedup_preserving(gen_indices);
        group.perm = Some(PermGens {
            degree,
            images: gens.to_vec(),
        });
        Ok(group)
    }

    /// Build from a raw multiplication table with the identity at `identity`;
    /// elements are relabeled so the identity lands at index 0.
    pub fn from_raw_table(order: usize, table: &[usize], identity: usize) -> Result<FiniteGroup, Error> {
        assert_eq!(table.len(), order * order);
        // Relabel: swap identity <-> 0.
        let relabel = |x: usize| -> usize {
            if x == identity {
                0
            } else if x == 0 {
                identity
            } else {
                x
            }
        };
        let mut mul = vec![0u32; order * order];
        for a in 0..order {
            for b in 0..order {
                // new indices a, b correspond to old relabel(a), relabel(b)
                let prod = table[relabel(a) * order + relabel(b)];
                mul[a * order + b] = relabel(prod) as u32;
            }
        }
        let mut g = FiniteGroup::from_table(order, mul)?;
        // Default generating set: grow greedily until the closure is everything.
        g.generators = g.greedy_generators((1..order).collect());
        Ok(g)
    }

    fn from_table(order: usize, mul: Vec<u32>) -> Result<FiniteGroup, Error> {
        // Validate identity, Latin-square property, and inverses. Full
        // associativity is cubic and exercised in tests, not here.
        for a in 0..order {
            if mul[a * order] as usize != a || mul[a] as usize != a {
                return Err(Error::InvariantViolation(format!(
                    "index 0 is not an identity at element {a}"
                )));
            }
        }
        let mut inv = vec![u32::MAX; order];
        for a in 0..order {
            let mut seen = vec![false; order];
            for b in 0..order {
                let ab = mul[a * order + b] as usize;
                if seen[ab] {
                    return Err(Error::InvariantViolation(format!(
                        "row {a} of the multiplication table repeats"
                    )));
                }
                seen[ab] = true;
                if ab == 0 {
                    inv[a] = b as u32;
                }
            }
        }
        if inv.iter().any(|&x| x == u32::MAX) {
            return Err(Error::InvariantViolation("missing inverse".into()));
        }
        let mut elem_order = vec![0u32; order];
        for a in 0..order {
            let mut x = a;
            let mut n = 1;
            while x != 0 {
                x = mul[x * order + a] as usize;
                n += 1;
            }
            elem_order[a] = n;
        }
        elem_order[0] = 1;
        Ok(FiniteGroup {
            order,
            mul,
            inv,
            elem_order,
            generators: vec![],
            perm: None,
            name: String::new(),
        })
    }

    fn greedy_generators(&self, candidates: Vec<usize>) -> Vec<usize> {
        let mut gens = vec![];
        let mut closed = vec![0usize];
        for c in candidates {
            if closed.contains(&c) {
                continue;
            }
            gens.push(c);
            closed = self.closure_of(&gens);
            if closed.len() == self.order {
                break;
            }
        }
        gens
    }

    /// Sorted closure of a set of element indices.
    pub fn closure_of(&self, seed: &[usize]) -> Vec<usize> {
        let mut in_set = vec![false; self.order];
        in_set[0] = true;
        let mut elems = vec![0usize];
        let mut frontier = 0;
        for &s in seed {
            if !in_set[s] {
                in_set[s] = true;
                elems.push(s);
            }
        }
        while frontier < elems.len() {
            let a = elems[frontier];
            for gi in 0..elems.len() {
                let g = elems[gi];
                for prod in [self.mul(a, g), self.mul(g, a)] {
                    if !in_set[prod] {
                        in_set[prod] = true;
                        elems.push(prod);
                    }
                }
                if gi + 1 == elems.len() && frontier + 1 == elems.len() {
                    break;
                }
            }
            frontier += 1;
        }
        elems.sort_unstable();
        elems
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// g^{-1} a g.
    #[inline]
    pub fn conj(&self, a: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), a), g)
    }

    pub fn commutes(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn pow(&self, a: usize, e: i64) -> usize {
        let n = self.elem_order[a] as i64;
        let e = ((e % n) + n) % n;
        let mut acc = 0usize;
        for _ in 0..e {
            acc = self.mul(acc, a);
        }
        acc
    }

    pub fn order_of(&self, a: usize) -> usize {
        self.elem_order[a] as usize
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn set_generators(&mut self, gens: Vec<usize>) {
        self.generators = dedup_preserving(gens);
    }

    pub fn perm_gens(&self) -> Option<&PermGens> {
        self.perm.as_ref()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    pub fn is_p_regular(&self, a: usize, p: u32) -> bool {
        self.order_of(a) % p as usize != 0
    }

    /// Conjugacy classes sorted by smallest member (identity class first),
    /// with p-regularity flags for the given prime.
    pub fn conjugacy_classes(&self, p: u32) -> Vec<ConjClass> {
        let mut assigned = vec![false; self.order];
        let mut classes = Vec::new();
        for x in 0..self.order {
            if assigned[x] {
                continue;
            }
            let mut members = Vec::new();
            for g in 0..self.order {
                let y = self.conj(x, g);
                if !assigned[y] {
                    assigned[y] = true;
                    members.push(y);
                }
            }
            members.sort_unstable();
            classes.push(ConjClass {
                rep: members[0],
                members,
                p_regular: self.is_p_regular(x, p),
            });
        }
        classes.sort_by_key(|c| c.rep);
        assert_eq!(classes[0].rep, 0);
        classes
    }

    /// The direct product A x B (multiplication-table construction; no
    /// permutation images).
    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
        let trivial_action: Vec<Vec<usize>> = (0..b.order()).map(|_| (0..a.order()).collect()).collect();
        let mut g = FiniteGroup::semidirect_product(a, b, &trivial_action).expect("trivial action is valid");
        g.set_name(format!("({})x({})", a.name, b.name));
        g
    }

    /// Semidirect product N x| H for a left action of H on N by
    /// automorphisms: `action[h]` maps each element of N to its image under
    /// the automorphism attached to `h`. Multiplication:
    /// (n1, h1)(n2, h2) = (n1 * action[h1](n2), h1 h2).
    pub fn semidirect_product(
        n: &FiniteGroup,
        h: &FiniteGroup,
        action: &[Vec<usize>],
    ) -> Result<FiniteGroup, Error> {
        let no = n.order();
        let ho = h.order();
        assert_eq!(action.len(), ho, "one automorphism per element of H");
        for (hi, auto) in action.iter().enumerate() {
            assert_eq!(auto.len(), no);
            // Automorphism check: bijective homomorphism fixing identity.
            let mut seen = vec![false; no];
            for &img in auto {
                if img >= no || seen[img] {
                    return Err(Error::InvariantViolation(format!(
                        "action of H element {hi} is not a bijection"
                    )));
                }
                seen[img] = true;
            }
            if auto[0] != 0 {
                return Err(Error::InvariantViolation(format!(
                    "action of H element {hi} moves the identity"
                )));
            }
            for a in 0..no {
                for b in 0..no {
                    if auto[n.mul(a, b)] != n.mul(auto[a], auto[b]) {
                        return Err(Error::InvariantViolation(format!(
                            "action of H element {hi} is not a homomorphism"
                        )));
                    }
                }
            }
        }
        // Action must itself be a homomorphism H -> Aut(N).
        for h1 in 0..ho {
            for h2 in 0..ho {
                let h12 = h.mul(h1, h2);
                for x in 0..no {
                    if action[h12][x] != action[h1][action[h2][x]] {
                        return Err(Error::InvariantViolation(
                            "action is not a homomorphism from H".into(),
                        ));
                    }
                }
            }
        }
        let order = no * ho;
        let idx = |ni: usize, hi: usize| ni * ho + hi;
        let mut table = vec![0usize; order * order];
        for n1 in 0..no {
            for h1 in 0..ho {
                for n2 in 0..no {
                    for h2 in 0..ho {
                        let nn = n.mul(n1, action[h1][n2]);
                        let hh = h.mul(h1, h2);
                        table[idx(n1, h1) * order + idx(n2, h2)] = idx(nn, hh);
                    }
                }
            }
        }
        FiniteGroup::from_raw_table(order, &table, 0)
    }

    /// The subgroup `h` as a standalone group plus the index map back into
    /// this group (position i of the map is the parent index of element i).
    pub fn subgroup_group(&self, h: &Subgroup) -> (FiniteGroup, Vec<usize>) {
        let members = h.members();
        let n = members.len();
        let pos: HashMap<usize, usize> = members.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let mut table = vec![0usize; n * n];
        for i in 0..n {
            for j in 0..n {
                let prod = self.mul(members[i], members[j]);
                table[i * n + j] = *pos.get(&prod).expect("subgroup is closed");
            }
        }
        // members are sorted and contain 0, so the identity is position 0.
        let mut g = FiniteGroup::from_raw_table(n, &table, 0).expect("subgroup table is a group");
        let sub_gens: Vec<usize> = h.gens().iter().map(|&x| pos[&x]).collect();
        if !sub_gens.is_empty() {
            g.set_generators(sub_gens);
        }
        g.set_name(format!("{}|sub{}", self.name, n));
        (g, members.to_vec())
    }

    /// The quotient G/N for normal N: returns the quotient group and the
    /// projection map (element index -> coset index).
    pub fn quotient_group(&self, n: &Subgroup) -> Result<(FiniteGroup, Vec<usize>), Error> {
        crate::invariant!(
            n.is_normal_in_whole(self),
            "quotient by a non-normal subgroup"
        );
        let order = self.order;
        let mut coset_of = vec![usize::MAX; order];
        let mut reps: Vec<usize> = Vec::new();
        for x in 0..order {
            if coset_of[x] != usize::MAX {
                continue;
            }
            let id = reps.len();
            reps.push(x);
            for &h in n.members() {
                coset_of[self.mul(h, x)] = id;
            }
        }
        let qn = reps.len();
        let mut table = vec![0usize; qn * qn];
        for a in 0..qn {
            for b in 0..qn {
                table[a * qn + b] = coset_of[self.mul(reps[a], reps[b])];
            }
        }
        // reps[0] contains element 0, so coset 0 is the identity coset.
        let mut q = FiniteGroup::from_raw_table(qn, &table, 0)?;
        q.set_name(format!("{}/N{}", self.name, n.order()));
        Ok((q, coset_of))
    }
}

fn dedup_preserving(v: Vec<usize>) -> Vec<usize> {
    let mut out = Vec::new();
    for x in v {
        if !out.contains(&x) {
            out.push(x);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;

    #[test]
    fn s3_from_generators() {
        let g = FiniteGroup::from_generators(3, &[vec![1, 0, 2], vec![1, 2, 0]]).unwrap();
        assert_eq!(g.order(), 6);
        // Identity first, inverses correct, orders correct.
        assert_eq!(g.mul(0, 3), 3);
        for a in 0..6 {
            assert_eq!(g.mul(a, g.inv(a)), 0);
            assert!([1, 2, 3].contains(&g.order_of(a)));
        }
    }

    #[test]
    fn trivial_group_from_no_generators() {
        let g = FiniteGroup::from_generators(1, &[]).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.conjugacy_classes(2).len(), 1);
    }

    #[test]
    fn a4_from_two_generators() {
        // (0 1)(2 3) and (0 1 2) generate A4.
        let g = FiniteGroup::from_generators(4, &[vec![1, 0, 3, 2], vec![1, 2, 0, 3]]).unwrap();
        assert_eq!(g.order(), 12);
    }

    #[test]
    fn rejects_non_bijection() {
        let err = FiniteGroup::from_generators(3, &[vec![0, 0, 1]]);
        assert!(matches!(err, Err(Error::NonBijectiveGenerator { .. })));
        let err = FiniteGroup::from_generators(3, &[vec![0, 1]]);
        assert!(matches!(err, Err(Error::BadGeneratorLength { .. })));
    }

    #[test]
    fn closure_cap_enforced() {
        // C12 under cap 10 must fail.
        let gen: Vec<usize> = (0..12).map(|i| (i + 1) % 12).collect();
        let err = FiniteGroup::from_generators_capped(12, &[gen], 10);
        assert!(matches!(err, Err(Error::OrderCapExceeded { cap: 10 })));
    }

    #[test]
    fn associativity_spot_check() {
        let g = named::by_name("s4").unwrap();
        let n = g.order();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
                }
            }
        }
    }

    #[test]
    fn conjugacy_classes_of_s3() {
        let g = named::by_name("s3").unwrap();
        let classes = g.conjugacy_classes(2);
        assert_eq!(classes.len(), 3);
        assert_eq!(classes[0].members, vec![0]);
        let sizes: Vec<usize> = classes.iter().map(|c| c.size()).collect();
        let mut sorted = sizes.clone();
        sorted.sort();
        assert_eq!(sorted, vec![1, 2, 3]);
        // Class sizes sum to the order and divide it.
        assert_eq!(sizes.iter().sum::<usize>(), 6);
        // p-regular flags at p = 2: classes of orders 1 and 3.
        let regular: usize = classes.iter().filter(|c| c.p_regular).count();
        assert_eq!(regular, 2);
    }

    #[test]
    fn class_equation_for_corpus_groups() {
        for name in ["s3", "a4", "d8", "q8", "s4", "a5", "sl23", "f21"] {
            let g = named::by_name(name).unwrap();
            let classes = g.conjugacy_classes(2);
            let total: usize = classes.iter().map(|c| c.size()).sum();
            assert_eq!(total, g.order(), "class equation fails for {name}");
            for c in &classes {
                assert_eq!(g.order() % c.size(), 0, "class size must divide order");
                // All members share the element order.
                let o = g.order_of(c.rep);
                assert!(c.members.iter().all(|&m| g.order_of(m) == o));
            }
        }
    }

    #[test]
    fn direct_product_c2_c3_is_c6() {
        let c2 = named::by_name("c2").unwrap();
        let c3 = named::by_name("c3").unwrap();
        let g = FiniteGroup::direct_product(&c2, &c3);
        assert_eq!(g.order(), 6);
        // Abelian with an element of order 6.
        assert!((0..6).any(|x| g.order_of(x) == 6));
        for a in 0..6 {
            for b in 0..6 {
                assert!(g.commutes(a, b));
            }
        }
    }

    #[test]
    fn semidirect_s3_from_c3_c2() {
        let c3 = named::by_name("c3").unwrap();
        let c2 = named::by_name("c2").unwrap();
        // C2 acts on C3 by inversion.
        let inv_map: Vec<usize> = (0..3).map(|x| c3.inv(x)).collect();
        let id_map: Vec<usize> = (0..3).collect();
        let g = FiniteGroup::semidirect_product(&c3, &c2, &[id_map, inv_map]).unwrap();
        assert_eq!(g.order(), 6);
        // Nonabelian of order 6: S3.
        assert!((0..6).any(|a| (0..6).any(|b| !g.commutes(a, b))));
    }

    #[test]
    fn quotient_s4_by_v4_is_s3() {
        let g = named::by_name("s4").unwrap();
        let v4 = crate::structure::o_p(&g, 2);
        assert_eq!(v4.order(), 4);
        let (q, proj) = g.quotient_group(&v4).unwrap();
        assert_eq!(q.order(), 6);
        assert!((0..6).any(|a| (0..6).any(|b| !q.commutes(a, b))));
        // Projection is a homomorphism.
        for a in 0..g.order() {
            for b in 0..g.order() {
                assert_eq!(proj[g.mul(a, b)], q.mul(proj[a], proj[b]));
            }
        }
    }

    #[test]
    fn subgroup_as_group_roundtrip() {
        let g = named::by_name("s4").unwrap();
        let syl = crate::subgroup::sylow_subgroup(&g, 2);
        let (h, back) = g.subgroup_group(&syl);
        assert_eq!(h.order(), 8);
        for a in 0..8 {
            for b in 0..8 {
                assert_eq!(back[h.mul(a, b)], g.mul(back[a], back[b]));
            }
        }
    }
}
