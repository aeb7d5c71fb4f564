use std::collections::{HashSet, VecDeque};

use crate::error::Error;
use crate::group::FiniteGroup;

/// Default ceiling on the number of subgroups enumerated inside one ambient
/// subgroup (protects against pathological lattices in large p-groups).
pub const DEFAULT_SUBGROUP_CAP: usize = 4096;

/// A subgroup of an ambient [`FiniteGroup`], stored as the sorted list of its
/// element indices plus a small generating set.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Subgroup {
    members: Vec<usize>,
    gens: Vec<usize>,
}

impl Subgroup {
    pub fn trivial() -> Subgroup {
        Subgroup {
            members: vec![0],
            gens: vec![],
        }
    }

    pub fn whole(g: &FiniteGroup) -> Subgroup {
        let members: Vec<usize> = (0..g.order()).collect();
        let gens = g.generators().to_vec();
        let mut s = Subgroup { members, gens };
        if s.gens.is_empty() && g.order() > 1 {
            s.gens = greedy_gens(g, &s.members);
        }
        s
    }

    /// Subgroup generated by the given elements.
    pub fn generated(g: &FiniteGroup, seed: &[usize]) -> Subgroup {
        let members = g.closure_of(seed);
        let gens: Vec<usize> = seed.iter().copied().filter(|&x| x != 0).collect();
        Subgroup {
            members,
            gens: dedup(gens),
        }
    }

    /// Wrap an already-closed member list (validated).
    pub fn from_members(g: &FiniteGroup, mut members: Vec<usize>) -> Result<Subgroup, Error> {
        members.sort_unstable();
        members.dedup();
        crate::invariant!(
            members.first() == Some(&0),
            "subgroup member list must contain the identity"
        );
        for &a in &members {
            for &b in &members {
                crate::invariant!(
                    members.binary_search(&g.mul(a, b)).is_ok(),
                    "member list is not closed under multiplication"
                );
            }
        }
        let gens = greedy_gens(g, &members);
        Ok(Subgroup { members, gens })
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn gens(&self) -> &[usize] {
        &self.gens
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }

    /// x^{-1} H x.
    pub fn conjugate(&self, g: &FiniteGroup, x: usize) -> Subgroup {
        let mut members: Vec<usize> = self.members.iter().map(|&h| g.conj(h, x)).collect();
        members.sort_unstable();
        let gens: Vec<usize> = self.gens.iter().map(|&h| g.conj(h, x)).collect();
        Subgroup { members, gens }
    }

    /// The conjugate with lexicographically smallest member list over all of G.
    pub fn canonical_rep(&self, g: &FiniteGroup) -> Subgroup {
        let mut best = self.conjugate(g, 0);
        for x in 1..g.order() {
            let cand = self.conjugate(g, x);
            if cand.members < best.members {
                best = cand;
            }
        }
        best
    }

    pub fn is_normal_in_whole(&self, g: &FiniteGroup) -> bool {
        (0..g.order()).all(|x| self.gens.iter().all(|&h| self.contains(g.conj(h, x))))
    }

    pub fn is_normal_in(&self, g: &FiniteGroup, k: &Subgroup) -> bool {
        k.members
            .iter()
            .all(|&x| self.gens.iter().all(|&h| self.contains(g.conj(h, x))))
    }

    pub fn is_p_group(&self, g: &FiniteGroup, p: u32) -> bool {
        is_p_power(self.order(), p) && self.members.iter().all(|&x| is_p_power(g.order_of(x), p))
    }

    pub fn is_pprime_group(&self, p: u32) -> bool {
        self.order() % p as usize != 0
    }

    pub fn is_abelian(&self, g: &FiniteGroup) -> bool {
        self.members
            .iter()
            .all(|&a| self.members.iter().all(|&b| g.commutes(a, b)))
    }

    pub fn is_cyclic(&self, g: &FiniteGroup) -> bool {
        self.members.iter().any(|&x| g.order_of(x) == self.order())
    }

    pub fn is_elementary_abelian(&self, g: &FiniteGroup, p: u32) -> bool {
        self.is_abelian(g)
            && is_p_power(self.order(), p)
            && self
                .members
                .iter()
                .all(|&x| x == 0 || g.order_of(x) == p as usize)
    }

    /// Exponent of the subgroup: lcm of element orders.
    pub fn exponent(&self, g: &FiniteGroup) -> usize {
        self.members.iter().fold(1usize, |acc, &x| lcm(acc, g.order_of(x)))
    }
}

pub fn is_p_power(mut n: usize, p: u32) -> bool {
    while n % p as usize == 0 {
        n /= p as usize;
    }
    n == 1
}

/// Largest power of p dividing n.
pub fn p_part(mut n: usize, p: u32) -> usize {
    let mut out = 1;
    while n % p as usize == 0 {
        n /= p as usize;
        out *= p as usize;
    }
    out
}

fn lcm(a: usize, b: usize) -> usize {
    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

fn dedup(v: Vec<usize>) -> Vec<usize> {
    let mut out = Vec::new();
    for x in v {
        if !out.contains(&x) {
            out.push(x);
        }
    }
    out
}

fn greedy_gens(g: &FiniteGroup, members: &[usize]) -> Vec<usize> {
    let mut gens: Vec<usize> = Vec::new();
    let mut closed = vec![0usize];
    for &x in members {
        if closed.binary_search(&x).is_err() {
            gens.push(x);
            closed = g.closure_of(&gens);
            if closed.len() == members.len() {
                break;
            }
        }
    }
    gens
}

/// Centralizer of a set of elements.
pub fn centralizer_of_set(g: &FiniteGroup, elems: &[usize]) -> Subgroup {
    let members: Vec<usize> = (0..g.order())
        .filter(|&x| elems.iter().all(|&e| g.commutes(x, e)))
        .collect();
    let gens = greedy_gens(g, &members);
    Subgroup { members, gens }
}

pub fn centralizer(g: &FiniteGroup, h: &Subgroup) -> Subgroup {
    centralizer_of_set(g, h.gens())
}

pub fn center_subgroup(g: &FiniteGroup) -> Subgroup {
    let all: Vec<usize> = (0..g.order()).collect();
    centralizer_of_set(g, &all)
}

/// Normalizer N_G(H) = { x : H^x = H }.
pub fn normalizer(g: &FiniteGroup, h: &Subgroup) -> Subgroup {
    let members: Vec<usize> = (0..g.order())
        .filter(|&x| h.gens().iter().all(|&s| h.contains(g.conj(s, x))))
        .collect();
    let gens = greedy_gens(g, &members);
    Subgroup { members, gens }
}

/// A Sylow p-subgroup, grown deterministically by normalizer ascent.
pub fn sylow_subgroup(g: &FiniteGroup, p: u32) -> Subgroup {
    let target = p_part(g.order(), p);
    if target == 1 {
        return Subgroup::trivial();
    }
    // Seed with the first element of order exactly p.
    let seed = (1..g.order())
        .find(|&x| g.order_of(x) == p as usize)
        .expect("Cauchy: an element of order p exists");
    let mut current = Subgroup::generated(g, &[seed]);
    while current.order() < target {
        let n = normalizer(g, &current);
        let grown = n
            .members()
            .iter()
            .copied()
            .filter(|&y| !current.contains(y) && is_p_power(g.order_of(y), p))
            .map(|y| {
                let mut seed: Vec<usize> = current.gens().to_vec();
                seed.push(y);
                Subgroup::generated(g, &seed)
            })
            .find(|cand| cand.order() > current.order() && is_p_power(cand.order(), p));
        current = grown.expect("a p-subgroup below Sylow order grows inside its normalizer");
    }
    assert!(current.is_p_group(g, p));
    current
}

/// A Sylow p-subgroup of `within`, as a subgroup of `g`.
pub fn sylow_in(g: &FiniteGroup, within: &Subgroup, p: u32) -> Subgroup {
    let (h, embed) = g.subgroup_group(within);
    let syl = sylow_subgroup(&h, p);
    let members: Vec<usize> = syl.members().iter().map(|&i| embed[i]).collect();
    Subgroup::from_members(g, members).expect("image of a subgroup is a subgroup")
}

/// All subgroups contained in `within`, found by closure extension.
/// Includes the trivial subgroup and `within` itself. Sorted by
/// (order, member list).
pub fn subgroups_within(
    g: &FiniteGroup,
    within: &Subgroup,
    cap: usize,
) -> Result<Vec<Subgroup>, Error> {
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut out: Vec<Subgroup> = Vec::new();
    let mut queue: VecDeque<Subgroup> = VecDeque::new();
    let trivial = Subgroup::trivial();
    seen.insert(trivial.members.clone());
    queue.push_back(trivial.clone());
    out.push(trivial);
    while let Some(h) = queue.pop_front() {
        for &x in within.members() {
            if h.contains(x) {
                continue;
            }
            let mut seed: Vec<usize> = h.gens().to_vec();
            seed.push(x);
            let k = Subgroup::generated(g, &seed);
            if !k.is_subgroup_of(within) {
                // Can happen only if `within` is not closed; guard anyway.
                continue;
            }
            if seen.insert(k.members.clone()) {
                if out.len() >= cap {
                    return Err(Error::SubgroupCapExceeded {
                        order: within.order(),
                        cap,
                    });
                }
                queue.push_back(k.clone());
                out.push(k);
            }
        }
    }
    out.sort_by(|a, b| (a.order(), &a.members).cmp(&(b.order(), &b.members)));
    Ok(out)
}

/// Deduplicate a list of subgroups under G-conjugacy; returns canonical
/// representatives sorted by (order, member list).
pub fn dedup_up_to_conjugacy(g: &FiniteGroup, subs: &[Subgroup]) -> Vec<Subgroup> {
    let mut reps: Vec<Subgroup> = Vec::new();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    for s in subs {
        let canon = s.canonical_rep(g);
        if seen.insert(canon.members.clone()) {
            reps.push(canon);
        }
    }
    reps.sort_by(|a, b| (a.order(), &a.members).cmp(&(b.order(), &b.members)));
    reps
}

/// All p-subgroups of G up to G-conjugacy (every p-subgroup is conjugate
/// into a fixed Sylow p-subgroup).
pub fn p_subgroups_up_to_conjugacy(g: &FiniteGroup, p: u32) -> Result<Vec<Subgroup>, Error> {
    let syl = sylow_subgroup(g, p);
    let all = subgroups_within(g, &syl, DEFAULT_SUBGROUP_CAP)?;
    Ok(dedup_up_to_conjugacy(g, &all))
}

/// Subgroups of the p-group `q` of index p (its maximal subgroups), as
/// subgroups of the ambient group.
pub fn maximal_subgroups_of_p_group(
    g: &FiniteGroup,
    q: &Subgroup,
    p: u32,
) -> Result<Vec<Subgroup>, Error> {
    assert!(q.is_p_group(g, p));
    if q.is_trivial() {
        return Ok(vec![]);
    }
    let want = q.order() / p as usize;
    let all = subgroups_within(g, q, DEFAULT_SUBGROUP_CAP)?;
    Ok(all.into_iter().filter(|h| h.order() == want).collect())
}

/// Is some conjugate of `a` contained in `b`? Returns a witness x with
/// a^x <= b.
pub fn conjugate_into(g: &FiniteGroup, a: &Subgroup, b: &Subgroup) -> Option<usize> {
    if a.order() > b.order() || b.order() % a.order() != 0 {
        return None;
    }
    (0..g.order()).find(|&x| a.gens().iter().all(|&s| b.contains(g.conj(s, x))))
}

/// Are `a` and `b` conjugate in G? Returns a witness x with a^x = b.
pub fn conjugate_eq(g: &FiniteGroup, a: &Subgroup, b: &Subgroup) -> Option<usize> {
    if a.order() != b.order() {
        return None;
    }
    conjugate_into(g, a, b)
}

/// Right coset representatives for H in G: the smallest element of each
/// coset Hx, in ascending order (so the identity represents H itself).
pub fn right_coset_reps(g: &FiniteGroup, h: &Subgroup) -> Vec<usize> {
    let whole = Subgroup::whole(g);
    right_coset_reps_in(g, h, &whole)
}

/// Right coset representatives for H in K (H must be contained in K).
pub fn right_coset_reps_in(g: &FiniteGroup, h: &Subgroup, k: &Subgroup) -> Vec<usize> {
    debug_assert!(h.is_subgroup_of(k));
    let mut covered = vec![false; g.order()];
    let mut reps = Vec::new();
    for &x in k.members() {
        if covered[x] {
            continue;
        }
        reps.push(x);
        for &m in h.members() {
            covered[g.mul(m, x)] = true;
        }
    }
    assert_eq!(reps.len() * h.order(), k.order());
    reps
}

/// All normal subgroups of G: closures of unions of conjugacy classes,
/// grown by breadth-first extension. Sorted by (order, member list).
pub fn normal_subgroups(g: &FiniteGroup) -> Vec<Subgroup> {
    let classes = g.conjugacy_classes(2);
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut out: Vec<Subgroup> = Vec::new();
    let mut queue: VecDeque<Subgroup> = VecDeque::new();
    let trivial = Subgroup::trivial();
    seen.insert(trivial.members.clone());
    out.push(trivial.clone());
    queue.push_back(trivial);
    while let Some(n) = queue.pop_front() {
        for c in &classes {
            if n.contains(c.rep) {
                continue;
            }
            let mut seed: Vec<usize> = n.gens().to_vec();
            seed.extend_from_slice(&c.members);
            let k = Subgroup::generated(g, &seed);
            if seen.insert(k.members.clone()) {
                out.push(k.clone());
                queue.push_back(k);
            }
        }
    }
    out.sort_by(|a, b| (a.order(), &a.members).cmp(&(b.order(), &b.members)));
    out
}

/// A short structural label for a subgroup: cyclic / elementary abelian /
/// small dihedral or quaternion cases are named, everything else falls back
/// to an order tag.
pub fn describe(g: &FiniteGroup, h: &Subgroup) -> String {
    let n = h.order();
    if n == 1 {
        return "1".to_string();
    }
    if h.is_cyclic(g) {
        return format!("C{n}");
    }
    if h.is_abelian(g) {
        // Primary decomposition recovered from element-order statistics:
        // the number of cyclic p-factors of exponent >= p^k equals
        // log_p #{x : x^{p^k} = 1} - log_p #{x : x^{p^(k-1)} = 1}.
        let mut primes: Vec<usize> = Vec::new();
        let mut m = n;
        let mut d = 2;
        while d * d <= m {
            if m % d == 0 {
                primes.push(d);
                while m % d == 0 {
                    m /= d;
                }
            }
            d += 1;
        }
        if m > 1 {
            primes.push(m);
        }
        let mut parts: Vec<usize> = Vec::new();
        for &p in &primes {
            let count_dividing = |pk: usize| -> usize {
                h.members().iter().filter(|&&x| pk % g.order_of(x) == 0).count()
            };
            let logp = |mut v: usize| -> usize {
                let mut e = 0;
                while v > 1 {
                    v /= p;
                    e += 1;
                }
                e
            };
            let mut k = 1;
            let mut prev = 1usize; // #{x : x^1 = 1}
            let mut pk = p;
            let mut factors_ge: Vec<usize> = Vec::new();
            loop {
                let cur = count_dividing(pk);
                let step = logp(cur) - logp(prev);
                if step == 0 {
                    break;
                }
                factors_ge.push(step);
                prev = cur;
                pk *= p;
                k += 1;
                if k > 32 {
                    break;
                }
            }
            // factors_ge[k-1] = number of cyclic p-factors of exponent >= p^k.
            for (i, &ge) in factors_ge.iter().enumerate() {
                let next = factors_ge.get(i + 1).copied().unwrap_or(0);
                for _ in 0..(ge - next) {
                    parts.push(p.pow((i + 1) as u32));
                }
            }
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let names: Vec<String> = parts.iter().map(|k| format!("C{k}")).collect();
        return names.join("x");
    }
    if n == 6 {
        return "S3".to_string();
    }
    if n == 8 {
        let involutions = h.members().iter().filter(|&&x| g.order_of(x) == 2).count();
        return if involutions == 1 { "Q8" } else { "D8" }.to_string();
    }
    format!("Grp{n}")
}
