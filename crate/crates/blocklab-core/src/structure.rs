//! Global structural invariants of a finite group at a prime:
//! the largest normal p- and p'-subgroups, p-solvability, p-nilpotency.

use crate::group::FiniteGroup;
use crate::subgroup::{self, Subgroup};

/// Normal closure of the conjugacy class of `x`: the smallest normal
/// subgroup containing x.
pub fn normal_closure_of_class(g: &FiniteGroup, x: usize) -> Subgroup {
    let class: Vec<usize> = (0..g.order()).map(|c| g.conj(x, c)).collect();
    Subgroup::generated(g, &class)
}

/// O_p(G): the largest normal p-subgroup, as the set of elements whose
/// class closure is a p-group.
pub fn o_p(g: &FiniteGroup, p: u32) -> Subgroup {
    selective_core(g, |ncl| ncl.is_p_group(g, p))
}

/// O_{p'}(G): the largest normal subgroup of order prime to p.
pub fn o_pprime(g: &FiniteGroup, p: u32) -> Subgroup {
    selective_core(g, |ncl| ncl.is_pprime_group(p))
}

fn selective_core(g: &FiniteGroup, keep: impl Fn(&Subgroup) -> bool) -> Subgroup {
    // Memoize per conjugacy class: the normal closure is class-determined.
    let classes = g.conjugacy_classes(2);
    let mut members: Vec<usize> = Vec::new();
    for c in &classes {
        let ncl = normal_closure_of_class(g, c.rep);
        if keep(&ncl) {
            members.extend_from_slice(&c.members);
        }
    }
    members.sort_unstable();
    let s = Subgroup::from_members(g, members)
        .expect("union of qualifying classes is the promised normal subgroup");
    debug_assert!(s.is_normal_in_whole(g));
    s
}

/// Is G p-solvable (every composition factor is a p-group or a p'-group)?
/// Decided by the upper p-series: repeatedly strip O_{p'} then O_p of the
/// quotient; G is p-solvable exactly when this reaches the trivial group.
pub fn is_p_solvable(g: &FiniteGroup, p: u32) -> bool {
    let mut q = g.clone();
    loop {
        if q.order() == 1 {
            return true;
        }
        let bottom = o_pprime(&q, p);
        let mid = if bottom.is_trivial() {
            o_p(&q, p)
        } else {
            let (next, _) = q.quotient_group(&bottom).expect("O_{p'} is normal");
            q = next;
            continue;
        };
        if mid.is_trivial() {
            return false;
        }
        let (next, _) = q.quotient_group(&mid).expect("O_p is normal");
        q = next;
    }
}

/// Is G p-nilpotent (G = O_{p'}(G) . P for a Sylow p-subgroup P, i.e. the
/// p-complement O_{p'}(G) has full p'-order)?
pub fn is_p_nilpotent(g: &FiniteGroup, p: u32) -> bool {
    let core = o_pprime(g, p);
    core.order() * subgroup::p_part(g.order(), p) == g.order()
}

/// Exponent of G divided into p-part and p'-part; returns the p'-part.
pub fn pprime_exponent(g: &FiniteGroup, p: u32) -> usize {
    let whole = Subgroup::whole(g);
    let e = whole.exponent(g);
    e / subgroup::p_part(e, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;

    #[test]
    fn o2_of_s4_is_v4() {
        let g = named::by_name("s4").unwrap();
        let v4 = o_p(&g, 2);
        assert_eq!(v4.order(), 4);
        assert!(v4.is_elementary_abelian(&g, 2));
        assert!(o_p(&g, 3).is_trivial());
        assert!(o_pprime(&g, 2).is_trivial());
        assert!(o_pprime(&g, 3).order() == 4);
    }

    #[test]
    fn cores_of_sl23() {
        let g = named::by_name("sl23").unwrap();
        assert_eq!(o_p(&g, 2).order(), 8, "O_2(SL(2,3)) = Q8");
        assert_eq!(o_p(&g, 3).order(), 1);
        assert_eq!(o_pprime(&g, 3).order(), 8);
        assert_eq!(o_pprime(&g, 2).order(), 1);
    }

    #[test]
    fn cores_of_simple_and_abelian_groups() {
        let a5 = named::by_name("a5").unwrap();
        for p in [2, 3, 5] {
            assert!(o_p(&a5, p).is_trivial());
            assert!(o_pprime(&a5, p).is_trivial());
        }
        let c6 = named::by_name("c6").unwrap();
        assert_eq!(o_p(&c6, 2).order(), 2);
        assert_eq!(o_pprime(&c6, 2).order(), 3);
    }

    #[test]
    fn p_solvability_across_corpus() {
        let solvable = [
            ("s3", 2u32),
            ("s3", 3),
            ("s4", 2),
            ("s4", 3),
            ("a4", 2),
            ("a4", 3),
            ("sl23", 2),
            ("sl23", 3),
            ("q8", 2),
            ("d8", 2),
            ("f21", 3),
            ("f21", 7),
            ("c6", 2),
        ];
        for (name, p) in solvable {
            let g = named::by_name(name).unwrap();
            assert!(is_p_solvable(&g, p), "{name} should be {p}-solvable");
        }
        for p in [2, 3, 5] {
            let a5 = named::by_name("a5").unwrap();
            assert!(!is_p_solvable(&a5, p), "A5 is not {p}-solvable");
            let s5 = named::by_name("s5").unwrap();
            assert!(!is_p_solvable(&s5, p), "S5 is not {p}-solvable");
        }
        // p-solvability is automatic when p does not divide the order:
        let a5 = named::by_name("a5").unwrap();
        assert!(is_p_solvable(&a5, 7));
    }

    #[test]
    fn p_nilpotency_cases() {
        let c6 = named::by_name("c6").unwrap();
        assert!(is_p_nilpotent(&c6, 2));
        assert!(is_p_nilpotent(&c6, 3));
        let s3 = named::by_name("s3").unwrap();
        assert!(is_p_nilpotent(&s3, 2), "S3 has normal 2-complement C3");
        assert!(!is_p_nilpotent(&s3, 3));
        let sl23 = named::by_name("sl23").unwrap();
        assert!(is_p_nilpotent(&sl23, 3), "SL(2,3) = Q8 . C3");
        assert!(!is_p_nilpotent(&sl23, 2));
        let s4 = named::by_name("s4").unwrap();
        assert!(!is_p_nilpotent(&s4, 2));
    }

    #[test]
    fn pprime_exponent_values() {
        let s3 = named::by_name("s3").unwrap();
        assert_eq!(pprime_exponent(&s3, 2), 3);
        assert_eq!(pprime_exponent(&s3, 3), 2);
        let q8 = named::by_name("q8").unwrap();
        assert_eq!(pprime_exponent(&q8, 2), 1);
    }
}
