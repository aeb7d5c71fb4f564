//! Constructors for standard small groups, all realized through permutation
//! generators so the multiplication tables are reproducible from the stored
//! generator data.

use crate::error::Error;
use crate::group::FiniteGroup;

/// The trivial group.
pub fn trivial() -> FiniteGroup {
    let mut g = FiniteGroup::from_generators(1, &[]).expect("trivial group");
    g.set_name("1");
    g
}

/// Cyclic group of order n as an n-cycle.
pub fn cyclic(n: usize) -> Result<FiniteGroup, Error> {
    if n == 1 {
        return Ok(trivial());
    }
    let gen: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    let mut g = FiniteGroup::from_generators(n, &[gen])?;
    g.set_name(format!("C{n}"));
    Ok(g)
}

/// Dihedral group of the given (even) order 2n, n >= 3, acting on n points.
pub fn dihedral(order: usize) -> Result<FiniteGroup, Error> {
    assert!(order >= 6 && order % 2 == 0, "dihedral order must be even and >= 6");
    let n = order / 2;
    let rot: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    let refl: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
    let mut g = FiniteGroup::from_generators(n, &[rot, refl])?;
    g.set_name(format!("D{order}"));
    Ok(g)
}

/// Symmetric group on n letters, n <= 5.
pub fn symmetric(n: usize) -> Result<FiniteGroup, Error> {
    assert!((1..=5).contains(&n), "symmetric groups handled up to S5");
    if n == 1 {
        return Ok(trivial());
    }
    let mut transposition: Vec<usize> = (0..n).collect();
    transposition.swap(0, 1);
    let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    let mut g = FiniteGroup::from_generators(n, &[transposition, cycle])?;
    g.set_name(format!("S{n}"));
    Ok(g)
}

/// Alternating group on n letters, n in {4, 5}.
pub fn alternating(n: usize) -> Result<FiniteGroup, Error> {
    assert!(n == 4 || n == 5, "alternating groups handled for A4 and A5");
    let three_cycle = |a: usize, b: usize, c: usize| -> Vec<usize> {
        let mut v: Vec<usize> = (0..n).collect();
        v[a] = b;
        v[b] = c;
        v[c] = a;
        v
    };
    let gens: Vec<Vec<usize>> = if n == 4 {
        vec![three_cycle(0, 1, 2), three_cycle(1, 2, 3)]
    } else {
        let five_cycle: Vec<usize> = (0..5).map(|i| (i + 1) % 5).collect();
        vec![five_cycle, three_cycle(0, 1, 2)]
    };
    let mut g = FiniteGroup::from_generators(n, &gens)?;
    g.set_name(format!("A{n}"));
    Ok(g)
}

/// The quaternion group of order 8 in its right regular action on the
/// labels [1, -1, i, -i, j, -j, k, -k].
pub fn quaternion8() -> FiniteGroup {
    let right_i = vec![2, 3, 1, 0, 7, 6, 4, 5];
    let right_j = vec![4, 5, 6, 7, 1, 0, 3, 2];
    let mut g = FiniteGroup::from_generators(8, &[right_i, right_j]).expect("quaternion table");
    assert_eq!(g.order(), 8);
    g.set_name("Q8");
    g
}

/// SL(2,3) acting on the 8 nonzero row vectors of GF(3)^2.
pub fn sl23() -> FiniteGroup {
    // Nonzero vectors (a, b) over GF(3) in lexicographic order.
    let vectors: Vec<(usize, usize)> = (0..3usize)
        .flat_map(|a| (0..3usize).map(move |b| (a, b)))
        .filter(|&(a, b)| (a, b) != (0, 0))
        .collect();
    let index_of = |v: (usize, usize)| vectors.iter().position(|&w| w == v).unwrap();
    let act = |m: [[usize; 2]; 2]| -> Vec<usize> {
        vectors
            .iter()
            .map(|&(a, b)| {
                let x = (a * m[0][0] + b * m[1][0]) % 3;
                let y = (a * m[0][1] + b * m[1][1]) % 3;
                index_of((x, y))
            })
            .collect()
    };
    // S = [[0, -1], [1, 0]] (order 4), T = [[1, 1], [0, 1]] (order 3).
    let s = act([[0, 2], [1, 0]]);
    let t = act([[1, 1], [0, 1]]);
    let mut g = FiniteGroup::from_generators(8, &[s, t]).expect("SL(2,3) closure");
    assert_eq!(g.order(), 24);
    g.set_name("SL(2,3)");
    g
}

/// The Frobenius group of order 21 (C7 : C3) on 7 points:
/// translation x -> x+1 and multiplication x -> 2x mod 7.
pub fn frobenius21() -> FiniteGroup {
    let add = (0..7).map(|i| (i + 1) % 7).collect::<Vec<_>>();
    let mul2 = (0..7).map(|i| (2 * i) % 7).collect::<Vec<_>>();
    let mut g = FiniteGroup::from_generators(7, &[add, mul2]).expect("F21 closure");
    assert_eq!(g.order(), 21);
    g.set_name("C7:C3");
    g
}

/// Elementary abelian group of order p^k as k disjoint p-cycles.
pub fn elementary_abelian(p: usize, k: usize) -> Result<FiniteGroup, Error> {
    assert!(k >= 1);
    let degree = p * k;
    let gens: Vec<Vec<usize>> = (0..k)
        .map(|blockno| {
            (0..degree)
                .map(|x| {
                    if x / p == blockno {
                        blockno * p + (x % p + 1) % p
                    } else {
                        x
                    }
                })
                .collect()
        })
        .collect();
    let mut g = FiniteGroup::from_generators(degree, &gens)?;
    let name: Vec<String> = (0..k).map(|_| format!("C{p}")).collect();
    g.set_name(name.join("x"));
    Ok(g)
}

/// Look up a group by a short lowercase name. Recognized: "1"/"trivial",
/// "cN", "dN" / "dihedralN" (order N), "sN" (N <= 5), "a4", "a5", "v4",
/// "q8" / "quaternion8", "sl23" / "sl(2,3)", "f21" / "c7c3" / "frobenius21".
pub fn by_name(name: &str) -> Result<FiniteGroup, Error> {
    let key = name.trim().to_ascii_lowercase();
    match key.as_str() {
        "1" | "trivial" => return Ok(trivial()),
        "v4" => {
            let mut g = elementary_abelian(2, 2)?;
            g.set_name("V4");
            return Ok(g);
        }
        "q8" | "quaternion8" => return Ok(quaternion8()),
        "sl23" | "sl(2,3)" => return Ok(sl23()),
        "f21" | "c7c3" | "frobenius21" => return Ok(frobenius21()),
        "a4" => return alternating(4),
        "a5" => return alternating(5),
        _ => {}
    }
    if let Some(rest) = key.strip_prefix("dihedral").or_else(|| key.strip_prefix('d')) {
        if let Ok(order) = rest.parse::<usize>() {
            if order >= 6 && order % 2 == 0 {
                return dihedral(order);
            }
        }
    }
    if let Some(rest) = key.strip_prefix('s') {
        if let Ok(n) = rest.parse::<usize>() {
            if (1..=5).contains(&n) {
                return symmetric(n);
            }
        }
    }
    if let Some(rest) = key.strip_prefix('c') {
        if let Ok(n) = rest.parse::<usize>() {
            if n >= 1 && n <= crate::group::DEFAULT_ORDER_CAP {
                return cyclic(n);
            }
        }
    }
    Err(Error::UnknownGroupName(name.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_of_named_groups() {
        let expect: &[(&str, usize)] = &[
            ("trivial", 1),
            ("c2", 2),
            ("c6", 6),
            ("s3", 6),
            ("d8", 8),
            ("q8", 8),
            ("a4", 12),
            ("s4", 24),
            ("sl23", 24),
            ("f21", 21),
            ("a5", 60),
            ("s5", 120),
            ("v4", 4),
            ("c12", 12),
            ("d12", 12),
        ];
        for &(name, order) in expect {
            let g = by_name(name).unwrap();
            assert_eq!(g.order(), order, "order of {name}");
        }
        assert!(matches!(by_name("nope"), Err(Error::UnknownGroupName(_))));
    }

    #[test]
    fn class_counts() {
        let expect: &[(&str, usize)] = &[
            ("s3", 3),
            ("d8", 5),
            ("q8", 5),
            ("a4", 4),
            ("s4", 5),
            ("sl23", 7),
            ("f21", 5),
            ("a5", 5),
            ("s5", 7),
            ("c6", 6),
        ];
        for &(name, classes) in expect {
            let g = by_name(name).unwrap();
            assert_eq!(g.conjugacy_classes(2).len(), classes, "classes of {name}");
        }
    }

    #[test]
    fn q8_element_orders() {
        let g = quaternion8();
        let mut orders: Vec<usize> = (0..8).map(|x| g.order_of(x)).collect();
        orders.sort_unstable();
        assert_eq!(orders, vec![1, 2, 4, 4, 4, 4, 4, 4]);
        // i * j = k has order 4 and i^2 = j^2 (the unique involution).
        let i = 2;
        let j = 4;
        assert_eq!(g.mul(i, i), g.mul(j, j));
        assert_eq!(g.order_of(g.mul(i, j)), 4);
        assert_ne!(g.mul(i, j), g.mul(j, i), "Q8 is nonabelian");
    }

    #[test]
    fn sl23_element_order_statistics() {
        let g = sl23();
        let mut counts = std::collections::BTreeMap::new();
        for x in 0..24 {
            *counts.entry(g.order_of(x)).or_insert(0usize) += 1;
        }
        // SL(2,3): 1 identity, 1 of order 2, 8 of order 3, 6 of order 4,
        // 8 of order 6.
        let expect: Vec<(usize, usize)> = vec![(1, 1), (2, 1), (3, 8), (4, 6), (6, 8)];
        assert_eq!(counts.into_iter().collect::<Vec<_>>(), expect);
    }

    #[test]
    fn f21_structure() {
        let g = frobenius21();
        let classes = g.conjugacy_classes(3);
        // F21: classes of sizes 1, 3, 3, 7, 7.
        let mut sizes: Vec<usize> = classes.iter().map(|c| c.size()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 3, 3, 7, 7]);
        assert_eq!(crate::structure::o_p(&g, 7).order(), 7);
    }

    #[test]
    fn elementary_abelian_structure() {
        let g = elementary_abelian(2, 3).unwrap();
        assert_eq!(g.order(), 8);
        assert!((1..8).all(|x| g.order_of(x) == 2));
        let g = elementary_abelian(5, 1).unwrap();
        assert_eq!(g.order(), 5);
    }

    #[test]
    fn s5_class_sizes() {
        let g = symmetric(5).unwrap();
        let mut sizes: Vec<usize> = g.conjugacy_classes(2).iter().map(|c| c.size()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 10, 15, 20, 20, 24, 30]);
    }
}
