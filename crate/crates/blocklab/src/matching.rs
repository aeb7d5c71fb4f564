//! Bipartite matching by augmenting paths (Kuhn's algorithm).

/// Find a perfect matching that saturates every left vertex.
///
/// `adj[i]` lists the right vertices adjacent to left vertex `i`, and
/// `rights` is the number of right vertices. Returns the matched right
/// vertex for each left vertex, or `None` if no such matching exists.
pub fn perfect_matching(adj: &[Vec<usize>], rights: usize) -> Option<Vec<usize>> {
    let mut right_of: Vec<Option<usize>> = vec![None; adj.len()];
    let mut left_of: Vec<Option<usize>> = vec![None; rights];
    for i in 0..adj.len() {
        let mut seen = vec![false; rights];
        if !augment(i, adj, &mut seen, &mut right_of, &mut left_of) {
            return None;
        }
    }
    Some(right_of.into_iter().map(|r| r.expect("saturated")).collect())
}

fn augment(
    i: usize,
    adj: &[Vec<usize>],
    seen: &mut [bool],
    right_of: &mut [Option<usize>],
    left_of: &mut [Option<usize>],
) -> bool {
    for &r in &adj[i] {
        if seen[r] {
            continue;
        }
        seen[r] = true;
        let free = match left_of[r] {
            None => true,
            Some(j) => augment(j, adj, seen, right_of, left_of),
        };
        if free {
            left_of[r] = Some(i);
            right_of[i] = Some(r);
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_matching() {
        let adj = vec![vec![0], vec![1], vec![2]];
        assert_eq!(perfect_matching(&adj, 3), Some(vec![0, 1, 2]));
    }

    #[test]
    fn needs_augmenting_path() {
        // Greedy left-to-right would match 0->0 and strand vertex 1.
        let adj = vec![vec![0, 1], vec![0]];
        let m = perfect_matching(&adj, 2).unwrap();
        assert_eq!(m, vec![1, 0]);
    }

    #[test]
    fn no_matching_when_pigeonholed() {
        let adj = vec![vec![0], vec![0]];
        assert_eq!(perfect_matching(&adj, 2), None);
    }

    #[test]
    fn empty_left_side() {
        assert_eq!(perfect_matching(&[], 4), Some(vec![]));
    }
}
