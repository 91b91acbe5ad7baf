//! Exact maximum independent set / maximum clique by branch and bound.

use super::{Graph, Mask};

/// Independence number.
pub fn alpha(g: &Graph) -> usize {
    max_independent_set(g).len()
}

/// Clique number, computed as `alpha(complement(g))`.
pub fn omega(g: &Graph) -> usize {
    alpha(&g.complement())
}

/// A maximum clique (sorted indices).
pub fn max_clique(g: &Graph) -> Vec<usize> {
    max_independent_set(&g.complement())
}

/// A maximum independent set as sorted vertex indices.
///
/// Branches on the candidate of largest residual degree (lowest index on
/// ties); prunes with `|current| + |candidates| <= best`.
pub fn max_independent_set(g: &Graph) -> Vec<usize> {
    let adj = g.masks();
    let all: Mask = if g.order() == 128 {
        Mask::MAX
    } else {
        (1 << g.order()) - 1
    };
    let mut best = (0usize, 0 as Mask);
    branch(&adj, all, 0, &mut best);
    (0..g.order()).filter(|&i| best.1 >> i & 1 == 1).collect()
}

fn branch(adj: &[Mask], cand: Mask, cur: Mask, best: &mut (usize, Mask)) {
    let size = cur.count_ones() as usize;
    if size + cand.count_ones() as usize <= best.0 {
        return;
    }
    // candidates with no neighbour among the candidates can always be taken
    let mut free: Mask = 0;
    let mut pivot = None;
    let mut pivot_deg = 0;
    let mut rest = cand;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let deg = (adj[v] & cand).count_ones();
        if deg == 0 {
            free |= 1 << v;
        } else if deg > pivot_deg {
            pivot_deg = deg;
            pivot = Some(v);
        }
    }
    let cur = cur | free;
    let cand = cand & !free;
    let Some(v) = pivot else {
        let size = cur.count_ones() as usize;
        if size > best.0 {
            *best = (size, cur);
        }
        return;
    };
    let bit: Mask = 1 << v;
    branch(adj, cand & !bit & !adj[v], cur | bit, best);
    branch(adj, cand & !bit, cur, best);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, GraphKind};

    /// Exhaustive subset enumeration.
    fn brute_alpha(g: &Graph) -> usize {
        let n = g.order();
        (0u32..1 << n)
            .filter(|s| {
                (0..n).all(|i| (0..n).all(|j| !(s >> i & 1 == 1 && s >> j & 1 == 1 && g.has_edge(i, j))))
            })
            .map(|s| s.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    #[test]
    fn small_families() {
        let p4 = generate(GraphKind::Path, 4).unwrap();
        let c5 = generate(GraphKind::Cycle, 5).unwrap();
        let k6 = generate(GraphKind::Complete, 6).unwrap();
        assert_eq!(brute_alpha(&p4), 2);
        assert_eq!(brute_alpha(&c5), 2);
        assert_eq!((alpha(&p4), omega(&p4)), (2, 2));
        assert_eq!((alpha(&c5), omega(&c5)), (2, 2));
        assert_eq!((alpha(&k6), omega(&k6)), (1, 6));
        assert_eq!(alpha(&Graph::null()), 0);
    }

    #[test]
    fn witness_is_independent() {
        let c7 = generate(GraphKind::Cycle, 7).unwrap();
        let s = max_independent_set(&c7);
        assert_eq!(s.len(), 3);
        assert!(s.iter().all(|&a| s.iter().all(|&b| !c7.has_edge(a, b))));
        let q = max_clique(&c7);
        assert!(c7.is_clique(&q) && q.len() == 2);
    }
}
