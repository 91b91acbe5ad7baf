use serde::{Deserialize, Serialize};

use super::Graph;

/// Chordality verdict with a witness for either answer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Chordality {
    pub chordal: bool,
    /// Perfect elimination ordering (vertex indices) when chordal.
    pub elimination_ordering: Option<Vec<usize>>,
    /// An induced cycle of length at least 4, in cyclic order, when not chordal.
    pub induced_cycle: Option<Vec<usize>>,
}

/// Maximum cardinality search; the reverse visit order is a perfect
/// elimination ordering iff the graph is chordal.
fn mcs_order(g: &Graph) -> Vec<usize> {
    let n = g.order();
    let mut weight = vec![0usize; n];
    let mut done = vec![false; n];
    let mut visit = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !done[v])
            .max_by_key(|&v| (weight[v], std::cmp::Reverse(v)))
            .expect("unvisited vertex");
        done[v] = true;
        visit.push(v);
        for u in g.neighbors(v) {
            if !done[u] {
                weight[u] += 1;
            }
        }
    }
    visit.reverse();
    visit
}

fn is_perfect_elimination(g: &Graph, order: &[usize]) -> bool {
    let mut pos = vec![0; g.order()];
    for (k, &v) in order.iter().enumerate() {
        pos[v] = k;
    }
    order.iter().all(|&v| {
        let later: Vec<usize> = g.neighbors(v).filter(|&u| pos[u] > pos[v]).collect();
        g.is_clique(&later)
    })
}

/// For a vertex `v` with non-adjacent neighbours `a`, `b`, a shortest `a`–`b`
/// path avoiding `N[v] \ {a, b}` closes an induced cycle through `v`. Every
/// induced cycle of length ≥ 4 arises this way, so the search is complete.
fn find_induced_cycle(g: &Graph) -> Option<Vec<usize>> {
    let n = g.order();
    for v in 0..n {
        let nbrs: Vec<usize> = g.neighbors(v).collect();
        for (k, &a) in nbrs.iter().enumerate() {
            for &b in &nbrs[k + 1..] {
                if g.has_edge(a, b) {
                    continue;
                }
                let blocked: Vec<bool> = (0..n)
                    .map(|u| u == v || (g.has_edge(v, u) && u != a && u != b))
                    .collect();
                if let Some(path) = shortest_path(g, a, b, &blocked) {
                    let mut cycle = vec![v];
                    cycle.extend(path);
                    return Some(cycle);
                }
            }
        }
    }
    None
}

fn shortest_path(g: &Graph, from: usize, to: usize, blocked: &[bool]) -> Option<Vec<usize>> {
    let n = g.order();
    let mut prev = vec![usize::MAX; n];
    let mut queue = std::collections::VecDeque::from([from]);
    prev[from] = from;
    while let Some(u) = queue.pop_front() {
        if u == to {
            let mut path = vec![to];
            let mut cur = to;
            while cur != from {
                cur = prev[cur];
                path.push(cur);
            }
            path.reverse();
            return Some(path);
        }
        for w in g.neighbors(u) {
            if !blocked[w] && prev[w] == usize::MAX {
                prev[w] = u;
                queue.push_back(w);
            }
        }
    }
    None
}

pub fn is_chordal(g: &Graph) -> Chordality {
    let order = mcs_order(g);
    if is_perfect_elimination(g, &order) {
        Chordality {
            chordal: true,
            elimination_ordering: Some(order),
            induced_cycle: None,
        }
    } else {
        let cycle = find_induced_cycle(g).expect("a non-chordal graph has an induced long cycle");
        Chordality {
            chordal: false,
            elimination_ordering: None,
            induced_cycle: Some(cycle),
        }
    }
}
