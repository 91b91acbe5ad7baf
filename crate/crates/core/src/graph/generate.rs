use std::str::FromStr;

use rand::Rng;

use super::Graph;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphKind {
    Path,
    Cycle,
    Complete,
    Empty,
}

impl FromStr for GraphKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "path" => Ok(GraphKind::Path),
            "cycle" => Ok(GraphKind::Cycle),
            "complete" => Ok(GraphKind::Complete),
            "empty" => Ok(GraphKind::Empty),
            other => Err(Error::InvalidArgument(format!("unknown graph kind {other:?}"))),
        }
    }
}

/// `P_n`, `C_n`, `K_n` or `n` isolated vertices, labeled `"1".."n"`.
pub fn generate(kind: GraphKind, n: usize) -> Result<Graph> {
    let min = if kind == GraphKind::Cycle { 3 } else { 1 };
    if n < min {
        return Err(Error::InvalidArgument(format!(
            "{kind:?} needs at least {min} vertices, got {n}"
        )));
    }
    let edges: Vec<(usize, usize)> = match kind {
        GraphKind::Path => (1..n).map(|i| (i - 1, i)).collect(),
        GraphKind::Cycle => (0..n).map(|i| (i, (i + 1) % n)).collect(),
        GraphKind::Complete => (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect(),
        GraphKind::Empty => Vec::new(),
    };
    Graph::from_indices(n, 1, &edges)
}

/// A random chordal graph on `n` vertices built by repeated clique-sums of
/// complete graphs: each step glues a fresh `K_m` onto a random clique of the
/// current graph.
pub fn random_chordal<R: Rng>(n: usize, rng: &mut R) -> Graph {
    let label = |i: usize| format!("v{i}");
    let first = rng.random_range(1..=n.clamp(1, 3)).min(n);
    let mut g = Graph::with_vertices((0..first).map(label)).expect("fresh labels");
    for i in 0..first {
        for j in i + 1..first {
            g.set_edge(i, j, true);
        }
    }
    while g.order() < n {
        // grow a random clique from a random seed vertex
        let mut clique = vec![rng.random_range(0..g.order())];
        let mut cands: Vec<usize> = g.neighbors(clique[0]).collect();
        while !cands.is_empty() && rng.random_bool(0.6) {
            let pick = cands.swap_remove(rng.random_range(0..cands.len()));
            clique.push(pick);
            cands.retain(|&c| g.has_edge(c, pick));
        }
        if rng.random_bool(0.15) {
            clique.clear();
        }
        let fresh = rng.random_range(1..=(n - g.order()).min(3));
        let base = g.order();
        let mut labels: Vec<String> = clique.iter().map(|&c| g.label(c).to_string()).collect();
        labels.extend((base..base + fresh).map(label));
        let m = labels.len();
        let mut k = Graph::with_vertices(labels).expect("fresh labels");
        for i in 0..m {
            for j in i + 1..m {
                k.set_edge(i, j, true);
            }
        }
        let t = clique.len();
        g = Graph::clique_sum(&g, &k, t)
            .expect("glued along a clique of the current graph")
            .graph;
    }
    g
}
