//! Exact proper colorings and `c:b` (b-fold) colorings.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{omega, Graph};

/// A `c:b`-coloring: every vertex gets `fold` colors from `1..=palette`,
/// adjacent vertices get disjoint sets. `assignment` follows vertex order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coloring {
    pub palette: usize,
    pub fold: usize,
    pub assignment: Vec<BTreeSet<usize>>,
}

impl Coloring {
    pub fn is_valid(&self, g: &Graph) -> bool {
        self.assignment.len() == g.order()
            && self.assignment.iter().all(|s| {
                s.len() == self.fold && s.iter().all(|&c| (1..=self.palette).contains(&c))
            })
            && g
                .edges()
                .into_iter()
                .all(|(i, j)| self.assignment[i].is_disjoint(&self.assignment[j]))
    }

    /// For a 1-fold coloring, the single color of each vertex.
    pub fn colors(&self) -> Option<Vec<usize>> {
        (self.fold == 1).then(|| {
            self.assignment
                .iter()
                .map(|s| *s.iter().next().expect("fold 1"))
                .collect()
        })
    }
}

/// Vertices by decreasing degree, ties by index.
fn degree_order(g: &Graph) -> Vec<usize> {
    let mut order: Vec<usize> = (0..g.order()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    order
}

/// Chromatic number with an optimal coloring witness.
///
/// Tries `c = ω(g), ω(g)+1, …` with backtracking in degree order; colors are
/// introduced in increasing order to break palette symmetry.
pub fn chi(g: &Graph) -> (usize, Coloring) {
    let n = g.order();
    if n == 0 {
        return (
            0,
            Coloring {
                palette: 0,
                fold: 1,
                assignment: Vec::new(),
            },
        );
    }
    let order = degree_order(g);
    let mut c = omega(g).max(1);
    loop {
        let mut color = vec![0usize; n];
        if color_rec(g, &order, 0, c, 0, &mut color) {
            let assignment = color.iter().map(|&k| BTreeSet::from([k])).collect();
            return (
                c,
                Coloring {
                    palette: c,
                    fold: 1,
                    assignment,
                },
            );
        }
        c += 1;
    }
}

fn color_rec(
    g: &Graph,
    order: &[usize],
    pos: usize,
    c: usize,
    used: usize,
    color: &mut [usize],
) -> bool {
    let Some(&v) = order.get(pos) else {
        return true;
    };
    for k in 1..=(used + 1).min(c) {
        if g.neighbors(v).all(|u| color[u] != k) {
            color[v] = k;
            if color_rec(g, order, pos + 1, c, used.max(k), color) {
                return true;
            }
            color[v] = 0;
        }
    }
    false
}

/// A `c:b`-coloring if one exists.
///
/// Exhaustive search in degree order. Palette symmetry is broken by only
/// introducing unused colors as the next consecutive ones.
pub fn b_fold_coloring(g: &Graph, c: usize, b: usize) -> Option<Coloring> {
    assert!(c >= b && b >= 1, "need c >= b >= 1");
    let order = degree_order(g);
    let mut assignment = vec![BTreeSet::new(); g.order()];
    fold_rec(g, &order, 0, c, b, 0, &mut assignment).then_some(Coloring {
        palette: c,
        fold: b,
        assignment,
    })
}

fn fold_rec(
    g: &Graph,
    order: &[usize],
    pos: usize,
    c: usize,
    b: usize,
    used: usize,
    assignment: &mut [BTreeSet<usize>],
) -> bool {
    let Some(&v) = order.get(pos) else {
        return true;
    };
    let forbidden: BTreeSet<usize> = g
        .neighbors(v)
        .flat_map(|u| assignment[u].iter().copied())
        .collect();
    let old: Vec<usize> = (1..=used).filter(|k| !forbidden.contains(k)).collect();
    for fresh in 0..=b.min(c - used) {
        let take_old = b - fresh;
        if take_old > old.len() {
            continue;
        }
        let mut pick = Vec::with_capacity(take_old);
        if subsets(&old, take_old, 0, &mut pick, &mut |chosen| {
            let set: BTreeSet<usize> = chosen
                .iter()
                .copied()
                .chain(used + 1..=used + fresh)
                .collect();
            assignment[v] = set;
            if fold_rec(g, order, pos + 1, c, b, used + fresh, assignment) {
                return true;
            }
            assignment[v].clear();
            false
        }) {
            return true;
        }
    }
    false
}

/// Calls `f` on each `k`-subset of `items` (lexicographic); stops at the first `true`.
fn subsets(
    items: &[usize],
    k: usize,
    start: usize,
    pick: &mut Vec<usize>,
    f: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    if pick.len() == k {
        return f(pick);
    }
    for i in start..items.len() {
        if items.len() - i < k - pick.len() {
            break;
        }
        pick.push(items[i]);
        if subsets(items, k, i + 1, pick, f) {
            return true;
        }
        pick.pop();
    }
    false
}

/// The `b`-fold chromatic number `χ_b(g)` with a witness.
pub fn chi_b(g: &Graph, b: usize) -> (usize, Coloring) {
    assert!(b >= 1);
    let start = (b * omega(g)).max(b);
    (start..)
        .find_map(|c| b_fold_coloring(g, c, b).map(|col| (c, col)))
        .expect("b * chi colors always suffice")
}
