//! Simple undirected labeled graphs and the exact combinatorial parameters
//! (independence, clique and chromatic numbers, fold colorings, fractional
//! chromatic number, chordality) used as bounds throughout the crate.
//!
//! Vertices are identified by string labels. Internally every vertex has a
//! 0-based index following the declared label order; all algorithms are
//! deterministic and break ties by that order.

mod chordal;
mod coloring;
mod format;
mod generate;
mod lp;
mod rational;
mod search;

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub use chordal::{is_chordal, Chordality};
pub use coloring::{b_fold_coloring, chi, chi_b, Coloring};
pub use format::GraphFormat;
pub use generate::{generate, random_chordal, GraphKind};
pub use lp::{chi_f, FractionalColoring};
pub use rational::Rational;
pub use search::{alpha, max_clique, max_independent_set, omega};

/// Vertex-set bitmask used by the exact searches.
pub(crate) type Mask = u128;

/// Largest order accepted by the exact (bitmask) searches.
pub const MAX_EXACT_ORDER: usize = 128;

/// A simple undirected graph on string-labeled vertices.
#[derive(Clone)]
pub struct Graph {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    adj: Vec<Vec<bool>>,
}

impl Graph {
    /// Builds a graph from labels and label pairs. Duplicate edges collapse.
    pub fn new<S: AsRef<str>>(labels: &[S], edges: &[(S, S)]) -> Result<Self> {
        let mut g = Self::with_vertices(labels.iter().map(|s| s.as_ref().to_string()))?;
        for (k, (a, b)) in edges.iter().enumerate() {
            g.add_edge_labels(a.as_ref(), b.as_ref(), k)?;
        }
        Ok(g)
    }

    /// Builds a graph on vertices `0..n` (labels are the decimal indices
    /// offset by `base`) from index pairs.
    pub fn from_indices(n: usize, base: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::with_vertices((0..n).map(|i| (i + base).to_string()))?;
        for (k, &(a, b)) in edges.iter().enumerate() {
            if a >= n || b >= n {
                return Err(Error::InvalidArgument(format!(
                    "edge ({a}, {b}) out of range for {n} vertices"
                )));
            }
            if a == b {
                return Err(Error::LoopEdge {
                    label: g.labels[a].clone(),
                    index: k,
                });
            }
            g.set_edge(a, b, true);
        }
        Ok(g)
    }

    pub(crate) fn with_vertices(labels: impl IntoIterator<Item = String>) -> Result<Self> {
        let mut g = Graph {
            labels: Vec::new(),
            index: HashMap::new(),
            adj: Vec::new(),
        };
        for label in labels {
            let i = g.labels.len();
            if g.index.insert(label.clone(), i).is_some() {
                return Err(Error::DuplicateVertex { label, index: i });
            }
            g.labels.push(label);
        }
        let n = g.labels.len();
        g.adj = vec![vec![false; n]; n];
        Ok(g)
    }

    fn add_edge_labels(&mut self, a: &str, b: &str, k: usize) -> Result<()> {
        let i = self.require(a)?;
        let j = self.require(b)?;
        if i == j {
            return Err(Error::LoopEdge {
                label: a.to_string(),
                index: k,
            });
        }
        self.set_edge(i, j, true);
        Ok(())
    }

    pub(crate) fn set_edge(&mut self, i: usize, j: usize, present: bool) {
        self.adj[i][j] = present;
        self.adj[j][i] = present;
    }

    /// The empty graph on zero vertices.
    pub fn null() -> Self {
        Graph {
            labels: Vec::new(),
            index: HashMap::new(),
            adj: Vec::new(),
        }
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    /// Index of `label`, or [`Error::UnknownVertex`].
    pub fn require(&self, label: &str) -> Result<usize> {
        self.index_of(label)
            .ok_or_else(|| Error::UnknownVertex(label.to_string()))
    }

    pub fn contains(&self, label: &str) -> bool {
        self.index.contains_key(label)
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i][j]
    }

    pub fn has_edge_labels(&self, a: &str, b: &str) -> bool {
        match (self.index_of(a), self.index_of(b)) {
            (Some(i), Some(j)) => self.adj[i][j],
            _ => false,
        }
    }

    /// Edges as index pairs `(i, j)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.order();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if self.adj[i][j] {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.edges().len()
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[i]
            .iter()
            .enumerate()
            .filter_map(|(j, &e)| e.then_some(j))
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adj[i].iter().filter(|&&e| e).count()
    }

    /// True when every pair of the given vertices is adjacent.
    pub fn is_clique(&self, vertices: &[usize]) -> bool {
        vertices.iter().enumerate().all(|(k, &a)| {
            vertices[k + 1..]
                .iter()
                .all(|&b| a != b && self.adj[a][b])
        })
    }

    pub(crate) fn masks(&self) -> Vec<Mask> {
        assert!(
            self.order() <= MAX_EXACT_ORDER,
            "exact search supports at most {MAX_EXACT_ORDER} vertices"
        );
        self.adj
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .fold(0, |m, (j, &e)| if e { m | (1 << j) } else { m })
            })
            .collect()
    }

    /// Same vertex set; `uv` is an edge iff `u != v` and `uv` is not an edge.
    pub fn complement(&self) -> Graph {
        let mut g = self.clone();
        let n = self.order();
        for i in 0..n {
            for j in 0..n {
                g.adj[i][j] = i != j && !self.adj[i][j];
            }
        }
        g
    }

    /// The subgraph induced by `vertices`, which keeps this graph's vertex order.
    pub fn induced_subgraph<S: AsRef<str>>(&self, vertices: &[S]) -> Result<Graph> {
        let mut keep = BTreeSet::new();
        for v in vertices {
            keep.insert(self.require(v.as_ref())?);
        }
        Ok(self.induced_by_indices(&keep.into_iter().collect::<Vec<_>>()))
    }

    /// Induced subgraph on the given indices, in the given order.
    pub fn induced_by_indices(&self, idx: &[usize]) -> Graph {
        let mut g = Graph::with_vertices(idx.iter().map(|&i| self.labels[i].clone()))
            .expect("labels of a graph are distinct");
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                g.adj[a][b] = self.adj[i][j];
            }
        }
        g
    }

    /// Disjoint union. When labels collide across parts, every label is
    /// namespaced as `"{part}:{label}"` (part index from 0).
    pub fn disjoint_union(parts: &[Graph]) -> Graph {
        let mut seen = BTreeSet::new();
        let collide = parts
            .iter()
            .flat_map(|p| p.labels.iter())
            .any(|l| !seen.insert(l.as_str()));
        let labels = parts.iter().enumerate().flat_map(|(k, p)| {
            p.labels.iter().map(move |l| {
                if collide {
                    format!("{k}:{l}")
                } else {
                    l.clone()
                }
            })
        });
        let mut g = Graph::with_vertices(labels).expect("namespacing makes labels distinct");
        let mut offset = 0;
        for p in parts {
            for (i, j) in p.edges() {
                g.set_edge(offset + i, offset + j, true);
            }
            offset += p.order();
        }
        g
    }

    /// Union of vertex and edge sets; shared labels denote shared vertices.
    /// Vertex order: `g1`'s vertices, then those only in `g2`.
    pub fn union(g1: &Graph, g2: &Graph) -> Graph {
        let labels = g1
            .labels
            .iter()
            .chain(g2.labels.iter().filter(|l| !g1.contains(l)))
            .cloned();
        let mut g = Graph::with_vertices(labels).expect("deduplicated labels");
        for part in [g1, g2] {
            for (i, j) in part.edges() {
                let a = g.index[&part.labels[i]];
                let b = g.index[&part.labels[j]];
                g.set_edge(a, b, true);
            }
        }
        g
    }

    /// The `t`-clique-sum of two graphs whose shared vertices induce `K_t` in both.
    pub fn clique_sum(g1: &Graph, g2: &Graph, t: usize) -> Result<CliqueSum> {
        let shared: Vec<String> = g1
            .labels
            .iter()
            .filter(|l| g2.contains(l))
            .cloned()
            .collect();
        if shared.len() != t {
            return Err(Error::CliqueSum(format!(
                "the parts share {} vertices, expected {t}",
                shared.len()
            )));
        }
        for (name, part) in [("first", g1), ("second", g2)] {
            let idx: Vec<usize> = shared.iter().map(|l| part.index[l]).collect();
            if !part.is_clique(&idx) {
                return Err(Error::CliqueSum(format!(
                    "shared vertices {shared:?} do not induce a clique in the {name} part"
                )));
            }
        }
        Ok(CliqueSum {
            graph: Graph::union(g1, g2),
            clique: shared,
        })
    }

    /// Connected components as sorted index lists, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut stack = vec![s];
            let mut members = Vec::new();
            comp[s] = id;
            while let Some(u) = stack.pop() {
                members.push(u);
                for v in self.neighbors(u) {
                    if comp[v] == usize::MAX {
                        comp[v] = id;
                        stack.push(v);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// The graphs `G[V(H_i) ∪ {v}]` for the components `H_i` of `G - v`.
    pub fn cut_vertex_components(&self, v: &str) -> Result<Vec<Graph>> {
        let vi = self.require(v)?;
        if self.order() < 2 || !self.is_connected() {
            return Err(Error::Disconnected);
        }
        let rest: Vec<usize> = (0..self.order()).filter(|&i| i != vi).collect();
        let without = self.induced_by_indices(&rest);
        let comps = without.components();
        if comps.len() < 2 {
            return Err(Error::NotCutVertex(v.to_string()));
        }
        Ok(comps
            .into_iter()
            .map(|c| {
                let mut idx: Vec<usize> = c.into_iter().map(|k| rest[k]).collect();
                idx.push(vi);
                idx.sort_unstable();
                self.induced_by_indices(&idx)
            })
            .collect())
    }

    /// Same graph with labels replaced by `"0".."n-1"`.
    pub fn canonical_relabel(&self) -> Graph {
        let mut g = Graph::with_vertices((0..self.order()).map(|i| i.to_string()))
            .expect("distinct");
        g.adj = self.adj.clone();
        g
    }

    /// A label-ordered textual key identifying this labeled graph.
    pub fn canonical_key(&self) -> String {
        let mut labels: Vec<&String> = self.labels.iter().collect();
        labels.sort();
        let mut edges: Vec<(String, String)> = self
            .edges()
            .into_iter()
            .map(|(i, j)| {
                let (a, b) = (&self.labels[i], &self.labels[j]);
                if a <= b {
                    (a.clone(), b.clone())
                } else {
                    (b.clone(), a.clone())
                }
            })
            .collect();
        edges.sort();
        let mut key = labels
            .iter()
            .map(|l| l.as_str())
            .collect::<Vec<_>>()
            .join(",");
        key.push('|');
        for (a, b) in edges {
            key.push_str(&format!("{a}-{b};"));
        }
        key
    }

    /// Whether every vertex and edge of `self` is present in `other`.
    pub fn is_subgraph_of(&self, other: &Graph) -> bool {
        self.labels.iter().all(|l| other.contains(l))
            && self
                .edges()
                .into_iter()
                .all(|(i, j)| other.has_edge_labels(&self.labels[i], &self.labels[j]))
    }

    /// Whether `self` is an induced subgraph of `other`.
    pub fn is_induced_subgraph_of(&self, other: &Graph) -> bool {
        if !self.labels.iter().all(|l| other.contains(l)) {
            return false;
        }
        let n = self.order();
        (0..n).all(|i| {
            (i + 1..n).all(|j| {
                self.adj[i][j] == other.has_edge_labels(&self.labels[i], &self.labels[j])
            })
        })
    }
}

/// Equality of labeled graphs: same label set and same labeled edges,
/// regardless of declaration order.
impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.order() == other.order()
            && self.labels.iter().all(|l| other.contains(l))
            && self.edge_count() == other.edge_count()
            && self.is_subgraph_of(other)
    }
}

impl Eq for Graph {}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> = self
            .edges()
            .into_iter()
            .map(|(i, j)| format!("{}-{}", self.labels[i], self.labels[j]))
            .collect();
        f.debug_struct("Graph")
            .field("vertices", &self.labels)
            .field("edges", &edges)
            .finish()
    }
}

/// Result of [`Graph::clique_sum`]: the union plus the shared clique.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueSum {
    pub graph: Graph,
    pub clique: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct EdgeListJson {
    vertices: Vec<String>,
    edges: Vec<(String, String)>,
}

impl Serialize for Graph {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        EdgeListJson {
            vertices: self.labels.clone(),
            edges: self
                .edges()
                .into_iter()
                .map(|(i, j)| (self.labels[i].clone(), self.labels[j].clone()))
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = EdgeListJson::deserialize(d)?;
        Graph::new(&raw.vertices, &raw.edges).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p4() -> Graph {
        generate(GraphKind::Path, 4).unwrap()
    }

    #[test]
    fn complement_of_complete_is_empty() {
        let k4 = generate(GraphKind::Complete, 4).unwrap();
        assert_eq!(k4.complement().edge_count(), 0);
    }

    #[test]
    fn complement_of_p4_is_p4_3142() {
        let c = p4().complement();
        let expect = Graph::new(
            &["1", "2", "3", "4"],
            &[("1", "3"), ("1", "4"), ("2", "4")],
        )
        .unwrap();
        assert_eq!(c, expect);
    }

    #[test]
    fn complement_is_involution() {
        let c5 = generate(GraphKind::Cycle, 5).unwrap();
        assert_eq!(c5.complement().complement(), c5);
    }

    #[test]
    fn induced_subgraph_cases() {
        let c5 = generate(GraphKind::Cycle, 5).unwrap();
        let p3 = c5.induced_subgraph(&["1", "2", "3"]).unwrap();
        assert_eq!(
            p3,
            Graph::new(&["1", "2", "3"], &[("1", "2"), ("2", "3")]).unwrap()
        );
        assert_eq!(c5.induced_subgraph(c5.labels()).unwrap(), c5);
        let empty: [&str; 0] = [];
        assert_eq!(c5.induced_subgraph(&empty).unwrap().order(), 0);
        assert!(matches!(
            c5.induced_subgraph(&["9"]),
            Err(Error::UnknownVertex(_))
        ));
    }

    #[test]
    fn disjoint_union_cases() {
        let p2 = generate(GraphKind::Path, 2).unwrap();
        let u = Graph::disjoint_union(&[p2.clone(), p2]);
        assert_eq!((u.order(), u.edge_count()), (4, 2));
        assert!(u.contains("0:1") && u.contains("1:2"));

        let k3 = Graph::new(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("a", "c")]).unwrap();
        let k1 = Graph::new(&["d"], &[]).unwrap();
        let u = Graph::disjoint_union(&[k3, k1]);
        assert!(u.contains("a") && u.contains("d"));
        assert_eq!((omega(&u), alpha(&u)), (3, 2));

        assert_eq!(Graph::disjoint_union(&[]).order(), 0);
    }

    #[test]
    fn union_builds_c5() {
        let g1 = Graph::new(&["1", "2", "3", "4"], &[("1", "2"), ("2", "3"), ("3", "4")]).unwrap();
        let g2 = Graph::new(&["4", "5", "1"], &[("4", "5"), ("5", "1")]).unwrap();
        assert_eq!(Graph::union(&g1, &g2), generate(GraphKind::Cycle, 5).unwrap());
        assert_eq!(Graph::union(&g1, &g1), g1);
        let ab = Graph::new(&["a", "b"], &[("a", "b")]).unwrap();
        let bc = Graph::new(&["b", "c"], &[("b", "c")]).unwrap();
        assert_eq!(
            Graph::union(&ab, &bc),
            Graph::new(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap()
        );
    }

    #[test]
    fn clique_sum_cases() {
        let t1 = Graph::new(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("a", "c")]).unwrap();
        let t2 = Graph::new(&["a", "b", "d"], &[("a", "b"), ("b", "d"), ("a", "d")]).unwrap();
        let cs = Graph::clique_sum(&t1, &t2, 2).unwrap();
        assert_eq!(cs.clique, vec!["a", "b"]);
        assert_eq!(cs.graph.edge_count(), 5);
        assert!(!cs.graph.has_edge_labels("c", "d"));

        let x = Graph::new(&["x"], &[]).unwrap();
        let y = Graph::new(&["y"], &[]).unwrap();
        let cs = Graph::clique_sum(&x, &y, 0).unwrap();
        assert_eq!(cs.graph, Graph::disjoint_union(&[x, y]));

        let bad = Graph::new(&["a", "b", "d"], &[("b", "d"), ("a", "d")]).unwrap();
        assert!(matches!(Graph::clique_sum(&t1, &bad, 2), Err(Error::CliqueSum(_))));
        assert!(matches!(Graph::clique_sum(&t1, &t2, 1), Err(Error::CliqueSum(_))));
    }

    #[test]
    fn cut_vertex_components_cases() {
        let g = Graph::new(&["x", "y", "v", "z"], &[("x", "y"), ("y", "v"), ("v", "z")]).unwrap();
        let parts = g.cut_vertex_components("v").unwrap();
        assert_eq!(parts.len(), 2);
        assert_eq!(
            parts[0],
            Graph::new(&["x", "y", "v"], &[("x", "y"), ("y", "v")]).unwrap()
        );
        assert_eq!(parts[1], Graph::new(&["v", "z"], &[("v", "z")]).unwrap());

        let star = Graph::new(&["c", "a", "b", "d"], &[("c", "a"), ("c", "b"), ("c", "d")]).unwrap();
        let parts = star.cut_vertex_components("c").unwrap();
        assert_eq!(parts.len(), 3);
        assert!(parts.iter().all(|p| p.order() == 2 && p.edge_count() == 1));

        assert!(matches!(g.cut_vertex_components("x"), Err(Error::NotCutVertex(_))));
        let two = Graph::new(&["a", "b"], &[]).unwrap();
        assert!(matches!(two.cut_vertex_components("a"), Err(Error::Disconnected)));
    }

    #[test]
    fn json_rejects_loops_and_duplicates() {
        let loop_err = serde_json::from_str::<Graph>(r#"{"vertices":["a"],"edges":[["a","a"]]}"#);
        assert!(loop_err.unwrap_err().to_string().contains("loop"));
        let dup = serde_json::from_str::<Graph>(r#"{"vertices":["a","a"],"edges":[]}"#);
        assert!(dup.unwrap_err().to_string().contains("duplicate"));
    }
}
