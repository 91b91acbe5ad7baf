//! Orthogonal subspace representations and projective representations,
//! their verifiers, and the constructions that move between them.

mod construct;
mod faithful;
mod wire;
pub mod random;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::{
    orthogonality_threshold, orthonormal_slack, orthonormality_residual, BlockDiagonal, Subspace,
    Tolerances,
};

pub use construct::{
    coloring_to_osr, combine_fold, glue_clique_sum, osr_to_projective, pad_disjoint_union,
    projective_to_osr, stack_union, standardize_clique,
};
pub use faithful::{
    canonical_faithful_rep, choose_k, faithful_from_pair, fixture_p4_fosr, fixture_p4_osr,
    FaithfulPair,
};
pub use wire::Certificate;

/// A `(d;r)` subspace representation: one `r`-dimensional subspace of
/// `C^d` per vertex, listed in the graph's vertex order.
///
/// `faithful` selects the semantics the certificate claims: orthogonal on
/// every edge (OSR), or orthogonal exactly on the non-edges (FOSR).
#[derive(Clone, Debug, PartialEq)]
pub struct SubspaceRepresentation {
    pub graph: Graph,
    pub d: usize,
    pub r: usize,
    pub assignment: Vec<Subspace>,
    pub faithful: bool,
}

/// A `d/r`-representation: one rank-`r` orthogonal projector on `C^d` per
/// vertex. Projectors may be stored block-diagonally.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectiveRepresentation {
    pub graph: Graph,
    pub d: usize,
    pub r: usize,
    pub assignment: Vec<BlockDiagonal>,
    pub faithful: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    /// A vertex label, or `"u-v"` for a pair.
    pub at: String,
    pub condition: String,
    pub residual: f64,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {} (residual {:e})", self.condition, self.at, self.residual)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub valid: bool,
    pub violations: Vec<Violation>,
}

impl VerificationReport {
    fn from_violations(violations: Vec<Violation>) -> Self {
        VerificationReport {
            valid: violations.is_empty(),
            violations,
        }
    }

    /// `Ok(())` when valid, otherwise [`Error::Unverified`] naming `what`.
    pub fn into_result(self, what: &str) -> Result<()> {
        match self.violations.first() {
            None => Ok(()),
            Some(first) => Err(Error::Unverified {
                what: what.to_string(),
                violations: self.violations.len(),
                first: first.to_string(),
            }),
        }
    }
}

fn violation(at: impl Into<String>, condition: &str, residual: f64) -> Violation {
    Violation {
        at: at.into(),
        condition: condition.to_string(),
        residual,
    }
}

fn pair_label(g: &Graph, i: usize, j: usize) -> String {
    format!("{}-{}", g.label(i), g.label(j))
}

fn structural_violations(g: &Graph, d: usize, r: usize, len: usize) -> Vec<Violation> {
    let mut out = Vec::new();
    if len != g.order() {
        out.push(violation("assignment", "vertex-count", len.abs_diff(g.order()) as f64));
    }
    if r == 0 || r > d {
        out.push(violation("representation", "dimension-order", r as f64 - d as f64));
    }
    out
}

impl SubspaceRepresentation {
    pub fn new(graph: Graph, d: usize, r: usize, assignment: Vec<Subspace>, faithful: bool) -> Self {
        SubspaceRepresentation {
            graph,
            d,
            r,
            assignment,
            faithful,
        }
    }

    pub fn subspace(&self, label: &str) -> Option<&Subspace> {
        self.graph.index_of(label).and_then(|i| self.assignment.get(i))
    }

    /// Checks against the semantics declared by the `faithful` flag.
    pub fn verify(&self, tol: &Tolerances) -> VerificationReport {
        check_subspaces(self, self.faithful, tol)
    }

    /// The same subspaces restricted to the vertices of `h`.
    ///
    /// An OSR restricts to any subgraph; an FOSR only to induced subgraphs.
    pub fn restrict(&self, h: &Graph) -> Result<SubspaceRepresentation> {
        let ok = if self.faithful {
            h.is_induced_subgraph_of(&self.graph)
        } else {
            h.is_subgraph_of(&self.graph)
        };
        if !ok {
            return Err(Error::Mismatch(format!(
                "{:?} is not a{} subgraph of the represented graph",
                h,
                if self.faithful { "n induced" } else { "" }
            )));
        }
        let assignment = h
            .labels()
            .iter()
            .map(|l| self.subspace(l).cloned().expect("subgraph vertex"))
            .collect();
        Ok(SubspaceRepresentation::new(h.clone(), self.d, self.r, assignment, self.faithful))
    }

    pub(crate) fn kind(&self) -> &'static str {
        if self.faithful {
            "FOSR"
        } else {
            "OSR"
        }
    }
}

fn check_subspaces(rep: &SubspaceRepresentation, faithful: bool, tol: &Tolerances) -> VerificationReport {
    let g = &rep.graph;
    let mut out = structural_violations(g, rep.d, rep.r, rep.assignment.len());
    if rep.assignment.len() != g.order() {
        return VerificationReport::from_violations(out);
    }
    let mut sound = vec![true; g.order()];
    for (i, s) in rep.assignment.iter().enumerate() {
        if s.ambient_dim() != rep.d || s.dim() != rep.r {
            let off = s.ambient_dim().abs_diff(rep.d) + s.dim().abs_diff(rep.r);
            out.push(violation(g.label(i), "shape", off as f64));
            sound[i] = false;
            continue;
        }
        let residual = orthonormality_residual(s.basis());
        if residual > orthonormal_slack(s.dim(), tol) {
            out.push(violation(g.label(i), "orthonormal-basis", residual));
        }
    }
    let threshold = orthogonality_threshold(rep.r, rep.r, tol);
    for i in 0..g.order() {
        for j in i + 1..g.order() {
            if !(sound[i] && sound[j]) {
                continue;
            }
            let overlap = rep.assignment[i].overlap(&rep.assignment[j]);
            let orthogonal = overlap <= threshold;
            if g.has_edge(i, j) && !orthogonal && !faithful {
                out.push(violation(pair_label(g, i, j), "edge-not-orthogonal", overlap));
            }
            if g.has_edge(i, j) && orthogonal && faithful {
                out.push(violation(pair_label(g, i, j), "edge-orthogonal", overlap));
            }
            if !g.has_edge(i, j) && !orthogonal && faithful {
                out.push(violation(pair_label(g, i, j), "non-edge-not-orthogonal", overlap));
            }
        }
    }
    VerificationReport::from_violations(out)
}

/// `S_u ⊥ S_v` on every edge. The `faithful` flag is ignored.
pub fn verify_osr(rep: &SubspaceRepresentation, tol: &Tolerances) -> VerificationReport {
    check_subspaces(rep, false, tol)
}

/// `S_u ⊥ S_v` exactly on the non-edges. The `faithful` flag is ignored.
pub fn verify_fosr(rep: &SubspaceRepresentation, tol: &Tolerances) -> VerificationReport {
    check_subspaces(rep, true, tol)
}

impl ProjectiveRepresentation {
    pub fn new(graph: Graph, d: usize, r: usize, assignment: Vec<BlockDiagonal>, faithful: bool) -> Self {
        ProjectiveRepresentation {
            graph,
            d,
            r,
            assignment,
            faithful,
        }
    }

    pub fn projector(&self, label: &str) -> Option<&BlockDiagonal> {
        self.graph.index_of(label).and_then(|i| self.assignment.get(i))
    }

    pub fn verify(&self, tol: &Tolerances) -> VerificationReport {
        check_projectors(self, self.faithful, tol)
    }

    pub(crate) fn kind(&self) -> &'static str {
        if self.faithful {
            "faithful projective representation"
        } else {
            "projective representation"
        }
    }
}

fn check_projectors(rep: &ProjectiveRepresentation, faithful: bool, tol: &Tolerances) -> VerificationReport {
    let g = &rep.graph;
    let mut out = structural_violations(g, rep.d, rep.r, rep.assignment.len());
    if rep.assignment.len() != g.order() {
        return VerificationReport::from_violations(out);
    }
    let mut sound = vec![true; g.order()];
    for (i, p) in rep.assignment.iter().enumerate() {
        if p.dim() != rep.d {
            out.push(violation(g.label(i), "shape", p.dim().abs_diff(rep.d) as f64));
            sound[i] = false;
            continue;
        }
        let slack = tol.orth_tol * p.norm().max(1.0);
        let h = p.hermitian_residual();
        if h > slack {
            out.push(violation(g.label(i), "hermitian", h));
        }
        let e = p.idempotent_residual();
        if e > slack {
            out.push(violation(g.label(i), "idempotent", e));
        }
        let rank = p.rank(tol);
        if rank != rep.r {
            out.push(violation(g.label(i), "rank", rank as f64 - rep.r as f64));
        }
    }
    // ‖P_u P_v‖_F = ‖X_u* X_v‖_F for projectors onto the spans of X_u, X_v
    let threshold = orthogonality_threshold(rep.r, rep.r, tol);
    for i in 0..g.order() {
        for j in i + 1..g.order() {
            if !(sound[i] && sound[j]) {
                continue;
            }
            let product = rep.assignment[i].product_norm(&rep.assignment[j]);
            let vanishes = product <= threshold;
            if g.has_edge(i, j) && !vanishes && !faithful {
                out.push(violation(pair_label(g, i, j), "edge-product-nonzero", product));
            }
            if g.has_edge(i, j) && vanishes && faithful {
                out.push(violation(pair_label(g, i, j), "edge-product-zero", product));
            }
            if !g.has_edge(i, j) && !vanishes && faithful {
                out.push(violation(pair_label(g, i, j), "non-edge-product-nonzero", product));
            }
        }
    }
    VerificationReport::from_violations(out)
}

/// Rank-`r` projectors with `P_u P_v = 0` on every edge.
pub fn verify_projective(rep: &ProjectiveRepresentation, tol: &Tolerances) -> VerificationReport {
    check_projectors(rep, false, tol)
}

/// Rank-`r` projectors with `P_u P_v = 0` exactly on the non-edges.
pub fn verify_faithful_projective(rep: &ProjectiveRepresentation, tol: &Tolerances) -> VerificationReport {
    check_projectors(rep, true, tol)
}
