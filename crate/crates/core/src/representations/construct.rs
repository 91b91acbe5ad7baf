use std::collections::BTreeSet;

use nalgebra::DMatrix;

use super::{ProjectiveRepresentation, SubspaceRepresentation};
use crate::error::{Error, Result};
use crate::graph::{Coloring, Graph};
use crate::linalg::{
    align_to_standard, basis_from_projector, direct_sum, orthonormal_slack,
    orthonormality_residual, projector_from_basis, BlockDiagonal, CMatrix, Subspace, Tolerances,
    C64,
};

fn require_valid(rep: &SubspaceRepresentation, tol: &Tolerances) -> Result<()> {
    rep.verify(tol).into_result(rep.kind())
}

fn require_valid_projective(rep: &ProjectiveRepresentation, tol: &Tolerances) -> Result<()> {
    rep.verify(tol).into_result(rep.kind())
}

fn require_non_faithful(rep: &SubspaceRepresentation, op: &str) -> Result<()> {
    if rep.faithful {
        return Err(Error::InvalidArgument(format!(
            "{op} applies to non-faithful representations only"
        )));
    }
    Ok(())
}

/// `d' × r` matrix holding `x` in rows `offset..offset + x.nrows()`.
fn embed_rows(x: &CMatrix, d: usize, offset: usize) -> CMatrix {
    let mut out = DMatrix::<C64>::zeros(d, x.ncols());
    out.view_mut((offset, 0), x.shape()).copy_from(x.inner());
    CMatrix::from(out)
}

fn apply(u: &CMatrix, s: &Subspace) -> Subspace {
    Subspace::from_basis_unchecked(CMatrix::from(u.inner() * s.basis().inner()))
}

/// `P_u = X_u X_u*`, keeping the faithful flag.
pub fn osr_to_projective(rep: &SubspaceRepresentation, tol: &Tolerances) -> Result<ProjectiveRepresentation> {
    require_valid(rep, tol)?;
    let assignment = rep
        .assignment
        .iter()
        .map(|s| BlockDiagonal::dense(projector_from_basis(s)))
        .collect();
    Ok(ProjectiveRepresentation::new(rep.graph.clone(), rep.d, rep.r, assignment, rep.faithful))
}

/// `S_u = range(P_u)`, keeping the faithful flag. Block-diagonal projectors
/// are decomposed block by block.
pub fn projective_to_osr(rep: &ProjectiveRepresentation, tol: &Tolerances) -> Result<SubspaceRepresentation> {
    require_valid_projective(rep, tol)?;
    let assignment = rep
        .assignment
        .iter()
        .map(|p| {
            let mut blocks = Vec::new();
            for (block, k) in p.runs() {
                let basis = basis_from_projector(block, tol)?.into_basis();
                blocks.extend(std::iter::repeat_n(basis, *k));
            }
            Ok(Subspace::from_basis_unchecked(direct_sum(&blocks)))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SubspaceRepresentation::new(rep.graph.clone(), rep.d, rep.r, assignment, rep.faithful))
}

/// `(d_a + d_b; r_a + r_b)` representation with `X_u = X_u^a ⊕ X_u^b`.
pub fn combine_fold(
    a: &SubspaceRepresentation,
    b: &SubspaceRepresentation,
    tol: &Tolerances,
) -> Result<SubspaceRepresentation> {
    if a.graph != b.graph {
        return Err(Error::Mismatch("representations are over different graphs".into()));
    }
    if a.faithful != b.faithful {
        return Err(Error::Mismatch("one representation is faithful and the other is not".into()));
    }
    require_valid(a, tol)?;
    require_valid(b, tol)?;
    let assignment = a
        .graph
        .labels()
        .iter()
        .zip(&a.assignment)
        .map(|(l, sa)| {
            let sb = b.subspace(l).expect("equal graphs share labels");
            Subspace::from_basis_unchecked(direct_sum(&[sa.basis().clone(), sb.basis().clone()]))
        })
        .collect();
    Ok(SubspaceRepresentation::new(a.graph.clone(), a.d + b.d, a.r + b.r, assignment, a.faithful))
}

/// OSR of the disjoint union in `C^{max d_i}`, padding each basis with zero rows.
pub fn pad_disjoint_union(parts: &[SubspaceRepresentation], tol: &Tolerances) -> Result<SubspaceRepresentation> {
    let first = parts
        .first()
        .ok_or_else(|| Error::InvalidArgument("no parts to combine".into()))?;
    for p in parts {
        require_non_faithful(p, "padding")?;
        if p.r != first.r {
            return Err(Error::Mismatch(format!("subspace dimensions {} and {}", first.r, p.r)));
        }
        require_valid(p, tol)?;
    }
    let d = parts.iter().map(|p| p.d).max().expect("non-empty");
    let graphs: Vec<Graph> = parts.iter().map(|p| p.graph.clone()).collect();
    let assignment = parts
        .iter()
        .flat_map(|p| p.assignment.iter())
        .map(|s| Subspace::from_basis_unchecked(embed_rows(s.basis(), d, 0)))
        .collect();
    Ok(SubspaceRepresentation::new(Graph::disjoint_union(&graphs), d, first.r, assignment, false))
}

/// `(d_1 + d_2; r)`-OSR of `g = G_1 ∪ G_2` from OSRs of induced subgraphs
/// `G_1`, `G_2`: shared vertices get `[X_u^1; X_u^2] / √2`, the others their
/// basis padded with zeros.
pub fn stack_union(
    rep1: &SubspaceRepresentation,
    rep2: &SubspaceRepresentation,
    g: &Graph,
    tol: &Tolerances,
) -> Result<SubspaceRepresentation> {
    for (name, rep) in [("first", rep1), ("second", rep2)] {
        require_non_faithful(rep, "stacking")?;
        if !rep.graph.is_induced_subgraph_of(g) {
            return Err(Error::Mismatch(format!("the {name} graph is not an induced subgraph")));
        }
    }
    if rep1.r != rep2.r {
        return Err(Error::Mismatch(format!("subspace dimensions {} and {}", rep1.r, rep2.r)));
    }
    if Graph::union(&rep1.graph, &rep2.graph) != *g {
        return Err(Error::Mismatch("the two graphs do not cover every vertex and edge".into()));
    }
    require_valid(rep1, tol)?;
    require_valid(rep2, tol)?;
    let (d1, d2) = (rep1.d, rep2.d);
    let d = d1 + d2;
    let assignment = g
        .labels()
        .iter()
        .map(|l| match (rep1.subspace(l), rep2.subspace(l)) {
            (Some(s1), Some(s2)) => {
                let mut x = embed_rows(s1.basis(), d, 0).into_inner();
                x += embed_rows(s2.basis(), d, d1).into_inner();
                x.unscale_mut(std::f64::consts::SQRT_2);
                Subspace::new(CMatrix::from(x), tol)
            }
            (Some(s1), None) => Ok(Subspace::from_basis_unchecked(embed_rows(s1.basis(), d, 0))),
            (None, Some(s2)) => Ok(Subspace::from_basis_unchecked(embed_rows(s2.basis(), d, d1))),
            (None, None) => unreachable!("the union covers every vertex"),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SubspaceRepresentation::new(g.clone(), d, rep1.r, assignment, false))
}

/// Rotates `rep` by a unitary so that the `i`-th clique vertex spans the
/// standard coordinates `i·r .. (i+1)·r` (0-based).
///
/// The clique subspaces must be mutually orthogonal, which holds for every
/// clique of an OSR and for single vertices of an FOSR.
pub fn standardize_clique(
    rep: &SubspaceRepresentation,
    clique: &[String],
    tol: &Tolerances,
) -> Result<SubspaceRepresentation> {
    let idx = clique
        .iter()
        .map(|l| rep.graph.require(l))
        .collect::<Result<Vec<_>>>()?;
    if idx.iter().collect::<BTreeSet<_>>().len() != idx.len() || !rep.graph.is_clique(&idx) {
        return Err(Error::InvalidArgument(format!("{clique:?} is not a clique")));
    }
    let (r, t) = (rep.r, idx.len());
    if rep.d < r * t {
        return Err(Error::DimensionMismatch(format!(
            "a clique of {t} needs {} dimensions, the representation has {}",
            r * t,
            rep.d
        )));
    }
    require_valid(rep, tol)?;
    let blocks: Vec<CMatrix> = idx.iter().map(|&i| rep.assignment[i].basis().clone()).collect();
    let m = hcat(rep.d, &blocks);
    let residual = orthonormality_residual(&m);
    if residual > orthonormal_slack(m.ncols(), tol) {
        return Err(Error::NotOrthonormal { residual });
    }
    let u = align_to_standard(&m, tol)?;
    let mut assignment: Vec<Subspace> = rep.assignment.iter().map(|s| apply(&u, s)).collect();
    for (k, &i) in idx.iter().enumerate() {
        assignment[i] = Subspace::standard(rep.d, k * r..(k + 1) * r);
    }
    Ok(SubspaceRepresentation::new(rep.graph.clone(), rep.d, r, assignment, rep.faithful))
}

fn hcat(rows: usize, blocks: &[CMatrix]) -> CMatrix {
    let cols = blocks.iter().map(|b| b.ncols()).sum();
    let mut out = DMatrix::<C64>::zeros(rows, cols);
    let mut k = 0;
    for b in blocks {
        out.view_mut((0, k), b.shape()).copy_from(b.inner());
        k += b.ncols();
    }
    CMatrix::from(out)
}

/// OSR of the clique sum `G_1 ⊕_t G_2` in `C^{max(d_1, d_2)}`.
pub fn glue_clique_sum(
    rep1: &SubspaceRepresentation,
    rep2: &SubspaceRepresentation,
    clique: &[String],
    tol: &Tolerances,
) -> Result<SubspaceRepresentation> {
    require_non_faithful(rep1, "clique-sum gluing")?;
    require_non_faithful(rep2, "clique-sum gluing")?;
    if rep1.r != rep2.r {
        return Err(Error::Mismatch(format!("subspace dimensions {} and {}", rep1.r, rep2.r)));
    }
    let sum = Graph::clique_sum(&rep1.graph, &rep2.graph, clique.len())?;
    let given: BTreeSet<&String> = clique.iter().collect();
    if sum.clique.iter().collect::<BTreeSet<_>>() != given {
        return Err(Error::CliqueSum(format!(
            "the parts intersect in {:?}, not {clique:?}",
            sum.clique
        )));
    }
    let s1 = standardize_clique(rep1, clique, tol)?;
    let s2 = standardize_clique(rep2, clique, tol)?;
    let d = rep1.d.max(rep2.d);
    let assignment = sum
        .graph
        .labels()
        .iter()
        .map(|l| {
            let s = s1.subspace(l).or_else(|| s2.subspace(l)).expect("vertex of a part");
            Subspace::from_basis_unchecked(embed_rows(s.basis(), d, 0))
        })
        .collect();
    Ok(SubspaceRepresentation::new(sum.graph, d, rep1.r, assignment, false))
}

/// `(r·c/b; r)`-OSR from a `c:b`-coloring with `b | r`: color `j` spans the
/// standard coordinates of block `j`, each block `r/b` wide.
pub fn coloring_to_osr(g: &Graph, col: &Coloring, r: usize) -> Result<SubspaceRepresentation> {
    if r == 0 || col.fold == 0 || !r.is_multiple_of(col.fold) {
        return Err(Error::InvalidArgument(format!(
            "r = {r} is not a positive multiple of the coloring's fold {}",
            col.fold
        )));
    }
    if !col.is_valid(g) {
        return Err(Error::InvalidArgument("the coloring is not proper".into()));
    }
    let w = r / col.fold;
    let d = w * col.palette;
    let assignment = col
        .assignment
        .iter()
        .map(|set| Subspace::standard(d, set.iter().flat_map(|&j| (j - 1) * w..j * w)))
        .collect();
    Ok(SubspaceRepresentation::new(g.clone(), d, r, assignment, false))
}
