//! Block matrices that fit a graph: `A_ii = I_r` (or positive diagonal, for
//! weak fits) and `A_ij = 0` exactly when `ij` is not an edge. PSD fitting
//! matrices are Gram matrices of faithful subspace representations.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::{
    c, direct_sum, hermitian_residual, hermitian_slack, is_psd, orthogonality_threshold,
    orthonormal_slack, psd_factor, rank, CMatrix, Subspace, Tolerances, C64,
};
use crate::representations::{verify_fosr, SubspaceRepresentation, VerificationReport, Violation};

/// Draws allowed when searching for a non-cancelling union weight.
pub const BETA_RETRIES: usize = 32;

/// An `nr × nr` matrix read as `n × n` blocks of size `r × r`, blocks in
/// the graph's vertex order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FitMatrix {
    pub graph: Graph,
    pub r: usize,
    pub matrix: CMatrix,
}

/// `D = D_1 ⊕ … ⊕ D_n` with positive diagonal `r × r` blocks, stored as
/// their diagonals.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlockScaling {
    pub diagonals: Vec<Vec<f64>>,
}

impl FitMatrix {
    pub fn new(graph: Graph, r: usize, matrix: CMatrix) -> Self {
        FitMatrix { graph, r, matrix }
    }

    pub fn block(&self, i: usize, j: usize) -> CMatrix {
        let r = self.r;
        CMatrix::from(self.matrix.view((i * r, j * r), (r, r)).into_owned())
    }

    pub fn rank(&self, tol: &Tolerances) -> usize {
        rank(&self.matrix, tol)
    }

    pub fn is_psd(&self, tol: &Tolerances) -> bool {
        is_psd(&self.matrix, tol).unwrap_or(false)
    }

    /// The same matrix with blocks permuted into `order`'s vertex order.
    /// `order` must carry the same labels.
    pub fn reordered(&self, order: &Graph) -> Result<FitMatrix> {
        if order != &self.graph {
            return Err(Error::Mismatch("reordering needs the same labeled graph".into()));
        }
        let r = self.r;
        let perm: Vec<usize> = order
            .labels()
            .iter()
            .map(|l| self.graph.index_of(l).expect("same labels"))
            .collect();
        let m = DMatrix::from_fn(self.matrix.nrows(), self.matrix.ncols(), |a, b| {
            self.matrix[(perm[a / r] * r + a % r, perm[b / r] * r + b % r)]
        });
        Ok(FitMatrix::new(order.clone(), r, CMatrix::from(m)))
    }
}

fn violation(at: String, condition: &str, residual: f64) -> Violation {
    Violation {
        at,
        condition: condition.to_string(),
        residual,
    }
}

fn check(fm: &FitMatrix, weak: bool, tol: &Tolerances) -> VerificationReport {
    let (g, r) = (&fm.graph, fm.r);
    let n = g.order();
    let mut out = Vec::new();
    if r == 0 || fm.matrix.shape() != (n * r, n * r) {
        out.push(violation(
            "matrix".into(),
            "shape",
            (fm.matrix.nrows().abs_diff(n * r) + fm.matrix.ncols().abs_diff(n * r)) as f64,
        ));
        return VerificationReport { valid: false, violations: out };
    }
    let h = hermitian_residual(&fm.matrix);
    if h > hermitian_slack(&fm.matrix, tol) {
        out.push(violation("matrix".into(), "hermitian", h));
    }
    let threshold = orthogonality_threshold(r, r, tol);
    for i in 0..n {
        let a = fm.block(i, i);
        if weak {
            let off = a
                .iter()
                .enumerate()
                .filter(|(k, _)| k % r != k / r)
                .map(|(_, z)| z.norm_sqr())
                .sum::<f64>()
                .sqrt();
            if off > threshold {
                out.push(violation(g.label(i).into(), "diagonal-block-not-diagonal", off));
            }
            let min = (0..r).map(|k| a[(k, k)].re).fold(f64::INFINITY, f64::min);
            if min <= tol.orth_tol {
                out.push(violation(g.label(i).into(), "diagonal-entry-not-positive", min));
            }
        } else {
            let residual = (a.inner() - DMatrix::<C64>::identity(r, r)).norm();
            if residual > orthonormal_slack(r, tol) {
                out.push(violation(g.label(i).into(), "diagonal-block-not-identity", residual));
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            let norm = fm.block(i, j).norm();
            let at = format!("{}-{}", g.label(i), g.label(j));
            match (g.has_edge(i, j), norm > threshold) {
                (true, false) => out.push(violation(at, "edge-block-zero", norm)),
                (false, true) => out.push(violation(at, "non-edge-block-nonzero", norm)),
                _ => {}
            }
        }
    }
    VerificationReport {
        valid: out.is_empty(),
        violations: out,
    }
}

/// `A_ii = I_r` and `A_ij = 0` exactly on non-edges.
pub fn r_fits(fm: &FitMatrix, tol: &Tolerances) -> VerificationReport {
    check(fm, false, tol)
}

/// `A_ii` diagonal with positive entries and `A_ij = 0` exactly on non-edges.
pub fn weakly_r_fits(fm: &FitMatrix, tol: &Tolerances) -> VerificationReport {
    check(fm, true, tol)
}

impl BlockScaling {
    /// `D_i = A_ii^{-1/2}` for a weak fit `A`.
    pub fn of(fm: &FitMatrix, tol: &Tolerances) -> Result<BlockScaling> {
        weakly_r_fits(fm, tol).into_result("weak fit")?;
        let diagonals = (0..fm.graph.order())
            .map(|i| {
                let a = fm.block(i, i);
                (0..fm.r).map(|k| 1.0 / a[(k, k)].re.sqrt()).collect()
            })
            .collect();
        Ok(BlockScaling { diagonals })
    }

    /// `D A D`.
    pub fn apply(&self, a: &CMatrix) -> CMatrix {
        let d: Vec<f64> = self.diagonals.iter().flatten().copied().collect();
        CMatrix::from_fn(a.nrows(), a.ncols(), |i, j| a[(i, j)] * c(d[i] * d[j], 0.0))
    }
}

/// `D A D` with `D_i = A_ii^{-1/2}`: an `r`-fitting matrix of the same rank.
pub fn normalize_weak_fit(fm: &FitMatrix, tol: &Tolerances) -> Result<FitMatrix> {
    if !fm.is_psd(tol) {
        return Err(Error::NotPsd {
            min_eigenvalue: crate::linalg::hermitian_eigen(&fm.matrix)
                .map(|(v, _)| v.first().copied().unwrap_or(0.0))
                .unwrap_or(f64::NAN),
        });
    }
    let scaling = BlockScaling::of(fm, tol)?;
    let mut b = scaling.apply(&fm.matrix);
    // diagonal blocks are exactly diagonal after scaling; pin them to I_r
    let r = fm.r;
    for i in 0..fm.graph.order() {
        b.view_mut((i * r, i * r), (r, r)).fill_with_identity();
    }
    Ok(FitMatrix::new(fm.graph.clone(), r, b))
}

/// Gram matrix `X* X` of `X = [X_1 | … | X_n]` for a verified FOSR.
pub fn fosr_to_fit(rep: &SubspaceRepresentation, tol: &Tolerances) -> Result<FitMatrix> {
    verify_fosr(rep, tol).into_result("FOSR")?;
    let x = hcat(rep);
    Ok(FitMatrix::new(rep.graph.clone(), rep.r, CMatrix::from(x.adjoint() * &x)))
}

fn hcat(rep: &SubspaceRepresentation) -> DMatrix<C64> {
    let r = rep.r;
    let mut x = DMatrix::<C64>::zeros(rep.d, rep.graph.order() * r);
    for (i, s) in rep.assignment.iter().enumerate() {
        x.view_mut((0, i * r), (rep.d, r)).copy_from(s.basis().inner());
    }
    x
}

/// `(ℓ; r)`-FOSR with `ℓ = rank(A)` from a factorization `A = X* X`.
pub fn fit_to_fosr(fm: &FitMatrix, tol: &Tolerances) -> Result<SubspaceRepresentation> {
    r_fits(fm, tol).into_result("fitting matrix")?;
    let x = psd_factor(&fm.matrix, tol)?;
    let r = fm.r;
    let d = x.nrows();
    let assignment = (0..fm.graph.order())
        .map(|i| Subspace::from_basis_unchecked(CMatrix::from(x.columns(i * r, r).into_owned())))
        .collect();
    Ok(SubspaceRepresentation::new(fm.graph.clone(), d, r, assignment, true))
}

/// `A_1 ⊕ … ⊕ A_t`, fitting the disjoint union of the parts' graphs.
pub fn direct_sum_fits(parts: &[FitMatrix], tol: &Tolerances) -> Result<FitMatrix> {
    let first = parts
        .first()
        .ok_or_else(|| Error::InvalidArgument("no parts to combine".into()))?;
    for p in parts {
        if p.r != first.r {
            return Err(Error::Mismatch(format!("block sizes {} and {}", first.r, p.r)));
        }
        r_fits(p, tol).into_result("fitting matrix")?;
    }
    let graphs: Vec<Graph> = parts.iter().map(|p| p.graph.clone()).collect();
    let blocks: Vec<CMatrix> = parts.iter().map(|p| p.matrix.clone()).collect();
    Ok(FitMatrix::new(Graph::disjoint_union(&graphs), first.r, direct_sum(&blocks)))
}

/// Result of [`union_combine`].
#[derive(Clone, Debug, PartialEq)]
pub struct UnionFit {
    pub fit: FitMatrix,
    pub beta: f64,
    /// Weights tried, including the accepted one.
    pub attempts: usize,
}

/// `Â_1 + β Â_2` over `g = G_1 ∪ G_2`, with `β ~ U(0.5, 1.5)` drawn from
/// `seed` until no block that is nonzero in either summand cancels.
pub fn union_combine(a1: &FitMatrix, a2: &FitMatrix, g: &Graph, seed: u64, tol: &Tolerances) -> Result<UnionFit> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let betas: Vec<f64> = (0..BETA_RETRIES).map(|_| rng.random_range(0.5..1.5)).collect();
    union_combine_with_betas(a1, a2, g, betas, tol)
}

/// [`union_combine`] with the candidate weights supplied by the caller.
pub fn union_combine_with_betas(
    a1: &FitMatrix,
    a2: &FitMatrix,
    g: &Graph,
    betas: impl IntoIterator<Item = f64>,
    tol: &Tolerances,
) -> Result<UnionFit> {
    if a1.r != a2.r {
        return Err(Error::Mismatch(format!("block sizes {} and {}", a1.r, a2.r)));
    }
    if Graph::union(&a1.graph, &a2.graph) != *g {
        return Err(Error::Mismatch("the graph is not the union of the two fitted graphs".into()));
    }
    for a in [a1, a2] {
        weakly_r_fits(a, tol).into_result("weak fit")?;
        if !a.is_psd(tol) {
            return Err(Error::NotPsd { min_eigenvalue: f64::NAN });
        }
    }
    let r = a1.r;
    let n = g.order();
    let h1 = embed(a1, g);
    let h2 = embed(a2, g);
    let threshold = orthogonality_threshold(r, r, tol);
    let block_norm = |m: &DMatrix<C64>, i: usize, j: usize| m.view((i * r, j * r), (r, r)).norm();
    let mut attempts = 0;
    let mut conflict = (String::new(), String::new());
    for beta in betas {
        attempts += 1;
        let sum = &h1 + &h2 * c(beta, 0.0);
        let cancelled = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).find(|&(i, j)| {
            let live = block_norm(&h1, i, j) > threshold || block_norm(&h2, i, j) > threshold;
            live && block_norm(&sum, i, j) <= threshold
        });
        match cancelled {
            None => {
                return Ok(UnionFit {
                    fit: FitMatrix::new(g.clone(), r, CMatrix::from(sum)),
                    beta,
                    attempts,
                })
            }
            Some((i, j)) => conflict = (g.label(i).to_string(), g.label(j).to_string()),
        }
    }
    Err(Error::BetaSearchExhausted {
        retries: attempts,
        row: conflict.0,
        col: conflict.1,
    })
}

/// `a` zero-padded to `g`'s vertex set, blocks in `g`'s order.
fn embed(a: &FitMatrix, g: &Graph) -> DMatrix<C64> {
    let r = a.r;
    let pos: Vec<usize> = a
        .graph
        .labels()
        .iter()
        .map(|l| g.index_of(l).expect("subgraph vertex"))
        .collect();
    let mut out = DMatrix::<C64>::zeros(g.order() * r, g.order() * r);
    for (i, &pi) in pos.iter().enumerate() {
        for (j, &pj) in pos.iter().enumerate() {
            out.view_mut((pi * r, pj * r), (r, r))
                .copy_from(&a.matrix.view((i * r, j * r), (r, r)));
        }
    }
    out
}

#[cfg(test)]
mod tests;
