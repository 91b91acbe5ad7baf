//! Complex dense matrix kernel: tolerance-aware rank, PSD and orthogonality
//! tests, Gram factorizations, projectors and unitary alignment.
//!
//! Matrices wrap [`nalgebra::DMatrix`] over `Complex<f64>`; eigen- and
//! singular-value decompositions are nalgebra's.

mod block;
mod matrix;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use block::BlockDiagonal;
pub use matrix::{c, CMatrix, C64};

/// Thresholds that realize exact algebraic conditions in floating point.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Frobenius-norm threshold below which a product counts as zero.
    pub orth_tol: f64,
    /// Singular values at most `rank_rel_tol * σ_max` are treated as zero.
    pub rank_rel_tol: f64,
    /// Eigenvalue floor for positive semidefiniteness.
    pub psd_tol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            orth_tol: 1e-9,
            rank_rel_tol: 1e-8,
            psd_tol: 1e-9,
        }
    }
}

/// An `r`-dimensional subspace of `C^d` held by a `d × r` basis matrix.
///
/// Bases produced by this crate have orthonormal columns; bases read from
/// certificates are checked by the verifiers instead of on construction.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Subspace {
    basis: CMatrix,
}

impl Subspace {
    /// Wraps `basis` after checking `basis* basis = I` within tolerance.
    pub fn new(basis: CMatrix, tol: &Tolerances) -> Result<Self> {
        let residual = orthonormality_residual(&basis);
        if residual > orthonormal_slack(basis.ncols(), tol) {
            return Err(Error::NotOrthonormal { residual });
        }
        Ok(Subspace { basis })
    }

    /// Wraps `basis` without checks.
    pub fn from_basis_unchecked(basis: CMatrix) -> Self {
        Subspace { basis }
    }

    /// `span{e_k : k in cols}` in `C^d` (0-based coordinates).
    pub fn standard(d: usize, cols: impl IntoIterator<Item = usize>) -> Self {
        Subspace {
            basis: CMatrix::standard_columns(d, cols),
        }
    }

    pub fn basis(&self) -> &CMatrix {
        &self.basis
    }

    pub fn into_basis(self) -> CMatrix {
        self.basis
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.nrows()
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    /// `‖X_self* X_other‖_F`.
    pub fn overlap(&self, other: &Subspace) -> f64 {
        (self.basis.adjoint() * other.basis.inner()).norm()
    }
}

pub(crate) fn orthonormal_slack(cols: usize, tol: &Tolerances) -> f64 {
    tol.orth_tol * cols.max(1) as f64
}

/// `‖X* X − I‖_F`.
pub fn orthonormality_residual(x: &CMatrix) -> f64 {
    let k = x.ncols();
    (x.adjoint() * x.inner() - DMatrix::<C64>::identity(k, k)).norm()
}

/// Orthonormal basis of the column span of `m` (modified Gram–Schmidt with
/// one re-orthogonalization pass).
pub fn orthonormalize(m: &CMatrix, tol: &Tolerances) -> Result<Subspace> {
    let k = rank(m, tol);
    if k < m.ncols() {
        return Err(Error::RankDeficient { rank: k, cols: m.ncols() });
    }
    let mut q = m.inner().clone();
    for j in 0..q.ncols() {
        for _pass in 0..2 {
            for i in 0..j {
                let proj = q.column(i).dotc(&q.column(j));
                let qi = q.column(i).clone_owned();
                q.column_mut(j).axpy(-proj, &qi, c(1.0, 0.0));
            }
        }
        let norm = q.column(j).norm();
        q.column_mut(j).unscale_mut(norm);
    }
    Ok(Subspace::from_basis_unchecked(CMatrix::from(q)))
}

/// Singular values in decreasing order.
pub fn singular_values(m: &CMatrix) -> Vec<f64> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Vec::new();
    }
    let mut s: Vec<f64> = nalgebra::SVD::new(m.inner().clone(), false, false)
        .singular_values
        .iter()
        .copied()
        .collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

/// Number of singular values above `rank_rel_tol × σ_max`.
pub fn rank(m: &CMatrix, tol: &Tolerances) -> usize {
    let s = singular_values(m);
    let Some(&top) = s.first() else { return 0 };
    if top == 0.0 {
        return 0;
    }
    s.iter().filter(|&&x| x > tol.rank_rel_tol * top).count()
}

/// `‖M − M*‖_F`.
pub fn hermitian_residual(m: &CMatrix) -> f64 {
    (m.inner() - m.adjoint()).norm()
}

fn require_square(m: &CMatrix) -> Result<()> {
    if m.nrows() != m.ncols() {
        return Err(Error::NotSquare { rows: m.nrows(), cols: m.ncols() });
    }
    Ok(())
}

/// Eigenvalues (ascending) and matching orthonormal eigenvectors of the
/// Hermitian part of `m`.
pub fn hermitian_eigen(m: &CMatrix) -> Result<(Vec<f64>, CMatrix)> {
    require_square(m)?;
    let n = m.nrows();
    if n == 0 {
        return Ok((Vec::new(), CMatrix::zeros(0, 0)));
    }
    let h = (m.inner() + m.adjoint()).unscale(2.0);
    let eig = h.symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]).then(a.cmp(&b)));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = DMatrix::from_fn(n, n, |i, j| eig.eigenvectors[(i, order[j])]);
    Ok((values, CMatrix::from(vectors)))
}

pub(crate) fn hermitian_slack(m: &CMatrix, tol: &Tolerances) -> f64 {
    tol.orth_tol * m.norm().max(1.0)
}

/// Hermitian within `orth_tol` (relative to `max(1, ‖M‖_F)`) and every
/// eigenvalue at least `−psd_tol × max(1, λ_max)`.
pub fn is_psd(m: &CMatrix, tol: &Tolerances) -> Result<bool> {
    require_square(m)?;
    if hermitian_residual(m) > hermitian_slack(m, tol) {
        return Ok(false);
    }
    let (values, _) = hermitian_eigen(m)?;
    let Some(&top) = values.last() else { return Ok(true) };
    Ok(values[0] >= -tol.psd_tol * top.max(1.0))
}

/// `‖X1* X2‖_F ≤ orth_tol · √(r1 r2)`.
pub fn subspaces_orthogonal(s1: &Subspace, s2: &Subspace, tol: &Tolerances) -> Result<bool> {
    if s1.ambient_dim() != s2.ambient_dim() {
        return Err(Error::DimensionMismatch(format!(
            "ambient dimensions {} and {}",
            s1.ambient_dim(),
            s2.ambient_dim()
        )));
    }
    Ok(s1.overlap(s2) <= orthogonality_threshold(s1.dim(), s2.dim(), tol))
}

pub(crate) fn orthogonality_threshold(r1: usize, r2: usize, tol: &Tolerances) -> f64 {
    tol.orth_tol * ((r1 * r2) as f64).sqrt().max(1.0)
}

/// Block-diagonal assembly.
pub fn direct_sum(blocks: &[CMatrix]) -> CMatrix {
    let rows = blocks.iter().map(|b| b.nrows()).sum();
    let cols = blocks.iter().map(|b| b.ncols()).sum();
    let mut out = DMatrix::<C64>::zeros(rows, cols);
    let (mut r, mut k) = (0, 0);
    for b in blocks {
        out.view_mut((r, k), (b.nrows(), b.ncols())).copy_from(b.inner());
        r += b.nrows();
        k += b.ncols();
    }
    CMatrix::from(out)
}

/// `X* X`.
pub fn gram(x: &CMatrix) -> CMatrix {
    CMatrix::from(x.adjoint() * x.inner())
}

/// `X` with `rank(a)` rows and `X* X ≈ a`, from the Hermitian
/// eigendecomposition keeping eigenvalues above `rank_rel_tol × λ_max`.
pub fn psd_factor(a: &CMatrix, tol: &Tolerances) -> Result<CMatrix> {
    require_square(a)?;
    let residual = hermitian_residual(a);
    if residual > hermitian_slack(a, tol) {
        return Err(Error::NotHermitian { residual });
    }
    let (values, vectors) = hermitian_eigen(a)?;
    let n = a.nrows();
    let Some(&top) = values.last() else {
        return Ok(CMatrix::zeros(0, 0));
    };
    if values[0] < -tol.psd_tol * top.max(1.0) {
        return Err(Error::NotPsd { min_eigenvalue: values[0] });
    }
    let keep: Vec<usize> = (0..n)
        .rev()
        .filter(|&k| top > 0.0 && values[k] > tol.rank_rel_tol * top)
        .collect();
    let x = DMatrix::from_fn(keep.len(), n, |i, j| {
        vectors[(j, keep[i])].conj() * values[keep[i]].sqrt()
    });
    Ok(CMatrix::from(x))
}

/// `X X*` for the basis `X` of `s`.
pub fn projector_from_basis(s: &Subspace) -> CMatrix {
    CMatrix::from(s.basis().inner() * s.basis().adjoint())
}

/// `‖P² − P‖_F`.
pub fn idempotent_residual(p: &CMatrix) -> f64 {
    (p.inner() * p.inner() - p.inner()).norm()
}

/// Orthonormal basis of `range(p)` for an orthogonal projector `p`.
pub fn basis_from_projector(p: &CMatrix, tol: &Tolerances) -> Result<Subspace> {
    require_square(p)?;
    let slack = hermitian_slack(p, tol);
    let residual = hermitian_residual(p).max(idempotent_residual(p));
    if residual > slack {
        return Err(Error::NotProjector { residual });
    }
    let (values, vectors) = hermitian_eigen(p)?;
    let keep: Vec<usize> = (0..values.len()).rev().filter(|&k| values[k] > 0.5).collect();
    let basis = DMatrix::from_fn(p.nrows(), keep.len(), |i, j| vectors[(i, keep[j])]);
    Ok(Subspace::from_basis_unchecked(CMatrix::from(basis)))
}

/// A unitary `U` with `U m = [e_1, …, e_ℓ]` for `m` with orthonormal columns.
///
/// `m` is completed to a unitary `W = [m | Q]` by repeatedly adding the
/// standard basis vector with the largest residual against the current
/// span (lowest index on ties), so the completion is deterministic; then
/// `U = W*`.
pub fn align_to_standard(m: &CMatrix, tol: &Tolerances) -> Result<CMatrix> {
    let (d, l) = (m.nrows(), m.ncols());
    if l > d {
        return Err(Error::DimensionMismatch(format!("{l} columns in C^{d}")));
    }
    let residual = orthonormality_residual(m);
    if residual > orthonormal_slack(l, tol) {
        return Err(Error::NotOrthonormal { residual });
    }
    let mut w = DMatrix::<C64>::zeros(d, d);
    w.view_mut((0, 0), (d, l)).copy_from(m.inner());
    for k in l..d {
        let mut best: Option<(f64, nalgebra::DVector<C64>)> = None;
        for e in 0..d {
            let mut v = nalgebra::DVector::<C64>::zeros(d);
            v[e] = c(1.0, 0.0);
            for _pass in 0..2 {
                for i in 0..k {
                    let proj = w.column(i).dotc(&v);
                    v.axpy(-proj, &w.column(i), c(1.0, 0.0));
                }
            }
            let norm = v.norm();
            if best.as_ref().is_none_or(|(b, _)| norm > *b + 1e-12) {
                best = Some((norm, v));
            }
        }
        let (norm, v) = best.expect("d > k");
        w.column_mut(k).copy_from(&v.unscale(norm));
    }
    Ok(CMatrix::from(w.adjoint()))
}

/// Haar-distributed `n × n` unitary: orthonormalized complex Gaussian
/// columns with the phases of `R`'s diagonal absorbed.
pub fn random_unitary<R: rand::Rng + ?Sized>(n: usize, rng: &mut R) -> CMatrix {
    let m = random_gaussian(n, n, rng);
    let qr = m.into_inner().qr();
    let (q, r) = (qr.q(), qr.r());
    let phases = DMatrix::from_fn(n, n, |i, j| {
        if i == j && r[(i, i)].norm() > 0.0 {
            r[(i, i)] / c(r[(i, i)].norm(), 0.0)
        } else if i == j {
            c(1.0, 0.0)
        } else {
            c(0.0, 0.0)
        }
    });
    CMatrix::from(q * phases)
}

/// Matrix of independent standard complex Gaussian entries.
pub fn random_gaussian<R: rand::Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> CMatrix {
    use rand_distr::{Distribution, StandardNormal};
    CMatrix::from_fn(rows, cols, |_, _| {
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        c(re, im) / c(std::f64::consts::SQRT_2, 0.0)
    })
}
