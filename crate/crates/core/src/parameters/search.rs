//! Numerical searches for upper-bound witnesses. A failed search proves
//! nothing; every success is returned only after passing its verifier.

use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::Budget;
use crate::fit::{fit_to_fosr, r_fits, FitMatrix};
use crate::graph::Graph;
use crate::linalg::{c, hermitian_eigen, random_gaussian, CMatrix, Subspace, Tolerances, C64};
use crate::representations::random::random_orthonormal;
use crate::representations::{verify_fosr, verify_osr, SubspaceRepresentation};

/// Sweeps between progress checks.
const CHECK_EVERY: usize = 100;
/// A restart is abandoned when a check window shrinks the residual by less than this factor.
const MIN_PROGRESS: f64 = 0.9;
/// Edge blocks of the fit search are kept at least this large.
const EDGE_FLOOR: f64 = 1e-6;
/// Both alternating-projection residuals must fall below this before certifying.
const FIT_ACCEPT: f64 = 1e-9;

/// Tracks a residual across check windows and decides when to give up.
struct Progress {
    last: f64,
}

impl Progress {
    fn new() -> Self {
        Progress { last: f64::INFINITY }
    }

    /// `false` when the restart should be abandoned.
    fn keep_going(&mut self, sweep: usize, residual: f64) -> bool {
        if sweep == 0 || !sweep.is_multiple_of(CHECK_EVERY) {
            return true;
        }
        let ok = residual < MIN_PROGRESS * self.last;
        self.last = residual;
        ok
    }
}

fn osr_residual(g: &Graph, x: &[CMatrix]) -> f64 {
    g.edges()
        .into_iter()
        .map(|(u, v)| (x[u].adjoint() * x[v].inner()).norm_squared())
        .sum()
}

/// Searches for a `(d;r)`-OSR by block-coordinate descent on
/// `Σ_{uv∈E} ‖X_u* X_v‖_F²`: each vertex in turn takes the eigenvectors of the
/// `r` smallest eigenvalues of `Σ_{v∼u} X_v X_v*`.
pub fn heuristic_osr_search(
    g: &Graph,
    r: usize,
    d: usize,
    seed: u64,
    budget: &Budget,
    tol: &Tolerances,
) -> Option<SubspaceRepresentation> {
    if r == 0 || r > d {
        return None;
    }
    let n = g.order();
    let neighbors: Vec<Vec<usize>> = (0..n).map(|u| g.neighbors(u).collect()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let target = tol.orth_tol * tol.orth_tol;
    for _ in 0..budget.restarts {
        let mut x: Vec<CMatrix> = (0..n).map(|_| random_orthonormal(d, r, &mut rng)).collect();
        let mut progress = Progress::new();
        for sweep in 0..=budget.iters {
            let residual = osr_residual(g, &x);
            if residual < target {
                let assignment = x.iter().cloned().map(Subspace::from_basis_unchecked).collect();
                let rep = SubspaceRepresentation::new(g.clone(), d, r, assignment, false);
                if verify_osr(&rep, tol).valid {
                    return Some(rep);
                }
            }
            if sweep == budget.iters || !progress.keep_going(sweep, residual) {
                break;
            }
            for u in 0..n {
                if neighbors[u].is_empty() {
                    continue;
                }
                let mut m = DMatrix::<C64>::zeros(d, d);
                for &v in &neighbors[u] {
                    m += x[v].inner() * x[v].adjoint();
                }
                let (_, vectors) = hermitian_eigen(&CMatrix::from(m)).expect("square");
                x[u] = CMatrix::from(vectors.columns(0, r).into_owned());
            }
        }
    }
    None
}

/// Nearest matrix with identity diagonal blocks, zero non-edge blocks and
/// edge blocks of Frobenius norm at least [`EDGE_FLOOR`].
fn project_fit(g: &Graph, r: usize, m: &DMatrix<C64>) -> DMatrix<C64> {
    let n = g.order();
    let mut out = m.clone();
    for i in 0..n {
        for j in 0..n {
            let mut block = out.view_mut((i * r, j * r), (r, r));
            if i == j {
                block.fill_with_identity();
            } else if !g.has_edge(i, j) {
                block.fill(c(0.0, 0.0));
            } else {
                let norm = block.norm();
                if norm == 0.0 {
                    // a fixed nonzero direction; the transpose keeps the matrix Hermitian
                    block.fill_with_identity();
                    block.scale_mut(EDGE_FLOOR / (r as f64).sqrt());
                } else if norm < EDGE_FLOOR {
                    block.scale_mut(EDGE_FLOOR / norm);
                }
            }
        }
    }
    out
}

/// Nearest PSD matrix of rank at most `d`, with its factor `X` (`X* X`).
fn project_psd_rank(m: &DMatrix<C64>, d: usize) -> (DMatrix<C64>, DMatrix<C64>) {
    let (values, vectors) = hermitian_eigen(&CMatrix::from(m.clone())).expect("square");
    let size = m.nrows();
    let keep: Vec<usize> = (0..size).rev().take(d).filter(|&k| values[k] > 0.0).collect();
    let x = DMatrix::from_fn(keep.len(), size, |i, j| vectors[(j, keep[i])].conj() * values[keep[i]].sqrt());
    (x.adjoint() * &x, x)
}

/// Snaps each vertex's columns of `x` to an orthonormal basis of their span
/// (the polar factor), returning the Gram matrix.
fn certify(g: &Graph, r: usize, d: usize, x: &DMatrix<C64>, tol: &Tolerances) -> Option<FitMatrix> {
    let mut y = x.clone();
    for i in 0..g.order() {
        let block = x.columns(i * r, r).into_owned();
        let svd = block.svd(true, true);
        let (u, v_t) = (svd.u?, svd.v_t?);
        if svd.singular_values.iter().any(|&s| s <= tol.orth_tol) {
            return None;
        }
        y.columns_mut(i * r, r).copy_from(&(u * v_t));
    }
    let fm = FitMatrix::new(g.clone(), r, CMatrix::from(y.adjoint() * &y));
    if !r_fits(&fm, tol).valid || fm.rank(tol) > d {
        return None;
    }
    let rep = fit_to_fosr(&fm, tol).ok()?;
    verify_fosr(&rep, tol).valid.then_some(fm)
}

/// Searches for a PSD `r`-fitting matrix of rank at most `d` by alternating
/// projection between the rank-`d` PSD matrices and the fitting pattern.
pub fn heuristic_fit_search(
    g: &Graph,
    r: usize,
    d: usize,
    seed: u64,
    budget: &Budget,
    tol: &Tolerances,
) -> Option<FitMatrix> {
    let size = g.order() * r;
    if r == 0 || d < r || d > size {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..budget.restarts {
        let y = random_gaussian(d, size, &mut rng);
        let mut m = y.adjoint() * y.inner();
        let mut progress = Progress::new();
        for sweep in 0..=budget.iters {
            let f = project_fit(g, r, &m);
            let (p, x) = project_psd_rank(&f, d);
            let to_psd = (&f - &p).norm();
            let to_fit = (&p - project_fit(g, r, &p)).norm();
            if to_psd < FIT_ACCEPT && to_fit < FIT_ACCEPT {
                if let Some(fm) = certify(g, r, d, &x, tol) {
                    return Some(fm);
                }
            }
            if sweep == budget.iters || !progress.keep_going(sweep, to_psd + to_fit) {
                break;
            }
            m = p;
        }
    }
    None
}
