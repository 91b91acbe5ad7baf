//! Seeded random certificates, for property tests and search starts.

use nalgebra::{Cholesky, DMatrix};
use rand::seq::SliceRandom;
use rand::Rng;

use super::SubspaceRepresentation;
use crate::graph::Graph;
use crate::linalg::{
    c, hermitian_eigen, orthonormalize, random_gaussian, random_unitary, CMatrix, Subspace,
    Tolerances, C64,
};

/// Greedy proper coloring in a random vertex order; colors from 0.
fn random_coloring<R: Rng + ?Sized>(g: &Graph, rng: &mut R) -> Vec<usize> {
    let mut order: Vec<usize> = (0..g.order()).collect();
    order.shuffle(rng);
    let mut color = vec![usize::MAX; g.order()];
    for v in order {
        let used: Vec<usize> = g.neighbors(v).map(|u| color[u]).collect();
        color[v] = (0..).find(|k| !used.contains(k)).expect("a free color");
    }
    color
}

pub(crate) fn random_orthonormal<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> CMatrix {
    loop {
        let m = random_gaussian(rows, cols, rng);
        if let Ok(s) = orthonormalize(&m, &Tolerances::default()) {
            return s.into_basis();
        }
    }
}

/// A random OSR of `g` with `r`-dimensional subspaces.
///
/// Each class of a random greedy coloring owns an orthogonal block of one or
/// two times `r` coordinates; its vertices get random `r`-dimensional
/// subspaces of that block. `extra` idle coordinates are appended and the
/// whole space is rotated by a Haar unitary.
pub fn random_osr<R: Rng + ?Sized>(g: &Graph, r: usize, extra: usize, rng: &mut R) -> SubspaceRepresentation {
    assert!(r >= 1, "r must be positive");
    let color = random_coloring(g, rng);
    let classes = color.iter().copied().max().map_or(0, |m| m + 1);
    let widths: Vec<usize> = (0..classes).map(|_| r * rng.random_range(1..=2)).collect();
    let offsets: Vec<usize> = widths
        .iter()
        .scan(0, |acc, w| {
            let o = *acc;
            *acc += w;
            Some(o)
        })
        .collect();
    let d = (widths.iter().sum::<usize>() + extra).max(r);
    let u = random_unitary(d, rng);
    let assignment = color
        .iter()
        .map(|&k| {
            let local = random_orthonormal(widths[k], r, rng);
            let mut x = DMatrix::<C64>::zeros(d, r);
            x.view_mut((offsets[k], 0), (widths[k], r)).copy_from(local.inner());
            Subspace::from_basis_unchecked(CMatrix::from(u.inner() * x))
        })
        .collect();
    SubspaceRepresentation::new(g.clone(), d, r, assignment, false)
}

/// A random `(n·r; r)`-FOSR of `g`: the Gram factor of the block matrix with
/// identity diagonal blocks, random blocks `t·W_uv` on edges and zeros on
/// non-edges, where `t = 1 / (2·‖W‖₂)` keeps it positive definite; then a
/// Haar rotation.
pub fn random_fosr<R: Rng + ?Sized>(g: &Graph, r: usize, rng: &mut R) -> SubspaceRepresentation {
    assert!(r >= 1, "r must be positive");
    let n = g.order();
    let nr = n * r;
    let mut w = DMatrix::<C64>::zeros(nr, nr);
    for (i, j) in g.edges() {
        let block = random_gaussian(r, r, rng);
        w.view_mut((i * r, j * r), (r, r)).copy_from(block.inner());
        w.view_mut((j * r, i * r), (r, r)).copy_from(&block.adjoint());
    }
    let (values, _) = hermitian_eigen(&CMatrix::from(w.clone())).expect("square");
    let spectral = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let t = if spectral > 0.0 { 1.0 / (2.0 * spectral) } else { 0.0 };
    let a = DMatrix::<C64>::identity(nr, nr) + w * c(t, 0.0);
    let x = Cholesky::new(a).expect("positive definite").unpack().adjoint();
    let d = nr.max(1);
    let u = random_unitary(d, rng);
    let assignment = (0..n)
        .map(|i| {
            let mut xi = DMatrix::<C64>::zeros(d, r);
            xi.view_mut((0, 0), (nr, r)).copy_from(&x.columns(i * r, r));
            Subspace::from_basis_unchecked(CMatrix::from(u.inner() * xi))
        })
        .collect();
    SubspaceRepresentation::new(g.clone(), d, r, assignment, true)
}

/// Random graph with each edge present with probability `p`, labels `"1".."n"`.
pub fn random_graph<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|_| rng.random_bool(p))
        .collect();
    Graph::from_indices(n, 1, &edges).expect("valid edges")
}
