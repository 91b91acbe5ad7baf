use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::graph::{generate, GraphKind};
use crate::representations::random::{random_fosr, random_graph};
use crate::representations::{canonical_faithful_rep, fixture_p4_fosr};

fn tol() -> Tolerances {
    Tolerances::default()
}

fn path(n: usize) -> Graph {
    generate(GraphKind::Path, n).unwrap()
}

fn empty(n: usize) -> Graph {
    Graph::from_indices(n, 1, &[]).unwrap()
}

fn k2(a: &str, b: &str) -> Graph {
    Graph::new(&[a, b], &[(a, b)]).unwrap()
}

fn p3_factor() -> CMatrix {
    CMatrix::standard_columns(4, [0, 1, 0, 3, 2, 3])
}

/// Blocks: identity on the diagonal, `diag(1, 0)` between 1 and 2,
/// `diag(0, 1)` between 2 and 3.
fn p3_matrix() -> CMatrix {
    #[rustfmt::skip]
    let a = CMatrix::from_real(6, 6, &[
        1., 0., 1., 0., 0., 0.,
        0., 1., 0., 0., 0., 0.,
        1., 0., 1., 0., 0., 0.,
        0., 0., 0., 1., 0., 1.,
        0., 0., 0., 0., 1., 0.,
        0., 0., 0., 1., 0., 1.,
    ]);
    a
}

fn p3_fit() -> FitMatrix {
    FitMatrix::new(path(3), 2, p3_matrix())
}

fn scaled(fm: &FitMatrix, s: f64) -> FitMatrix {
    FitMatrix::new(fm.graph.clone(), fm.r, CMatrix::from(fm.matrix.inner() * c(s, 0.0)))
}

fn conditions(report: &VerificationReport) -> Vec<&str> {
    report.violations.iter().map(|v| v.condition.as_str()).collect()
}

/// `D A D` with a random positive diagonal `D`.
fn random_weak(fm: &FitMatrix, rng: &mut ChaCha8Rng) -> FitMatrix {
    let d: Vec<f64> = (0..fm.matrix.nrows()).map(|_| rng.random_range(0.3..3.0)).collect();
    let m = CMatrix::from_fn(fm.matrix.nrows(), fm.matrix.ncols(), |i, j| {
        fm.matrix[(i, j)] * c(d[i] * d[j], 0.0)
    });
    FitMatrix::new(fm.graph.clone(), fm.r, m)
}

fn relative_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    (a.inner() - b.inner()).norm() / a.norm().max(1.0)
}

#[test]
fn p3_matrix_fits_at_r2() {
    assert!(r_fits(&p3_fit(), &tol()).valid);
    assert!(weakly_r_fits(&p3_fit(), &tol()).valid);
}

#[test]
fn identity_fits_empty_graph_not_k2() {
    for r in 1..4 {
        let fm = FitMatrix::new(empty(3), r, CMatrix::identity(3 * r));
        assert!(r_fits(&fm, &tol()).valid);
    }
    let fm = FitMatrix::new(k2("a", "b"), 1, CMatrix::identity(2));
    let report = r_fits(&fm, &tol());
    assert!(!report.valid);
    assert_eq!(conditions(&report), ["edge-block-zero"]);
    assert_eq!(report.violations[0].at, "a-b");
}

#[test]
fn doubled_p3_fits_weakly_only() {
    let fm = scaled(&p3_fit(), 2.0);
    assert!(weakly_r_fits(&fm, &tol()).valid);
    let strict = r_fits(&fm, &tol());
    assert!(!strict.valid);
    assert_eq!(strict.violations.len(), 3);
    assert!(conditions(&strict).iter().all(|c| *c == "diagonal-block-not-identity"));
}

#[test]
fn zero_diagonal_entry_breaks_weak_fit() {
    let m = CMatrix::from_real(2, 2, &[1., 0., 0., 0.]);
    let report = weakly_r_fits(&FitMatrix::new(empty(1), 2, m), &tol());
    assert_eq!(conditions(&report), ["diagonal-entry-not-positive"]);
}

#[test]
fn wrong_shape_is_reported() {
    let report = r_fits(&FitMatrix::new(path(3), 2, CMatrix::identity(5)), &tol());
    assert_eq!(conditions(&report), ["shape"]);
}

#[test]
fn normalize_examples() {
    let a = p3_fit();
    assert_eq!(normalize_weak_fit(&a, &tol()).unwrap(), a);
    let scaling = BlockScaling::of(&scaled(&a, 4.0), &tol()).unwrap();
    assert_eq!(scaling.diagonals, vec![vec![0.5; 2]; 3]);
    let b = normalize_weak_fit(&scaled(&a, 4.0), &tol()).unwrap();
    assert!(b.matrix.max_abs_diff(&a.matrix) < 1e-15);
}

#[test]
fn normalize_diag_2_3_blocks() {
    // A = D F D with F fitting and D_i = diag(√2, √3), so A_ii = diag(2, 3)
    let f = fosr_to_fit(&fixture_p4_fosr(2).unwrap(), &tol()).unwrap();
    let s = [2f64.sqrt(), 3f64.sqrt()];
    let a = CMatrix::from_fn(8, 8, |i, j| f.matrix[(i, j)] * c(s[i % 2] * s[j % 2], 0.0));
    let a = FitMatrix::new(f.graph.clone(), 2, a);
    assert!(a.block(0, 0).max_abs_diff(&CMatrix::from_real(2, 2, &[2., 0., 0., 3.])) < 1e-12);
    let b = normalize_weak_fit(&a, &tol()).unwrap();
    assert!(r_fits(&b, &tol()).valid);
    assert_eq!(b.rank(&tol()), a.rank(&tol()));
    assert!(b.matrix.max_abs_diff(&f.matrix) < 1e-12);
}

#[test]
fn normalize_rejects_non_weak_and_indefinite() {
    let m = CMatrix::from_real(2, 2, &[1., 0., 0., -1.]);
    assert!(normalize_weak_fit(&FitMatrix::new(empty(2), 1, m), &tol()).is_err());
    let m = CMatrix::from_real(2, 2, &[1., 2., 2., 1.]);
    assert!(matches!(
        normalize_weak_fit(&FitMatrix::new(k2("a", "b"), 1, m), &tol()),
        Err(Error::NotPsd { .. })
    ));
}

#[test]
fn fosr_to_fit_examples() {
    let rep = fixture_p4_fosr(1).unwrap();
    let fm = fosr_to_fit(&rep, &tol()).unwrap();
    assert_eq!(fm.matrix.shape(), (4, 4));
    assert!(fm.is_psd(&tol()));
    assert!(r_fits(&fm, &tol()).valid);
    assert!(fm.rank(&tol()) <= 3);

    let x = p3_factor();
    let subs = (0..3)
        .map(|i| Subspace::from_basis_unchecked(CMatrix::from(x.columns(2 * i, 2).into_owned())))
        .collect();
    let rep = SubspaceRepresentation::new(path(3), 4, 2, subs, true);
    assert_eq!(fosr_to_fit(&rep, &tol()).unwrap().matrix, p3_matrix());

    let subs = (0..3).map(|i| Subspace::standard(6, 2 * i..2 * i + 2)).collect();
    let rep = SubspaceRepresentation::new(empty(3), 6, 2, subs, true);
    assert_eq!(fosr_to_fit(&rep, &tol()).unwrap().matrix, CMatrix::identity(6));
}

#[test]
fn fosr_to_fit_rejects_an_osr() {
    let subs = vec![Subspace::standard(2, [0]), Subspace::standard(2, [1])];
    let rep = SubspaceRepresentation::new(k2("a", "b"), 2, 1, subs, false);
    assert!(matches!(fosr_to_fit(&rep, &tol()), Err(Error::Unverified { .. })));
}

#[test]
fn fit_to_fosr_examples() {
    let rep = fit_to_fosr(&p3_fit(), &tol()).unwrap();
    assert_eq!((rep.d, rep.r), (4, 2));
    assert!(verify_fosr(&rep, &tol()).valid);

    let rep = fit_to_fosr(&FitMatrix::new(empty(3), 1, CMatrix::identity(3)), &tol()).unwrap();
    assert_eq!(rep.d, 3);
    assert!(verify_fosr(&rep, &tol()).valid);
    for (i, s) in rep.assignment.iter().enumerate() {
        // a unit vector on one coordinate, up to phase
        let mags: Vec<f64> = s.basis().iter().map(|z| z.norm()).collect();
        assert_eq!(mags.iter().filter(|m| (**m - 1.0).abs() < 1e-12).count(), 1, "vertex {i}");
    }

    let gram = fosr_to_fit(&fixture_p4_fosr(2).unwrap(), &tol()).unwrap();
    let back = fosr_to_fit(&fit_to_fosr(&gram, &tol()).unwrap(), &tol()).unwrap();
    assert!((gram.matrix.inner() - back.matrix.inner()).norm() < 1e-8);
}

#[test]
fn fit_to_fosr_rejects_indefinite_and_unfit() {
    let m = CMatrix::from_real(2, 2, &[1., 2., 2., 1.]);
    assert!(matches!(
        fit_to_fosr(&FitMatrix::new(k2("a", "b"), 1, m), &tol()),
        Err(Error::NotPsd { .. })
    ));
    assert!(fit_to_fosr(&scaled(&p3_fit(), 2.0), &tol()).is_err());
}

#[test]
fn direct_sum_examples() {
    let two = direct_sum_fits(&[p3_fit(), p3_fit()], &tol()).unwrap();
    assert_eq!(two.graph.order(), 6);
    assert_eq!(two.graph.edges().len(), 4);
    assert!(r_fits(&two, &tol()).valid);
    assert_eq!(two.rank(&tol()), 8);

    assert_eq!(direct_sum_fits(&[p3_fit()], &tol()).unwrap(), p3_fit());

    let other = FitMatrix::new(empty(2), 1, CMatrix::identity(2));
    assert!(matches!(direct_sum_fits(&[p3_fit(), other], &tol()), Err(Error::Mismatch(_))));
}

#[test]
fn union_of_disjoint_graphs_is_padded_direct_sum() {
    let a1 = p3_fit();
    let g2 = Graph::new(&["x", "y"], &[("x", "y")]).unwrap();
    let a2 = FitMatrix::new(g2.clone(), 2, CMatrix::from_real(4, 4, &[
        1., 0., 0.5, 0., //
        0., 1., 0., 0., //
        0.5, 0., 1., 0., //
        0., 0., 0., 1.,
    ]));
    let g = Graph::union(&a1.graph, &g2);
    let out = union_combine(&a1, &a2, &g, 7, &tol()).unwrap();
    assert_eq!(out.attempts, 1);
    assert!((0.5..1.5).contains(&out.beta));
    let expected = direct_sum(&[a1.matrix.clone(), CMatrix::from(a2.matrix.inner() * c(out.beta, 0.0))]);
    assert!(out.fit.matrix.max_abs_diff(&expected) < 1e-15);
}

#[test]
fn c5_from_p4_and_p3() {
    let c5 = generate(GraphKind::Cycle, 5).unwrap();
    let g1 = path(4);
    let g2 = Graph::new(&["4", "5", "1"], &[("4", "5"), ("5", "1")]).unwrap();
    let a1 = fosr_to_fit(&canonical_faithful_rep(&g1), &tol()).unwrap();
    let a2 = fosr_to_fit(&canonical_faithful_rep(&g2), &tol()).unwrap();
    let out = union_combine(&a1, &a2, &c5, 1, &tol()).unwrap();
    assert_eq!(out.fit.graph, c5);
    assert!(weakly_r_fits(&out.fit, &tol()).valid);
    assert!(out.fit.is_psd(&tol()));
    assert!(out.fit.rank(&tol()) <= a1.rank(&tol()) + a2.rank(&tol()));
}

#[test]
fn cancelling_beta_is_redrawn() {
    let g = k2("a", "b");
    let a1 = FitMatrix::new(g.clone(), 1, CMatrix::from_real(2, 2, &[1., 0.5, 0.5, 1.]));
    let a2 = FitMatrix::new(g.clone(), 1, CMatrix::from_real(2, 2, &[1., -0.5, -0.5, 1.]));
    let out = union_combine_with_betas(&a1, &a2, &g, [1.0, 0.8], &tol()).unwrap();
    assert_eq!((out.beta, out.attempts), (0.8, 2));
    assert!(weakly_r_fits(&out.fit, &tol()).valid);

    match union_combine_with_betas(&a1, &a2, &g, [1.0; 3], &tol()) {
        Err(Error::BetaSearchExhausted { retries, row, col }) => {
            assert_eq!((retries, row.as_str(), col.as_str()), (3, "a", "b"));
        }
        other => panic!("expected exhaustion, got {other:?}"),
    }
}

#[test]
fn union_checks_inputs() {
    let g = k2("a", "b");
    let a = FitMatrix::new(g.clone(), 1, CMatrix::from_real(2, 2, &[1., 0.5, 0.5, 1.]));
    let wrong = Graph::new(&["a", "b", "c"], &[("a", "b")]).unwrap();
    assert!(matches!(union_combine(&a, &a, &wrong, 0, &tol()), Err(Error::Mismatch(_))));
    let bad = FitMatrix::new(g.clone(), 1, CMatrix::from_real(2, 2, &[1., 2., 2., 1.]));
    assert!(union_combine(&a, &bad, &g, 0, &tol()).is_err());
}

#[test]
fn json_shape() {
    let fm = FitMatrix::new(k2("a", "b"), 1, CMatrix::from_real(2, 2, &[1., 0.5, 0.5, 1.]));
    let v = serde_json::to_value(&fm).unwrap();
    assert_eq!(v["r"], 1);
    assert_eq!(v["matrix"][0][1], serde_json::json!([0.5, 0.0]));
    let back: FitMatrix = serde_json::from_value(v).unwrap();
    assert_eq!(back, fm);
}

#[test]
fn reordering_permutes_blocks() {
    let a = p3_fit();
    let rev = Graph::new(&["3", "2", "1"], &[("1", "2"), ("2", "3")]).unwrap();
    let b = a.reordered(&rev).unwrap();
    assert_eq!(b.block(0, 1), a.block(2, 1));
    assert_eq!(b.block(2, 1), a.block(0, 1));
    assert!(r_fits(&b, &tol()).valid);
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn round_trip_through_fosr(seed in any::<u64>(), n in 1usize..6, r in 1usize..3) {
        let mut rng = rng(seed);
        let g = random_graph(n, 0.5, &mut rng);
        let rep = random_fosr(&g, r, &mut rng);
        let a = fosr_to_fit(&rep, &tol()).unwrap();
        prop_assert!(a.rank(&tol()) <= rep.d);
        let back_rep = fit_to_fosr(&a, &tol()).unwrap();
        prop_assert!(verify_fosr(&back_rep, &tol()).valid);
        prop_assert_eq!(back_rep.d, a.rank(&tol()));
        let back = fosr_to_fit(&back_rep, &tol()).unwrap();
        prop_assert!(relative_diff(&a.matrix, &back.matrix) < 1e-8);
        prop_assert_eq!(back.rank(&tol()), a.rank(&tol()));
    }

    #[test]
    fn normalization_keeps_rank_and_pattern(seed in any::<u64>(), n in 1usize..6, r in 1usize..3) {
        let mut rng = rng(seed);
        let g = random_graph(n, 0.5, &mut rng);
        let f = fosr_to_fit(&random_fosr(&g, r, &mut rng), &tol()).unwrap();
        let a = random_weak(&f, &mut rng);
        prop_assert!(weakly_r_fits(&a, &tol()).valid);
        let b = normalize_weak_fit(&a, &tol()).unwrap();
        prop_assert!(r_fits(&b, &tol()).valid);
        prop_assert_eq!(b.rank(&tol()), a.rank(&tol()));
        let t = orthogonality_threshold(r, r, &tol());
        for i in 0..n {
            for j in 0..n {
                prop_assert_eq!(a.block(i, j).norm() > t, b.block(i, j).norm() > t);
            }
        }
    }

    #[test]
    fn direct_sums_fit_and_add_ranks(seed in any::<u64>(), sizes in prop::collection::vec(1usize..4, 1..4), r in 1usize..3) {
        let mut rng = rng(seed);
        let parts: Vec<FitMatrix> = sizes
            .iter()
            .map(|&n| {
                let g = random_graph(n, 0.6, &mut rng);
                fosr_to_fit(&random_fosr(&g, r, &mut rng), &tol()).unwrap()
            })
            .collect();
        let sum = direct_sum_fits(&parts, &tol()).unwrap();
        prop_assert!(r_fits(&sum, &tol()).valid);
        let total: usize = parts.iter().map(|p| p.rank(&tol())).sum();
        prop_assert_eq!(sum.rank(&tol()), total);
    }

    #[test]
    fn union_never_cancels_a_block(seed in any::<u64>(), n1 in 1usize..5, n2 in 1usize..5, shift in 0usize..4, r in 1usize..3) {
        let mut rng = rng(seed);
        let g1 = random_graph(n1, 0.6, &mut rng);
        let edges: Vec<(usize, usize)> = random_graph(n2, 0.6, &mut rng).edges();
        let g2 = Graph::from_indices(n2, 1 + shift.min(n1), &edges).unwrap();
        let a1 = random_weak(&fosr_to_fit(&random_fosr(&g1, r, &mut rng), &tol()).unwrap(), &mut rng);
        let a2 = random_weak(&fosr_to_fit(&random_fosr(&g2, r, &mut rng), &tol()).unwrap(), &mut rng);
        let g = Graph::union(&g1, &g2);
        let out = union_combine(&a1, &a2, &g, seed, &tol()).unwrap();
        prop_assert!(weakly_r_fits(&out.fit, &tol()).valid);
        prop_assert!(out.fit.is_psd(&tol()));
        prop_assert!(out.fit.rank(&tol()) <= a1.rank(&tol()) + a2.rank(&tol()));
        let t = orthogonality_threshold(r, r, &tol());
        let (h1, h2) = (embed(&a1, &g), embed(&a2, &g));
        for i in 0..g.order() {
            for j in 0..g.order() {
                let live = h1.view((i * r, j * r), (r, r)).norm() > t || h2.view((i * r, j * r), (r, r)).norm() > t;
                prop_assert!(!live || out.fit.block(i, j).norm() > t);
            }
        }
    }
}
