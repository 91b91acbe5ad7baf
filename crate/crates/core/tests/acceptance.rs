//! End-to-end acceptance suite. Runs every criterion in order, prints one
//! PASS/FAIL line per criterion with its wall time, and fails at the end if
//! any criterion failed or ran over its time limit.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use fracrank::fit::{fit_to_fosr, fosr_to_fit, r_fits};
use fracrank::graph::{alpha, chi, chi_f, generate, omega, random_chordal};
use fracrank::linalg::{gram, orthonormality_residual, rank};
use fracrank::parameters::{
    cut_vertex_mr_plus, duality_report, heuristic_fit_search, heuristic_osr_search, mr_f_estimate, mrr_bounds,
    xi_r_bounds,
};
use fracrank::representations::random::{random_fosr, random_graph, random_osr};
use fracrank::representations::{
    combine_fold, faithful_from_pair, fixture_p4_fosr, fixture_p4_osr, osr_to_projective,
    projective_to_osr, verify_fosr, verify_osr,
};
use fracrank::{
    Budget, CMatrix, Engine, Error, FitMatrix, Graph, GraphKind, Parameter, Rational, SubspaceRepresentation,
    Tolerances,
};

type Outcome = Result<String, String>;
/// Name, time limit in seconds, check.
type Criterion = (&'static str, u64, fn() -> Outcome);

fn tol() -> Tolerances {
    Tolerances::default()
}

fn kind(k: GraphKind, n: usize) -> Graph {
    generate(k, n).unwrap()
}

fn p4() -> Graph {
    kind(GraphKind::Path, 4)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Largest `‖X_u* X_v‖_F` over the given pairs and largest orthonormality residual.
fn residuals(rep: &SubspaceRepresentation, pairs: &[(usize, usize)]) -> (f64, f64) {
    let x: Vec<&CMatrix> = rep.assignment.iter().map(|s| s.basis()).collect();
    let cross = pairs
        .iter()
        .map(|&(u, v)| (x[u].adjoint() * x[v].inner()).norm())
        .fold(0.0, f64::max);
    let orth = x.iter().map(|b| orthonormality_residual(b)).fold(0.0, f64::max);
    (cross, orth)
}

fn non_edges(g: &Graph) -> Vec<(usize, usize)> {
    let n = g.order();
    (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|&(i, j)| !g.has_edge(i, j))
        .collect()
}

fn criterion_1() -> Outcome {
    let g = p4();
    for r in 1..=5 {
        let rep = fixture_p4_fosr(r).map_err(|e| e.to_string())?;
        ensure(rep.d == 2 * r + 1 && rep.r == r, || format!("fixture at r={r} is ({};{})", rep.d, rep.r))?;
        ensure(verify_fosr(&rep, &tol()).valid, || format!("fixture at r={r} fails verification"))?;
        let (cross, orth) = residuals(&rep, &non_edges(&g));
        ensure(cross < 1e-9 && orth < 1e-9, || format!("r={r}: residuals {cross:e}, {orth:e}"))?;
        let b = mrr_bounds(&g, r, Budget::default(), 0).map_err(|e| e.to_string())?;
        ensure(b.upper.value == 2 * r + 1, || format!("r={r}: upper {}", b.upper.value))?;
        ensure(b.verify_witness(&tol()).valid, || format!("r={r}: witness fails"))?;
        if r == 1 {
            ensure(b.exact && b.lower.value == 3, || format!("r=1: [{}, {}]", b.lower.value, b.upper.value))?;
        } else {
            ensure(b.lower.value == 2 * r, || format!("r={r}: lower {}", b.lower.value))?;
        }
    }
    Ok("mr_[r]+(P4) ∈ [2r, 2r+1] for r = 2..5, mr+(P4) = 3 exact".into())
}

fn criterion_2() -> Outcome {
    let g = p4();
    for r in 1..=5 {
        let rep = fixture_p4_osr(r).map_err(|e| e.to_string())?;
        ensure(verify_osr(&rep, &tol()).valid && rep.d == 2 * r, || format!("fixture at r={r} fails"))?;
        let (cross, orth) = residuals(&rep, &g.edges());
        ensure(cross < 1e-9 && orth < 1e-9, || format!("r={r}: residuals {cross:e}, {orth:e}"))?;
        let b = xi_r_bounds(&g, r, Budget::default(), 0).map_err(|e| e.to_string())?;
        ensure(b.exact && b.upper.value == 2 * r, || format!("r={r}: [{}, {}]", b.lower.value, b.upper.value))?;
        ensure(b.verify_witness(&tol()).valid, || format!("r={r}: witness fails"))?;
    }
    Ok("ξ_[r](P4) = 2r exact for r = 1..5".into())
}

fn criterion_3() -> Outcome {
    let s = mr_f_estimate(&p4(), 64, Budget::default(), 0).map_err(|e| e.to_string())?;
    ensure(s.best_ratio == Rational::new(129, 64), || format!("best ratio {:?}", s.best_ratio))?;
    ensure(s.lower_bound == Rational::integer(2), || format!("lower {:?}", s.lower_bound))?;
    let width = s.best_ratio.to_f64() - 2.0;
    ensure(width <= 1.0 / 64.0 + 1e-15, || format!("bracket width {width}"))?;
    ensure(s.bracket().contains(Rational::integer(2)), || "2 outside the bracket".into())?;
    Ok(format!("bracket [2, 129/64], limit estimate {:.6}", s.limit_estimate))
}

fn criterion_4() -> Outcome {
    let g = kind(GraphKind::Path, 3);
    // X = [e1 e2 | e1 e4 | e3 e4] in C^4
    let x = CMatrix::standard_columns(4, [0, 1, 0, 3, 2, 3]);
    let shown: [[f64; 6]; 6] = [
        [1., 0., 1., 0., 0., 0.],
        [0., 1., 0., 0., 0., 0.],
        [1., 0., 1., 0., 0., 0.],
        [0., 0., 0., 1., 0., 1.],
        [0., 0., 0., 0., 1., 0.],
        [0., 0., 0., 1., 0., 1.],
    ];
    let a = gram(&x);
    for i in 0..6 {
        for j in 0..6 {
            let z = a[(i, j)];
            ensure(z.re == shown[i][j] && z.im == 0.0, || format!("entry ({i},{j}) is {z}"))?;
        }
    }
    let fm = FitMatrix::new(g.clone(), 2, a);
    ensure(r_fits(&fm, &tol()).valid, || "r_fits fails".into())?;
    ensure(fm.rank(&tol()) == 4 && rank(&fm.matrix, &tol()) == 4, || "rank is not 4".into())?;
    let rep = fit_to_fosr(&fm, &tol()).map_err(|e| e.to_string())?;
    ensure(verify_fosr(&rep, &tol()).valid && (rep.d, rep.r) == (4, 2), || "fit_to_fosr output fails".into())?;
    ensure(2 * alpha(&g) == 4, || "2·α(P3) ≠ 4".into())?;
    let b = mrr_bounds(&g, 2, Budget::default(), 0).map_err(|e| e.to_string())?;
    ensure(b.exact && b.upper.value == 4, || format!("engine reports [{}, {}]", b.lower.value, b.upper.value))?;
    Ok("A = X*X entry-exact, rank 4 = 2·α(P3)".into())
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let budget = Budget::default();
    for sample in 0..50 {
        let n = rng.random_range(1..=10);
        let g = random_chordal(n, &mut rng);
        let w = omega(&g);
        let mut engine = Engine::new(budget, sample);
        for r in 1..=3 {
            let b = engine.bounds(&g, Parameter::XiR, r).map_err(|e| e.to_string())?;
            ensure(b.exact && b.upper.value == r * w, || {
                format!("sample {sample} (n={n}, ω={w}), r={r}: [{}, {}]", b.lower.value, b.upper.value)
            })?;
            ensure(b.verify_witness(&tol()).valid, || format!("sample {sample}, r={r}: witness fails"))?;
        }
    }
    Ok("50 chordal graphs × r ∈ {1,2,3} exact at r·ω".into())
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let budget = Budget {
        restarts: 4,
        iters: 300,
        max_search_size: 12,
    };
    let mut engine_checks = 0;
    for sample in 0..200u64 {
        let n = rng.random_range(1..=6);
        let g = random_graph(n, 0.5, &mut rng);
        let (r, s) = (rng.random_range(1..=3), rng.random_range(1..=3));
        let faithful = sample % 2 == 1;
        let (a, b) = if faithful {
            (random_fosr(&g, r, &mut rng), random_fosr(&g, s, &mut rng))
        } else {
            (random_osr(&g, r, 1, &mut rng), random_osr(&g, s, 1, &mut rng))
        };
        ensure(a.verify(&tol()).valid && b.verify(&tol()).valid, || format!("sample {sample}: inputs fail"))?;
        let c = combine_fold(&a, &b, &tol()).map_err(|e| format!("sample {sample}: {e}"))?;
        ensure(c.verify(&tol()).valid, || format!("sample {sample}: combined fails"))?;
        ensure(c.d == a.d + b.d && c.r == r + s, || format!("sample {sample}: ({};{})", c.d, c.r))?;

        if sample % 4 < 2 {
            let p = if faithful { Parameter::MrrPlus } else { Parameter::XiR };
            let mut engine = Engine::new(budget, sample);
            let up = |engine: &mut Engine, k| engine.bounds(&g, p, k).map(|b| b.upper.value);
            let (ur, us, urs) = (
                up(&mut engine, r).map_err(|e| e.to_string())?,
                up(&mut engine, s).map_err(|e| e.to_string())?,
                up(&mut engine, r + s).map_err(|e| e.to_string())?,
            );
            ensure(urs <= ur + us, || format!("sample {sample} ({p}): {urs} > {ur} + {us}"))?;
            engine_checks += 1;
        }
    }
    Ok(format!("200 combine_fold outputs verify; {engine_checks} engine subadditivity checks"))
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let rel = |a: &CMatrix, b: &CMatrix| (a.inner() - b.inner()).norm() / a.inner().norm().max(f64::MIN_POSITIVE);
    let mut worst: f64 = 0.0;
    for sample in 0..100 {
        let n = rng.random_range(1..=6);
        let g = random_graph(n, 0.5, &mut rng);
        let r = rng.random_range(1..=3);
        let osr = random_osr(&g, r, rng.random_range(0..=2), &mut rng);
        let p = osr_to_projective(&osr, &tol()).map_err(|e| e.to_string())?;
        let back = projective_to_osr(&p, &tol()).map_err(|e| e.to_string())?;
        ensure(back.verify(&tol()).valid == osr.verify(&tol()).valid, || format!("sample {sample}: verdicts differ"))?;
        for (x, y) in osr.assignment.iter().zip(&back.assignment) {
            let proj = |b: &CMatrix| CMatrix::from(b.inner() * b.adjoint());
            let (px, py) = (proj(x.basis()), proj(y.basis()));
            worst = worst.max(rel(&px, &py));
        }
        let again = osr_to_projective(&back, &tol()).map_err(|e| e.to_string())?;
        for (x, y) in p.assignment.iter().zip(&again.assignment) {
            worst = worst.max(rel(&x.to_dense(), &y.to_dense()));
        }

        let fosr = random_fosr(&g, r, &mut rng);
        let fit = fosr_to_fit(&fosr, &tol()).map_err(|e| e.to_string())?;
        let rep = fit_to_fosr(&fit, &tol()).map_err(|e| e.to_string())?;
        ensure(rep.verify(&tol()).valid == fosr.verify(&tol()).valid, || format!("sample {sample}: fosr verdicts differ"))?;
        let fit2 = fosr_to_fit(&rep, &tol()).map_err(|e| e.to_string())?;
        ensure(r_fits(&fit2, &tol()).valid == r_fits(&fit, &tol()).valid, || format!("sample {sample}: fit verdicts"))?;
        worst = worst.max(rel(&fit.matrix, &fit2.matrix));
    }
    ensure(worst < 1e-8, || format!("worst relative error {worst:e}"))?;
    Ok(format!("200 round trips, worst relative Frobenius error {worst:.1e}"))
}

/// The complement of P4 relabeled onto the P4 orthogonal fixture.
fn p4_complement_osr(r: usize) -> SubspaceRepresentation {
    let comp = p4().complement();
    // 2-4-1-3 is a path in the complement of 1-2-3-4
    let order = ["2", "4", "1", "3"];
    let osr = fixture_p4_osr(r).unwrap();
    let assignment = comp
        .labels()
        .iter()
        .map(|l| osr.assignment[order.iter().position(|o| o == l).unwrap()].clone())
        .collect();
    SubspaceRepresentation::new(comp, osr.d, r, assignment, false)
}

fn criterion_8() -> Outcome {
    let g = p4();
    let p = osr_to_projective(&p4_complement_osr(1), &tol()).map_err(|e| e.to_string())?;
    let rf = osr_to_projective(&fixture_p4_fosr(1).unwrap(), &tol()).map_err(|e| e.to_string())?;
    ensure(rf.graph == g, || "faithful input is not over P4".into())?;
    let (d, r, b) = (p.d as i64, p.r as i64, rf.d as i64);
    let mut ks = Vec::new();
    for (eps, num, den) in [(0.05, 1i64, 20i64), (0.01, 1, 100), (0.001, 1, 1000)] {
        let out = faithful_from_pair(&p, &rf, eps, &tol()).map_err(|e| e.to_string())?;
        ensure(out.representation.verify(&tol()).valid, || format!("eps={eps}: output fails"))?;
        let value = out.representation.d as f64 / out.representation.r as f64;
        ensure((2.0 - value).abs() < eps, || format!("eps={eps}: value {value}"))?;
        // least k ≥ 1 with |d − rb| / (r(kr + 1)) < num/den, by scanning
        let minimal = (1i64..)
            .find(|&k| (d - r * b).abs() * den < num * r * (k * r + 1))
            .unwrap();
        ensure(out.k as i64 == minimal, || format!("eps={eps}: k = {}, minimal {minimal}", out.k))?;
        ks.push(out.k);
    }
    Ok(format!("k = {ks:?}"))
}

fn criterion_9() -> Outcome {
    let star = Graph::new(&["c", "a", "b", "d"], &[("c", "a"), ("c", "b"), ("c", "d")]).unwrap();
    let p2 = Graph::new(&["4", "5"], &[("4", "5")]).unwrap();
    let graphs = [
        ("P4", p4()),
        ("C5", kind(GraphKind::Cycle, 5)),
        ("K5", kind(GraphKind::Complete, 5)),
        ("K1,3", star),
        ("P3 ⊔ P2", Graph::disjoint_union(&[kind(GraphKind::Path, 3), p2])),
    ];
    let mut notes = Vec::new();
    for (name, g) in graphs {
        let d = duality_report(&g, 8, 0.05, Budget::default(), 0).map_err(|e| format!("{name}: {e}"))?;
        ensure(d.overlap, || format!("{name}: {:?} vs {:?}", d.xi_f_bracket, d.mr_f_bracket))?;
        notes.push(format!(
            "{name} [{}, {}]∩[{}, {}]",
            d.xi_f_bracket.lower, d.xi_f_bracket.upper, d.mr_f_bracket.lower, d.mr_f_bracket.upper
        ));
    }
    Ok(notes.join("; "))
}

/// Brute-force `α`, `ω` and `χ` from adjacency bitmasks.
fn naive(n: usize, adj: &[u32]) -> (usize, usize, usize) {
    let full = 1u32 << n;
    let independent: Vec<bool> = (0..full)
        .map(|s| (0..n).all(|v| s >> v & 1 == 0 || adj[v] & s == 0))
        .collect();
    let clique: Vec<bool> = (0..full)
        .map(|s| (0..n).all(|v| s >> v & 1 == 0 || (adj[v] | 1 << v) & s == s))
        .collect();
    let best = |ok: &[bool]| (0..full).filter(|&s| ok[s as usize]).map(|s| s.count_ones()).max().unwrap_or(0) as usize;
    // fewest independent sets covering each subset
    let mut cover = vec![0u32; full as usize];
    for s in 1..full {
        let low = s & s.wrapping_neg();
        let rest = s ^ low;
        let mut t = rest;
        let mut m = u32::MAX;
        loop {
            let i = t | low;
            if independent[i as usize] {
                m = m.min(cover[(s ^ i) as usize] + 1);
            }
            if t == 0 {
                break;
            }
            t = (t - 1) & rest;
        }
        cover[s as usize] = m;
    }
    (best(&independent), best(&clique), cover[(full - 1) as usize] as usize)
}

fn criterion_10() -> Outcome {
    let mut count = 0usize;
    for n in 1..=7usize {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        for mask in 0u32..(1 << pairs.len()) {
            let edges: Vec<(usize, usize)> =
                pairs.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &e)| e).collect();
            let mut adj = vec![0u32; n];
            for &(i, j) in &edges {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
            let g = Graph::from_indices(n, 0, &edges).unwrap();
            let expected = naive(n, &adj);
            let got = (alpha(&g), omega(&g), chi(&g).0);
            ensure(got == expected, || format!("n={n}, edges {edges:?}: {got:?} vs {expected:?}"))?;
            count += 1;
        }
    }
    let f = chi_f(&kind(GraphKind::Cycle, 5));
    ensure(f.value == Rational::new(5, 2) && f.is_certified(&kind(GraphKind::Cycle, 5)), || {
        format!("χ_f(C5) = {:?}", f.value)
    })?;
    Ok(format!("{count} labeled graphs agree; χ_f(C5) = 5/2"))
}

fn criterion_11() -> Outcome {
    let budget = Budget::default();
    let c5 = kind(GraphKind::Cycle, 5);
    let g = p4();
    let osr = (0..100)
        .filter(|&seed| heuristic_osr_search(&c5, 1, 3, seed, &budget, &tol()).is_some_and(|rep| verify_osr(&rep, &tol()).valid))
        .count();
    ensure(osr >= 95, || format!("(3;1)-OSR of C5 found for {osr}/100 seeds"))?;
    let fit = (0..100)
        .filter(|&seed| {
            heuristic_fit_search(&g, 1, 3, seed, &budget, &tol())
                .is_some_and(|fm| r_fits(&fm, &tol()).valid && fm.rank(&tol()) == 3)
        })
        .count();
    ensure(fit >= 95, || format!("rank-3 fit of P4 found for {fit}/100 seeds"))?;
    Ok(format!("C5 OSR {osr}/100, P4 fit {fit}/100"))
}

fn criterion_12() -> Outcome {
    let g = p4();
    let rep = cut_vertex_mr_plus(&g, "3", 1, Budget::default(), 0).map_err(|e| e.to_string())?;
    let parts: Vec<usize> = rep.pieces.iter().map(|p| p.upper).collect();
    ensure(rep.exact && rep.upper == 3, || format!("mr+(P4) reported as [{}, {}]", rep.lower, rep.upper))?;
    let mut sorted = parts.clone();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    ensure(sorted == [2, 1], || format!("pieces {parts:?}"))?;
    match cut_vertex_mr_plus(&g, "3", 2, Budget::default(), 0) {
        Err(Error::Refused(msg)) if msg.contains("2r+1 < 3r") => Ok(format!("{}; r = 2 refused: {msg}", rep.expression)),
        other => Err(format!("r = 2 not refused: {other:?}")),
    }
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 12] = [
        ("P4 faithful ladder", 5, criterion_1),
        ("P4 orthogonal ladder", 5, criterion_2),
        ("fractional limit mr_f+(P4)", 30, criterion_3),
        ("P3 matrix example", 1, criterion_4),
        ("chordal exactness", 60, criterion_5),
        ("subadditivity", 60, criterion_6),
        ("round trips", 30, criterion_7),
        ("faithful from pair", 5, criterion_8),
        ("duality consistency", 120, criterion_9),
        ("exact oracles", 60, criterion_10),
        ("heuristic sanity", 120, criterion_11),
        ("cut-vertex guard", 1, criterion_12),
    ];
    let mut failed = Vec::new();
    for (i, (name, limit, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        let elapsed = start.elapsed();
        let slow = elapsed > Duration::from_secs(limit);
        let (verdict, detail) = match (&result, slow) {
            (Ok(d), false) => ("PASS", d.clone()),
            (Ok(d), true) => ("FAIL", format!("over time limit; {d}")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        println!(
            "criterion {:>2} {verdict} {:>8.2}s (limit {limit:>3}s)  {name}: {detail}",
            i + 1,
            elapsed.as_secs_f64()
        );
        if verdict == "FAIL" {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
