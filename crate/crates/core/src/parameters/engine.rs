use std::collections::BTreeMap;

use super::search::{heuristic_fit_search, heuristic_osr_search};
use super::{
    Budget, BoundReport, CutVertexPiece, CutVertexReport, DualityReport, FaithfulDemo, LowerBound,
    Parameter, RatioEntry, RatioSequence, UpperBound, Witness,
};
use crate::error::{Error, Result};
use crate::fit::{direct_sum_fits, fit_to_fosr, fosr_to_fit, normalize_weak_fit, union_combine, FitMatrix};
use crate::graph::{alpha, chi, chi_f, is_chordal, omega, Coloring, Graph, Rational};
use crate::linalg::{Subspace, Tolerances};
use crate::representations::{
    canonical_faithful_rep, coloring_to_osr, combine_fold, faithful_from_pair, fixture_p4_fosr,
    glue_clique_sum, osr_to_projective, pad_disjoint_union, verify_faithful_projective, verify_fosr,
    verify_osr, SubspaceRepresentation,
};

/// Largest order for which the exact fractional coloring LP is attempted.
const FRACTIONAL_COLORING_MAX_ORDER: usize = 16;

/// Graph invariants used by the bound assembly, computed once per graph.
#[derive(Clone)]
struct Facts {
    omega: usize,
    alpha: usize,
    coloring: Coloring,
    fold_coloring: Option<Coloring>,
    elimination_ordering: Option<Vec<usize>>,
    components: Vec<Vec<usize>>,
    cut_vertex: Option<String>,
    clique: bool,
    /// Vertex indices in path order when the graph is a path on four vertices.
    path4: Option<Vec<usize>>,
}

/// Bound assembly with a certificate cache.
///
/// Reports are cached per labeled graph, parameter and `r`; computing level
/// `r` first computes every level below it, so the `combine_fold` closure
/// over the cache is complete up to `r`.
pub struct Engine {
    budget: Budget,
    seed: u64,
    tol: Tolerances,
    reports: BTreeMap<(String, Parameter, usize), BoundReport>,
    facts: BTreeMap<String, Facts>,
}

struct Candidate {
    construction: String,
    certificate: SubspaceRepresentation,
}

fn candidate(construction: impl Into<String>, certificate: SubspaceRepresentation) -> Candidate {
    Candidate {
        construction: construction.into(),
        certificate,
    }
}

fn lower(value: usize, reason: impl Into<String>) -> LowerBound {
    LowerBound {
        value,
        reason: reason.into(),
    }
}

fn rational(p: usize, q: usize) -> Rational {
    Rational::new(p as i64, q as i64)
}

/// FNV-1a over the inputs, so every search gets its own reproducible seed.
fn search_seed(seed: u64, key: &str, p: Parameter, r: usize, d: usize) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    let bytes = seed
        .to_le_bytes()
        .into_iter()
        .chain(key.bytes())
        .chain([p as u8])
        .chain((r as u64).to_le_bytes())
        .chain((d as u64).to_le_bytes());
    for b in bytes {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h
}

/// The same subspaces listed in `g`'s vertex order; `rep.graph` must equal `g`.
fn reorder(rep: &SubspaceRepresentation, g: &Graph) -> Result<SubspaceRepresentation> {
    if rep.graph != *g {
        return Err(Error::Mismatch("certificate is over a different graph".into()));
    }
    let assignment = g
        .labels()
        .iter()
        .map(|l| rep.subspace(l).cloned().expect("equal graphs share labels"))
        .collect();
    Ok(SubspaceRepresentation::new(g.clone(), rep.d, rep.r, assignment, rep.faithful))
}

fn path_order(g: &Graph) -> Option<Vec<usize>> {
    if g.order() != 4 || g.edge_count() != 3 || !g.is_connected() {
        return None;
    }
    let mut order = vec![(0..4).find(|&v| g.degree(v) == 1)?];
    while order.len() < 4 {
        let last = *order.last().expect("nonempty");
        let next = g.neighbors(last).find(|u| !order.contains(u))?;
        order.push(next);
    }
    Some(order)
}

impl Engine {
    pub fn new(budget: Budget, seed: u64) -> Self {
        Engine::with_tolerances(budget, seed, Tolerances::default())
    }

    pub fn with_tolerances(budget: Budget, seed: u64, tol: Tolerances) -> Self {
        Engine {
            budget,
            seed,
            tol,
            reports: BTreeMap::new(),
            facts: BTreeMap::new(),
        }
    }

    pub fn tolerances(&self) -> &Tolerances {
        &self.tol
    }

    /// Cached reports, in key order.
    pub fn cached(&self) -> impl Iterator<Item = &BoundReport> {
        self.reports.values()
    }

    /// Certified bracket for `p` at `r`.
    pub fn bounds(&mut self, g: &Graph, p: Parameter, r: usize) -> Result<BoundReport> {
        if r == 0 {
            return Err(Error::InvalidArgument("r must be at least 1".into()));
        }
        Ok(self.level(g, p, r))
    }

    fn facts(&mut self, g: &Graph) -> Facts {
        let key = g.canonical_key();
        if let Some(f) = self.facts.get(&key) {
            return f.clone();
        }
        let n = g.order();
        let components = g.components();
        let cut_vertex = if n >= 3 && components.len() == 1 {
            g.labels()
                .iter()
                .find(|v| g.cut_vertex_components(v).is_ok())
                .cloned()
        } else {
            None
        };
        let fold_coloring = (n > 0 && n <= FRACTIONAL_COLORING_MAX_ORDER)
            .then(|| chi_f(g).to_fold_coloring(g))
            .filter(|c| c.fold > 1);
        let all: Vec<usize> = (0..n).collect();
        let facts = Facts {
            omega: omega(g),
            alpha: alpha(g),
            coloring: chi(g).1,
            fold_coloring,
            elimination_ordering: is_chordal(g).elimination_ordering,
            components,
            cut_vertex,
            clique: g.is_clique(&all),
            path4: path_order(g),
        };
        self.facts.insert(key, facts.clone());
        facts
    }

    fn level(&mut self, g: &Graph, p: Parameter, r: usize) -> BoundReport {
        let key = (g.canonical_key(), p, r);
        if let Some(rep) = self.reports.get(&key) {
            return rep.clone();
        }
        for s in 1..r {
            self.level(g, p, s);
        }
        let report = self.compute(g, p, r);
        self.reports.insert(key, report.clone());
        report
    }

    fn compute(&mut self, g: &Graph, p: Parameter, r: usize) -> BoundReport {
        let n = g.order();
        let faithful = p == Parameter::MrrPlus;
        let mut lowers = vec![lower(r, "r ≤ d")];
        let mut cands = Vec::new();
        if n == 0 {
            let empty = SubspaceRepresentation::new(g.clone(), r, r, Vec::new(), faithful);
            cands.push(candidate("no vertices", empty));
            return self.assemble(g, p, r, lowers, cands);
        }
        let facts = self.facts(g);
        if facts.components.len() > 1 {
            let parts: Vec<BoundReport> = facts
                .components
                .iter()
                .map(|c| self.level(&g.induced_by_indices(c), p, r))
                .collect();
            let certs: Vec<SubspaceRepresentation> =
                parts.iter().map(|b| b.upper.witness.certificate.clone()).collect();
            match p {
                Parameter::XiR => {
                    let l = parts.iter().map(|b| b.lower.value).max().unwrap_or(0);
                    lowers.push(lower(l, "max over components"));
                    if let Ok(rep) = pad_disjoint_union(&certs, &self.tol).and_then(|u| reorder(&u, g)) {
                        cands.push(candidate("components padded into a common space", rep));
                    }
                }
                Parameter::MrrPlus => {
                    let l = parts.iter().map(|b| b.lower.value).sum();
                    lowers.push(lower(l, "sum over components"));
                    if let Ok(rep) = self.direct_sum(&certs, g) {
                        cands.push(candidate("direct sum of component fitting matrices", rep));
                    }
                }
            }
            return self.assemble(g, p, r, lowers, cands);
        }
        match p {
            Parameter::XiR => self.xi_sources(g, r, &facts, &mut lowers, &mut cands),
            Parameter::MrrPlus => self.mrr_sources(g, r, &facts, &mut lowers, &mut cands),
        }
        let best = |cands: &[Candidate]| cands.iter().map(|c| c.certificate.d).min().unwrap_or(usize::MAX);
        if let Some(c) = self.restriction(g, p, r, best(&cands)) {
            cands.push(c);
        }
        if let Some(c) = self.fold(g, p, r, best(&cands)) {
            cands.push(c);
        }
        let lo = lowers.iter().map(|l| l.value).max().unwrap_or(0);
        let hi = best(&cands);
        if lo < hi && n * r <= self.budget.max_search_size {
            let key = g.canonical_key();
            for d in lo..hi.min(n * r + 1) {
                let seed = search_seed(self.seed, &key, p, r, d);
                let found = match p {
                    Parameter::XiR => heuristic_osr_search(g, r, d, seed, &self.budget, &self.tol),
                    Parameter::MrrPlus => heuristic_fit_search(g, r, d, seed, &self.budget, &self.tol)
                        .and_then(|fm| fit_to_fosr(&fm, &self.tol).ok()),
                };
                if let Some(rep) = found {
                    cands.push(candidate(format!("heuristic search at d = {d}"), rep));
                    break;
                }
            }
        }
        self.assemble(g, p, r, lowers, cands)
    }

    fn xi_sources(&mut self, g: &Graph, r: usize, facts: &Facts, lowers: &mut Vec<LowerBound>, cands: &mut Vec<Candidate>) {
        lowers.push(lower(r * facts.omega, "r·ω"));
        if let Ok(rep) = coloring_to_osr(g, &facts.coloring, r) {
            cands.push(candidate(format!("r copies of an optimal {}-coloring", facts.coloring.palette), rep));
        }
        if let Some(col) = &facts.fold_coloring {
            if r.is_multiple_of(col.fold) {
                if let Ok(rep) = coloring_to_osr(g, col, r) {
                    let name = format!("{}:{} coloring from the fractional coloring LP", col.palette, col.fold);
                    cands.push(candidate(name, rep));
                }
            }
        }
        if let Some(order) = &facts.elimination_ordering {
            if let Ok(rep) = self.chordal_osr(g, order, r) {
                cands.push(candidate("clique-sum gluing along a perfect elimination ordering", rep));
            }
        }
        if let Some(v) = &facts.cut_vertex {
            let pieces = g.cut_vertex_components(v).expect("cut vertex");
            let parts: Vec<BoundReport> = pieces.iter().map(|h| self.level(h, Parameter::XiR, r)).collect();
            let l = parts.iter().map(|b| b.lower.value).max().unwrap_or(0);
            lowers.push(lower(l, format!("max over the blocks at cut-vertex {v}")));
            let clique = [v.clone()];
            let mut acc = parts[0].upper.witness.certificate.clone();
            let mut ok = true;
            for part in &parts[1..] {
                match glue_clique_sum(&acc, &part.upper.witness.certificate, &clique, &self.tol) {
                    Ok(next) => acc = next,
                    Err(_) => {
                        ok = false;
                        break;
                    }
                }
            }
            if let (true, Ok(rep)) = (ok, reorder(&acc, g)) {
                cands.push(candidate(format!("blocks glued at cut-vertex {v}"), rep));
            }
        }
    }

    fn mrr_sources(&mut self, g: &Graph, r: usize, facts: &Facts, lowers: &mut Vec<LowerBound>, cands: &mut Vec<Candidate>) {
        lowers.push(lower(r * facts.alpha, "r·α"));
        if r == 1 {
            cands.push(candidate("canonical faithful Gram factor", canonical_faithful_rep(g)));
        }
        if facts.clique {
            let shared = Subspace::standard(r, 0..r);
            let rep = SubspaceRepresentation::new(g.clone(), r, r, vec![shared; g.order()], true);
            cands.push(candidate("one shared subspace for the clique", rep));
        }
        if let Some(order) = &facts.path4 {
            if let Ok(fixture) = fixture_p4_fosr(r) {
                let mut assignment = vec![fixture.assignment[0].clone(); 4];
                for (k, &v) in order.iter().enumerate() {
                    assignment[v] = fixture.assignment[k].clone();
                }
                let rep = SubspaceRepresentation::new(g.clone(), fixture.d, r, assignment, true);
                cands.push(candidate("path on four vertices: (2r+1; r) construction", rep));
            }
        }
        if let Some(v) = &facts.cut_vertex {
            let pieces = g.cut_vertex_components(v).expect("cut vertex");
            let parts: Vec<BoundReport> = pieces.iter().map(|h| self.level(h, Parameter::MrrPlus, r)).collect();
            if r == 1 {
                let l = parts.iter().map(|b| b.lower.value).sum();
                lowers.push(lower(l, format!("cut-vertex reduction at {v} (r = 1)")));
            }
            let sum: usize = parts.iter().map(|b| b.upper.value).sum();
            let best = cands.iter().map(|c| c.certificate.d).min().unwrap_or(usize::MAX);
            if sum < best {
                if let Ok(rep) = self.union_of_pieces(&parts, g) {
                    cands.push(candidate(format!("weighted sum of block fitting matrices at cut-vertex {v}"), rep));
                }
            }
        }
    }

    /// `(r·ω; r)`-OSR of a chordal graph, adding vertices in reverse
    /// elimination order: each new vertex and its later neighbors form a
    /// clique, glued onto what is built so far along those neighbors.
    pub(crate) fn chordal_osr(&self, g: &Graph, order: &[usize], r: usize) -> Result<SubspaceRepresentation> {
        let n = order.len();
        let clique_rep = |idx: &[usize]| {
            let h = g.induced_by_indices(idx);
            let assignment = (0..idx.len()).map(|i| Subspace::standard(r * idx.len(), i * r..(i + 1) * r)).collect();
            SubspaceRepresentation::new(h, r * idx.len(), r, assignment, false)
        };
        let mut acc = clique_rep(&[order[n - 1]]);
        for k in (0..n - 1).rev() {
            let v = order[k];
            let later: Vec<usize> = order[k + 1..].iter().copied().filter(|&u| g.has_edge(u, v)).collect();
            let mut idx = later.clone();
            idx.push(v);
            let piece = clique_rep(&idx);
            acc = if later.is_empty() {
                pad_disjoint_union(&[acc, piece], &self.tol)?
            } else {
                let labels: Vec<String> = later.iter().map(|&u| g.label(u).to_string()).collect();
                glue_clique_sum(&acc, &piece, &labels, &self.tol)?
            };
        }
        reorder(&acc, g)
    }

    /// FOSR of a disconnected graph from FOSRs of its components, through
    /// the direct sum of their Gram matrices.
    fn direct_sum(&self, certs: &[SubspaceRepresentation], g: &Graph) -> Result<SubspaceRepresentation> {
        let fits = certs
            .iter()
            .map(|c| fosr_to_fit(c, &self.tol))
            .collect::<Result<Vec<FitMatrix>>>()?;
        let sum = direct_sum_fits(&fits, &self.tol)?.reordered(g)?;
        fit_to_fosr(&sum, &self.tol)
    }

    /// FOSR of `g` from FOSRs of the pieces at a cut vertex, through
    /// weighted sums of their Gram matrices.
    fn union_of_pieces(&self, parts: &[BoundReport], g: &Graph) -> Result<SubspaceRepresentation> {
        let mut acc = fosr_to_fit(&parts[0].upper.witness.certificate, &self.tol)?;
        for (i, part) in parts.iter().enumerate().skip(1) {
            let next = fosr_to_fit(&part.upper.witness.certificate, &self.tol)?;
            let union = Graph::union(&acc.graph, &next.graph);
            let seed = search_seed(self.seed, &g.canonical_key(), Parameter::MrrPlus, part.r, i);
            let combined = union_combine(&acc, &next, &union, seed, &self.tol)?;
            acc = normalize_weak_fit(&combined.fit, &self.tol)?;
        }
        fit_to_fosr(&acc.reordered(g)?, &self.tol)
    }

    /// Restriction of a cached witness for a supergraph (induced, for
    /// `mr_[r]⁺`) when it beats `best`.
    fn restriction(&self, g: &Graph, p: Parameter, r: usize, best: usize) -> Option<Candidate> {
        self.reports
            .iter()
            .filter(|((_, q, s), rep)| *q == p && *s == r && rep.upper.value < best && rep.graph != *g)
            .filter(|(_, rep)| match p {
                Parameter::XiR => g.is_subgraph_of(&rep.graph),
                Parameter::MrrPlus => g.is_induced_subgraph_of(&rep.graph),
            })
            .min_by_key(|(_, rep)| rep.upper.value)
            .and_then(|(_, rep)| {
                let restricted = reorder(&rep.upper.witness.certificate.restrict(g).ok()?, g).ok()?;
                let restricted = match p {
                    Parameter::XiR => restricted,
                    // drop to the span actually used, so d equals the Gram rank
                    Parameter::MrrPlus => fit_to_fosr(&fosr_to_fit(&restricted, &self.tol).ok()?, &self.tol).ok()?,
                };
                Some(candidate("restriction of a supergraph witness", restricted))
            })
    }

    /// `combine_fold` of the cached witnesses at `a` and `r − a` with the
    /// smallest total, when it beats `best`.
    fn fold(&self, g: &Graph, p: Parameter, r: usize, best: usize) -> Option<Candidate> {
        let key = g.canonical_key();
        let at = |s: usize| self.reports.get(&(key.clone(), p, s)).expect("lower levels are cached");
        let (a, total) = (1..=r / 2)
            .map(|a| (a, at(a).upper.value + at(r - a).upper.value))
            .min_by_key(|&(a, t)| (t, a))?;
        if total >= best {
            return None;
        }
        let rep = combine_fold(&at(a).upper.witness.certificate, &at(r - a).upper.witness.certificate, &self.tol).ok()?;
        Some(candidate(format!("fold of the r = {a} and r = {} witnesses", r - a), rep))
    }

    fn assemble(&self, g: &Graph, p: Parameter, r: usize, lowers: Vec<LowerBound>, cands: Vec<Candidate>) -> BoundReport {
        let lower = lowers
            .into_iter()
            .reduce(|a, b| if b.value > a.value { b } else { a })
            .expect("at least one lower bound");
        let verified = |c: &Candidate| {
            let cert = &c.certificate;
            let report = match p {
                Parameter::XiR => verify_osr(cert, &self.tol),
                Parameter::MrrPlus => verify_fosr(cert, &self.tol),
            };
            report.valid && cert.r == r && cert.graph == *g
        };
        let best = cands
            .into_iter()
            .filter(verified)
            .reduce(|a, b| if b.certificate.d < a.certificate.d { b } else { a })
            .expect("every graph has a verified construction");
        assert!(
            lower.value <= best.certificate.d,
            "unsound bounds for {p} at r = {r}: lower {} ({}) exceeds upper {} ({})",
            lower.value,
            lower.reason,
            best.certificate.d,
            best.construction
        );
        let upper = UpperBound {
            value: best.certificate.d,
            witness: Witness {
                construction: best.construction,
                certificate: best.certificate,
            },
        };
        BoundReport {
            parameter: p,
            graph: g.clone(),
            r,
            exact: lower.value == upper.value,
            lower,
            upper,
        }
    }

    pub fn ratio_sequence(&mut self, g: &Graph, p: Parameter, r_max: usize) -> Result<RatioSequence> {
        if r_max == 0 {
            return Err(Error::InvalidArgument("r_max must be at least 1".into()));
        }
        let entries: Vec<RatioEntry> = (1..=r_max)
            .map(|r| {
                let rep = self.level(g, p, r);
                RatioEntry {
                    r,
                    lower: rep.lower.value,
                    value: rep.upper.value,
                    ratio: rational(rep.upper.value, r),
                    certified: true,
                }
            })
            .collect();
        let best = entries
            .iter()
            .filter(|e| e.certified)
            .reduce(|a, b| if b.ratio < a.ratio { b } else { a })
            .expect("r_max ≥ 1");
        let (best_ratio, best_r) = (best.ratio, best.r);
        // only bounds holding at every r carry over to the limit; the
        // cut-vertex bound at r = 1 does not
        let facts = self.facts(g);
        let lower_bound = rational(
            match p {
                Parameter::XiR => facts.omega,
                Parameter::MrrPlus => facts.alpha,
            },
            1,
        );
        let limit_estimate = limit_estimate(&entries).clamp(lower_bound.to_f64(), best_ratio.to_f64());
        Ok(RatioSequence {
            parameter: p.fractional_name().to_string(),
            graph: g.clone(),
            entries,
            best_ratio,
            best_r,
            lower_bound,
            limit_estimate,
        })
    }

    pub fn duality_report(&mut self, g: &Graph, r_max: usize, eps: f64) -> Result<DualityReport> {
        let complement = g.complement();
        let xi = self.ratio_sequence(&complement, Parameter::XiR, r_max)?;
        let mr = self.ratio_sequence(g, Parameter::MrrPlus, r_max)?;
        let (xb, mb) = (xi.bracket(), mr.bracket());
        let faithful_demo = if g.order() > 0 {
            Some(self.faithful_demo(g, &complement, xi.best_r, eps)?)
        } else {
            None
        };
        Ok(DualityReport {
            graph: g.clone(),
            complement,
            overlap: xb.overlaps(&mb),
            xi_f_bracket: xb,
            mr_f_bracket: mb,
            xi_f_complement: xi,
            mr_f: mr,
            faithful_demo,
        })
    }

    fn faithful_demo(&mut self, g: &Graph, complement: &Graph, r: usize, eps: f64) -> Result<FaithfulDemo> {
        let osr = self.level(complement, Parameter::XiR, r).upper.witness.certificate;
        let fosr = self.level(g, Parameter::MrrPlus, 1).upper.witness.certificate;
        let p = osr_to_projective(&osr, &self.tol)?;
        let rf = osr_to_projective(&fosr, &self.tol)?;
        let pair = faithful_from_pair(&p, &rf, eps, &self.tol)?;
        let verified = verify_faithful_projective(&pair.representation, &self.tol).valid;
        Ok(FaithfulDemo {
            eps,
            target: pair.target,
            b: rf.d,
            k: pair.k,
            dimension: pair.representation.d,
            rank: pair.representation.r,
            value: pair.value,
            gap: pair.gap,
            verified,
        })
    }

    pub fn cut_vertex_mr_plus(&mut self, g: &Graph, v: &str, r: usize) -> Result<CutVertexReport> {
        if r != 1 {
            return Err(Error::Refused(format!(
                "cut-vertex reduction holds only for r = 1: the path on four vertices has \
                 mr_[r]⁺ = 2r+1 < 3r = mr_[r]⁺(P3) + mr_[r]⁺(P2) for every r > 1 (here {} < {})",
                2 * r + 1,
                3 * r
            )));
        }
        let pieces = g.cut_vertex_components(v)?;
        let pieces: Vec<CutVertexPiece> = pieces
            .into_iter()
            .map(|h| {
                let rep = self.level(&h, Parameter::MrrPlus, 1);
                CutVertexPiece {
                    graph: h,
                    lower: rep.lower.value,
                    upper: rep.upper.value,
                    exact: rep.exact,
                }
            })
            .collect();
        let lower: usize = pieces.iter().map(|p| p.lower).sum();
        let upper: usize = pieces.iter().map(|p| p.upper).sum();
        let exact = pieces.iter().all(|p| p.exact);
        let terms = |f: &dyn Fn(&CutVertexPiece) -> String| pieces.iter().map(f).collect::<Vec<_>>().join(" + ");
        let symbolic = (1..=pieces.len()).map(|i| format!("mr⁺(G_{i})")).collect::<Vec<_>>().join(" + ");
        let expression = if exact {
            format!("mr⁺(G) = {symbolic} = {} = {upper}", terms(&|p| p.upper.to_string()))
        } else {
            format!(
                "mr⁺(G) = {symbolic} ∈ [{}, {}] = [{lower}, {upper}]",
                terms(&|p| p.lower.to_string()),
                terms(&|p| p.upper.to_string())
            )
        };
        Ok(CutVertexReport {
            vertex: v.to_string(),
            pieces,
            lower,
            upper,
            exact,
            expression,
        })
    }
}

/// Intercept `a` of the least-squares fit `ratio ≈ a + b/r` over the upper
/// half of the entries; the last ratio when fewer than two points remain.
fn limit_estimate(entries: &[RatioEntry]) -> f64 {
    let tail = &entries[entries.len() / 2..];
    let last = entries.last().expect("nonempty").ratio.to_f64();
    if tail.len() < 2 {
        return last;
    }
    let pts: Vec<(f64, f64)> = tail.iter().map(|e| (1.0 / e.r as f64, e.ratio.to_f64())).collect();
    let m = pts.len() as f64;
    let (sx, sy) = pts.iter().fold((0.0, 0.0), |(a, b), (x, y)| (a + x, b + y));
    let (mx, my) = (sx / m, sy / m);
    let sxx: f64 = pts.iter().map(|(x, _)| (x - mx) * (x - mx)).sum();
    let sxy: f64 = pts.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    if sxx == 0.0 {
        return my;
    }
    my - (sxy / sxx) * mx
}
