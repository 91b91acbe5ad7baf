use std::collections::BTreeMap;
use std::path::Path;

use fracrank::fit::{
    fit_to_fosr, fosr_to_fit, normalize_weak_fit, r_fits, union_combine, weakly_r_fits,
};
use fracrank::graph::{alpha, chi, chi_b, chi_f, is_chordal, max_clique, max_independent_set, omega};
use fracrank::linalg::hermitian_eigen;
use fracrank::parameters::{duality_report, Engine};
use fracrank::representations::{
    canonical_faithful_rep, coloring_to_osr, combine_fold, faithful_from_pair, fixture_p4_fosr,
    fixture_p4_osr, glue_clique_sum, osr_to_projective, pad_disjoint_union, stack_union,
    standardize_clique, Violation,
};
use fracrank::{
    Budget, Certificate, Error, FitMatrix, Graph, GraphFormat, Parameter, ProjectiveRepresentation,
    SubspaceRepresentation, Tolerances, VerificationReport,
};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::{BoundParameter, Cli, Command, ConstructArgs, EstimateParameter, Format, Quantity, Recipe, SearchArgs};

/// Largest order for the exact `α`, `ω`, `χ` and `χ_b` searches.
const MAX_ORDER_SEARCH: usize = 24;
/// Largest order for the exact `χ_f` linear program.
const MAX_ORDER_LP: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    VerificationFailed,
    InputError,
    SearchExhausted,
}

impl Status {
    pub fn code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::VerificationFailed => 1,
            Status::InputError => 2,
            Status::SearchExhausted => 3,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::VerificationFailed => "verification-failed",
            Status::InputError => "input-error",
            Status::SearchExhausted => "search-exhausted",
        }
    }
}

pub struct Outcome {
    pub status: Status,
    pub payload: Value,
    pub diagnostic: Option<String>,
}

impl Outcome {
    /// `fields` plus a `"status"` entry matching `status`.
    fn with(status: Status, fields: Value) -> Self {
        let mut map = Map::new();
        map.insert("status".into(), Value::from(status.name()));
        if let Value::Object(rest) = fields {
            map.extend(rest);
        }
        Outcome {
            status,
            payload: Value::Object(map),
            diagnostic: None,
        }
    }

    pub fn error(status: Status, message: String) -> Self {
        let mut out = Outcome::with(status, json!({ "error": message }));
        out.diagnostic = Some(message);
        out
    }
}

/// A failure carrying the exit status it maps to.
struct Failure(Status, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Unverified { .. } => Status::VerificationFailed,
            Error::BetaSearchExhausted { .. } => Status::SearchExhausted,
            _ => Status::InputError,
        };
        Failure(status, e.to_string())
    }
}

fn input(msg: impl Into<String>) -> Failure {
    Failure(Status::InputError, msg.into())
}

type Run<T = Outcome> = Result<T, Failure>;

pub fn run(cli: &Cli) -> Outcome {
    let format = match cli.format {
        Format::EdgeListJson => GraphFormat::EdgeListJson,
        Format::Graph6 => GraphFormat::Graph6,
    };
    let tol = Tolerances::default();
    let result = match &cli.command {
        Command::Verify { cert, graph } => verify(cert, graph.as_deref(), format, &tol),
        Command::Construct(args) => construct(args, format, &tol),
        Command::Bounds {
            parameter,
            graph,
            r,
            search,
        } => read_graph(graph, format)
            .map_err(Failure::from)
            .and_then(|g| bounds(*parameter, &g, *r, search)),
        Command::Estimate {
            parameter,
            graph,
            rmax,
            eps,
            search,
        } => read_graph(graph, format)
            .map_err(Failure::from)
            .and_then(|g| estimate(*parameter, &g, *rmax, *eps, search)),
        Command::Oracle { quantity, graph, b } => read_graph(graph, format)
            .map_err(Failure::from)
            .and_then(|g| oracle(*quantity, &g, *b)),
    };
    result.unwrap_or_else(|Failure(status, msg)| Outcome::error(status, msg))
}

fn read_text(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))
}

fn read_graph(path: &Path, format: GraphFormat) -> Result<Graph, Error> {
    Graph::parse(&read_text(path)?, format)
}

/// A certificate file: a tagged representation or a fit matrix.
enum Input {
    Certificate(Certificate),
    Fit(FitMatrix),
}

fn read_input(path: &Path) -> Run<Input> {
    let text = read_text(path)?;
    let mut value: Value = serde_json::from_str(&text).map_err(|e| input(format!("{}: {e}", path.display())))?;
    // accept the documents `construct` emits as well as bare certificates
    if let Some(inner) = value.get_mut("certificate") {
        value = inner.take();
    }
    let parsed = if value.get("kind").is_some() {
        serde_json::from_value(value).map(Input::Certificate)
    } else {
        serde_json::from_value(value).map(Input::Fit)
    };
    parsed.map_err(|e| input(format!("{}: {e}", path.display())))
}

fn read_subspace(path: &Path) -> Run<SubspaceRepresentation> {
    match read_input(path)? {
        Input::Certificate(Certificate::Subspace(s)) => Ok(s),
        _ => Err(input(format!("{}: expected an osr or fosr certificate", path.display()))),
    }
}

fn read_projective(path: &Path, tol: &Tolerances) -> Run<ProjectiveRepresentation> {
    match read_input(path)? {
        Input::Certificate(Certificate::Projective(p)) => Ok(p),
        Input::Certificate(Certificate::Subspace(s)) => Ok(osr_to_projective(&s, tol)?),
        Input::Fit(_) => Err(input(format!("{}: expected a representation", path.display()))),
    }
}

fn read_fit(path: &Path) -> Run<FitMatrix> {
    match read_input(path)? {
        Input::Fit(f) => Ok(f),
        _ => Err(input(format!("{}: expected a fit matrix", path.display()))),
    }
}

/// `"fit"` when `fm` r-fits its graph, else `"weak-fit"` judged by the
/// weaker pattern; either way the matrix must be PSD.
fn fit_report(fm: &FitMatrix, tol: &Tolerances) -> (&'static str, VerificationReport) {
    let strict = r_fits(fm, tol);
    let (kind, mut report) = if strict.valid { ("fit", strict) } else { ("weak-fit", weakly_r_fits(fm, tol)) };
    if !fm.is_psd(tol) {
        let least = hermitian_eigen(&fm.matrix).map_or(f64::INFINITY, |(v, _)| v.first().copied().unwrap_or(0.0));
        report.valid = false;
        report.violations.push(Violation {
            at: "matrix".into(),
            condition: "not-positive-semidefinite".into(),
            residual: -least,
        });
    }
    (kind, report)
}

fn verify(cert: &Path, graph: Option<&Path>, format: GraphFormat, tol: &Tolerances) -> Run {
    let parsed = read_input(cert)?;
    let expected = graph.map(|p| read_graph(p, format)).transpose()?;
    let (kind, over, mut report) = match &parsed {
        Input::Certificate(c) => (c.kind(), c.graph().clone(), c.verify(tol)),
        Input::Fit(f) => {
            let (kind, report) = fit_report(f, tol);
            (kind, f.graph.clone(), report)
        }
    };
    if expected.is_some_and(|g| g != over) {
        report.valid = false;
        report.violations.push(Violation {
            at: "graph".into(),
            condition: "certificate-graph-differs".into(),
            residual: 1.0,
        });
    }
    let status = if report.valid { Status::Ok } else { Status::VerificationFailed };
    let mut out = Outcome::with(status, json!({ "kind": kind, "report": report }));
    if !report.valid {
        out.diagnostic = Some(format!("{} violation(s)", report.violations.len()));
    }
    Ok(out)
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn need<T: Copy>(v: Option<T>, flag: &str, recipe: Recipe) -> Run<T> {
    v.ok_or_else(|| input(format!("{recipe:?} needs --{flag}")))
}

/// Emits `cert` after re-verifying it; `extra` fields are merged in.
fn emit(cert: Certificate, extra: Value, tol: &Tolerances) -> Run {
    let report = cert.verify(tol);
    emit_checked(to_value(&cert), cert.kind(), report, extra)
}

fn emit_fit(fm: &FitMatrix, extra: Value, tol: &Tolerances) -> Run {
    let (kind, report) = fit_report(fm, tol);
    emit_checked(to_value(fm), kind, report, extra)
}

fn emit_checked(cert: Value, kind: &str, report: VerificationReport, extra: Value) -> Run {
    let status = if report.valid { Status::Ok } else { Status::VerificationFailed };
    let mut fields = json!({ "kind": kind, "certificate": cert, "report": report });
    if let (Value::Object(f), Value::Object(e)) = (&mut fields, extra) {
        f.extend(e);
    }
    Ok(Outcome::with(status, fields))
}

fn construct(args: &ConstructArgs, format: GraphFormat, tol: &Tolerances) -> Run {
    let recipe = args.recipe;
    let arity = match recipe {
        Recipe::FixtureP4Fosr | Recipe::FixtureP4Osr | Recipe::CanonicalFaithful | Recipe::ColoringOsr => 0..=0,
        Recipe::StandardizeClique | Recipe::FosrToFit | Recipe::FitToFosr | Recipe::NormalizeWeakFit => 1..=1,
        Recipe::CombineFold | Recipe::StackUnion | Recipe::GlueCliqueSum | Recipe::UnionCombine => 2..=2,
        Recipe::FaithfulFromPair => 0..=2,
        Recipe::PadDisjoint => 1..=usize::MAX,
    };
    if !arity.contains(&args.cert.len()) {
        return Err(input(format!(
            "{recipe:?} takes {} --cert input(s), got {}",
            if arity.end() == &usize::MAX { format!("{}+", arity.start()) } else { format!("{}", arity.end()) },
            args.cert.len()
        )));
    }
    let graph = || -> Run<Graph> {
        let path = args.graph.as_deref().ok_or_else(|| input(format!("{recipe:?} needs --graph")))?;
        Ok(read_graph(path, format)?)
    };
    let clique = || -> Run<Vec<String>> {
        args.clique.clone().ok_or_else(|| input(format!("{recipe:?} needs --clique")))
    };
    let sub = |i: usize| read_subspace(&args.cert[i]);
    let none = Value::Object(Map::new());
    match recipe {
        Recipe::CombineFold => emit(Certificate::Subspace(combine_fold(&sub(0)?, &sub(1)?, tol)?), none, tol),
        Recipe::PadDisjoint => {
            let parts = (0..args.cert.len()).map(sub).collect::<Run<Vec<_>>>()?;
            emit(Certificate::Subspace(pad_disjoint_union(&parts, tol)?), none, tol)
        }
        Recipe::StackUnion => emit(Certificate::Subspace(stack_union(&sub(0)?, &sub(1)?, &graph()?, tol)?), none, tol),
        Recipe::StandardizeClique => emit(
            Certificate::Subspace(standardize_clique(&sub(0)?, &clique()?, tol)?),
            none,
            tol,
        ),
        Recipe::GlueCliqueSum => {
            let (a, b) = (sub(0)?, sub(1)?);
            let clique = match &args.clique {
                Some(c) => c.clone(),
                None => a.graph.labels().iter().filter(|l| b.graph.contains(l)).cloned().collect(),
            };
            emit(Certificate::Subspace(glue_clique_sum(&a, &b, &clique, tol)?), none, tol)
        }
        Recipe::ColoringOsr => {
            let g = graph()?;
            guard(&g, MAX_ORDER_SEARCH, "coloring")?;
            let r = need(args.r, "r", recipe)?;
            let col = if args.b == 1 { chi(&g).1 } else { chi_b(&g, args.b).1 };
            let palette = col.palette;
            emit(
                Certificate::Subspace(coloring_to_osr(&g, &col, r)?),
                json!({ "palette": palette, "fold": args.b }),
                tol,
            )
        }
        Recipe::FaithfulFromPair => faithful_pair(args, graph, tol),
        Recipe::FixtureP4Fosr => emit(Certificate::Subspace(fixture_p4_fosr(need(args.r, "r", recipe)?)?), none, tol),
        Recipe::FixtureP4Osr => emit(Certificate::Subspace(fixture_p4_osr(need(args.r, "r", recipe)?)?), none, tol),
        Recipe::CanonicalFaithful => emit(Certificate::Subspace(canonical_faithful_rep(&graph()?)), none, tol),
        Recipe::FosrToFit => emit_fit(&fosr_to_fit(&sub(0)?, tol)?, none, tol),
        Recipe::FitToFosr => emit(Certificate::Subspace(fit_to_fosr(&read_fit(&args.cert[0])?, tol)?), none, tol),
        Recipe::NormalizeWeakFit => {
            let fm = read_fit(&args.cert[0])?;
            weakly_r_fits(&fm, tol).into_result("weak fit")?;
            emit_fit(&normalize_weak_fit(&fm, tol)?, none, tol)
        }
        Recipe::UnionCombine => {
            let seed = need(args.seed, "seed", recipe)?;
            let (a1, a2) = (read_fit(&args.cert[0])?, read_fit(&args.cert[1])?);
            let g = match &args.graph {
                Some(p) => read_graph(p, format)?,
                None => Graph::union(&a1.graph, &a2.graph),
            };
            let u = union_combine(&a1, &a2, &g, seed, tol)?;
            emit_fit(&u.fit, json!({ "beta": u.beta, "attempts": u.attempts }), tol)
        }
    }
}

/// From two certificates (complement representation, then an `r = 1`
/// faithful one) or, with `--graph`, from the best complement OSR at `--r`
/// and the `r = 1` faithful witness found by the bounds engine.
fn faithful_pair(args: &ConstructArgs, graph: impl Fn() -> Run<Graph>, tol: &Tolerances) -> Run {
    let eps = need(args.eps, "eps", Recipe::FaithfulFromPair)?;
    let (p, rf) = match args.cert.len() {
        2 => (read_projective(&args.cert[0], tol)?, read_projective(&args.cert[1], tol)?),
        0 => {
            let g = graph()?;
            let seed = need(args.seed, "seed", Recipe::FaithfulFromPair)?;
            let r = args.r.unwrap_or(1);
            let mut engine = Engine::new(Budget::default(), seed);
            let xi = engine.bounds(&g.complement(), Parameter::XiR, r)?;
            let mr = engine.bounds(&g, Parameter::MrrPlus, 1)?;
            (
                osr_to_projective(&xi.upper.witness.certificate, tol)?,
                osr_to_projective(&mr.upper.witness.certificate, tol)?,
            )
        }
        n => return Err(input(format!("FaithfulFromPair takes 0 or 2 --cert inputs, got {n}"))),
    };
    let pair = faithful_from_pair(&p, &rf, eps, tol)?;
    emit(
        Certificate::Projective(pair.representation),
        json!({
            "k": pair.k,
            "value": pair.value,
            "target": pair.target,
            "gap": pair.gap,
            "eps": eps,
        }),
        tol,
    )
}

fn budget(search: &SearchArgs) -> Budget {
    Budget {
        restarts: search.restarts,
        iters: search.iters,
        max_search_size: search.max_search_size,
    }
}

fn bounds(parameter: BoundParameter, g: &Graph, r: usize, search: &SearchArgs) -> Run {
    let p = match parameter {
        BoundParameter::XiR => Parameter::XiR,
        BoundParameter::MrrPlus => Parameter::MrrPlus,
    };
    let report = Engine::new(budget(search), search.seed).bounds(g, p, r)?;
    let check = report.verify_witness(&Tolerances::default());
    let status = if check.valid { Status::Ok } else { Status::VerificationFailed };
    let mut out = Outcome::with(status, to_value(&report));
    out.diagnostic = Some(format!(
        "{}_[{r}] in [{}, {}]{}",
        p,
        report.lower.value,
        report.upper.value,
        if report.exact { " (exact)" } else { "" }
    ));
    Ok(out)
}

fn estimate(parameter: EstimateParameter, g: &Graph, rmax: usize, eps: f64, search: &SearchArgs) -> Run {
    let mut engine = Engine::new(budget(search), search.seed);
    let value = match parameter {
        EstimateParameter::XiF => to_value(&engine.ratio_sequence(g, Parameter::XiR, rmax)?),
        EstimateParameter::MrF => to_value(&engine.ratio_sequence(g, Parameter::MrrPlus, rmax)?),
        EstimateParameter::Duality => {
            let d = duality_report(g, rmax, eps, budget(search), search.seed)?;
            if !d.overlap {
                let mut out = Outcome::with(Status::VerificationFailed, to_value(&d));
                out.diagnostic = Some("brackets do not overlap".into());
                return Ok(out);
            }
            to_value(&d)
        }
    };
    Ok(Outcome::with(Status::Ok, value))
}

fn guard(g: &Graph, max: usize, what: &str) -> Run<()> {
    if g.order() > max {
        return Err(input(format!("{what} is limited to graphs with at most {max} vertices (got {})", g.order())));
    }
    Ok(())
}

fn labels(g: &Graph, idx: &[usize]) -> Vec<String> {
    idx.iter().map(|&i| g.label(i).to_string()).collect()
}

fn coloring_by_label(g: &Graph, assignment: &[std::collections::BTreeSet<usize>]) -> BTreeMap<String, Vec<usize>> {
    g.labels()
        .iter()
        .cloned()
        .zip(assignment.iter().map(|s| s.iter().copied().collect()))
        .collect()
}

fn oracle(quantity: Quantity, g: &Graph, b: Option<usize>) -> Run {
    let fields = match quantity {
        Quantity::Alpha => {
            guard(g, MAX_ORDER_SEARCH, "alpha")?;
            json!({ "value": alpha(g), "witness": labels(g, &max_independent_set(g)) })
        }
        Quantity::Omega => {
            guard(g, MAX_ORDER_SEARCH, "omega")?;
            json!({ "value": omega(g), "witness": labels(g, &max_clique(g)) })
        }
        Quantity::Chi => {
            guard(g, MAX_ORDER_SEARCH, "chi")?;
            let (value, col) = chi(g);
            json!({ "value": value, "witness": coloring_by_label(g, &col.assignment) })
        }
        Quantity::ChiB => {
            guard(g, MAX_ORDER_SEARCH, "chi-b")?;
            let b = b.filter(|&b| b >= 1).ok_or_else(|| input("chi-b needs --b ≥ 1"))?;
            let (value, col) = chi_b(g, b);
            json!({ "value": value, "b": b, "witness": coloring_by_label(g, &col.assignment) })
        }
        Quantity::ChiF => {
            guard(g, MAX_ORDER_LP, "chi-f")?;
            let fc = chi_f(g);
            let sets: Vec<Value> = fc
                .set_weights
                .iter()
                .map(|(s, w)| json!({ "set": labels(g, s), "weight": w }))
                .collect();
            let clique: BTreeMap<String, _> = g.labels().iter().cloned().zip(fc.clique_weights.iter()).collect();
            json!({
                "value": fc.value,
                "certified": fc.is_certified(g),
                "coloring": sets,
                "fractional_clique": clique,
            })
        }
        Quantity::Chordal => {
            let c = is_chordal(g);
            json!({
                "value": c.chordal,
                "elimination_ordering": c.elimination_ordering.map(|o| labels(g, &o)),
                "induced_cycle": c.induced_cycle.map(|o| labels(g, &o)),
            })
        }
        Quantity::CutComponents => {
            let mut cuts = Vec::new();
            for comp in g.components() {
                let h = g.induced_by_indices(&comp);
                for v in h.labels() {
                    match h.cut_vertex_components(v) {
                        Ok(pieces) => cuts.push(json!({ "vertex": v, "pieces": pieces })),
                        Err(Error::NotCutVertex(_)) | Err(Error::Disconnected) => {}
                        Err(e) => return Err(e.into()),
                    }
                }
            }
            let components: Vec<Vec<String>> = g.components().iter().map(|c| labels(g, c)).collect();
            json!({ "value": cuts.len(), "components": components, "cut_vertices": cuts })
        }
    };
    Ok(Outcome::with(Status::Ok, fields))
}
