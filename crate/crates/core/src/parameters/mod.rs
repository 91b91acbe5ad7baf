//! Certified bounds on `ξ_[r]` and `mr_[r]⁺`, ratio sequences bracketing
//! `ξ_f` and `mr_f⁺`, and the duality report comparing `ξ_f(Ḡ)` with
//! `mr_f⁺(G)`.
//!
//! Lower bounds come only from proved inequalities. Upper bounds always
//! carry a certificate that passes its verifier.

mod engine;
mod search;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Rational};
use crate::linalg::Tolerances;
use crate::representations::{verify_fosr, verify_osr, SubspaceRepresentation, VerificationReport};

pub use engine::Engine;
pub use search::{heuristic_fit_search, heuristic_osr_search};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Parameter {
    /// `ξ_[r]`: least `d` with a `(d;r)`-OSR.
    #[serde(rename = "xi-r")]
    XiR,
    /// `mr_[r]⁺`: least `d` with a `(d;r)`-FOSR.
    #[serde(rename = "mrr-plus")]
    MrrPlus,
}

impl Parameter {
    pub fn name(self) -> &'static str {
        match self {
            Parameter::XiR => "xi-r",
            Parameter::MrrPlus => "mrr-plus",
        }
    }

    /// Name of the fractional version.
    pub fn fractional_name(self) -> &'static str {
        match self {
            Parameter::XiR => "xi-f",
            Parameter::MrrPlus => "mr-f",
        }
    }
}

impl fmt::Display for Parameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Parameter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "xi-r" => Ok(Parameter::XiR),
            "mrr-plus" => Ok(Parameter::MrrPlus),
            other => Err(Error::InvalidArgument(format!("unknown parameter {other:?}"))),
        }
    }
}

/// Limits for the numerical witness searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub restarts: usize,
    /// Sweeps per restart.
    pub iters: usize,
    /// Searches run only when `n·r` is at most this.
    pub max_search_size: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            restarts: 32,
            iters: 2000,
            max_search_size: 24,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LowerBound {
    pub value: usize,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    pub construction: String,
    pub certificate: SubspaceRepresentation,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct UpperBound {
    pub value: usize,
    pub witness: Witness,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub parameter: Parameter,
    pub graph: Graph,
    pub r: usize,
    pub lower: LowerBound,
    pub upper: UpperBound,
    pub exact: bool,
}

impl BoundReport {
    /// Re-checks the upper-bound witness from scratch: the certificate must
    /// verify as an OSR (for `ξ_[r]`) or FOSR (for `mr_[r]⁺`) of this graph
    /// with this `r` and `d` equal to the reported value.
    pub fn verify_witness(&self, tol: &Tolerances) -> VerificationReport {
        let cert = &self.upper.witness.certificate;
        let mut report = match self.parameter {
            Parameter::XiR => verify_osr(cert, tol),
            Parameter::MrrPlus => verify_fosr(cert, tol),
        };
        let mut mismatch = |what: &str, off: usize| {
            report.violations.push(crate::representations::Violation {
                at: "witness".into(),
                condition: what.into(),
                residual: off as f64,
            });
            report.valid = false;
        };
        if cert.graph != self.graph {
            mismatch("graph", 1);
        }
        if cert.r != self.r {
            mismatch("r", cert.r.abs_diff(self.r));
        }
        if cert.d != self.upper.value {
            mismatch("d", cert.d.abs_diff(self.upper.value));
        }
        report
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RatioEntry {
    pub r: usize,
    pub lower: usize,
    /// Certified upper bound at this `r`.
    pub value: usize,
    /// `value / r`.
    pub ratio: Rational,
    pub certified: bool,
}

/// Per-`r` bounds for a parameter and the bracket they give on its
/// fractional version.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RatioSequence {
    pub parameter: String,
    pub graph: Graph,
    pub entries: Vec<RatioEntry>,
    /// Least certified `value / r`: an upper bound on the fractional value.
    pub best_ratio: Rational,
    /// Smallest `r` attaining `best_ratio`.
    pub best_r: usize,
    /// `ω` for `ξ_f`, `α` for `mr_f⁺`: a lower bound on the fractional value.
    pub lower_bound: Rational,
    /// Intercept of a least-squares fit `ratio ≈ a + b/r` over the upper
    /// half of the entries, clamped into the bracket.
    pub limit_estimate: f64,
}

impl RatioSequence {
    pub fn bracket(&self) -> Bracket {
        Bracket {
            lower: self.lower_bound,
            upper: self.best_ratio,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Bracket {
    pub lower: Rational,
    pub upper: Rational,
}

impl Bracket {
    pub fn contains(&self, x: Rational) -> bool {
        self.lower <= x && x <= self.upper
    }

    pub fn overlaps(&self, other: &Bracket) -> bool {
        self.lower.max(other.lower) <= self.upper.min(other.upper)
    }
}

/// Summary of a faithful representation built from the best complement
/// certificate and an `r = 1` faithful certificate.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FaithfulDemo {
    pub eps: f64,
    /// `d/r` of the complement certificate used.
    pub target: Rational,
    /// Dimension of the `r = 1` faithful certificate.
    pub b: usize,
    pub k: usize,
    pub dimension: usize,
    pub rank: usize,
    pub value: Rational,
    pub gap: Rational,
    pub verified: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DualityReport {
    pub graph: Graph,
    pub complement: Graph,
    pub xi_f_complement: RatioSequence,
    pub mr_f: RatioSequence,
    pub xi_f_bracket: Bracket,
    pub mr_f_bracket: Bracket,
    /// The two true values are equal, so the brackets must overlap.
    pub overlap: bool,
    pub faithful_demo: Option<FaithfulDemo>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CutVertexPiece {
    pub graph: Graph,
    pub lower: usize,
    pub upper: usize,
    pub exact: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CutVertexReport {
    pub vertex: String,
    pub pieces: Vec<CutVertexPiece>,
    pub lower: usize,
    pub upper: usize,
    pub exact: bool,
    pub expression: String,
}

/// Bounds on `ξ_[r](g)` with a fresh [`Engine`].
pub fn xi_r_bounds(g: &Graph, r: usize, budget: Budget, seed: u64) -> Result<BoundReport> {
    Engine::new(budget, seed).bounds(g, Parameter::XiR, r)
}

/// Bounds on `mr_[r]⁺(g)` with a fresh [`Engine`].
pub fn mrr_bounds(g: &Graph, r: usize, budget: Budget, seed: u64) -> Result<BoundReport> {
    Engine::new(budget, seed).bounds(g, Parameter::MrrPlus, r)
}

/// Ratio sequence `ξ_[r](g)/r` for `r = 1..=r_max`.
pub fn xi_f_estimate(g: &Graph, r_max: usize, budget: Budget, seed: u64) -> Result<RatioSequence> {
    Engine::new(budget, seed).ratio_sequence(g, Parameter::XiR, r_max)
}

/// Ratio sequence `mr_[r]⁺(g)/r` for `r = 1..=r_max`.
pub fn mr_f_estimate(g: &Graph, r_max: usize, budget: Budget, seed: u64) -> Result<RatioSequence> {
    Engine::new(budget, seed).ratio_sequence(g, Parameter::MrrPlus, r_max)
}

/// Brackets for `ξ_f(Ḡ)` and `mr_f⁺(G)` side by side.
pub fn duality_report(g: &Graph, r_max: usize, eps: f64, budget: Budget, seed: u64) -> Result<DualityReport> {
    Engine::new(budget, seed).duality_report(g, r_max, eps)
}

/// `mr⁺(g)` as the sum over the pieces at cut-vertex `v`; `r = 1` only.
pub fn cut_vertex_mr_plus(g: &Graph, v: &str, r: usize, budget: Budget, seed: u64) -> Result<CutVertexReport> {
    Engine::new(budget, seed).cut_vertex_mr_plus(g, v, r)
}
