use nalgebra::{Cholesky, DMatrix};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::{verify_faithful_projective, verify_projective, ProjectiveRepresentation, SubspaceRepresentation};
use crate::error::{Error, Result};
use crate::graph::{generate, Graph, GraphKind, Rational};
use crate::linalg::{c, hermitian_eigen, CMatrix, Subspace, Tolerances, C64};

/// `(n;1)`-FOSR from the Gram factorization of `I + t·Adj` with
/// `t = 1 / (2·max(1, λ_max(Adj)))`, which is positive definite with unit
/// diagonal and nonzero off-diagonal entries exactly on the edges.
pub fn canonical_faithful_rep(g: &Graph) -> SubspaceRepresentation {
    let n = g.order();
    if n == 0 {
        return SubspaceRepresentation::new(g.clone(), 1, 1, Vec::new(), true);
    }
    let adj = CMatrix::from_fn(n, n, |i, j| c(f64::from(u8::from(g.has_edge(i, j))), 0.0));
    let (values, _) = hermitian_eigen(&adj).expect("square");
    let top = values.last().copied().unwrap_or(0.0);
    let t = 1.0 / (2.0 * top.max(1.0));
    let a = DMatrix::<C64>::identity(n, n) + adj.inner() * c(t, 0.0);
    let l = Cholesky::new(a).expect("I + t·Adj is positive definite").unpack();
    // A = L L*, so the columns of L* have Gram matrix A
    let x = l.adjoint();
    let assignment = (0..n)
        .map(|i| Subspace::from_basis_unchecked(CMatrix::from(x.columns(i, 1).into_owned())))
        .collect();
    SubspaceRepresentation::new(g.clone(), n, 1, assignment, true)
}

/// `eps` as the exact rational its shortest decimal form denotes, so that
/// `0.01` means `1/100` rather than the nearest binary fraction.
fn decimal_rational(eps: f64) -> BigRational {
    let text = format!("{eps}");
    let (int, frac) = text.split_once('.').unwrap_or((&text, ""));
    let digits: BigInt = format!("{int}{frac}").parse().expect("decimal digits");
    BigRational::new(digits, BigInt::from(10u32).pow(frac.len() as u32))
}

/// Smallest positive integer `k > |d − r·b| / (r²·eps) − 1/r`, which makes
/// `|d/r − (kd + b)/(kr + 1)| < eps`.
pub fn choose_k(d: usize, r: usize, b: usize, eps: f64) -> Result<usize> {
    if !(eps.is_finite() && eps > 0.0) {
        return Err(Error::InvalidArgument(format!("eps must be positive, got {eps}")));
    }
    if r == 0 || b == 0 || r > d {
        return Err(Error::InvalidArgument(format!("need 1 ≤ r ≤ d and b ≥ 1 (d={d}, r={r}, b={b})")));
    }
    let big = |v: usize| BigRational::from_integer(BigInt::from(v));
    let gap = (big(d) - big(r) * big(b)).abs();
    let bound = gap / (big(r * r) * decimal_rational(eps)) - big(1) / big(r);
    if bound.is_negative() {
        return Ok(1);
    }
    let k: BigInt = bound.floor().to_integer() + 1;
    k.to_usize()
        .ok_or_else(|| Error::InvalidArgument(format!("eps {eps} needs k = {k}, which is too large")))
}

/// Output of [`faithful_from_pair`].
#[derive(Clone, Debug)]
pub struct FaithfulPair {
    pub representation: ProjectiveRepresentation,
    pub k: usize,
    /// `(kd + b) / (kr + 1)`.
    pub value: Rational,
    /// `d / r` of the non-faithful input.
    pub target: Rational,
    /// `|target − value|`, exact.
    pub gap: Rational,
}

/// Faithful `(kd+b)/(kr+1)`-representation of `g` with
/// `Q_u = (P_u ⊕ … ⊕ P_u) ⊕ R_u` (`k` copies), from a `d/r`-representation
/// `p` of the complement and a faithful `b/1`-representation `rf` of `g`.
pub fn faithful_from_pair(
    p: &ProjectiveRepresentation,
    rf: &ProjectiveRepresentation,
    eps: f64,
    tol: &Tolerances,
) -> Result<FaithfulPair> {
    if p.graph != rf.graph.complement() {
        return Err(Error::Mismatch(
            "the first representation is not over the complement of the second's graph".into(),
        ));
    }
    if rf.r != 1 {
        return Err(Error::InvalidArgument(format!("the faithful input must have r = 1, got {}", rf.r)));
    }
    verify_projective(p, tol).into_result("projective representation of the complement")?;
    verify_faithful_projective(rf, tol).into_result("faithful projective representation")?;
    let (d, r, b) = (p.d, p.r, rf.d);
    let k = choose_k(d, r, b, eps)?;
    let overflow = || Error::InvalidArgument(format!("k = {k} overflows the dimension"));
    let dim = k.checked_mul(d).and_then(|v| v.checked_add(b)).ok_or_else(overflow)?;
    let rank = k.checked_mul(r).and_then(|v| v.checked_add(1)).ok_or_else(overflow)?;
    let assignment = rf
        .graph
        .labels()
        .iter()
        .zip(&rf.assignment)
        .map(|(l, ru)| p.projector(l).expect("complement shares labels").repeat(k).direct_sum(ru))
        .collect();
    let representation = ProjectiveRepresentation::new(rf.graph.clone(), dim, rank, assignment, true);
    let as_i64 = |v: usize| i64::try_from(v).map_err(|_| overflow());
    let value = Rational::new(as_i64(dim)?, as_i64(rank)?);
    let target = Rational::new(as_i64(d)?, as_i64(r)?);
    let diff = value.ratio() - target.ratio();
    let gap = Rational::from(if diff < num_rational::Ratio::zero() { -diff } else { diff });
    Ok(FaithfulPair {
        representation,
        k,
        value,
        target,
        gap,
    })
}

fn p4() -> Graph {
    generate(GraphKind::Path, 4).expect("P4")
}

/// `(2r+1; r)`-FOSR of the path `1-2-3-4`.
///
/// For `r ≥ 2`: `S_1 = ⟨e_1..e_r⟩`, `S_2 = ⟨e_2..e_{r+1}⟩`,
/// `S_3 = ⟨e_{r+1}..e_{2r}⟩`, `S_4 = ⟨e_{r+2}..e_{2r+1}⟩`. At `r = 1` those
/// spans give `S_1 ⊥ S_2` on an edge, so the vectors `e_1`, `(e_1+e_2)/√2`,
/// `(e_2+e_3)/√2`, `e_3` are used instead.
pub fn fixture_p4_fosr(r: usize) -> Result<SubspaceRepresentation> {
    if r == 0 {
        return Err(Error::InvalidArgument("r must be positive".into()));
    }
    let d = 2 * r + 1;
    let assignment = if r == 1 {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let v = |e: [f64; 3]| Subspace::from_basis_unchecked(CMatrix::from_real(3, 1, &e));
        vec![v([1.0, 0.0, 0.0]), v([h, h, 0.0]), v([0.0, h, h]), v([0.0, 0.0, 1.0])]
    } else {
        // 0-based coordinate ranges
        vec![
            Subspace::standard(d, 0..r),
            Subspace::standard(d, 1..r + 1),
            Subspace::standard(d, r..2 * r),
            Subspace::standard(d, r + 1..2 * r + 1),
        ]
    };
    Ok(SubspaceRepresentation::new(p4(), d, r, assignment, true))
}

/// `(2r; r)`-OSR of the path `1-2-3-4`: `S_1 = S_3 = ⟨e_1..e_r⟩`,
/// `S_2 = S_4 = ⟨e_{r+1}..e_{2r}⟩`.
pub fn fixture_p4_osr(r: usize) -> Result<SubspaceRepresentation> {
    if r == 0 {
        return Err(Error::InvalidArgument("r must be positive".into()));
    }
    let d = 2 * r;
    let low = Subspace::standard(d, 0..r);
    let high = Subspace::standard(d, r..d);
    Ok(SubspaceRepresentation::new(p4(), d, r, vec![low.clone(), high.clone(), low, high], false))
}
