//! Exact fractional chromatic number.
//!
//! `χ_f(G) = min Σ_I x_I` subject to `Σ_{I ∋ v} x_I ≥ 1`, `x ≥ 0`, over the
//! maximal independent sets `I`. The solver works on the dual (maximum
//! fractional clique: `max Σ y_v`, `Σ_{v ∈ I} y_v ≤ 1`, `y ≥ 0`), whose slack
//! basis is feasible from the start, with a rational tableau simplex under
//! Bland's rule. Primal weights are read off the final reduced costs, so the
//! result carries both a feasible fractional coloring and a matching
//! fractional clique.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use std::collections::BTreeSet;

use super::{Coloring, Graph, Mask, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FractionalColoring {
    pub value: Rational,
    /// Independent sets (vertex indices) with positive weight.
    pub set_weights: Vec<(Vec<usize>, Rational)>,
    /// Optimal fractional clique, one weight per vertex.
    pub clique_weights: Vec<Rational>,
}

impl FractionalColoring {
    /// Checks primal and dual feasibility and equality of the objectives,
    /// which together certify optimality.
    pub fn is_certified(&self, g: &Graph) -> bool {
        let total: num_rational::Ratio<i64> = self.set_weights.iter().map(|(_, w)| w.ratio()).sum();
        let dual_total: num_rational::Ratio<i64> = self.clique_weights.iter().map(|w| w.ratio()).sum();
        let independent = self
            .set_weights
            .iter()
            .all(|(s, _)| s.iter().all(|&a| s.iter().all(|&b| !g.has_edge(a, b))));
        let covered = (0..g.order()).all(|v| {
            let c: num_rational::Ratio<i64> = self
                .set_weights
                .iter()
                .filter(|(s, _)| s.contains(&v))
                .map(|(_, w)| w.ratio())
                .sum();
            c >= num_rational::Ratio::one()
        });
        let packing = maximal_independent_sets(g).into_iter().all(|s| {
            let load: num_rational::Ratio<i64> = (0..g.order())
                .filter(|&v| s >> v & 1 == 1)
                .map(|v| self.clique_weights[v].ratio())
                .sum();
            load <= num_rational::Ratio::one()
        });
        let nonneg = self.set_weights.iter().all(|(_, w)| w.numer() >= 0)
            && self.clique_weights.iter().all(|w| w.numer() >= 0);
        independent
            && covered
            && packing
            && nonneg
            && total == self.value.ratio()
            && dual_total == self.value.ratio()
    }
}

impl FractionalColoring {
    /// A `c:b`-coloring with `b` the common denominator of the set weights
    /// and `c = b·value`: set `I` of weight `a/b` owns `a` fresh colors, and
    /// each vertex keeps the first `b` colors of the sets containing it.
    pub fn to_fold_coloring(&self, g: &Graph) -> Coloring {
        let fold = self
            .set_weights
            .iter()
            .fold(1i64, |l, (_, w)| num_integer::lcm(l, w.denom()));
        let mut assignment = vec![BTreeSet::new(); g.order()];
        let mut next = 1usize;
        for (set, w) in &self.set_weights {
            let count = usize::try_from(w.numer() * (fold / w.denom())).expect("non-negative weight");
            for color in next..next + count {
                for &v in set {
                    if assignment[v].len() < fold as usize {
                        assignment[v].insert(color);
                    }
                }
            }
            next += count;
        }
        Coloring {
            palette: next - 1,
            fold: fold as usize,
            assignment,
        }
    }
}

/// All maximal independent sets, by Bron–Kerbosch with pivoting on the complement.
pub(crate) fn maximal_independent_sets(g: &Graph) -> Vec<Mask> {
    let comp = g.complement().masks();
    let all: Mask = if g.order() == 128 {
        Mask::MAX
    } else {
        (1 << g.order()) - 1
    };
    let mut out = Vec::new();
    if g.order() > 0 {
        bron_kerbosch(&comp, 0, all, 0, &mut out);
    }
    out
}

fn bron_kerbosch(adj: &[Mask], r: Mask, mut p: Mask, mut x: Mask, out: &mut Vec<Mask>) {
    if p == 0 && x == 0 {
        out.push(r);
        return;
    }
    let px = p | x;
    let mut pivot = 0;
    let mut best = 0;
    let mut it = px;
    while it != 0 {
        let u = it.trailing_zeros() as usize;
        it &= it - 1;
        let c = (p & adj[u]).count_ones();
        if c >= best {
            best = c;
            pivot = u;
        }
    }
    let mut cand = p & !adj[pivot];
    while cand != 0 {
        let v = cand.trailing_zeros() as usize;
        cand &= cand - 1;
        let bit: Mask = 1 << v;
        bron_kerbosch(adj, r | bit, p & adj[v], x & adj[v], out);
        p &= !bit;
        x |= bit;
    }
}

fn to_rational(q: &BigRational) -> Rational {
    Rational::new(
        q.numer().to_i64().expect("fits in i64"),
        q.denom().to_i64().expect("fits in i64"),
    )
}

/// Exact fractional chromatic number with primal and dual witnesses.
pub fn chi_f(g: &Graph) -> FractionalColoring {
    let n = g.order();
    let sets = maximal_independent_sets(g);
    let m = sets.len();
    if n == 0 {
        return FractionalColoring {
            value: Rational::integer(0),
            set_weights: Vec::new(),
            clique_weights: Vec::new(),
        };
    }
    let zero = || BigRational::zero();
    let one = || BigRational::one();
    let cols = n + m;
    // rows: constraints for each maximal independent set; columns: y_v then slacks
    let mut t: Vec<Vec<BigRational>> = sets
        .iter()
        .enumerate()
        .map(|(i, &s)| {
            (0..cols)
                .map(|j| {
                    if j < n {
                        if s >> j & 1 == 1 {
                            one()
                        } else {
                            zero()
                        }
                    } else if j - n == i {
                        one()
                    } else {
                        zero()
                    }
                })
                .collect()
        })
        .collect();
    let mut rhs: Vec<BigRational> = vec![one(); m];
    let mut obj: Vec<BigRational> = (0..cols).map(|j| if j < n { one() } else { zero() }).collect();
    let mut basis: Vec<usize> = (n..cols).collect();
    let mut value = zero();

    // Bland's rule: lowest-index improving column, lowest basic index on ratio ties.
    while let Some(s) = (0..cols).find(|&j| obj[j].is_positive()) {
        let mut leave: Option<(usize, BigRational)> = None;
        for i in 0..m {
            if t[i][s].is_positive() {
                let ratio = &rhs[i] / &t[i][s];
                let better = match &leave {
                    None => true,
                    Some((k, best)) => ratio < *best || (ratio == *best && basis[i] < basis[*k]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let (r, _) = leave.expect("the fractional clique LP is bounded");
        let piv = t[r][s].clone();
        for v in t[r].iter_mut() {
            *v /= &piv;
        }
        rhs[r] /= &piv;
        let row = t[r].clone();
        let row_rhs = rhs[r].clone();
        for i in 0..m {
            if i != r && !t[i][s].is_zero() {
                let f = t[i][s].clone();
                for (v, w) in t[i].iter_mut().zip(&row) {
                    *v -= &f * w;
                }
                rhs[i] -= &f * &row_rhs;
            }
        }
        let f = obj[s].clone();
        value += &f * &row_rhs;
        for (v, w) in obj.iter_mut().zip(&row) {
            *v -= &f * w;
        }
        basis[r] = s;
    }

    let mut y = vec![zero(); n];
    for (i, &b) in basis.iter().enumerate() {
        if b < n {
            y[b] = rhs[i].clone();
        }
    }
    let set_weights = sets
        .iter()
        .enumerate()
        .filter_map(|(i, &s)| {
            let x = -obj[n + i].clone();
            (!x.is_zero()).then(|| {
                let members = (0..n).filter(|&v| s >> v & 1 == 1).collect();
                (members, to_rational(&x))
            })
        })
        .collect();
    debug_assert!(value.denom() > &BigInt::zero());
    FractionalColoring {
        value: to_rational(&value),
        set_weights,
        clique_weights: y.iter().map(to_rational).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{chi, generate, GraphKind};

    #[test]
    fn c5_is_five_halves() {
        // The 5 maximal independent sets of C5 are the non-adjacent pairs;
        // each vertex lies in two of them, so weight 1/2 on each covers every
        // vertex and y = 1/2 on each vertex packs them: value 5/2.
        let c5 = generate(GraphKind::Cycle, 5).unwrap();
        assert_eq!(maximal_independent_sets(&c5).len(), 5);
        let f = chi_f(&c5);
        assert_eq!(f.value, Rational::new(5, 2));
        let col = f.to_fold_coloring(&c5);
        assert_eq!((col.palette, col.fold), (5, 2));
        assert!(col.is_valid(&c5));
        assert!(f.is_certified(&c5));
    }

    #[test]
    fn complete_and_path() {
        for n in 1..=6 {
            let k = generate(GraphKind::Complete, n).unwrap();
            assert_eq!(chi_f(&k).value, Rational::integer(n as i64));
        }
        let p4 = generate(GraphKind::Path, 4).unwrap();
        let f = chi_f(&p4);
        assert_eq!(f.value, Rational::integer(2));
        assert!(f.is_certified(&p4));
    }

    #[test]
    fn fractional_below_integral() {
        for n in [5usize, 7, 9] {
            let c = generate(GraphKind::Cycle, n).unwrap();
            let f = chi_f(&c);
            assert!(f.is_certified(&c));
            assert_eq!(f.value, Rational::new(n as i64, (n / 2) as i64));
            assert!(f.value.to_f64() <= chi(&c).0 as f64);
        }
    }
}
