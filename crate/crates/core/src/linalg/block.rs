use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{hermitian_residual, idempotent_residual, rank, CMatrix, Tolerances};

/// A square block-diagonal matrix stored as `(block, repeat)` runs:
/// `B_1 ⊕ … ⊕ B_1 (repeat_1 times) ⊕ B_2 ⊕ …`.
///
/// Products, ranks and residuals are evaluated blockwise, so repeated
/// direct sums never have to be expanded.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockDiagonal {
    runs: Vec<(CMatrix, usize)>,
}

impl BlockDiagonal {
    pub fn dense(m: CMatrix) -> Self {
        BlockDiagonal { runs: vec![(m, 1)] }
    }

    /// Panics unless every block is square.
    pub fn from_runs(runs: Vec<(CMatrix, usize)>) -> Self {
        assert!(runs.iter().all(|(b, _)| b.nrows() == b.ncols()), "blocks must be square");
        BlockDiagonal {
            runs: runs.into_iter().filter(|(_, k)| *k > 0).collect(),
        }
    }

    pub fn runs(&self) -> &[(CMatrix, usize)] {
        &self.runs
    }

    pub fn dim(&self) -> usize {
        self.runs.iter().map(|(b, k)| b.nrows() * k).sum()
    }

    /// Concatenation `self ⊕ other`.
    pub fn direct_sum(&self, other: &BlockDiagonal) -> BlockDiagonal {
        let mut runs = self.runs.clone();
        runs.extend(other.runs.iter().cloned());
        BlockDiagonal { runs }
    }

    /// `self` repeated `k` times along the diagonal.
    pub fn repeat(&self, k: usize) -> BlockDiagonal {
        if let [(b, m)] = self.runs.as_slice() {
            return BlockDiagonal { runs: vec![(b.clone(), m * k)] };
        }
        let runs = (0..k).flat_map(|_| self.runs.iter().cloned()).collect();
        BlockDiagonal { runs }
    }

    pub fn to_dense(&self) -> CMatrix {
        let blocks: Vec<CMatrix> = self
            .runs
            .iter()
            .flat_map(|(b, k)| std::iter::repeat_n(b.clone(), *k))
            .collect();
        super::direct_sum(&blocks)
    }

    pub fn is_dense(&self) -> bool {
        matches!(self.runs.as_slice(), [(_, 1)])
    }

    fn weighted(&self, f: impl Fn(&CMatrix) -> f64) -> f64 {
        self.runs.iter().map(|(b, k)| (*k as f64) * f(b).powi(2)).sum::<f64>().sqrt()
    }

    pub fn norm(&self) -> f64 {
        self.weighted(|b| b.norm())
    }

    pub fn hermitian_residual(&self) -> f64 {
        self.weighted(hermitian_residual)
    }

    pub fn idempotent_residual(&self) -> f64 {
        self.weighted(idempotent_residual)
    }

    pub fn rank(&self, tol: &Tolerances) -> usize {
        self.runs.iter().map(|(b, k)| rank(b, tol) * k).sum()
    }

    fn same_partition(&self, other: &BlockDiagonal) -> bool {
        self.runs.len() == other.runs.len()
            && self
                .runs
                .iter()
                .zip(&other.runs)
                .all(|((a, ka), (b, kb))| a.nrows() == b.nrows() && ka == kb)
    }

    /// `‖self · other‖_F`.
    pub fn product_norm(&self, other: &BlockDiagonal) -> f64 {
        if self.same_partition(other) {
            self.runs
                .iter()
                .zip(&other.runs)
                .map(|((a, k), (b, _))| (*k as f64) * (a.inner() * b.inner()).norm().powi(2))
                .sum::<f64>()
                .sqrt()
        } else {
            (self.to_dense().inner() * other.to_dense().inner()).norm()
        }
    }
}

#[derive(Serialize, Deserialize)]
struct Run {
    matrix: CMatrix,
    repeat: usize,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Encoded {
    Dense(CMatrix),
    Blocks { blocks: Vec<Run> },
}

/// Single dense blocks encode as a plain matrix; structured ones as
/// `{"blocks": [{"matrix": …, "repeat": k}, …]}`.
impl Serialize for BlockDiagonal {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.is_dense() {
            self.runs[0].0.serialize(s)
        } else {
            Encoded::Blocks {
                blocks: self
                    .runs
                    .iter()
                    .map(|(m, k)| Run { matrix: m.clone(), repeat: *k })
                    .collect(),
            }
            .serialize(s)
        }
    }
}

impl<'de> Deserialize<'de> for BlockDiagonal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match Encoded::deserialize(d)? {
            Encoded::Dense(m) => Ok(BlockDiagonal::dense(m)),
            Encoded::Blocks { blocks } => {
                if blocks.iter().any(|r| r.matrix.nrows() != r.matrix.ncols()) {
                    return Err(serde::de::Error::custom("diagonal blocks must be square"));
                }
                Ok(BlockDiagonal::from_runs(
                    blocks.into_iter().map(|r| (r.matrix, r.repeat)).collect(),
                ))
            }
        }
    }
}
