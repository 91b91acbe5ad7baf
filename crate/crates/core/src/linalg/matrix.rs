use std::ops::{Deref, DerefMut};

use nalgebra::{Complex, DMatrix};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub type C64 = Complex<f64>;

#[inline]
pub fn c(re: f64, im: f64) -> C64 {
    Complex::new(re, im)
}

/// A dense complex matrix.
///
/// Serializes as nested row-major arrays of `[re, im]` pairs; every entry
/// must be finite.
#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix(DMatrix<C64>);

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrix(DMatrix::zeros(rows, cols))
    }

    pub fn identity(n: usize) -> Self {
        CMatrix(DMatrix::identity(n, n))
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl FnMut(usize, usize) -> C64) -> Self {
        CMatrix(DMatrix::from_fn(rows, cols, f))
    }

    /// Real matrix from row-major entries.
    pub fn from_real(rows: usize, cols: usize, entries: &[f64]) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count");
        CMatrix::from_fn(rows, cols, |i, j| c(entries[i * cols + j], 0.0))
    }

    /// `d × k` matrix whose columns are the standard basis vectors `e_i` (0-based).
    pub fn standard_columns(d: usize, cols: impl IntoIterator<Item = usize>) -> Self {
        let cols: Vec<usize> = cols.into_iter().collect();
        CMatrix::from_fn(d, cols.len(), |i, j| {
            if cols[j] == i {
                c(1.0, 0.0)
            } else {
                c(0.0, 0.0)
            }
        })
    }

    pub fn inner(&self) -> &DMatrix<C64> {
        &self.0
    }

    pub fn into_inner(self) -> DMatrix<C64> {
        self.0
    }

    /// Row-major `[re, im]` pairs.
    pub fn to_rows(&self) -> Vec<Vec<[f64; 2]>> {
        (0..self.nrows())
            .map(|i| (0..self.ncols()).map(|j| [self[(i, j)].re, self[(i, j)].im]).collect())
            .collect()
    }

    pub fn from_rows(rows: &[Vec<[f64; 2]>]) -> Result<Self, String> {
        let r = rows.len();
        let k = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != k) {
            return Err("ragged matrix rows".into());
        }
        if rows.iter().flatten().flatten().any(|x| !x.is_finite()) {
            return Err("non-finite matrix entry".into());
        }
        Ok(CMatrix::from_fn(r, k, |i, j| c(rows[i][j][0], rows[i][j][1])))
    }

    /// Largest absolute entry-wise difference.
    pub fn max_abs_diff(&self, other: &CMatrix) -> f64 {
        (self.inner() - other.inner()).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

impl From<DMatrix<C64>> for CMatrix {
    fn from(m: DMatrix<C64>) -> Self {
        CMatrix(m)
    }
}

impl Deref for CMatrix {
    type Target = DMatrix<C64>;

    fn deref(&self) -> &Self::Target {
        &self.0
    }
}

impl DerefMut for CMatrix {
    fn deref_mut(&mut self) -> &mut Self::Target {
        &mut self.0
    }
}

impl Serialize for CMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_rows().serialize(s)
    }
}

impl<'de> Deserialize<'de> for CMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rows = Vec::<Vec<[f64; 2]>>::deserialize(d)?;
        CMatrix::from_rows(&rows).map_err(D::Error::custom)
    }
}
