use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::json::BigIntText;
use crate::{IntPoly, PolyError};

/// Dense integer matrix whose rows and columns carry labels (edge or vertex
/// names). Labels default to `0..n` when not given.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: Vec<Vec<BigInt>>,
    ncols: usize,
    pub row_labels: Vec<String>,
    pub col_labels: Vec<String>,
}

fn default_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

impl IntMatrix {
    pub fn new(rows: Vec<Vec<BigInt>>) -> Result<Self, PolyError> {
        let ncols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(PolyError::Dimension("ragged matrix rows".into()));
        }
        let n = rows.len();
        Ok(IntMatrix { rows, ncols, row_labels: default_labels(n), col_labels: default_labels(ncols) })
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Result<Self, PolyError> {
        Self::new(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        IntMatrix {
            rows: vec![vec![BigInt::zero(); ncols]; nrows],
            ncols,
            row_labels: default_labels(nrows),
            col_labels: default_labels(ncols),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.rows[i][i] = BigInt::one();
        }
        m
    }

    pub fn with_labels(mut self, rows: Vec<String>, cols: Vec<String>) -> Result<Self, PolyError> {
        if rows.len() != self.nrows() || cols.len() != self.ncols {
            return Err(PolyError::Dimension("label count does not match matrix shape".into()));
        }
        self.row_labels = rows;
        self.col_labels = cols;
        Ok(self)
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn is_square(&self) -> bool {
        self.nrows() == self.ncols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.rows[r][c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.rows[r][c] = v;
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: &BigInt) {
        self.rows[r][c] += v;
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn to_i64(&self) -> Option<Vec<Vec<i64>>> {
        self.rows.iter().map(|r| r.iter().map(|x| x.to_i64()).collect()).collect()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.rows.iter().flatten().all(|x| !x.is_negative())
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix, PolyError> {
        if self.ncols != other.nrows() {
            return Err(PolyError::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.nrows(),
                self.ncols,
                other.nrows(),
                other.ncols
            )));
        }
        let mut out = IntMatrix::zeros(self.nrows(), other.ncols);
        for i in 0..self.nrows() {
            for k in 0..self.ncols {
                let a = &self.rows[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.ncols {
                    let b = &other.rows[k][j];
                    if !b.is_zero() {
                        out.rows[i][j] += a * b;
                    }
                }
            }
        }
        out.row_labels = self.row_labels.clone();
        out.col_labels = other.col_labels.clone();
        Ok(out)
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut out = IntMatrix::zeros(self.ncols, self.nrows());
        for i in 0..self.nrows() {
            for j in 0..self.ncols {
                out.rows[j][i] = self.rows[i][j].clone();
            }
        }
        out.row_labels = self.col_labels.clone();
        out.col_labels = self.row_labels.clone();
        out
    }

    pub fn trace(&self) -> BigInt {
        (0..self.nrows().min(self.ncols)).map(|i| self.rows[i][i].clone()).sum()
    }

    /// Submatrix on the given row and column index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> IntMatrix {
        IntMatrix {
            rows: rows.iter().map(|&r| cols.iter().map(|&c| self.rows[r][c].clone()).collect()).collect(),
            ncols: cols.len(),
            row_labels: rows.iter().map(|&r| self.row_labels[r].clone()).collect(),
            col_labels: cols.iter().map(|&c| self.col_labels[c].clone()).collect(),
        }
    }

    /// Simultaneous row/column permutation: entry `(i, j)` of the result is
    /// entry `(perm[i], perm[j])` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> IntMatrix {
        self.select(perm, perm)
    }

    pub fn is_permutation(&self) -> bool {
        self.is_square()
            && self.rows.iter().all(|r| {
                r.iter().filter(|x| x.is_one()).count() == 1 && r.iter().filter(|x| !x.is_zero()).count() == 1
            })
            && (0..self.ncols).all(|j| self.rows.iter().filter(|r| !r[j].is_zero()).count() == 1)
    }

    /// Exact `det(tI - M)` via the Faddeev-LeVerrier recursion; every
    /// division is exact for integer input.
    pub fn char_poly(&self) -> Result<IntPoly, PolyError> {
        if !self.is_square() {
            return Err(PolyError::Dimension(format!(
                "characteristic polynomial of a non-square {}x{} matrix",
                self.nrows(),
                self.ncols
            )));
        }
        let n = self.nrows();
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] = BigInt::one();
        // M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k) / k
        let mut mk = IntMatrix::zeros(n, n);
        for k in 1..=n {
            let mut next = self.mul(&mk)?;
            for i in 0..n {
                next.rows[i][i] += &coeffs[n - k + 1];
            }
            mk = next;
            let tr = self.mul(&mk)?.trace();
            let (q, r) = (&tr / BigInt::from(k), &tr % BigInt::from(k));
            debug_assert!(r.is_zero());
            coeffs[n - k] = -q;
        }
        Ok(IntPoly::new(coeffs))
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.nrows(), self.ncols)?;
        for r in &self.rows {
            let cells: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> =
            self.rows.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
        let w = cells.iter().flatten().map(|s| s.len()).max().unwrap_or(1);
        for r in cells {
            let line: Vec<String> = r.iter().map(|s| format!("{s:>w$}")).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    rows: Vec<Vec<BigIntText>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    row_labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    col_labels: Option<Vec<String>>,
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        // small entries are written as plain JSON numbers
        let rows = self.rows.iter().map(|r| r.iter().cloned().map(BigIntText).collect()).collect();
        let repr = MatrixRepr {
            rows,
            row_labels: Some(self.row_labels.clone()),
            col_labels: Some(self.col_labels.clone()),
        };
        if let Some(small) = self.to_i64() {
            #[derive(Serialize)]
            struct Small<'a> {
                rows: Vec<Vec<i64>>,
                row_labels: &'a [String],
                col_labels: &'a [String],
            }
            return Small { rows: small, row_labels: &self.row_labels, col_labels: &self.col_labels }
                .serialize(s);
        }
        repr.serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = MatrixRepr::deserialize(d)?;
        let mut m = IntMatrix::new(r.rows.into_iter().map(|row| row.into_iter().map(|x| x.0).collect()).collect())
            .map_err(serde::de::Error::custom)?;
        if let Some(l) = r.row_labels {
            if l.len() != m.nrows() {
                return Err(serde::de::Error::custom("row_labels length mismatch"));
            }
            m.row_labels = l;
        }
        if let Some(l) = r.col_labels {
            if l.len() != m.ncols() {
                return Err(serde::de::Error::custom("col_labels length mismatch"));
            }
            m.col_labels = l;
        }
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn char_poly_small() {
        let m = IntMatrix::from_i64(&[vec![2, 1], vec![1, 1]]).unwrap();
        assert_eq!(m.char_poly().unwrap(), IntPoly::from_i64(&[1, -3, 1]));
        let id = IntMatrix::identity(3);
        assert_eq!(id.char_poly().unwrap(), IntPoly::from_i64(&[-1, 3, -3, 1]));
        let ff = IntMatrix::from_i64(&[
            vec![1, 0, 0, 1],
            vec![0, 0, 1, 1],
            vec![1, 0, 0, 2],
            vec![0, 1, 0, 0],
        ])
        .unwrap();
        assert_eq!(ff.char_poly().unwrap(), IntPoly::from_i64(&[1, -1, -1, -1, 1]));
    }

    #[test]
    fn non_square_rejected() {
        let m = IntMatrix::from_i64(&[vec![1, 2, 3]]).unwrap();
        assert!(matches!(m.char_poly(), Err(PolyError::Dimension(_))));
        assert!(IntMatrix::from_i64(&[vec![1], vec![1, 2]]).is_err());
    }

    #[test]
    fn empty_matrix() {
        let m = IntMatrix::zeros(0, 0);
        assert_eq!(m.char_poly().unwrap(), IntPoly::one());
    }

    #[test]
    fn json_shape() {
        let m = IntMatrix::from_i64(&[vec![0, 1], vec![1, 0]]).unwrap();
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"{"rows":[[0,1],[1,0]],"row_labels":["0","1"],"col_labels":["0","1"]}"#);
        let back: IntMatrix = serde_json::from_str(r#"{"rows":[[0,"1"],[1,0]]}"#).unwrap();
        assert_eq!(back.get(0, 1), &BigInt::from(1));
    }
}
