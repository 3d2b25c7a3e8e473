//! Exact matrices over the session field, with the inverse computed at
//! construction time for square matrices.

use crate::scalar::Scalar;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum MatrixError {
    #[error("matrix is singular")]
    Singular,
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
}

/// A dense `rows x cols` matrix of exact scalars. For square matrices the
/// inverse is computed by Gauss-Jordan elimination when the matrix is
/// built, so invertibility is a property the object certifies rather
/// than a question answered later.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
    inverse: Option<Vec<Scalar>>,
}

impl FieldMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Scalar>) -> Self {
        assert_eq!(entries.len(), rows * cols);
        let inverse = if rows == cols {
            gauss_jordan_inverse(rows, &entries)
        } else {
            None
        };
        FieldMatrix {
            rows,
            cols,
            entries,
            inverse,
        }
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        assert!(rows.iter().all(|x| x.len() == c));
        FieldMatrix::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        FieldMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Scalar::int(v)).collect())
                .collect(),
        )
    }

    pub fn identity(n: usize) -> Self {
        FieldMatrix::from_fn(n, n, |i, j| {
            if i == j {
                Scalar::one()
            } else {
                Scalar::zero()
            }
        })
    }

    pub fn diagonal(diag: &[Scalar]) -> Self {
        let n = diag.len();
        FieldMatrix::from_fn(n, n, |i, j| {
            if i == j {
                diag[i].clone()
            } else {
                Scalar::zero()
            }
        })
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Scalar) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        FieldMatrix::new(rows, cols, entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// 0-based entry access.
    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn is_invertible(&self) -> bool {
        self.inverse.is_some()
    }

    pub fn inverse(&self) -> Result<FieldMatrix, MatrixError> {
        match &self.inverse {
            Some(inv) => Ok(FieldMatrix::new(self.rows, self.rows, inv.clone())),
            None => Err(MatrixError::Singular),
        }
    }

    pub fn transpose(&self) -> FieldMatrix {
        FieldMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &FieldMatrix) -> FieldMatrix {
        assert_eq!(self.cols, other.rows, "matrix product size mismatch");
        FieldMatrix::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = Scalar::zero();
            for k in 0..self.cols {
                acc = &acc + &(self.get(i, k) * other.get(k, j));
            }
            acc
        })
    }

    pub fn scale(&self, c: &Scalar) -> FieldMatrix {
        FieldMatrix::from_fn(self.rows, self.cols, |i, j| c * self.get(i, j))
    }

    pub fn sub(&self, other: &FieldMatrix) -> FieldMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        FieldMatrix::from_fn(self.rows, self.cols, |i, j| {
            self.get(i, j) - other.get(i, j)
        })
    }

    pub fn trace(&self) -> Scalar {
        assert!(self.is_square());
        let mut acc = Scalar::zero();
        for i in 0..self.rows {
            acc = &acc + self.get(i, i);
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|c| c.is_zero())
    }

    /// Entries as row vectors, the shape the noncommutative-matrix
    /// scalar actions expect.
    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).clone()).collect())
            .collect()
    }

    /// `n`-th power of a square matrix.
    pub fn pow(&self, n: usize) -> FieldMatrix {
        assert!(self.is_square());
        let mut out = FieldMatrix::identity(self.rows);
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }
}

fn gauss_jordan_inverse(n: usize, entries: &[Scalar]) -> Option<Vec<Scalar>> {
    // augmented [M | I], reduced to [I | M^{-1}]
    let mut a: Vec<Vec<Scalar>> = (0..n)
        .map(|i| {
            let mut row: Vec<Scalar> = entries[i * n..(i + 1) * n].to_vec();
            for j in 0..n {
                row.push(if i == j { Scalar::one() } else { Scalar::zero() });
            }
            row
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        let inv = a[col][col].inv().ok()?;
        for x in a[col].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for c in 0..2 * n {
                let delta = &factor * &a[col][c];
                a[r][c] = &a[r][c] - &delta;
            }
        }
    }
    let mut out = Vec::with_capacity(n * n);
    for row in a {
        out.extend(row.into_iter().skip(n));
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::root_of_unity;

    #[test]
    fn inverse_of_integer_matrix() {
        let m = FieldMatrix::from_int_rows(&[&[1, 2], &[3, 5]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), FieldMatrix::identity(2));
        assert_eq!(inv.mul(&m), FieldMatrix::identity(2));
    }

    #[test]
    fn singular_matrix_has_no_inverse() {
        let m = FieldMatrix::from_int_rows(&[&[1, 2], &[2, 4]]);
        assert!(!m.is_invertible());
        assert!(m.inverse().is_err());
    }

    #[test]
    fn cyclotomic_inverse() {
        let xi = root_of_unity(5, 1);
        let m = FieldMatrix::diagonal(&[xi.clone(), Scalar::one(), xi.inv().unwrap()]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), FieldMatrix::identity(3));
    }

    #[test]
    fn transpose_and_trace() {
        let m = FieldMatrix::from_int_rows(&[&[1, 2], &[3, 4]]);
        assert_eq!(m.transpose().get(0, 1), &Scalar::int(3));
        assert_eq!(m.trace(), Scalar::int(5));
    }

    #[test]
    fn pow_matches_repeated_mul() {
        let m = FieldMatrix::from_int_rows(&[&[1, 1], &[0, 1]]);
        assert_eq!(m.pow(3).get(0, 1), &Scalar::int(3));
        assert_eq!(m.pow(0), FieldMatrix::identity(2));
    }
}
