//! Matrices over tensor products of presented algebras.
//!
//! The matrix-of-generators style presentations (multiplicative matrices,
//! comatrix coactions, defining relations of the form `M N = I`) are far
//! easier to state at the matrix level, so this small layer provides just
//! enough matrix algebra over [`TensorElem`] entries to write them down.

use super::tensor::TensorElem;
use super::PresRef;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct NcMatrix {
    factors: Vec<PresRef>,
    rows: usize,
    cols: usize,
    entries: Vec<TensorElem>, // row-major
}

impl NcMatrix {
    pub fn zero(factors: Vec<PresRef>, rows: usize, cols: usize) -> Self {
        let entries = vec![TensorElem::zero(factors.clone()); rows * cols];
        NcMatrix {
            factors,
            rows,
            cols,
            entries,
        }
    }

    pub fn identity(factors: Vec<PresRef>, n: usize) -> Self {
        let mut m = NcMatrix::zero(factors.clone(), n, n);
        for i in 0..n {
            *m.entry_mut(i, i) = TensorElem::unit(factors.clone());
        }
        m
    }

    /// Builds from a function of (row, col).
    pub fn from_fn(
        factors: Vec<PresRef>,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> TensorElem,
    ) -> Self {
        let mut m = NcMatrix::zero(factors, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                let e = f(i, j);
                assert!(
                    e.same_factors(&TensorElem::zero(m.factors.clone())),
                    "entry ({}, {}) has a different factor list",
                    i,
                    j
                );
                *m.entry_mut(i, j) = e;
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn factors(&self) -> &[PresRef] {
        &self.factors
    }

    pub fn entry(&self, i: usize, j: usize) -> &TensorElem {
        assert!(i < self.rows && j < self.cols);
        &self.entries[i * self.cols + j]
    }

    pub fn entry_mut(&mut self, i: usize, j: usize) -> &mut TensorElem {
        assert!(i < self.rows && j < self.cols);
        &mut self.entries[i * self.cols + j]
    }

    pub fn transpose(&self) -> NcMatrix {
        NcMatrix::from_fn(self.factors.clone(), self.cols, self.rows, |i, j| {
            self.entry(j, i).clone()
        })
    }

    /// Ordinary matrix product; entries multiply with [`TensorElem::tensor_mul`].
    pub fn mat_mul(&self, other: &NcMatrix) -> NcMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        NcMatrix::from_fn(self.factors.clone(), self.rows, other.cols, |i, j| {
            let mut acc = TensorElem::zero(self.factors.clone());
            for k in 0..self.cols {
                acc = acc.add(&self.entry(i, k).tensor_mul(other.entry(k, j)));
            }
            acc
        })
    }

    pub fn add(&self, other: &NcMatrix) -> NcMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        NcMatrix::from_fn(self.factors.clone(), self.rows, self.cols, |i, j| {
            self.entry(i, j).add(other.entry(i, j))
        })
    }

    pub fn sub(&self, other: &NcMatrix) -> NcMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        NcMatrix::from_fn(self.factors.clone(), self.rows, self.cols, |i, j| {
            self.entry(i, j).sub(other.entry(i, j))
        })
    }

    pub fn scale(&self, c: &Scalar) -> NcMatrix {
        NcMatrix::from_fn(self.factors.clone(), self.rows, self.cols, |i, j| {
            self.entry(i, j).scale(c)
        })
    }

    /// Left-multiplies by a matrix of scalars.
    pub fn scalar_mul_left(&self, s: &[Vec<Scalar>]) -> NcMatrix {
        let srows = s.len();
        assert!(s.iter().all(|r| r.len() == self.rows), "dimension mismatch");
        NcMatrix::from_fn(self.factors.clone(), srows, self.cols, |i, j| {
            let mut acc = TensorElem::zero(self.factors.clone());
            for k in 0..self.rows {
                acc = acc.add(&self.entry(k, j).scale(&s[i][k]));
            }
            acc
        })
    }

    /// Right-multiplies by a matrix of scalars.
    pub fn scalar_mul_right(&self, s: &[Vec<Scalar>]) -> NcMatrix {
        assert_eq!(s.len(), self.cols, "dimension mismatch");
        let scols = s[0].len();
        assert!(s.iter().all(|r| r.len() == scols));
        NcMatrix::from_fn(self.factors.clone(), self.rows, scols, |i, j| {
            let mut acc = TensorElem::zero(self.factors.clone());
            for k in 0..self.cols {
                acc = acc.add(&self.entry(i, k).scale(&s[k][j]));
            }
            acc
        })
    }

    /// The entries of `self - other`, flattened row-major; stating a matrix
    /// identity `self = other` means all of these vanish.
    pub fn difference_entries(&self, other: &NcMatrix) -> Vec<TensorElem> {
        let d = self.sub(other);
        d.entries
    }

    pub fn entries(&self) -> impl Iterator<Item = &TensorElem> {
        self.entries.iter()
    }
}
