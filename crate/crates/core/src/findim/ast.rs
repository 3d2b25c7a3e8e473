//! Artin-Schelter-Tate parameter matrices and the bimultiplicative
//! 2-cocycles they induce on `(Z/mZ)^n`.

use crate::scalar::{root_of_unity, Scalar};

/// `1`-based block index: `blockstar(i, m)` is the ceiling of `i/m`,
/// labelling which of the `n` blocks of size `m` the point `i` lies in.
pub fn blockstar(i: usize, m: usize) -> usize {
    assert!(i >= 1, "1-based index");
    (i + m - 1) / m
}

/// A matrix `p` with `p_ii = 1` and `p_ij p_ji = 1`, all entries `m`-th
/// roots of unity, stored through its exponent grid: `p_ij = xi^{e_ij}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ASTMatrix {
    pub m: u32,
    pub n: usize,
    e: Vec<Vec<i64>>,
}

impl ASTMatrix {
    /// Builds from the strict upper-triangle exponents, row by row
    /// (`e_12, e_13, .., e_1n, e_23, ..`); the diagonal is zero and the
    /// lower triangle is forced by `p_ij p_ji = 1`.
    pub fn from_upper_triangle(m: u32, n: usize, upper: &[i64]) -> Self {
        assert!(m >= 1);
        assert_eq!(upper.len(), n * (n - 1) / 2, "upper triangle size");
        let mm = m as i64;
        let mut e = vec![vec![0i64; n]; n];
        let mut it = upper.iter();
        for i in 0..n {
            for j in i + 1..n {
                let v = it.next().unwrap().rem_euclid(mm);
                e[i][j] = v;
                e[j][i] = (-v).rem_euclid(mm);
            }
        }
        ASTMatrix { m, n, e }
    }

    pub fn trivial(m: u32, n: usize) -> Self {
        ASTMatrix::from_upper_triangle(m, n, &vec![0; n * (n - 1) / 2])
    }

    /// Exponent of `p_ij` (0-based block indices).
    pub fn exponent(&self, i: usize, j: usize) -> i64 {
        self.e[i][j]
    }

    /// `p_ij` as a scalar (0-based block indices).
    pub fn entry(&self, i: usize, j: usize) -> Scalar {
        root_of_unity(self.m, self.e[i][j])
    }
}

/// The bimultiplicative map `sigma_p` on `H = (Z/mZ)^n` determined by
/// `sigma_p(t_i, t_j) = p_ij` for `i < j` and `1` for `i >= j`:
/// on exponent vectors, `sigma_p(t^a, t^b) = prod_{i<j} p_ij^{a_i b_j}`.
#[derive(Debug, Clone)]
pub struct GroupCocycle {
    pub p: ASTMatrix,
}

impl GroupCocycle {
    pub fn new(p: ASTMatrix) -> Self {
        GroupCocycle { p }
    }

    fn pairing_exponent(&self, a: &[i64], b: &[i64]) -> i64 {
        let n = self.p.n;
        assert_eq!(a.len(), n);
        assert_eq!(b.len(), n);
        let mm = self.p.m as i64;
        let mut total = 0i64;
        for i in 0..n {
            for j in i + 1..n {
                total = (total + self.p.exponent(i, j) * (a[i] * b[j]).rem_euclid(mm))
                    .rem_euclid(mm);
            }
        }
        total
    }

    pub fn eval(&self, a: &[i64], b: &[i64]) -> Scalar {
        root_of_unity(self.p.m, self.pairing_exponent(a, b))
    }

    /// The pointwise (= convolution, since grouplikes) inverse.
    pub fn eval_inv(&self, a: &[i64], b: &[i64]) -> Scalar {
        root_of_unity(self.p.m, -self.pairing_exponent(a, b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn blockstar_is_ceiling() {
        assert_eq!(blockstar(1, 2), 1);
        assert_eq!(blockstar(2, 2), 1);
        assert_eq!(blockstar(3, 2), 2);
        assert_eq!(blockstar(4, 2), 2);
        assert_eq!(blockstar(5, 3), 2);
    }

    #[test]
    fn ast_invariants() {
        let p = ASTMatrix::from_upper_triangle(4, 3, &[1, 2, 3]);
        for i in 0..3 {
            assert_eq!(p.exponent(i, i), 0);
            for j in 0..3 {
                assert_eq!((p.exponent(i, j) + p.exponent(j, i)).rem_euclid(4), 0);
            }
        }
        assert!(p.entry(0, 1).is_one() == false);
    }

    #[test]
    fn cocycle_generator_values() {
        let p = ASTMatrix::from_upper_triangle(2, 2, &[1]);
        let s = GroupCocycle::new(p);
        // sigma(t_i, t_i) = 1; sigma(t_1, t_2) = p_12; sigma(t_2, t_1) = 1
        assert!(s.eval(&[1, 0], &[1, 0]).is_one());
        assert_eq!(s.eval(&[1, 0], &[0, 1]), Scalar::int(-1));
        assert!(s.eval(&[0, 1], &[1, 0]).is_one());
    }

    #[test]
    fn bimultiplicative_expansion() {
        // sigma(t_1 t_2, t_2) = sigma(t_1, t_2) sigma(t_2, t_2) = p_12
        let p = ASTMatrix::from_upper_triangle(2, 2, &[1]);
        let s = GroupCocycle::new(p.clone());
        assert_eq!(s.eval(&[1, 1], &[0, 1]), p.entry(0, 1));
    }

    #[test]
    fn inverse_is_pointwise() {
        let p = ASTMatrix::from_upper_triangle(3, 2, &[2]);
        let s = GroupCocycle::new(p);
        for a0 in 0..3 {
            for b1 in 0..3 {
                let a = [a0, 1];
                let b = [2, b1];
                let prod = &s.eval(&a, &b) * &s.eval_inv(&a, &b);
                assert!(prod.is_one());
            }
        }
    }
}
