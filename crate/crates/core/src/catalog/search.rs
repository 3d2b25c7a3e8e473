//! Bounded integer-matrix search for parameter pairs with matching
//! trace invariants.

use super::matrix::FieldMatrix;
use crate::scalar::Scalar;

/// Finds an invertible integer matrix of the given size whose trace
/// invariant `tr(M tM^{-1})` equals `target`, scanning entries in
/// `[-bound, bound]` in shells of increasing maximum absolute entry
/// (deterministic order). Only sizes 2 and 3 are supported; that is all
/// the desk-scale examples need.
pub fn search_matching_invariant(
    size: usize,
    target: &Scalar,
    bound: i64,
) -> Option<FieldMatrix> {
    assert!(size == 2 || size == 3, "search supports sizes 2 and 3");
    let cells = size * size;
    for shell in 1..=bound {
        let mut entries = vec![-shell; cells];
        loop {
            if entries.iter().any(|e| e.abs() == shell) {
                if let Some(m) = try_candidate(size, &entries, target) {
                    return Some(m);
                }
            }
            // odometer increment over [-shell, shell]^cells
            let mut pos = 0;
            loop {
                if pos == cells {
                    break;
                }
                entries[pos] += 1;
                if entries[pos] <= shell {
                    break;
                }
                entries[pos] = -shell;
                pos += 1;
            }
            if pos == cells {
                break;
            }
        }
    }
    None
}

/// `tr(M tM^{-1}) = sum_ij M_ij (M^{-1})_ij`, evaluated in integer
/// arithmetic through the adjugate: the sum of `M_ij adj_ij`, divided
/// by the determinant.
fn try_candidate(size: usize, entries: &[i64], target: &Scalar) -> Option<FieldMatrix> {
    let (det, adj) = match size {
        2 => det_adj_2(entries),
        3 => det_adj_3(entries),
        _ => unreachable!(),
    };
    if det == 0 {
        return None;
    }
    let num: i64 = entries.iter().zip(&adj).map(|(a, b)| a * b).sum();
    if &Scalar::rational(num, det) != target {
        return None;
    }
    Some(FieldMatrix::from_rows(
        (0..size)
            .map(|i| {
                (0..size)
                    .map(|j| Scalar::int(entries[i * size + j]))
                    .collect()
            })
            .collect(),
    ))
}

/// Determinant and adjugate (`M^{-1} = adj / det`) of a 2x2 integer
/// matrix, row-major.
fn det_adj_2(e: &[i64]) -> (i64, Vec<i64>) {
    let det = e[0] * e[3] - e[1] * e[2];
    (det, vec![e[3], -e[1], -e[2], e[0]])
}

fn det_adj_3(e: &[i64]) -> (i64, Vec<i64>) {
    let m = |i: usize, j: usize| e[i * 3 + j];
    let cof = |i: usize, j: usize| {
        let (r1, r2) = match i {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        let (c1, c2) = match j {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        let minor = m(r1, c1) * m(r2, c2) - m(r1, c2) * m(r2, c1);
        if (i + j) % 2 == 0 {
            minor
        } else {
            -minor
        }
    };
    let det = m(0, 0) * cof(0, 0) + m(0, 1) * cof(0, 1) + m(0, 2) * cof(0, 2);
    // adj = transpose of the cofactor matrix
    let mut adj = vec![0i64; 9];
    for i in 0..3 {
        for j in 0..3 {
            adj[i * 3 + j] = cof(j, i);
        }
    }
    (det, adj)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::trace_invariant;

    #[test]
    fn identity_is_found_for_its_own_invariant() {
        let m = search_matching_invariant(2, &Scalar::int(2), 1).unwrap();
        assert_eq!(trace_invariant(&m).unwrap(), Scalar::int(2));
    }

    #[test]
    fn gl3_match_for_invariant_two() {
        // the mixed-size pairing: a 3x3 matrix matching the invariant
        // of I_2
        let m = search_matching_invariant(3, &Scalar::int(2), 2).expect("search succeeds");
        assert_eq!(m.rows(), 3);
        assert!(m.is_invertible());
        assert_eq!(trace_invariant(&m).unwrap(), Scalar::int(2));
    }

    #[test]
    fn adjugate_matches_exact_inverse() {
        let e = [2i64, 1, 0, -1, 1, 3, 1, 0, 1];
        let (det, adj) = det_adj_3(&e);
        let m = FieldMatrix::from_rows(
            (0..3)
                .map(|i| (0..3).map(|j| Scalar::int(e[i * 3 + j])).collect())
                .collect(),
        );
        let inv = m.inverse().unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(
                    inv.get(i, j),
                    &Scalar::rational(adj[i * 3 + j], det)
                );
            }
        }
    }
}
