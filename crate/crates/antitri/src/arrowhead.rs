//! Multi-arrowhead form of an antitriangular skew-symmetric matrix.
//!
//! A symmetric permutation interleaving indices outward from the middle maps
//! a lower antitriangular matrix to a form whose nonzeros sit only in
//! rows/columns of one parity, nested like arrowheads. For odd orders an
//! extra rotation sweep empties the first row and column.

use crate::error::Error;
use crate::matrix::{require_lower_antitriangular, DenseMatrix, PermutationVector};
use crate::rotation::{accumulate_rotation, apply_givens_similarity, GivensRotation};

/// The interleaving permutation: with 1-based unit vectors,
/// `P = [e_k, e_{k-1}, e_{k+1}, e_{k-2}, e_{k+2}, ..., e_1, e_n]` for
/// `n = 2k - 1` and `P = [e_k, e_{k+1}, e_{k-1}, e_{k+2}, e_{k-2}, ..., e_1,
/// e_n]` for `n = 2k`. Returned zero-based.
pub fn arrowhead_permutation(n: usize) -> Result<PermutationVector, Error> {
    if n < 1 {
        return Err(Error::EmptyMatrix);
    }
    let mut map = Vec::with_capacity(n);
    if n % 2 == 1 {
        let k = (n + 1) / 2;
        map.push(k - 1);
        for t in 1..k {
            map.push(k - t - 1);
            map.push(k + t - 1);
        }
    } else {
        let k = n / 2;
        map.push(k - 1);
        for t in 1..k {
            map.push(k + t - 1);
            map.push(k - t - 1);
        }
        map.push(n - 1);
    }
    PermutationVector::new(map)
}

/// Whether the multi-arrowhead pattern of order `n` admits a nonzero at the
/// zero-based position `(i, j)`: off the diagonal, the larger index must have
/// the parity of `n` when written 1-based (odd rows/columns 3, 5, ... carry
/// the arrowheads for odd `n`; even ones for even `n`).
pub fn arrowhead_pattern_allows(n: usize, i: usize, j: usize) -> bool {
    if i == j {
        return false;
    }
    let hi = i.max(j) + 1; // 1-based
    hi % 2 == n % 2
}

/// Permutes a lower antitriangular skew-symmetric matrix to multi-arrowhead
/// form: `S = P^T M P`, entries relocated with no floating-point arithmetic.
/// `M = P S P^T` reconstructs the input.
pub fn to_multi_arrowhead(m: &DenseMatrix) -> Result<(DenseMatrix, PermutationVector), Error> {
    require_lower_antitriangular(m)?;
    let p = arrowhead_permutation(m.n())?;
    let s = p.permute_similarity(m);
    debug_assert!(pattern_violation(&s).is_none());
    Ok((s, p))
}

fn pattern_violation(s: &DenseMatrix) -> Option<(usize, usize)> {
    let n = s.n();
    for i in 0..n {
        for j in 0..n {
            if !arrowhead_pattern_allows(n, i, j) && s.get(i, j) != 0.0 {
                return Some((i, j));
            }
        }
    }
    None
}

/// Validates the exact multi-arrowhead zero pattern.
pub fn validate_arrowhead(s: &DenseMatrix) -> Result<(), Error> {
    match pattern_violation(s) {
        Some((row, col)) => Err(Error::NotArrowhead { row, col }),
        None => Ok(()),
    }
}

/// Empties the first row and column of an odd-order multi-arrowhead matrix
/// with rotations in the planes `(1, 2), (1, 4), ..., (1, n-1)` (1-based),
/// each annihilating the next first-row arrowhead entry; rows 1 and 2j share
/// their sparsity pattern, so no fill is created. Returns `(S', Q)` with
/// `S' = Q^T S Q`.
pub fn zero_first_row_odd(s: &DenseMatrix) -> Result<(DenseMatrix, DenseMatrix), Error> {
    let n = s.n();
    if n % 2 == 0 {
        return Err(Error::EvenOrderCleanup(n));
    }
    validate_arrowhead(s)?;
    let mut out = s.clone();
    let mut q = DenseMatrix::identity(n);

    // 1-based: plane (1, 2j) annihilates (1, 2j + 1); zero-based: plane
    // (0, 2j - 1) annihilates (0, 2j).
    for j in 1..=(n - 1) / 2 {
        let target = out.get(0, 2 * j);
        if target == 0.0 {
            continue;
        }
        let partner = out.get(2 * j - 1, 2 * j);
        let g = GivensRotation::from_pair(0, 2 * j - 1, target, partner)?;
        apply_givens_similarity(&mut out, &g)?;
        accumulate_rotation(&mut q, &g)?;
        out.set(0, 2 * j, 0.0);
        out.set(2 * j, 0, 0.0);
    }

    // The sweep leaves the first line holding exact zeros only; flush anyway
    // so the contract does not depend on that argument.
    for c in 0..n {
        out.set(0, c, 0.0);
        out.set(c, 0, 0.0);
    }
    Ok((out, q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::skew_check;

    #[test]
    fn permutation_order_five() {
        let p = arrowhead_permutation(5).unwrap();
        // 1-based [3, 2, 4, 1, 5].
        assert_eq!(p.map(), &[2, 1, 3, 0, 4]);
    }

    #[test]
    fn permutation_order_four() {
        let p = arrowhead_permutation(4).unwrap();
        // 1-based [2, 3, 1, 4].
        assert_eq!(p.map(), &[1, 2, 0, 3]);
    }

    #[test]
    fn permutation_order_one() {
        let p = arrowhead_permutation(1).unwrap();
        assert_eq!(p.map(), &[0]);
    }

    fn lower_antitriangular_skew(n: usize, f: impl Fn(usize, usize) -> f64) -> DenseMatrix {
        DenseMatrix::from_fn(n, |i, j| {
            if i == j || i + j + 2 <= n {
                0.0
            } else if i < j {
                f(i, j)
            } else {
                -f(j, i)
            }
        })
    }

    #[test]
    fn even_pattern_matches_permuted_zeros() {
        let m = lower_antitriangular_skew(4, |i, j| (1 + i * 4 + j) as f64);
        let (s, p) = to_multi_arrowhead(&m).unwrap();
        validate_arrowhead(&s).unwrap();
        // Entries merely relocated: multiset equality via sorted bits.
        let mut a: Vec<u64> = (0..16).map(|t| m.get(t / 4, t % 4).to_bits()).collect();
        let mut b: Vec<u64> = (0..16).map(|t| s.get(t / 4, t % 4).to_bits()).collect();
        a.sort_unstable();
        b.sort_unstable();
        assert_eq!(a, b);
        assert_eq!(p.unpermute_similarity(&s), m);
    }

    #[test]
    fn zero_matrix_maps_to_zero() {
        let (s, _) = to_multi_arrowhead(&DenseMatrix::zeros(6)).unwrap();
        assert_eq!(s, DenseMatrix::zeros(6));
    }

    #[test]
    fn full_matrix_is_rejected() {
        let m = DenseMatrix::from_rows(&[
            vec![0.0, 1.0, 1.0],
            vec![-1.0, 0.0, 1.0],
            vec![-1.0, -1.0, 0.0],
        ])
        .unwrap();
        assert!(matches!(
            to_multi_arrowhead(&m),
            Err(Error::NotAntitriangular { .. })
        ));
    }

    #[test]
    fn first_row_cleanup_order_three() {
        // s13 = s23 = 1: a single plane-(1,2) rotation with |c| = |s| =
        // 1/sqrt(2) empties the first row.
        let mut s = DenseMatrix::zeros(3);
        s.set(0, 2, 1.0);
        s.set(2, 0, -1.0);
        s.set(1, 2, 1.0);
        s.set(2, 1, -1.0);
        let (cleaned, q) = zero_first_row_odd(&s).unwrap();
        for c in 0..3 {
            assert_eq!(cleaned.get(0, c), 0.0);
            assert_eq!(cleaned.get(c, 0), 0.0);
        }
        let r = 0.5f64.sqrt();
        assert!((q.get(0, 0).abs() - r).abs() <= 4.0 * f64::EPSILON);
        assert!((q.get(1, 0).abs() - r).abs() <= 4.0 * f64::EPSILON);
        // Similarity preserved.
        let qsq = q.transposed().matmul(&s).matmul(&q);
        assert!(qsq.difference_norm(&cleaned) <= 50.0 * 3.0 * f64::EPSILON * s.frobenius_norm());
    }

    #[test]
    fn cleanup_with_empty_first_row_is_identity() {
        let mut s = DenseMatrix::zeros(5);
        // Arrowhead entries away from row 1 only.
        s.set(1, 2, 0.8);
        s.set(2, 1, -0.8);
        s.set(3, 4, -0.3);
        s.set(4, 3, 0.3);
        validate_arrowhead(&s).unwrap();
        let (cleaned, q) = zero_first_row_odd(&s).unwrap();
        assert_eq!(q, DenseMatrix::identity(5));
        assert_eq!(cleaned, s);
    }

    #[test]
    fn cleanup_rejects_even_order() {
        let s = DenseMatrix::zeros(4);
        assert!(matches!(
            zero_first_row_odd(&s),
            Err(Error::EvenOrderCleanup(4))
        ));
    }

    #[test]
    fn cleanup_preserves_pattern_and_skewness() {
        let m = lower_antitriangular_skew(7, |i, j| ((1 + 3 * i + j) as f64).sin());
        let (s, _) = to_multi_arrowhead(&m).unwrap();
        let (cleaned, q) = zero_first_row_odd(&s).unwrap();
        validate_arrowhead(&cleaned).unwrap();
        assert!(skew_check(&cleaned, 0.0).ok);
        let qsq = q.transposed().matmul(&s).matmul(&q);
        assert!(
            qsq.difference_norm(&cleaned) <= 50.0 * 7.0 * f64::EPSILON * s.frobenius_norm()
        );
    }
}
