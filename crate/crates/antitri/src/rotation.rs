//! Givens plane rotations and their two-sided application.
//!
//! The rotation in the plane `(i, j)`, `i < j`, is the identity except at the
//! crossings of rows/columns `i` and `j`, where it equals
//!
//! ```text
//!     [ c  -s ]
//!     [ s   c ]
//! ```
//!
//! Throughout the crate the similarity convention is `M = Q^T A Q`, so a
//! rotation `G` is applied as `A <- G^T A G` and accumulated as `Q <- Q G`.

use crate::error::Error;
use crate::matrix::DenseMatrix;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GivensRotation {
    i: usize,
    j: usize,
    c: f64,
    s: f64,
}

impl GivensRotation {
    /// Builds a rotation from raw coefficients, validating `i < j` and
    /// `c^2 + s^2 = 1` within `4 eps`.
    pub fn new(i: usize, j: usize, c: f64, s: f64) -> Result<Self, Error> {
        if i >= j {
            return Err(Error::InvalidWindow { lo: i, hi: j, n: 0 });
        }
        let unit = c * c + s * s;
        if (unit - 1.0).abs() > 4.0 * f64::EPSILON {
            return Err(Error::NotARotation(unit));
        }
        Ok(GivensRotation { i, j, c, s })
    }

    pub fn identity(i: usize, j: usize) -> Result<Self, Error> {
        Self::new(i, j, 1.0, 0.0)
    }

    /// Rotation in the plane `(i, j)` whose coefficients annihilate the
    /// combination `a*c + b*s`; see [`givens_from_pair`].
    pub fn from_pair(i: usize, j: usize, a: f64, b: f64) -> Result<Self, Error> {
        let (c, s) = givens_from_pair(a, b)?;
        Self::new(i, j, c, s)
    }

    #[inline]
    pub fn i(&self) -> usize {
        self.i
    }

    #[inline]
    pub fn j(&self) -> usize {
        self.j
    }

    #[inline]
    pub fn c(&self) -> f64 {
        self.c
    }

    #[inline]
    pub fn s(&self) -> f64 {
        self.s
    }
}

/// Coefficients `(c, s)` with `a*c + b*s = 0`, `c^2 + s^2 = 1` and `s >= 0`.
///
/// `a` is the entry to annihilate, `b` its partner in the neighbouring
/// column. The cotangent choice `cot = -b/a` fixes the angle; the remaining
/// sign freedom is resolved by the `s >= 0` convention. Computed in the
/// algebraically equivalent closed form `s = |a|/h`, `c = -sign(a) b/h` with
/// `h = hypot(a, b)` so large inputs cannot overflow.
pub fn givens_from_pair(a: f64, b: f64) -> Result<(f64, f64), Error> {
    if a == 0.0 && b == 0.0 {
        return Err(Error::DegenerateRotation);
    }
    if a == 0.0 {
        // Nothing to annihilate; the identity keeps the zero in place.
        return Ok((1.0, 0.0));
    }
    let m = a.abs().max(b.abs());
    let (ar, br) = (a / m, b / m);
    let h = m * (ar * ar + br * br).sqrt();
    let s = a.abs() / h;
    let c = -a.signum() * b / h;
    Ok((c, s))
}

/// Two-sided similarity `A <- G^T A G` on a skew-symmetric matrix.
///
/// Only rows/columns `i` and `j` change; skew-symmetry is re-enforced exactly
/// on the touched rows and columns (row values are the canonical side).
pub fn apply_givens_similarity(a: &mut DenseMatrix, g: &GivensRotation) -> Result<(), Error> {
    let n = a.n();
    let (i, j) = (g.i, g.j);
    if j >= n {
        return Err(Error::IndexOutOfRange { index: j, n });
    }
    let (c, s) = (g.c, g.s);

    // Left: rows i, j of G^T A.
    for col in 0..n {
        let xi = a.get(i, col);
        let xj = a.get(j, col);
        a.set(i, col, c * xi + s * xj);
        a.set(j, col, -s * xi + c * xj);
    }
    // Right: columns i, j of (G^T A) G.
    for row in 0..n {
        let xi = a.get(row, i);
        let xj = a.get(row, j);
        a.set(row, i, c * xi + s * xj);
        a.set(row, j, -s * xi + c * xj);
    }
    // Exact skew re-enforcement on the touched lines.
    a.set(i, i, 0.0);
    a.set(j, j, 0.0);
    let v = a.get(i, j);
    a.set(j, i, -v);
    for r in 0..n {
        if r == i || r == j {
            continue;
        }
        let vi = a.get(i, r);
        a.set(r, i, -vi);
        let vj = a.get(j, r);
        a.set(r, j, -vj);
    }
    Ok(())
}

/// Accumulates the rotation into the orthogonal factor: `Q <- Q G`.
pub fn accumulate_rotation(q: &mut DenseMatrix, g: &GivensRotation) -> Result<(), Error> {
    let n = q.n();
    if g.j >= n {
        return Err(Error::IndexOutOfRange { index: g.j, n });
    }
    let (c, s) = (g.c, g.s);
    for row in 0..n {
        let xi = q.get(row, g.i);
        let xj = q.get(row, g.j);
        q.set(row, g.i, c * xi + s * xj);
        q.set(row, g.j, -s * xi + c * xj);
    }
    Ok(())
}

/// Dense n x n matrix of the rotation; for oracle-style checks.
pub fn rotation_matrix(g: &GivensRotation, n: usize) -> DenseMatrix {
    let mut m = DenseMatrix::identity(n);
    m.set(g.i, g.i, g.c);
    m.set(g.i, g.j, -g.s);
    m.set(g.j, g.i, g.s);
    m.set(g.j, g.j, g.c);
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::skew_check;

    #[test]
    fn pair_one_one() {
        let (c, s) = givens_from_pair(1.0, 1.0).unwrap();
        let r = 0.5f64.sqrt();
        assert!((s - r).abs() <= 4.0 * f64::EPSILON);
        assert!((c + r).abs() <= 4.0 * f64::EPSILON);
    }

    #[test]
    fn pair_one_zero_is_a_swap() {
        let (c, s) = givens_from_pair(1.0, 0.0).unwrap();
        assert_eq!(s, 1.0);
        assert_eq!(c, 0.0);
    }

    #[test]
    fn pair_three_four_five() {
        let (c, s) = givens_from_pair(3.0, 4.0).unwrap();
        assert!((c + 0.8).abs() <= 4.0 * f64::EPSILON);
        assert!((s - 0.6).abs() <= 4.0 * f64::EPSILON);
        assert!((3.0 * c + 4.0 * s).abs() <= 4.0 * f64::EPSILON * 5.0);
    }

    #[test]
    fn zero_pair_is_degenerate() {
        assert!(matches!(
            givens_from_pair(0.0, 0.0),
            Err(Error::DegenerateRotation)
        ));
    }

    #[test]
    fn two_by_two_skew_block_is_invariant() {
        // A rotation cannot move the single off-diagonal entry of an order-2
        // skew-symmetric matrix; assert bit-level closeness within 4 eps.
        let mut a =
            DenseMatrix::from_rows(&[vec![0.0, 0.7], vec![-0.7, 0.0]]).unwrap();
        let g = GivensRotation::from_pair(0, 1, 0.3, -1.2).unwrap();
        apply_givens_similarity(&mut a, &g).unwrap();
        assert!((a.get(0, 1) - 0.7).abs() <= 4.0 * f64::EPSILON);
        assert_eq!(a.get(1, 0), -a.get(0, 1));
        assert_eq!(a.get(0, 0), 0.0);
        assert_eq!(a.get(1, 1), 0.0);
    }

    #[test]
    fn identity_rotation_keeps_matrix() {
        let mut a = DenseMatrix::from_rows(&[
            vec![0.0, 1.0, 2.0],
            vec![-1.0, 0.0, 3.0],
            vec![-2.0, -3.0, 0.0],
        ])
        .unwrap();
        let before = a.clone();
        let g = GivensRotation::identity(0, 2).unwrap();
        apply_givens_similarity(&mut a, &g).unwrap();
        assert_eq!(a, before);
    }

    #[test]
    fn three_by_three_against_direct_product() {
        // a12 = 0, a13 = 1, a23 = 1; annihilate (0,2) with the plane (1,2)
        // rotation built from the pair (a13, -a12).
        let a = DenseMatrix::from_rows(&[
            vec![0.0, 0.0, 1.0],
            vec![0.0, 0.0, 1.0],
            vec![-1.0, -1.0, 0.0],
        ])
        .unwrap();
        let g = GivensRotation::from_pair(1, 2, a.get(0, 2), -a.get(0, 1)).unwrap();

        let mut fast = a.clone();
        apply_givens_similarity(&mut fast, &g).unwrap();

        let gm = rotation_matrix(&g, 3);
        let direct = gm.transposed().matmul(&a).matmul(&gm);

        assert!(fast.get(0, 2).abs() <= 4.0 * f64::EPSILON);
        assert!(fast.difference_norm(&direct) <= 16.0 * f64::EPSILON);
        assert!(skew_check(&fast, 0.0).ok);
    }

    #[test]
    fn untouched_entries_are_bitwise_identical() {
        let a = DenseMatrix::from_fn(5, |i, j| {
            if i == j {
                0.0
            } else if i > j {
                -((i * 5 + j) as f64).sin()
            } else {
                ((j * 5 + i) as f64).sin()
            }
        });
        let mut b = a.clone();
        let g = GivensRotation::from_pair(1, 3, 0.4, 0.9).unwrap();
        apply_givens_similarity(&mut b, &g).unwrap();
        for i in 0..5 {
            for j in 0..5 {
                if i != 1 && i != 3 && j != 1 && j != 3 {
                    assert_eq!(a.get(i, j).to_bits(), b.get(i, j).to_bits());
                }
            }
        }
    }

    #[test]
    fn accumulate_single_rotation_is_plane_matrix() {
        let mut q = DenseMatrix::identity(4);
        let g = GivensRotation::from_pair(0, 2, 2.0, -1.0).unwrap();
        accumulate_rotation(&mut q, &g).unwrap();
        assert_eq!(q, rotation_matrix(&g, 4));
    }
}
