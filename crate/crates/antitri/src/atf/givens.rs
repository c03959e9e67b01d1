//! Givens-based reduction to lower antitriangular form, antidiagonal
//! deflation, and the determinant/rank readers for antitriangular matrices.
//!
//! The reduction sweeps antidiagonals from the top-left corner inward: on the
//! k-th sweep the entries with `row + col = k + 1` (1-based) are annihilated
//! one by one, each by a rotation acting on the two columns to its right, so
//! earlier zeros are never destroyed. After `n - 2` sweeps everything
//! strictly above the main antidiagonal is zero.
//!
//! Deflation takes a singular lower antitriangular matrix whose leading
//! antidiagonal has a zero pair and pushes that whole antidiagonal one level
//! deeper, exposing the rank as the nonzero count of the first antidiagonal
//! that ends up fully populated.

use crate::atf::householder::default_tol;
use crate::atf::AtfResult;
use crate::error::Error;
use crate::matrix::{
    require_lower_antitriangular, skew_symmetrize, validate_skew_input, DenseMatrix,
};
use crate::rotation::{accumulate_rotation, apply_givens_similarity, GivensRotation};

/// Location of the leading nonzero antidiagonal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AntidiagonalProfile {
    pub n: usize,
    /// 1-based index of the first antidiagonal holding entries above `tol`
    /// (1 = main antidiagonal, counted inward); `None` for a zero matrix.
    pub first_nontrivial: Option<usize>,
    /// Entries exceeding `tol` on that antidiagonal.
    pub nonzero_count: usize,
}

/// Scans antidiagonals from the main one inward for the first with any entry
/// above `tol`.
pub fn antidiagonal_profile(m: &DenseMatrix, tol: f64) -> AntidiagonalProfile {
    let n = m.n();
    for k in 1..=n {
        let mut count = 0usize;
        for i in (k - 1)..n {
            let j = n + k - 2 - i;
            if j >= n {
                continue;
            }
            if m.get(i, j).abs() > tol {
                count += 1;
            }
        }
        if count > 0 {
            return AntidiagonalProfile {
                n,
                first_nontrivial: Some(k),
                nonzero_count: count,
            };
        }
    }
    AntidiagonalProfile {
        n,
        first_nontrivial: None,
        nonzero_count: 0,
    }
}

/// Counts entries with magnitude above `tol` on the first antidiagonal that
/// has any; 0 for the zero matrix.
pub fn rank_antitriangular(m: &DenseMatrix, tol: f64) -> usize {
    antidiagonal_profile(m, tol).nonzero_count
}

/// Reduces a skew-symmetric matrix to lower antitriangular form by Givens
/// similarities: `M = Q^T A Q`, `M[i][j] = 0` exactly above the main
/// antidiagonal. Already-zero targets are skipped.
///
/// The rank field counts the entries above [`default_tol`] on the first
/// nontrivial antidiagonal; for singular inputs
/// [`reduce_givens_rank_revealing`] refines it by deflation.
pub fn reduce_givens(a: &DenseMatrix) -> Result<AtfResult, Error> {
    validate_skew_input(a)?;
    let n = a.n();
    let mut m = a.clone();
    skew_symmetrize(&mut m);
    let tol = default_tol(&m);
    let mut q = DenseMatrix::identity(n);

    // 1-based sweep: antidiagonal k holds positions (i, k + 1 - i).
    for k in 2..=n.saturating_sub(1) {
        let mut jr = 1usize;
        while jr < k + 1 - jr {
            let (ti, tj) = (jr - 1, k - jr); // target, 0-based
            let plane = (k - jr, k + 1 - jr); // 0-based plane columns
            let target = m.get(ti, tj);
            if target != 0.0 {
                let partner = m.get(ti, tj + 1);
                let g = GivensRotation::from_pair(plane.0, plane.1, target, partner)?;
                apply_givens_similarity(&mut m, &g)?;
                accumulate_rotation(&mut q, &g)?;
            }
            m.set(ti, tj, 0.0);
            m.set(tj, ti, 0.0);
            jr += 1;
        }
    }

    let rank = rank_antitriangular(&m, tol);
    Ok(AtfResult {
        m,
        q: Some(q),
        rank,
        tol,
        terminated_step: None,
    })
}

/// Outcome of one deflation pass.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeflateStatus {
    /// One antidiagonal was annihilated and pushed inward.
    Deflated,
    /// No-op: the leading antidiagonal is fully nonzero (even length,
    /// nonsingular case).
    FullAntidiagonal,
    /// No-op: nothing above `tol` anywhere.
    ZeroMatrix,
}

/// One deflation pass on a lower antitriangular skew-symmetric matrix.
///
/// Entries on the leading antidiagonal with magnitude `<= tol` are flushed to
/// exact zero first. Starting from the zero pair with the smallest
/// column-row index difference (ties: smaller row), the pass annihilates the
/// antidiagonal inward from the pair and then outward to the corners, after
/// which the whole antidiagonal is exactly zero and the profile sits one
/// level deeper. `q`, when given, accumulates the rotations.
pub fn antidiagonal_deflate(
    m: &mut DenseMatrix,
    mut q: Option<&mut DenseMatrix>,
    tol: f64,
) -> Result<(DeflateStatus, AntidiagonalProfile), Error> {
    if tol < 0.0 {
        return Err(Error::NegativeTolerance(tol));
    }
    require_lower_antitriangular(m)?;
    require_exact_skew(m)?;
    let n = m.n();

    let profile = antidiagonal_profile(m, tol);
    let k = match profile.first_nontrivial {
        None => return Ok((DeflateStatus::ZeroMatrix, profile)),
        Some(k) => k,
    };

    // Flush sub-tolerance entries on antidiagonal k (1-based positions
    // (i, n + k - i), i = k..n).
    for i1 in k..=n {
        let j1 = n + k - i1;
        if j1 < 1 || j1 > n {
            continue;
        }
        let (i0, j0) = (i1 - 1, j1 - 1);
        if m.get(i0, j0).abs() <= tol {
            m.set(i0, j0, 0.0);
            m.set(j0, i0, 0.0);
        }
    }

    // Zero pair with the smallest column - row difference; scanning the
    // upper representatives (i <= j), the difference n + k - 2i decreases
    // with i, so track the best explicitly.
    let mut chosen: Option<(usize, usize)> = None; // (diff, row), 1-based row
    let mut i1 = k;
    while 2 * i1 <= n + k {
        let j1 = n + k - i1;
        let is_zero = i1 == j1 || m.get(i1 - 1, j1 - 1) == 0.0;
        if is_zero {
            let diff = j1 - i1;
            match chosen {
                Some((best, _)) if best <= diff => {}
                _ => chosen = Some((diff, i1)),
            }
        }
        i1 += 1;
    }
    let ell = match chosen {
        None => return Ok((DeflateStatus::FullAntidiagonal, profile)),
        Some((_, row)) => row,
    };
    let jell = n + k - ell;

    // Inward: annihilate (ell + t, jell - t) by the rotation in the plane
    // (jell - t, jell - t + 1), pairing the target with its right neighbour.
    let mut t = 1usize;
    while ell + t < jell - t {
        annihilate(
            m,
            q.as_deref_mut(),
            (ell + t - 1, jell - t - 1),
            (jell - t - 1, jell - t),
        )?;
        t += 1;
    }

    // Outward: annihilate (r, n + k - r) by the rotation in the plane
    // (r, r + 1), pairing the target with the entry one row below.
    for r in (k..ell).rev() {
        annihilate_below(m, q.as_deref_mut(), (r - 1, n + k - r - 1))?;
    }

    // The annihilated antidiagonal is zero up to mirror bookkeeping.
    for i1 in k..=n {
        let j1 = n + k - i1;
        if j1 >= 1 && j1 <= n {
            m.set(i1 - 1, j1 - 1, 0.0);
        }
    }

    let after = antidiagonal_profile(m, tol);
    Ok((DeflateStatus::Deflated, after))
}

/// Rotation in the given column plane annihilating `m[target]` from the
/// right-hand side.
fn annihilate(
    m: &mut DenseMatrix,
    q: Option<&mut DenseMatrix>,
    target: (usize, usize),
    plane: (usize, usize),
) -> Result<(), Error> {
    let (ti, tj) = target;
    let value = m.get(ti, tj);
    if value != 0.0 {
        let partner = m.get(ti, plane.1);
        let g = GivensRotation::from_pair(plane.0, plane.1, value, partner)?;
        apply_givens_similarity(m, &g)?;
        if let Some(q) = q {
            accumulate_rotation(q, &g)?;
        }
    }
    m.set(ti, tj, 0.0);
    m.set(tj, ti, 0.0);
    Ok(())
}

/// Rotation in the row plane `(ti, ti + 1)` annihilating `m[target]` from the
/// left-hand side.
fn annihilate_below(
    m: &mut DenseMatrix,
    q: Option<&mut DenseMatrix>,
    target: (usize, usize),
) -> Result<(), Error> {
    let (ti, tj) = target;
    let value = m.get(ti, tj);
    if value != 0.0 {
        let partner = m.get(ti + 1, tj);
        let g = GivensRotation::from_pair(ti, ti + 1, value, partner)?;
        apply_givens_similarity(m, &g)?;
        if let Some(q) = q {
            accumulate_rotation(q, &g)?;
        }
    }
    m.set(ti, tj, 0.0);
    m.set(tj, ti, 0.0);
    Ok(())
}

/// Iterates deflation passes until the leading antidiagonal is fully nonzero
/// or the matrix is exhausted; returns the detected rank.
pub fn deflate_to_rank(
    m: &mut DenseMatrix,
    mut q: Option<&mut DenseMatrix>,
    tol: f64,
) -> Result<(usize, AntidiagonalProfile), Error> {
    loop {
        let (status, profile) = antidiagonal_deflate(m, q.as_deref_mut(), tol)?;
        match status {
            DeflateStatus::ZeroMatrix => return Ok((0, profile)),
            DeflateStatus::FullAntidiagonal => return Ok((profile.nonzero_count, profile)),
            DeflateStatus::Deflated => {}
        }
    }
}

/// Givens reduction followed by the deflation loop: the returned rank is the
/// detected numerical rank and `m` has its leading antidiagonal fully
/// populated.
pub fn reduce_givens_rank_revealing(a: &DenseMatrix) -> Result<AtfResult, Error> {
    reduce_givens_rank_revealing_with_tol(a, None)
}

pub fn reduce_givens_rank_revealing_with_tol(
    a: &DenseMatrix,
    tol: Option<f64>,
) -> Result<AtfResult, Error> {
    let mut out = reduce_givens(a)?;
    if let Some(t) = tol {
        if t < 0.0 {
            return Err(Error::NegativeTolerance(t));
        }
        out.tol = t;
    }
    let mut q = out.q.take().expect("reduce_givens always accumulates Q");
    let (rank, _) = deflate_to_rank(&mut out.m, Some(&mut q), out.tol)?;
    out.q = Some(q);
    out.rank = rank;
    Ok(out)
}

fn require_exact_skew(m: &DenseMatrix) -> Result<(), Error> {
    let n = m.n();
    for i in 0..n {
        for j in 0..=i {
            if m.get(i, j) != -m.get(j, i) {
                return Err(Error::NotSkewSymmetric {
                    row: i,
                    col: j,
                    violation: (m.get(i, j) + m.get(j, i)).abs(),
                });
            }
        }
    }
    Ok(())
}

/// Determinant of an antitriangular skew-symmetric matrix.
///
/// For even order `n = 2p` it is the product of the squared antidiagonal
/// entries over the first `p` antidiagonal positions; every odd-order
/// skew-symmetric matrix is singular, so the result is exactly 0.
pub fn det_antitriangular(m: &DenseMatrix) -> Result<f64, Error> {
    let lower = require_lower_antitriangular(m);
    if lower.is_err() {
        crate::matrix::require_upper_antitriangular(m)?;
    }
    require_exact_skew(m)?;
    let n = m.n();
    if n % 2 == 1 {
        return Ok(0.0);
    }
    let p = n / 2;
    let mut det = 1.0f64;
    for i in 0..p {
        let v = m.get(i, n - 1 - i);
        det *= v * v;
    }
    Ok(det)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::skew_check;

    fn assert_lower_antitriangular_exact(m: &DenseMatrix) {
        let n = m.n();
        for i in 0..n {
            for j in 0..n {
                if i + j + 2 <= n {
                    assert_eq!(m.get(i, j), 0.0, "nonzero at ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn order_two_is_already_antitriangular() {
        let a = DenseMatrix::from_rows(&[vec![0.0, 2.5], vec![-2.5, 0.0]]).unwrap();
        let out = reduce_givens(&a).unwrap();
        assert_eq!(out.m, a);
        assert_eq!(out.q.unwrap(), DenseMatrix::identity(2));
        assert_eq!(out.rank, 2);
    }

    #[test]
    fn zero_matrix_stays_zero() {
        let a = DenseMatrix::zeros(4);
        let out = reduce_givens(&a).unwrap();
        assert_eq!(out.m, DenseMatrix::zeros(4));
        assert_eq!(out.q.unwrap(), DenseMatrix::identity(4));
        assert_eq!(out.rank, 0);
    }

    #[test]
    fn non_skew_input_is_rejected() {
        let a = DenseMatrix::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        assert!(matches!(
            reduce_givens(&a),
            Err(Error::NotSkewSymmetric { .. })
        ));
    }

    #[test]
    fn five_by_five_reduction_shape_and_similarity() {
        let a = DenseMatrix::from_fn(5, |i, j| {
            if i == j {
                0.0
            } else {
                let v = ((1 + i.min(j) * 5 + i.max(j)) as f64).sin();
                if i < j {
                    v
                } else {
                    -v
                }
            }
        });
        let out = reduce_givens(&a).unwrap();
        assert_lower_antitriangular_exact(&out.m);
        assert!(skew_check(&out.m, 0.0).ok);
        let n = 5.0;
        let rec = out.reconstruction_residual(&a).unwrap();
        assert!(rec <= 50.0 * n * f64::EPSILON * a.frobenius_norm());
        let orth = out.orthogonality_residual().unwrap();
        assert!(orth <= 50.0 * n * f64::EPSILON);
    }

    #[test]
    fn deflation_of_order_three_corner() {
        // m13 = 1 and mirror, everything else zero: rank 2.
        let mut m = DenseMatrix::zeros(3);
        m.set(0, 2, 1.0);
        m.set(2, 0, -1.0);
        let mut q = DenseMatrix::identity(3);
        let (status, profile) = antidiagonal_deflate(&mut m, Some(&mut q), 0.0).unwrap();
        assert_eq!(status, DeflateStatus::Deflated);
        assert_eq!(profile.first_nontrivial, Some(2));
        assert_eq!(profile.nonzero_count, 2);
        // All mass on the second antidiagonal, i.e. the trailing 2x2 block.
        for i in 0..3 {
            for j in 0..3 {
                if !((i == 1 && j == 2) || (i == 2 && j == 1)) {
                    assert_eq!(m.get(i, j), 0.0);
                }
            }
        }
        assert!((m.get(1, 2).abs() - 1.0).abs() <= 8.0 * f64::EPSILON);
    }

    #[test]
    fn deflation_of_zero_matrix_is_a_noop() {
        let mut m = DenseMatrix::zeros(4);
        let (status, profile) = antidiagonal_deflate(&mut m, None, 0.0).unwrap();
        assert_eq!(status, DeflateStatus::ZeroMatrix);
        assert_eq!(profile.nonzero_count, 0);
        assert_eq!(m, DenseMatrix::zeros(4));
    }

    #[test]
    fn deflation_even_order_with_zero_middle_pair() {
        // Lower antitriangular order 4 with (2,3)-pair zero (1-based) and
        // nonzero corners: one pass must clear the main antidiagonal.
        let mut m = DenseMatrix::zeros(4);
        m.set(0, 3, 1.5);
        m.set(3, 0, -1.5);
        m.set(1, 3, 0.4);
        m.set(3, 1, -0.4);
        m.set(2, 3, -0.3);
        m.set(3, 2, 0.3);
        let a = m.clone();
        let mut q = DenseMatrix::identity(4);
        let (status, profile) = antidiagonal_deflate(&mut m, Some(&mut q), 0.0).unwrap();
        assert_eq!(status, DeflateStatus::Deflated);
        assert_eq!(profile.first_nontrivial, Some(2));
        for i in 0..4 {
            assert_eq!(m.get(i, 3 - i), 0.0, "main antidiagonal cleared");
        }
        assert_lower_antitriangular_exact(&m);
        // Similarity: Q^T A Q = M.
        let qtaq = q.transposed().matmul(&a).matmul(&q);
        assert!(qtaq.difference_norm(&m) <= 50.0 * 4.0 * f64::EPSILON * a.frobenius_norm());
    }

    #[test]
    fn deflation_noop_on_full_antidiagonal() {
        let mut m = DenseMatrix::zeros(4);
        for (i, v) in [(0usize, 2.0f64), (1, 1.0)] {
            m.set(i, 3 - i, v);
            m.set(3 - i, i, -v);
        }
        let before = m.clone();
        let (status, _) = antidiagonal_deflate(&mut m, None, 0.0).unwrap();
        assert_eq!(status, DeflateStatus::FullAntidiagonal);
        assert_eq!(m, before);
    }

    #[test]
    fn determinant_reads_the_antidiagonal() {
        let mut m = DenseMatrix::zeros(2);
        m.set(0, 1, 3.0);
        m.set(1, 0, -3.0);
        assert_eq!(det_antitriangular(&m).unwrap(), 9.0);
    }

    #[test]
    fn determinant_of_odd_order_is_exactly_zero() {
        for n in [1usize, 3, 5, 7] {
            let mut m = DenseMatrix::zeros(n);
            for i in 0..n / 2 {
                m.set(i, n - 1 - i, 1.0 + i as f64);
                m.set(n - 1 - i, i, -(1.0 + i as f64));
            }
            assert_eq!(det_antitriangular(&m).unwrap(), 0.0);
        }
    }

    #[test]
    fn determinant_rejects_full_matrices() {
        let m = DenseMatrix::from_rows(&[
            vec![0.0, 1.0, 1.0],
            vec![-1.0, 0.0, 1.0],
            vec![-1.0, -1.0, 0.0],
        ])
        .unwrap();
        assert!(matches!(
            det_antitriangular(&m),
            Err(Error::NotAntitriangular { .. })
        ));
    }

    #[test]
    fn rank_reader_basics() {
        assert_eq!(rank_antitriangular(&DenseMatrix::zeros(6), 0.0), 0);
        let mut m = DenseMatrix::zeros(4);
        for i in 0..2 {
            m.set(i, 3 - i, 1.0);
            m.set(3 - i, i, -1.0);
        }
        assert_eq!(rank_antitriangular(&m, 0.0), 4);
    }
}
