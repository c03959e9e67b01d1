//! Dense square matrices, skew-symmetry utilities and permutations.
//!
//! Everything in this crate indexes rows and columns from zero. A matrix `M`
//! of order `n` is *lower antitriangular* when `M[i][j] = 0` for
//! `i + j <= n - 2` (all zeros strictly above the main antidiagonal) and
//! *upper antitriangular* when `M[i][j] = 0` for `i + j >= n` (all zeros
//! strictly below it). The main antidiagonal is the set `i + j = n - 1`.

use crate::error::Error;

/// Dense square matrix of `f64`, row-major storage.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    n: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    /// Zero matrix of order `n`.
    ///
    /// Panics if `n == 0`; every contract in this crate requires order >= 1.
    pub fn zeros(n: usize) -> Self {
        assert!(n >= 1, "matrix order must be positive");
        DenseMatrix {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    /// Builds a matrix from rows, validating squareness and finiteness.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self, Error> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::EmptyMatrix);
        }
        let mut data = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::RaggedRow {
                    row: i,
                    found: row.len(),
                    expected: n,
                });
            }
            for (j, &x) in row.iter().enumerate() {
                if !x.is_finite() {
                    return Err(Error::NonFinite { row: i, col: j });
                }
                data.push(x);
            }
        }
        Ok(DenseMatrix { n, data })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        assert!(n >= 1, "matrix order must be positive");
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        DenseMatrix { n, data }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.n {
            self.data.swap(a * self.n + j, b * self.n + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.n {
            self.data.swap(i * self.n + a, i * self.n + b);
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0f64, |m, &x| m.max(x.abs()))
    }

    /// Frobenius norm with overflow-guarded scaling.
    pub fn frobenius_norm(&self) -> f64 {
        scaled_norm(self.data.iter().copied())
    }

    /// 2-norm of `column` restricted to rows `row_lo..=row_hi`, scaled to
    /// guard against overflow.
    pub fn column_norm_window(&self, row_lo: usize, row_hi: usize, column: usize) -> f64 {
        debug_assert!(row_lo <= row_hi && row_hi < self.n && column < self.n);
        scaled_norm((row_lo..=row_hi).map(|i| self.get(i, column)))
    }

    pub fn column_norm(&self, column: usize) -> f64 {
        self.column_norm_window(0, self.n - 1, column)
    }

    pub fn max_column_norm(&self) -> f64 {
        (0..self.n)
            .map(|j| self.column_norm(j))
            .fold(0.0f64, f64::max)
    }

    pub fn transposed(&self) -> Self {
        DenseMatrix::from_fn(self.n, |i, j| self.get(j, i))
    }

    /// Plain O(n^3) product; used for residual checks and Q assembly, not in
    /// factorization inner loops.
    pub fn matmul(&self, rhs: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.n, rhs.n, "order mismatch in matmul");
        let n = self.n;
        let mut out = DenseMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let aik = self.get(i, k);
                if aik == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += aik * rhs.get(k, j);
                }
            }
        }
        out
    }

    /// Frobenius norm of `self - rhs`.
    pub fn difference_norm(&self, rhs: &DenseMatrix) -> f64 {
        assert_eq!(self.n, rhs.n, "order mismatch in difference_norm");
        scaled_norm(
            self.data
                .iter()
                .zip(rhs.data.iter())
                .map(|(&a, &b)| a - b),
        )
    }
}

/// sqrt(sum x_i^2) computed as m * sqrt(sum (x_i/m)^2) with m = max |x_i|.
pub(crate) fn scaled_norm(values: impl Iterator<Item = f64> + Clone) -> f64 {
    let m = values.clone().fold(0.0f64, |acc, x| acc.max(x.abs()));
    if m == 0.0 {
        return 0.0;
    }
    let sum: f64 = values.map(|x| (x / m) * (x / m)).sum();
    m * sum.sqrt()
}

/// Outcome of a skew-symmetry scan.
#[derive(Debug, Clone, PartialEq)]
pub struct SkewCheck {
    pub ok: bool,
    /// Position of the worst violation (lower-triangle representative).
    pub row: usize,
    pub col: usize,
    /// Worst `|A(i,j) + A(j,i)|` over all pairs, diagonal included.
    pub violation: f64,
}

/// Checks `max_{i,j} |A(i,j) + A(j,i)| <= tol` and reports the maximizing
/// pair. Pure query: never fails.
pub fn skew_check(a: &DenseMatrix, tol: f64) -> SkewCheck {
    let n = a.n();
    let mut worst = 0.0f64;
    let (mut wi, mut wj) = (0usize, 0usize);
    for i in 0..n {
        for j in 0..=i {
            let v = (a.get(i, j) + a.get(j, i)).abs();
            if v > worst {
                worst = v;
                wi = i;
                wj = j;
            }
        }
    }
    SkewCheck {
        ok: worst <= tol,
        row: wi,
        col: wj,
        violation: worst,
    }
}

/// Replaces `A` by its skew-symmetric part `(A - A^T)/2`; the diagonal is set
/// exactly to zero.
pub fn skew_symmetrize(a: &mut DenseMatrix) {
    let n = a.n();
    skew_symmetrize_window(a, 0, n - 1).expect("full window is always valid");
}

/// Skew-symmetrizes the principal window `lo..=hi` in place.
pub fn skew_symmetrize_window(a: &mut DenseMatrix, lo: usize, hi: usize) -> Result<(), Error> {
    let n = a.n();
    if lo > hi || hi >= n {
        return Err(Error::InvalidWindow { lo, hi, n });
    }
    for i in lo..=hi {
        a.set(i, i, 0.0);
        for j in lo..i {
            let v = 0.5 * (a.get(i, j) - a.get(j, i));
            a.set(i, j, v);
            a.set(j, i, -v);
        }
    }
    Ok(())
}

/// Validates that `a` is skew-symmetric up to roundoff; entry points that
/// require skew input call this before symmetrizing their working copy.
pub(crate) fn validate_skew_input(a: &DenseMatrix) -> Result<(), Error> {
    let tol = 8.0 * a.n() as f64 * f64::EPSILON * a.max_abs();
    let check = skew_check(a, tol);
    if check.ok {
        Ok(())
    } else {
        Err(Error::NotSkewSymmetric {
            row: check.row,
            col: check.col,
            violation: check.violation,
        })
    }
}

/// Exact-zero test for the lower antitriangular pattern (see module docs).
pub(crate) fn require_lower_antitriangular(m: &DenseMatrix) -> Result<(), Error> {
    let n = m.n();
    for i in 0..n {
        for j in 0..n {
            if i + j + 2 <= n && m.get(i, j) != 0.0 {
                return Err(Error::NotAntitriangular {
                    expected: "lower",
                    row: i,
                    col: j,
                });
            }
        }
    }
    Ok(())
}

pub(crate) fn require_upper_antitriangular(m: &DenseMatrix) -> Result<(), Error> {
    let n = m.n();
    for i in 0..n {
        for j in 0..n {
            if i + j >= n && m.get(i, j) != 0.0 {
                return Err(Error::NotAntitriangular {
                    expected: "upper",
                    row: i,
                    col: j,
                });
            }
        }
    }
    Ok(())
}

/// Flips `M` over the main antidiagonal: `M' = J M J` with `J` the exchange
/// permutation. Entries are merely relocated, so the operation is exact, an
/// involution, and maps upper antitriangular matrices to lower ones and back.
pub fn flip_antitriangular(m: &DenseMatrix) -> (DenseMatrix, PermutationVector) {
    let n = m.n();
    let flipped = DenseMatrix::from_fn(n, |i, j| m.get(n - 1 - i, n - 1 - j));
    (flipped, PermutationVector::reversal(n))
}

/// Permutation stored as `map[t] = source index`: column `t` of the
/// permutation matrix `P` is the unit vector `e_{map[t]}`.
#[derive(Debug, Clone, PartialEq)]
pub struct PermutationVector {
    map: Vec<usize>,
}

impl PermutationVector {
    pub fn new(map: Vec<usize>) -> Result<Self, Error> {
        let n = map.len();
        if n == 0 {
            return Err(Error::EmptyMatrix);
        }
        let mut seen = vec![false; n];
        for &s in &map {
            if s >= n {
                return Err(Error::IndexOutOfRange { index: s, n });
            }
            if seen[s] {
                return Err(Error::Validation(format!(
                    "permutation repeats source index {s}"
                )));
            }
            seen[s] = true;
        }
        Ok(PermutationVector { map })
    }

    /// The exchange permutation `[n-1, n-2, ..., 0]`.
    pub fn reversal(n: usize) -> Self {
        PermutationVector {
            map: (0..n).rev().collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.map.len()
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    /// `P^T M P`, computed by index relocation only (no arithmetic).
    pub fn permute_similarity(&self, m: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.n(), m.n(), "order mismatch in permute_similarity");
        DenseMatrix::from_fn(m.n(), |i, j| m.get(self.map[i], self.map[j]))
    }

    /// `P S P^T`, the inverse relocation of [`Self::permute_similarity`].
    pub fn unpermute_similarity(&self, s: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.n(), s.n(), "order mismatch in unpermute_similarity");
        let n = self.n();
        let mut inv = vec![0usize; n];
        for (t, &src) in self.map.iter().enumerate() {
            inv[src] = t;
        }
        DenseMatrix::from_fn(n, |i, j| s.get(inv[i], inv[j]))
    }

    pub fn to_matrix(&self) -> DenseMatrix {
        let n = self.n();
        let mut p = DenseMatrix::zeros(n);
        for (t, &src) in self.map.iter().enumerate() {
            p.set(src, t, 1.0);
        }
        p
    }
}
