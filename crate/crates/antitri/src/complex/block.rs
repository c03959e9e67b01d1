//! Block antitriangular form of Hermitian and skew-Hermitian matrices.
//!
//! For a Hermitian `H` with inertia `(n_minus, n_zero, n_plus)`,
//! `n1 = min(n_minus, n_plus)` and `n2 = max - n1`, a unitary `Q` exists with
//!
//! ```text
//!              [ 0   0   0   0  ]      kernel   (n0)
//!   Q* H Q  =  [ 0   0   0   Y* ]      neutral  (n1)
//!              [ 0   0   X   Z* ]      surplus  (n2)
//!              [ 0   Y   Z   W  ]      partners (n1)
//! ```
//!
//! with `Y` nonsingular lower antitriangular, `X` Hermitian definite and `W`
//! Hermitian. `Q` is built from the eigendecomposition: the j-th most
//! negative eigenpair `(lam-, v-)` is matched with the j-th most positive
//! `(lam+, v+)`; the neutral vector `u = alpha v+ + beta v-` with
//! `alpha^2 = -lam- / (lam+ - lam-)`, `beta^2 = lam+ / (lam+ - lam-)`
//! satisfies `u* H u = 0`, and its orthogonal partner
//! `w = beta v+ - alpha v-` closes the pair. Listing the neutral columns in
//! reverse pair order puts the nonzeros of `Y` on its antidiagonal, and this
//! construction makes `Z = 0` and `X`, `W` diagonal.
//!
//! The skew-Hermitian form follows by the exact `-i` transfer from `H = iA`.

use num_complex::Complex64;

use crate::complex::{
    count_inertia, hermitian_eigensolve, resolve_tol, validate_hermitian,
    validate_skew_hermitian, ComplexDenseMatrix, Inertia,
};
use crate::error::Error;

/// Block antitriangular factorization `M = Q* A Q`.
#[derive(Debug, Clone)]
pub struct BlockAtfResult {
    pub m: ComplexDenseMatrix,
    pub q: ComplexDenseMatrix,
    /// Kernel block size (`n_zero`).
    pub n0: usize,
    /// Neutral/partner block size (`min(n_minus, n_plus)`).
    pub n1: usize,
    /// Surplus block size (`max(n_minus, n_plus) - n1`).
    pub n2: usize,
    /// Zero-eigenvalue tolerance used for the inertia split.
    pub tol: f64,
    /// Inertia of the input, in the input's own convention (real axis for
    /// Hermitian, imaginary axis for skew-Hermitian).
    pub inertia: Inertia,
}

impl BlockAtfResult {
    fn block(&self, rows: (usize, usize), cols: (usize, usize)) -> Vec<Vec<Complex64>> {
        (rows.0..rows.1)
            .map(|i| (cols.0..cols.1).map(|j| self.m.get(i, j)).collect())
            .collect()
    }

    /// `Y` (n1 x n1): partner rows against neutral columns.
    pub fn y(&self) -> Vec<Vec<Complex64>> {
        let (n0, n1, n2) = (self.n0, self.n1, self.n2);
        self.block((n0 + n1 + n2, n0 + 2 * n1 + n2), (n0, n0 + n1))
    }

    /// `X` (n2 x n2): the surplus block.
    pub fn x(&self) -> Vec<Vec<Complex64>> {
        let (n0, n1, n2) = (self.n0, self.n1, self.n2);
        self.block((n0 + n1, n0 + n1 + n2), (n0 + n1, n0 + n1 + n2))
    }

    /// `Z` (n1 x n2): partner rows against surplus columns (zero here).
    pub fn z(&self) -> Vec<Vec<Complex64>> {
        let (n0, n1, n2) = (self.n0, self.n1, self.n2);
        self.block((n0 + n1 + n2, n0 + 2 * n1 + n2), (n0 + n1, n0 + n1 + n2))
    }

    /// `W` (n1 x n1): the trailing partner block.
    pub fn w(&self) -> Vec<Vec<Complex64>> {
        let (n0, n1, n2) = (self.n0, self.n1, self.n2);
        self.block(
            (n0 + n1 + n2, n0 + 2 * n1 + n2),
            (n0 + n1 + n2, n0 + 2 * n1 + n2),
        )
    }

    pub fn reconstruction_residual(&self, a: &ComplexDenseMatrix) -> f64 {
        self.q
            .matmul(&self.m)
            .matmul(&self.q.adjoint())
            .difference_norm(a)
    }

    pub fn unitarity_residual(&self) -> f64 {
        self.q
            .adjoint()
            .matmul(&self.q)
            .difference_norm(&ComplexDenseMatrix::identity(self.q.n()))
    }
}

/// Positions `(i, j)` the Theorem-pattern forces to zero (everything in the
/// kernel cross, the neutral diagonal block, and the neutral-surplus
/// couplings).
pub fn block_pattern_is_zero(n0: usize, n1: usize, n2: usize, i: usize, j: usize) -> bool {
    let in_kernel = |t: usize| t < n0;
    let in_neutral = |t: usize| t >= n0 && t < n0 + n1;
    let in_surplus = |t: usize| t >= n0 + n1 && t < n0 + n1 + n2;
    if in_kernel(i) || in_kernel(j) {
        return true;
    }
    if in_neutral(i) && in_neutral(j) {
        return true;
    }
    if (in_neutral(i) && in_surplus(j)) || (in_surplus(i) && in_neutral(j)) {
        return true;
    }
    false
}

/// Block antitriangular form of a Hermitian matrix, `M = Q* H Q`.
pub fn block_atf_hermitian(
    h: &ComplexDenseMatrix,
    tol: Option<f64>,
) -> Result<BlockAtfResult, Error> {
    validate_hermitian(h)?;
    let tol = resolve_tol(h, tol)?;
    let n = h.n();
    let (vals, vecs) = hermitian_eigensolve(h)?;
    let inertia = count_inertia(&vals, tol);
    let (nm, nz, np) = (inertia.n_minus, inertia.n_zero, inertia.n_plus);
    let n1 = nm.min(np);
    let n2 = nm.max(np) - n1;
    let n0 = nz;
    assert_eq!(n0 + 2 * n1 + n2, n, "inertia split must partition the order");

    let col = |j: usize| -> Vec<Complex64> { (0..n).map(|i| vecs.get(i, j)).collect() };

    // Pair j (1-based): j-th most negative vals[j-1] with j-th most positive
    // vals[n-j].
    let mut neutral: Vec<Vec<Complex64>> = Vec::with_capacity(n1);
    let mut partner: Vec<Vec<Complex64>> = Vec::with_capacity(n1);
    for j in 1..=n1 {
        let lam_neg = vals[j - 1];
        let lam_pos = vals[n - j];
        let spread = lam_pos - lam_neg;
        let alpha = (-lam_neg / spread).sqrt();
        let beta = (lam_pos / spread).sqrt();
        let v_neg = col(j - 1);
        let v_pos = col(n - j);
        let u: Vec<Complex64> = v_pos
            .iter()
            .zip(v_neg.iter())
            .map(|(&p, &m)| alpha * p + beta * m)
            .collect();
        let w: Vec<Complex64> = v_pos
            .iter()
            .zip(v_neg.iter())
            .map(|(&p, &m)| beta * p - alpha * m)
            .collect();
        neutral.push(u);
        partner.push(w);
    }

    // Surplus: majority-sign eigenvectors not consumed by the pairing.
    let surplus_idx: Vec<usize> = if np > nm {
        (nm + nz..n - n1).collect()
    } else {
        (n1..nm).collect()
    };
    debug_assert_eq!(surplus_idx.len(), n2);
    let kernel_idx: Vec<usize> = (nm..nm + nz).collect();

    // Q = [kernel | u_{n1}, ..., u_1 | surplus | w_1, ..., w_{n1}].
    let mut columns: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    for &k in &kernel_idx {
        columns.push(col(k));
    }
    for u in neutral.iter().rev() {
        columns.push(u.clone());
    }
    for &k in &surplus_idx {
        columns.push(col(k));
    }
    for w in &partner {
        columns.push(w.clone());
    }
    let q = ComplexDenseMatrix::from_fn(n, |i, j| columns[j][i]);

    let mut m = q.adjoint().matmul(h).matmul(&q);
    for i in 0..n {
        for j in 0..n {
            if block_pattern_is_zero(n0, n1, n2, i, j) {
                m.set(i, j, Complex64::new(0.0, 0.0));
            }
        }
    }

    let result = BlockAtfResult {
        m,
        q,
        n0,
        n1,
        n2,
        tol,
        inertia,
    };

    // The antidiagonal of Y carries sqrt(-lam- * lam+) > tol for each pair.
    for (i, row) in result.y().iter().enumerate() {
        let anti = row[n1 - 1 - i].norm();
        if anti <= tol {
            return Err(Error::Validation(format!(
                "antidiagonal entry {i} of Y fell to {anti:e} (tol {tol:e})"
            )));
        }
    }
    // X definite with the sign of the surplus eigenvalues.
    let x = result.x();
    for (k, row) in x.iter().enumerate() {
        let d = row[k].re;
        let expected_positive = np > nm;
        if (expected_positive && d <= tol) || (!expected_positive && d >= -tol) {
            return Err(Error::Validation(format!(
                "surplus block entry {k} has the wrong sign: {d:e}"
            )));
        }
    }
    Ok(result)
}

/// Block antitriangular form of a skew-Hermitian matrix via the exact `-i`
/// transfer: `M = -i (Q* (iA) Q)` with the same `Q` as the Hermitian case.
///
/// Inputs whose spectrum lies entirely on one half of the imaginary axis
/// (`n_minus = n` or `n_plus = n`, as for `a*i*I`) are rejected.
pub fn block_atf_skew_hermitian(
    a: &ComplexDenseMatrix,
    tol: Option<f64>,
) -> Result<BlockAtfResult, Error> {
    validate_skew_hermitian(a)?;
    let h = a.times_i();
    let tol = resolve_tol(&h, tol)?;
    let n = a.n();

    let herm = block_atf_hermitian(&h, Some(tol))?;
    // Skew inertia swaps the sides (mu = -i * lambda).
    let inertia = Inertia {
        n_minus: herm.inertia.n_plus,
        n_zero: herm.inertia.n_zero,
        n_plus: herm.inertia.n_minus,
    };
    if inertia.n_minus == n || inertia.n_plus == n {
        return Err(Error::OneSidedSpectrum {
            n_minus: inertia.n_minus,
            n_zero: inertia.n_zero,
            n_plus: inertia.n_plus,
        });
    }

    Ok(BlockAtfResult {
        m: herm.m.times_minus_i(),
        q: herm.q,
        n0: herm.n0,
        n1: herm.n1,
        n2: herm.n2,
        tol,
        inertia,
    })
}
