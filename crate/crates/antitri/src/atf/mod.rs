//! Reduction of skew-symmetric matrices to antitriangular form.
//!
//! Two routes are provided: an antidiagonal-by-antidiagonal Givens sweep
//! ([`givens`]) producing the lower antitriangular form, and a pivoted
//! Householder reduction ([`householder`]) producing the upper antitriangular
//! form with numerical rank detection. Both follow the `M = Q^T A Q`
//! convention, so `A = Q M Q^T`.

pub mod givens;
pub mod householder;

use crate::matrix::DenseMatrix;

/// Result of an antitriangular reduction.
#[derive(Debug, Clone)]
pub struct AtfResult {
    /// The reduced matrix.
    pub m: DenseMatrix,
    /// Accumulated orthogonal factor with `M = Q^T A Q`, when requested.
    pub q: Option<DenseMatrix>,
    /// Detected rank (see the producing routine for its exact reading).
    pub rank: usize,
    /// Tolerance that governed rank decisions.
    pub tol: f64,
    /// 1-based step at which the reduction terminated early, if it did.
    pub terminated_step: Option<usize>,
}

impl AtfResult {
    /// `||Q M Q^T - A||_F`, or `None` when Q was not accumulated.
    pub fn reconstruction_residual(&self, a: &DenseMatrix) -> Option<f64> {
        let q = self.q.as_ref()?;
        let qmqt = q.matmul(&self.m).matmul(&q.transposed());
        Some(qmqt.difference_norm(a))
    }

    /// `||Q^T Q - I||_F`, or `None` when Q was not accumulated.
    pub fn orthogonality_residual(&self) -> Option<f64> {
        let q = self.q.as_ref()?;
        let qtq = q.transposed().matmul(q);
        Some(qtq.difference_norm(&DenseMatrix::identity(q.n())))
    }
}

/// One pivoting decision of the Householder path.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PivotRecord {
    /// 1-based step number.
    pub step: usize,
    /// Zero-based index of the selected pivot column.
    pub imax: usize,
    /// Whether a row/column swap was performed.
    pub swapped: bool,
}
