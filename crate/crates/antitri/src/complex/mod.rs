//! Complex dense matrices, inertia, and the block antitriangular form of
//! Hermitian and skew-Hermitian matrices.

mod block;
mod eigen;

pub use block::{block_atf_hermitian, block_atf_skew_hermitian, BlockAtfResult};
pub use eigen::hermitian_eigensolve;

use num_complex::Complex64;

use crate::atf::householder::UNIT_ROUNDOFF;
use crate::error::Error;

/// Dense square complex matrix, row-major storage, zero-based indexing.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexDenseMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl ComplexDenseMatrix {
    pub fn zeros(n: usize) -> Self {
        assert!(n >= 1, "matrix order must be positive");
        ComplexDenseMatrix {
            n,
            data: vec![Complex64::new(0.0, 0.0); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, Complex64::new(1.0, 0.0));
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self, Error> {
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
            for (j, &z) in row.iter().enumerate() {
                if !z.re.is_finite() || !z.im.is_finite() {
                    return Err(Error::NonFinite { row: i, col: j });
                }
                data.push(z);
            }
        }
        Ok(ComplexDenseMatrix { n, data })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        assert!(n >= 1, "matrix order must be positive");
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        ComplexDenseMatrix { n, data }
    }

    /// Embeds a real matrix with zero imaginary parts.
    pub fn from_real(m: &crate::matrix::DenseMatrix) -> Self {
        Self::from_fn(m.n(), |i, j| Complex64::new(m.get(i, j), 0.0))
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.n + j] = v;
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i).conj())
    }

    pub fn matmul(&self, rhs: &ComplexDenseMatrix) -> ComplexDenseMatrix {
        assert_eq!(self.n, rhs.n, "order mismatch in matmul");
        let n = self.n;
        let mut out = ComplexDenseMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let aik = self.get(i, k);
                if aik == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    let cur = out.get(i, j);
                    out.set(i, j, cur + aik * rhs.get(k, j));
                }
            }
        }
        out
    }

    pub fn frobenius_norm(&self) -> f64 {
        crate::matrix::scaled_norm(
            self.data
                .iter()
                .flat_map(|z| [z.re, z.im])
                .collect::<Vec<_>>()
                .into_iter(),
        )
    }

    pub fn difference_norm(&self, rhs: &ComplexDenseMatrix) -> f64 {
        assert_eq!(self.n, rhs.n, "order mismatch in difference_norm");
        crate::matrix::scaled_norm(
            self.data
                .iter()
                .zip(rhs.data.iter())
                .flat_map(|(a, b)| [a.re - b.re, a.im - b.im])
                .collect::<Vec<_>>()
                .into_iter(),
        )
    }

    /// Entrywise multiplication by `i`: `(x + iy) -> (-y + ix)`, exact.
    pub fn times_i(&self) -> Self {
        Self::from_fn(self.n, |i, j| {
            let z = self.get(i, j);
            Complex64::new(-z.im, z.re)
        })
    }

    /// Entrywise multiplication by `-i`: `(x + iy) -> (y - ix)`, exact.
    pub fn times_minus_i(&self) -> Self {
        Self::from_fn(self.n, |i, j| {
            let z = self.get(i, j);
            Complex64::new(z.im, -z.re)
        })
    }

    pub fn max_abs(&self) -> f64 {
        self.data
            .iter()
            .fold(0.0f64, |m, z| m.max(z.re.abs()).max(z.im.abs()))
    }

    /// `||H - H*||_F`.
    pub fn hermitian_violation(&self) -> f64 {
        self.difference_norm(&self.adjoint())
    }

    /// `||A + A*||_F`.
    pub fn skew_hermitian_violation(&self) -> f64 {
        let neg_adj = ComplexDenseMatrix::from_fn(self.n, |i, j| -self.get(j, i).conj());
        self.difference_norm(&neg_adj)
    }
}

/// Eigenvalue location counts. For Hermitian matrices the counts refer to the
/// real axis; for skew-Hermitian ones to the imaginary axis, written
/// `i(n_minus, n_zero, n_plus)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Inertia {
    pub n_minus: usize,
    pub n_zero: usize,
    pub n_plus: usize,
}

impl Inertia {
    pub fn total(&self) -> usize {
        self.n_minus + self.n_zero + self.n_plus
    }
}

impl std::fmt::Display for Inertia {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {})", self.n_minus, self.n_zero, self.n_plus)
    }
}

/// Default zero-eigenvalue tolerance: `n * u * ||H||_F`.
pub fn default_complex_tol(h: &ComplexDenseMatrix) -> f64 {
    h.n() as f64 * UNIT_ROUNDOFF * h.frobenius_norm()
}

pub(crate) fn validate_hermitian(h: &ComplexDenseMatrix) -> Result<(), Error> {
    let tol = 8.0 * h.n() as f64 * f64::EPSILON * h.max_abs() * h.n() as f64;
    let violation = h.hermitian_violation();
    if violation <= tol {
        Ok(())
    } else {
        Err(Error::NotHermitian { violation })
    }
}

pub(crate) fn validate_skew_hermitian(a: &ComplexDenseMatrix) -> Result<(), Error> {
    let tol = 8.0 * a.n() as f64 * f64::EPSILON * a.max_abs() * a.n() as f64;
    let violation = a.skew_hermitian_violation();
    if violation <= tol {
        Ok(())
    } else {
        Err(Error::NotSkewHermitian { violation })
    }
}

/// Counts eigenvalues of a Hermitian matrix below `-tol`, within `tol` of
/// zero, and above `tol`. `tol = None` uses [`default_complex_tol`].
pub fn inertia_hermitian(h: &ComplexDenseMatrix, tol: Option<f64>) -> Result<Inertia, Error> {
    validate_hermitian(h)?;
    let tol = resolve_tol(h, tol)?;
    let (vals, _) = hermitian_eigensolve(h)?;
    Ok(count_inertia(&vals, tol))
}

/// Inertia of a skew-Hermitian matrix along the imaginary axis, computed via
/// the Hermitian matrix `H = iA`: an eigenvalue `mu = i y` of `A` maps to the
/// real eigenvalue `-y` of `H`, so positive-imaginary-axis counts come from
/// the negative eigenvalues of `H` and vice versa.
pub fn inertia_skew_hermitian(a: &ComplexDenseMatrix, tol: Option<f64>) -> Result<Inertia, Error> {
    validate_skew_hermitian(a)?;
    let h = a.times_i();
    let tol = resolve_tol(&h, tol)?;
    let (vals, _) = hermitian_eigensolve(&h)?;
    let herm = count_inertia(&vals, tol);
    Ok(Inertia {
        n_minus: herm.n_plus,
        n_zero: herm.n_zero,
        n_plus: herm.n_minus,
    })
}

pub(crate) fn resolve_tol(h: &ComplexDenseMatrix, tol: Option<f64>) -> Result<f64, Error> {
    match tol {
        Some(t) if t < 0.0 => Err(Error::NegativeTolerance(t)),
        Some(t) => Ok(t),
        None => Ok(default_complex_tol(h)),
    }
}

pub(crate) fn count_inertia(vals: &[f64], tol: f64) -> Inertia {
    let n_minus = vals.iter().filter(|&&v| v < -tol).count();
    let n_plus = vals.iter().filter(|&&v| v > tol).count();
    Inertia {
        n_minus,
        n_zero: vals.len() - n_minus - n_plus,
        n_plus,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn real_skew_plane_has_balanced_inertia() {
        let a = ComplexDenseMatrix::from_rows(&[
            vec![c(0.0, 0.0), c(1.0, 0.0)],
            vec![c(-1.0, 0.0), c(0.0, 0.0)],
        ])
        .unwrap();
        let inertia = inertia_skew_hermitian(&a, None).unwrap();
        assert_eq!(
            inertia,
            Inertia {
                n_minus: 1,
                n_zero: 0,
                n_plus: 1
            }
        );
    }

    #[test]
    fn scaled_imaginary_identity_is_one_sided() {
        let n = 4;
        let a = ComplexDenseMatrix::from_fn(n, |i, j| {
            if i == j {
                c(0.0, 2.5)
            } else {
                c(0.0, 0.0)
            }
        });
        let inertia = inertia_skew_hermitian(&a, None).unwrap();
        assert_eq!(
            inertia,
            Inertia {
                n_minus: 0,
                n_zero: 0,
                n_plus: n
            }
        );
    }

    #[test]
    fn zero_matrix_inertia() {
        let a = ComplexDenseMatrix::zeros(3);
        let inertia = inertia_skew_hermitian(&a, None).unwrap();
        assert_eq!(
            inertia,
            Inertia {
                n_minus: 0,
                n_zero: 3,
                n_plus: 0
            }
        );
    }

    #[test]
    fn hermitian_validation_rejects_general_matrices() {
        let a = ComplexDenseMatrix::from_rows(&[
            vec![c(0.0, 0.0), c(1.0, 0.0)],
            vec![c(0.5, 0.0), c(0.0, 0.0)],
        ])
        .unwrap();
        assert!(matches!(
            inertia_hermitian(&a, None),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn times_i_is_exact_and_hermitianizes_skew() {
        let a = ComplexDenseMatrix::from_rows(&[
            vec![c(0.0, 1.0), c(0.25, -0.5)],
            vec![c(-0.25, -0.5), c(0.0, -2.0)],
        ])
        .unwrap();
        assert_eq!(a.skew_hermitian_violation(), 0.0);
        let h = a.times_i();
        assert_eq!(h.hermitian_violation(), 0.0);
        assert_eq!(h.times_minus_i(), a);
    }
}
