//! Cyclic Jacobi eigensolver for Hermitian matrices.
//!
//! Each rotation factors the pivot's phase out so the 2x2 pivot block becomes
//! real symmetric, then applies the classical Jacobi angle. Sweeps run until
//! the off-diagonal Frobenius mass falls to `n * eps * ||H||_F`.

use num_complex::Complex64;

use crate::complex::{validate_hermitian, ComplexDenseMatrix};
use crate::error::Error;

const MAX_SWEEPS: usize = 100;

/// Eigendecomposition `H V = V diag(vals)` with `vals` ascending and `V`
/// unitary (columns are eigenvectors).
pub fn hermitian_eigensolve(
    h: &ComplexDenseMatrix,
) -> Result<(Vec<f64>, ComplexDenseMatrix), Error> {
    validate_hermitian(h)?;
    let n = h.n();

    // Work on the exactly Hermitian part.
    let mut a = ComplexDenseMatrix::from_fn(n, |i, j| {
        if i == j {
            Complex64::new(h.get(i, i).re, 0.0)
        } else {
            0.5 * (h.get(i, j) + h.get(j, i).conj())
        }
    });
    let mut v = ComplexDenseMatrix::identity(n);
    let norm = a.frobenius_norm();
    if norm == 0.0 || n == 1 {
        let vals = (0..n).map(|i| a.get(i, i).re).collect();
        return Ok((vals, v));
    }
    let threshold = n as f64 * f64::EPSILON * norm;

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        if off_diagonal_mass(&a) <= threshold {
            converged = true;
            break;
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }
    if !converged && off_diagonal_mass(&a) > threshold {
        return Err(Error::NoConvergence(MAX_SWEEPS));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        a.get(i, i)
            .re
            .partial_cmp(&a.get(j, j).re)
            .expect("eigenvalues are finite")
    });
    let vals: Vec<f64> = order.iter().map(|&i| a.get(i, i).re).collect();
    let vecs = ComplexDenseMatrix::from_fn(n, |i, j| v.get(i, order[j]));
    Ok((vals, vecs))
}

fn off_diagonal_mass(a: &ComplexDenseMatrix) -> f64 {
    let n = a.n();
    let mut parts = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let z = a.get(i, j);
                parts.push(z.re);
                parts.push(z.im);
            }
        }
    }
    crate::matrix::scaled_norm(parts.into_iter())
}

/// One two-sided unitary rotation annihilating the pivot `(p, q)`.
///
/// With `a_pq = r e^{i phi}`, the transform is `U = D G` where
/// `D = diag(1, e^{-i phi})` on the plane makes the pivot real and `G` is the
/// classical rotation whose tangent solves `t^2 - 2 tau t - 1 = 0`,
/// `tau = (a_qq - a_pp) / (2 r)` (the root of smaller magnitude).
fn rotate(a: &mut ComplexDenseMatrix, v: &mut ComplexDenseMatrix, p: usize, q: usize) {
    let apq = a.get(p, q);
    let r = apq.norm();
    if r == 0.0 {
        a.set(p, q, Complex64::new(0.0, 0.0));
        a.set(q, p, Complex64::new(0.0, 0.0));
        return;
    }
    let phase = apq / r; // e^{i phi}
    let app = a.get(p, p).re;
    let aqq = a.get(q, q).re;
    let tau = (aqq - app) / (2.0 * r);
    let t = if tau >= 0.0 {
        -1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    let n = a.n();
    let phase_conj = phase.conj();

    // Rows p, q of U* A.
    for col in 0..n {
        let xp = a.get(p, col);
        let xq = a.get(q, col);
        a.set(p, col, c * xp + s * phase * xq);
        a.set(q, col, -s * xp + c * phase * xq);
    }
    // Columns p, q of (U* A) U, and the accumulation V <- V U.
    for row in 0..n {
        let xp = a.get(row, p);
        let xq = a.get(row, q);
        a.set(row, p, c * xp + s * phase_conj * xq);
        a.set(row, q, -s * xp + c * phase_conj * xq);

        let yp = v.get(row, p);
        let yq = v.get(row, q);
        v.set(row, p, c * yp + s * phase_conj * yq);
        v.set(row, q, -s * yp + c * phase_conj * yq);
    }
    a.set(p, q, Complex64::new(0.0, 0.0));
    a.set(q, p, Complex64::new(0.0, 0.0));
    let dp = a.get(p, p);
    a.set(p, p, Complex64::new(dp.re, 0.0));
    let dq = a.get(q, q);
    a.set(q, q, Complex64::new(dq.re, 0.0));
}
