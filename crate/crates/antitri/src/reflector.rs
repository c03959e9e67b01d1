//! Householder reflectors `H = I - beta v v^T` with windowed two-sided
//! application.

use crate::error::Error;
use crate::matrix::{scaled_norm, DenseMatrix};

/// Reflector acting on the index window `offset .. offset + v.len()`.
///
/// The generating vector is kept at unit column scale (built from `x/||x||`),
/// so applications stay overflow-safe for any input magnitude.
#[derive(Debug, Clone, PartialEq)]
pub struct HouseholderReflector {
    offset: usize,
    v: Vec<f64>,
    beta: f64,
    head: f64,
}

impl HouseholderReflector {
    /// Reflector mapping `x` to `sigma * ||x|| * e1` with
    /// `sigma = -sign(x[0])` (`sigma = -1` when `x[0] = 0`), the
    /// cancellation-free sign choice.
    pub fn from_column(offset: usize, x: &[f64]) -> Result<Self, Error> {
        let norm = scaled_norm(x.iter().copied());
        if norm == 0.0 {
            return Err(Error::ZeroReflectorColumn);
        }
        // sigma = -sign(x[0]), with sigma = -1 for x[0] = 0.
        let sigma = if x[0] < 0.0 { 1.0 } else { -1.0 };

        let mut v: Vec<f64> = x.iter().map(|&xi| xi / norm).collect();
        // v = w - sigma e1; since sigma = -sign(w0) the head grows to
        // |w0| + 1, never cancelling.
        v[0] -= sigma;
        let vtv: f64 = v.iter().map(|&t| t * t).sum();
        let beta = 2.0 / vtv;
        Ok(HouseholderReflector {
            offset,
            v,
            beta,
            head: sigma * norm,
        })
    }

    /// Rebuilds a reflector from its unit storage form `H = I - v v^T`
    /// (`||v||^2 = 2`), as produced by [`Self::unit_form_vector`].
    pub fn from_unit_form(offset: usize, v: Vec<f64>) -> Self {
        HouseholderReflector {
            offset,
            v,
            beta: 1.0,
            head: 0.0,
        }
    }

    /// The identity map on a window (`beta = 0`).
    pub fn identity(offset: usize, len: usize) -> Self {
        HouseholderReflector {
            offset,
            v: vec![0.0; len],
            beta: 0.0,
            head: 0.0,
        }
    }

    #[inline]
    pub fn offset(&self) -> usize {
        self.offset
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.v.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.v.is_empty()
    }

    #[inline]
    pub fn beta(&self) -> f64 {
        self.beta
    }

    #[inline]
    pub fn v(&self) -> &[f64] {
        &self.v
    }

    /// `sigma * ||x||`: the value the generating column is reflected onto.
    #[inline]
    pub fn head(&self) -> f64 {
        self.head
    }

    /// Generating vector rescaled so that `H = I - u u^T` (`||u||^2 = 2`),
    /// the unit-coefficient storage form.
    pub fn unit_form_vector(&self) -> Vec<f64> {
        let root = self.beta.sqrt();
        self.v.iter().map(|&t| t * root).collect()
    }

    /// Applies the reflector to a bare vector (window-sized); for tests.
    pub fn apply_to_vector(&self, x: &mut [f64]) {
        assert_eq!(x.len(), self.v.len());
        let dot: f64 = self.v.iter().zip(x.iter()).map(|(&vk, &xk)| vk * xk).sum();
        let t = self.beta * dot;
        for (xk, &vk) in x.iter_mut().zip(self.v.iter()) {
            *xk -= t * vk;
        }
    }

    fn check_window(&self, n: usize) -> Result<(), Error> {
        if self.offset + self.v.len() > n {
            return Err(Error::InvalidWindow {
                lo: self.offset,
                hi: self.offset + self.v.len() - 1,
                n,
            });
        }
        Ok(())
    }
}

/// Applies `H` from the left to columns `col_lo..=col_hi`: rows
/// `offset..offset+len` of those columns are mixed, nothing else changes.
pub fn apply_householder_left(
    a: &mut DenseMatrix,
    h: &HouseholderReflector,
    col_lo: usize,
    col_hi: usize,
) -> Result<(), Error> {
    let n = a.n();
    h.check_window(n)?;
    if col_lo > col_hi || col_hi >= n {
        return Err(Error::InvalidWindow {
            lo: col_lo,
            hi: col_hi,
            n,
        });
    }
    if h.beta == 0.0 {
        return Ok(());
    }
    let off = h.offset;
    for col in col_lo..=col_hi {
        let mut dot = 0.0;
        for (k, &vk) in h.v.iter().enumerate() {
            dot += vk * a.get(off + k, col);
        }
        let t = h.beta * dot;
        for (k, &vk) in h.v.iter().enumerate() {
            let cur = a.get(off + k, col);
            a.set(off + k, col, cur - t * vk);
        }
    }
    Ok(())
}

/// Applies `H` from the right to rows `row_lo..=row_hi`: columns
/// `offset..offset+len` of those rows are mixed.
pub fn apply_householder_right(
    a: &mut DenseMatrix,
    h: &HouseholderReflector,
    row_lo: usize,
    row_hi: usize,
) -> Result<(), Error> {
    let n = a.n();
    h.check_window(n)?;
    if row_lo > row_hi || row_hi >= n {
        return Err(Error::InvalidWindow {
            lo: row_lo,
            hi: row_hi,
            n,
        });
    }
    if h.beta == 0.0 {
        return Ok(());
    }
    let off = h.offset;
    for row in row_lo..=row_hi {
        let mut dot = 0.0;
        for (k, &vk) in h.v.iter().enumerate() {
            dot += vk * a.get(row, off + k);
        }
        let t = h.beta * dot;
        for (k, &vk) in h.v.iter().enumerate() {
            let cur = a.get(row, off + k);
            a.set(row, off + k, cur - t * vk);
        }
    }
    Ok(())
}

/// Accumulates the reflector into the orthogonal factor: `Q <- Q H`
/// (`H` is symmetric, so right application tracks `Q^T A Q`).
pub fn accumulate_reflector(q: &mut DenseMatrix, h: &HouseholderReflector) -> Result<(), Error> {
    let n = q.n();
    apply_householder_right(q, h, 0, n - 1)
}
