//! Pivoted Householder reduction to upper antitriangular form and its
//! rank-revealing variant.
//!
//! Step `step` (1-based) works on the window `i1..=i2` with `i1 = step`,
//! `i2 = n - step + 1`: the column of largest norm in the window is swapped
//! into position `i2` together with its row, a reflector built from
//! `A(i1:i2, i2)` concentrates that column into the single antidiagonal entry
//! `(i1, i2)`, and the window is re-skew-symmetrized. Annihilated entries are
//! set to exact zero rather than left at roundoff size.
//!
//! The rank-revealing variant stops as soon as the pivot norm falls to the
//! tolerance, zeros the remaining window, and then re-reduces the leading
//! columns so the surviving mass forms one contiguous nonzero antidiagonal in
//! the top-left corner; the detected rank is twice the number of completed
//! steps.

use crate::atf::{AtfResult, PivotRecord};
use crate::error::Error;
use crate::matrix::{skew_symmetrize, skew_symmetrize_window, validate_skew_input, DenseMatrix};
use crate::reflector::{
    accumulate_reflector, apply_householder_left, apply_householder_right, HouseholderReflector,
};

/// Unit roundoff `u = 2^-53`, the LAPACK-convention machine epsilon used in
/// the rank tolerance.
pub const UNIT_ROUNDOFF: f64 = f64::EPSILON / 2.0;

/// Default rank tolerance: `n * u * max_k ||A(:,k)||_2`.
///
/// Homogeneous of degree one in `A`; exactly 0 for the zero matrix.
pub fn default_tol(a: &DenseMatrix) -> f64 {
    a.n() as f64 * UNIT_ROUNDOFF * a.max_column_norm()
}

#[derive(Debug, Clone, Copy)]
pub struct HouseholderOptions {
    /// Accumulate the orthogonal factor Q (skip for rank-only runs).
    pub accumulate_q: bool,
    /// Record the reflector generating vectors for compact storage.
    pub keep_reflectors: bool,
}

impl Default for HouseholderOptions {
    fn default() -> Self {
        HouseholderOptions {
            accumulate_q: true,
            keep_reflectors: false,
        }
    }
}

/// Output of the pivoted reductions: the factorization plus the pivot
/// history and, when requested, the stored reflectors.
#[derive(Debug, Clone)]
pub struct PivotedAtf {
    pub result: AtfResult,
    pub pivots: Vec<PivotRecord>,
    pub reflectors: Option<ReflectorStore>,
    /// Window column norms recorded at the early-termination step.
    pub break_norms: Option<Vec<f64>>,
}

/// Reduction to upper antitriangular form with column pivoting (no early
/// termination): every window is processed; steps whose pivot norm is at or
/// below `tol` are skipped without transforming.
///
/// The result's rank field counts main-antidiagonal entries above `tol`.
pub fn atf_pivoted(a: &DenseMatrix, tol: f64) -> Result<PivotedAtf, Error> {
    atf_pivoted_with(a, tol, &HouseholderOptions::default())
}

pub fn atf_pivoted_with(
    a: &DenseMatrix,
    tol: f64,
    opts: &HouseholderOptions,
) -> Result<PivotedAtf, Error> {
    if tol < 0.0 {
        return Err(Error::NegativeTolerance(tol));
    }
    validate_skew_input(a)?;
    let mut m = a.clone();
    skew_symmetrize(&mut m);
    let mut out = reduce_driver(m, tol, false, opts)?;

    let n = out.m.n();
    let rank = (0..n)
        .filter(|&i| out.m.get(i, n - 1 - i).abs() > tol)
        .count();
    Ok(PivotedAtf {
        result: AtfResult {
            m: out.m,
            q: out.q.take(),
            rank,
            tol,
            terminated_step: None,
        },
        pivots: out.pivots,
        reflectors: out.reflectors,
        break_norms: None,
    })
}

/// Rank-revealing reduction: tolerance computed internally from the input,
/// early termination on a numerically zero window, and column re-reduction
/// yielding a contiguous nonzero antidiagonal. Detected rank is
/// `2 (s - 1)` for termination at step `s`, or `2 floor(n/2)` when no
/// termination occurs.
pub fn atf_rank_revealing(a: &DenseMatrix) -> Result<AtfResult, Error> {
    Ok(atf_rank_revealing_with(a, None, &HouseholderOptions::default())?.result)
}

pub fn atf_rank_revealing_with(
    a: &DenseMatrix,
    tol: Option<f64>,
    opts: &HouseholderOptions,
) -> Result<PivotedAtf, Error> {
    if opts.keep_reflectors {
        return Err(Error::Validation(
            "reflector storage is only available for the pivoted reduction \
             without deflation"
                .into(),
        ));
    }
    validate_skew_input(a)?;
    let mut m = a.clone();
    skew_symmetrize(&mut m);
    let tol = match tol {
        Some(t) if t < 0.0 => return Err(Error::NegativeTolerance(t)),
        Some(t) => t,
        None => default_tol(&m),
    };
    let mut out = reduce_driver(m, tol, true, opts)?;

    let n = out.m.n();
    let rank = match out.terminated {
        Some(s) => 2 * (s - 1),
        None => 2 * (n / 2),
    };
    Ok(PivotedAtf {
        result: AtfResult {
            m: out.m,
            q: out.q.take(),
            rank,
            tol,
            terminated_step: out.terminated,
        },
        pivots: out.pivots,
        reflectors: None,
        break_norms: out.break_norms,
    })
}

struct DriverOutput {
    m: DenseMatrix,
    q: Option<DenseMatrix>,
    pivots: Vec<PivotRecord>,
    reflectors: Option<ReflectorStore>,
    terminated: Option<usize>,
    break_norms: Option<Vec<f64>>,
}

/// Shared step loop for both variants; `m` must already be exactly
/// skew-symmetric.
fn reduce_driver(
    mut m: DenseMatrix,
    tol: f64,
    early_break: bool,
    opts: &HouseholderOptions,
) -> Result<DriverOutput, Error> {
    let n = m.n();
    let mut q = opts.accumulate_q.then(|| DenseMatrix::identity(n));
    let mut pivots = Vec::new();
    let mut stored: Vec<StoredReflector> = Vec::new();
    let mut terminated = None;
    let mut break_norms = None;

    for step in 1..=n / 2 {
        let i1 = step - 1;
        let i2 = n - step;

        let mut norms: Vec<f64> = (i1..=i2)
            .map(|k| m.column_norm_window(i1, i2, k))
            .collect();
        // Smallest column index wins ties.
        let mut imax = i1;
        for k in i1..=i2 {
            if norms[k - i1] > norms[imax - i1] {
                imax = k;
            }
        }
        let swapped = imax != i2;
        if swapped {
            m.swap_cols(imax, i2);
            m.swap_rows(imax, i2);
            norms.swap(imax - i1, i2 - i1);
            if let Some(q) = q.as_mut() {
                q.swap_cols(imax, i2);
            }
        }
        pivots.push(PivotRecord {
            step,
            imax,
            swapped,
        });

        let pivot_norm = norms[i2 - i1];
        if pivot_norm > tol {
            // The diagonal entry A(i2, i2) is exactly zero, so the reflector
            // over rows i1..i2-1 already acts as diag(H, 1) on the window.
            let x: Vec<f64> = (i1..i2).map(|r| m.get(r, i2)).collect();
            let h = HouseholderReflector::from_column(i1, &x)?;
            apply_householder_left(&mut m, &h, 0, i2)?;
            for r in i1 + 1..=i2 {
                m.set(r, i2, 0.0);
            }
            apply_householder_right(&mut m, &h, 0, i2)?;
            for c in i1 + 1..i2 {
                m.set(i2, c, 0.0);
            }
            skew_symmetrize_window(&mut m, i1, i2)?;
            // Rows above the window saw only the right-hand update; mirror
            // them so the whole matrix stays exactly skew-symmetric.
            for r in 0..i1 {
                for c in i1..=i2 {
                    m.set(c, r, -m.get(r, c));
                }
            }
            if let Some(q) = q.as_mut() {
                accumulate_reflector(q, &h)?;
            }
            if opts.keep_reflectors {
                stored.push(StoredReflector {
                    step,
                    offset: i1,
                    v: h.unit_form_vector(),
                });
            }
        } else if early_break {
            debug_assert!(norms.iter().all(|&nk| nk <= tol));
            break_norms = Some(norms);
            for r in i1..=i2 {
                for c in i1..=i2 {
                    m.set(r, c, 0.0);
                }
            }
            terminated = Some(step);
            break;
        }
        // Algorithm without early termination: a sub-tolerance pivot is
        // skipped, leaving the window untouched.
    }

    if early_break {
        if let Some(s) = terminated {
            deflate_leading_columns(&mut m, q.as_mut(), s)?;
        }
    }

    Ok(DriverOutput {
        m,
        q,
        pivots,
        reflectors: (opts.keep_reflectors).then(|| ReflectorStore {
            n,
            items: stored,
        }),
        terminated,
        break_norms,
    })
}

/// Re-reduces columns `s-1, ..., 1` (1-based) after termination at step `s`
/// so the surviving antidiagonal becomes contiguous in the leading
/// `2(s-1) x 2(s-1)` block and the trailing rows/columns become exactly zero.
///
/// Column `ell` is condensed by a reflector over rows
/// `2s - 1 - ell ..= n - ell + 1` (1-based) into the single element at
/// `(2s - 1 - ell, ell)`; the window absorbs the old corner antidiagonal
/// entry of that column. The right-hand application is replaced by the
/// sign-flipped transpose copy into the first `ell` rows.
fn deflate_leading_columns(
    m: &mut DenseMatrix,
    mut q: Option<&mut DenseMatrix>,
    s: usize,
) -> Result<(), Error> {
    let n = m.n();
    if s < 2 {
        return Ok(());
    }
    for ell1 in (1..=s - 1).rev() {
        let ell = ell1 - 1; // 0-based column
        let p1 = 2 * s - 2 - ell1; // 0-based window start
        let p2 = n - ell1; // 0-based window end
        let x: Vec<f64> = (p1..=p2).map(|r| m.get(r, ell)).collect();
        if x.iter().all(|&v| v == 0.0) {
            continue;
        }
        let h = HouseholderReflector::from_column(p1, &x)?;
        apply_householder_left(m, &h, 0, ell)?;
        for r in p1 + 1..=p2 {
            m.set(r, ell, 0.0);
        }
        for r in 0..=ell {
            for c in p1..=p2 {
                m.set(r, c, -m.get(c, r));
            }
        }
        if let Some(q) = q.as_deref_mut() {
            accumulate_reflector(q, &h)?;
        }
    }
    Ok(())
}

/// One stored reflector in unit form `H = I - v v^T` (`||v||^2 = 2`).
#[derive(Debug, Clone, PartialEq)]
pub struct StoredReflector {
    /// 1-based step that produced the reflector.
    pub step: usize,
    /// 0-based first row of its window.
    pub offset: usize,
    pub v: Vec<f64>,
}

/// Compact reflector storage for the pivoted reduction.
///
/// The step-`j` vector occupies the below-diagonal slots of column `j`: its
/// k-th element (1-based) sits at position `(j + k, j)` in 1-based terms.
#[derive(Debug, Clone, PartialEq)]
pub struct ReflectorStore {
    n: usize,
    items: Vec<StoredReflector>,
}

impl ReflectorStore {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn items(&self) -> &[StoredReflector] {
        &self.items
    }

    /// Packs every vector into its column slots and returns the slot matrix.
    /// Panics on a slot collision, which no valid step sequence can produce.
    pub fn pack(&self) -> DenseMatrix {
        let n = self.n;
        let mut slots = DenseMatrix::zeros(n);
        let mut used = vec![false; n * n];
        for item in &self.items {
            let j = item.step; // 1-based column of the slot scheme
            for (k, &vk) in item.v.iter().enumerate() {
                // 1-based (j + k + 1, j) -> 0-based (j + k, j - 1).
                let (r, c) = (j + k, j - 1);
                assert!(r < n, "reflector slot ({r},{c}) out of range");
                assert!(!used[r * n + c], "reflector slot collision at ({r},{c})");
                used[r * n + c] = true;
                slots.set(r, c, vk);
            }
        }
        slots
    }

    /// Rebuilds Q from the stored reflectors and the pivot history.
    pub fn reconstruct_q(&self, pivots: &[PivotRecord]) -> Result<DenseMatrix, Error> {
        let n = self.n;
        let mut q = DenseMatrix::identity(n);
        let mut by_step: Vec<Option<&StoredReflector>> = vec![None; n + 1];
        for item in &self.items {
            by_step[item.step] = Some(item);
        }
        for rec in pivots {
            let i2 = n - rec.step;
            if rec.swapped {
                q.swap_cols(rec.imax, i2);
            }
            if let Some(item) = by_step[rec.step] {
                let h = HouseholderReflector::from_unit_form(item.offset, item.v.clone());
                accumulate_reflector(&mut q, &h)?;
            }
        }
        Ok(q)
    }
}
