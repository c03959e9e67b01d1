//! Seeded test-matrix generation: block-diagonal spectrum assembly and
//! random orthogonal similarity.
//!
//! The similarity is applied in compensated (double-double) arithmetic so
//! that rank-deficient spectra survive the randomization: rotations are exact
//! similarities of the represented value, so zero singular values stay
//! exactly zero until the final rounding back to `f64`, which perturbs them
//! only at the level of one rounding of the entries. Randomness comes from a
//! ChaCha8 stream seeded with a caller-supplied 64-bit value; angles are
//! drawn uniformly from `[0, 2 pi)` via the top 53 bits of each draw, so a
//! fixed seed reproduces the same matrix bit for bit.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::matrix::{skew_check, skew_symmetrize, DenseMatrix};

/// Spectrum specification: pairs `+-lambda_j i` followed by zeros.
#[derive(Debug, Clone, PartialEq)]
pub struct MurnaghanSpec {
    pub n: usize,
    pub lambdas: Vec<f64>,
    pub seed: u64,
}

/// Exact block-diagonal assembly `diag([[0, l1], [-l1, 0]], ..., 0, ..., 0)`
/// of rank `2 r` with eigenvalues `+-lambda_j i`.
pub fn murnaghan(spec: &MurnaghanSpec) -> Result<DenseMatrix, Error> {
    if spec.n == 0 {
        return Err(Error::BadGeneratorSpec("order must be positive".into()));
    }
    if 2 * spec.lambdas.len() > spec.n {
        return Err(Error::BadGeneratorSpec(format!(
            "{} eigenvalue pairs do not fit order {}",
            spec.lambdas.len(),
            spec.n
        )));
    }
    for (j, &lam) in spec.lambdas.iter().enumerate() {
        if !(lam > 0.0) || !lam.is_finite() {
            return Err(Error::BadGeneratorSpec(format!(
                "lambda[{j}] = {lam} must be positive and finite"
            )));
        }
    }
    let mut d = DenseMatrix::zeros(spec.n);
    for (j, &lam) in spec.lambdas.iter().enumerate() {
        d.set(2 * j, 2 * j + 1, lam);
        d.set(2 * j + 1, 2 * j, -lam);
    }
    Ok(d)
}

/// Applies `sweeps` rounds of random plane rotations as an orthogonal
/// similarity, `A = Q_s ... Q_1 D Q_1^T ... Q_s^T`, in compensated
/// arithmetic; the result is rounded to `f64` and re-skew-symmetrized
/// exactly. Deterministic for a fixed seed; `sweeps = 0` returns a copy.
pub fn random_orthogonal_similarity(
    d: &DenseMatrix,
    sweeps: usize,
    seed: u64,
) -> Result<DenseMatrix, Error> {
    let check = skew_check(d, 0.0);
    if !check.ok {
        return Err(Error::NotSkewSymmetric {
            row: check.row,
            col: check.col,
            violation: check.violation,
        });
    }
    let n = d.n();
    if sweeps == 0 || n == 1 {
        return Ok(d.clone());
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut work = DdMatrix::from_matrix(d);
    for _ in 0..sweeps {
        for i in 0..n - 1 {
            let theta = angle(&mut rng);
            let (s, c) = theta.sin_cos();
            work.rotate_similarity(i, i + 1, c, s);
        }
    }
    let mut a = work.round();
    skew_symmetrize(&mut a);
    Ok(a)
}

#[derive(Debug, Clone)]
pub struct SuiteMember {
    pub true_rank: usize,
    pub matrix: DenseMatrix,
}

/// The rank-detection collection: for even `n`, one matrix per rank
/// `2, 4, ..., n`, where the rank-`2r` member carries eigenvalues
/// `+-2^{-(j-1)} i`, `j = 1..r`, randomized with `sweeps = n` and the
/// per-member seed `seed + r`.
pub fn rank_experiment_suite(n: usize, seed: u64) -> Result<Vec<SuiteMember>, Error> {
    if n == 0 || n % 2 != 0 {
        return Err(Error::BadGeneratorSpec(format!(
            "suite order must be even and positive, got {n}"
        )));
    }
    (1..=n / 2)
        .map(|r| {
            let member_seed = seed.wrapping_add(r as u64);
            rank_experiment_member(n, r, member_seed)
        })
        .collect()
}

/// One suite member of rank `2 r` at order `n`.
pub fn rank_experiment_member(n: usize, r: usize, seed: u64) -> Result<SuiteMember, Error> {
    let lambdas: Vec<f64> = (0..r).map(|j| 2.0f64.powi(-(j as i32))).collect();
    let spec = MurnaghanSpec { n, lambdas, seed };
    let d = murnaghan(&spec)?;
    let matrix = random_orthogonal_similarity(&d, n, seed)?;
    Ok(SuiteMember {
        true_rank: 2 * r,
        matrix,
    })
}

/// Uniform angle in `[0, 2 pi)` from the top 53 bits of one draw.
fn angle(rng: &mut ChaCha8Rng) -> f64 {
    let u = (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
    u * std::f64::consts::TAU
}

// Double-double helpers: a value is (hi, lo) with |lo| <= ulp(hi)/2.

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

/// `c*x + s*y` for double-double `x`, `y` and plain coefficients.
#[inline]
fn combine(c: f64, s: f64, x: (f64, f64), y: (f64, f64)) -> (f64, f64) {
    let (p1, e1) = two_prod(c, x.0);
    let (p2, e2) = two_prod(s, y.0);
    let (sum, e3) = two_sum(p1, p2);
    let lo = e1 + e2 + e3 + c * x.1 + s * y.1;
    quick_two_sum(sum, lo)
}

struct DdMatrix {
    n: usize,
    hi: Vec<f64>,
    lo: Vec<f64>,
}

impl DdMatrix {
    fn from_matrix(m: &DenseMatrix) -> Self {
        let n = m.n();
        let mut hi = Vec::with_capacity(n * n);
        for i in 0..n {
            hi.extend_from_slice(m.row(i));
        }
        DdMatrix {
            n,
            hi,
            lo: vec![0.0; n * n],
        }
    }

    #[inline]
    fn at(&self, i: usize, j: usize) -> (f64, f64) {
        (self.hi[i * self.n + j], self.lo[i * self.n + j])
    }

    #[inline]
    fn put(&mut self, i: usize, j: usize, v: (f64, f64)) {
        self.hi[i * self.n + j] = v.0;
        self.lo[i * self.n + j] = v.1;
    }

    /// `A <- G^T A G` for the plane rotation `G(i, j; c, s)`.
    fn rotate_similarity(&mut self, i: usize, j: usize, c: f64, s: f64) {
        let n = self.n;
        for col in 0..n {
            let xi = self.at(i, col);
            let xj = self.at(j, col);
            self.put(i, col, combine(c, s, xi, xj));
            self.put(j, col, combine(c, -s, xj, xi));
        }
        for row in 0..n {
            let xi = self.at(row, i);
            let xj = self.at(row, j);
            self.put(row, i, combine(c, s, xi, xj));
            self.put(row, j, combine(c, -s, xj, xi));
        }
    }

    fn round(&self) -> DenseMatrix {
        DenseMatrix::from_fn(self.n, |i, j| {
            self.hi[i * self.n + j] + self.lo[i * self.n + j]
        })
    }
}
