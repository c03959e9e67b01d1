use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix must have at least one row")]
    EmptyMatrix,

    #[error("row {row} has {found} entries, expected {expected}")]
    RaggedRow {
        row: usize,
        found: usize,
        expected: usize,
    },

    #[error("entry ({row},{col}) is not finite")]
    NonFinite { row: usize, col: usize },

    #[error("index {index} out of range for order {n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("invalid window {lo}..={hi} for order {n}")]
    InvalidWindow { lo: usize, hi: usize, n: usize },

    #[error("input is not skew-symmetric: |A({row},{col}) + A({col},{row})| = {violation:e}")]
    NotSkewSymmetric {
        row: usize,
        col: usize,
        violation: f64,
    },

    #[error("cannot build a rotation from the zero pair")]
    DegenerateRotation,

    #[error("rotation coefficients are not unit-norm: c^2 + s^2 = {0}")]
    NotARotation(f64),

    #[error("cannot build a reflector from a zero column")]
    ZeroReflectorColumn,

    #[error("tolerance must be nonnegative, got {0}")]
    NegativeTolerance(f64),

    #[error("matrix is not {expected} antitriangular: nonzero at ({row},{col})")]
    NotAntitriangular {
        expected: &'static str,
        row: usize,
        col: usize,
    },

    #[error("matrix does not match the multi-arrowhead pattern: nonzero at ({row},{col})")]
    NotArrowhead { row: usize, col: usize },

    #[error("first-row elimination is defined for odd orders only, got n = {0}")]
    EvenOrderCleanup(usize),

    #[error("input is not Hermitian: ||H - H*||_F = {violation:e}")]
    NotHermitian { violation: f64 },

    #[error("input is not skew-Hermitian: ||A + A*||_F = {violation:e}")]
    NotSkewHermitian { violation: f64 },

    /// A skew-Hermitian spectrum lying entirely on one half of the imaginary
    /// axis (as for a*i*I) admits no block antitriangular form.
    #[error(
        "spectrum is one-sided, inertia i({n_minus}, {n_zero}, {n_plus}): \
         no block antitriangular form exists (the a*i*I obstruction)"
    )]
    OneSidedSpectrum {
        n_minus: usize,
        n_zero: usize,
        n_plus: usize,
    },

    #[error("eigensolver did not converge within {0} sweeps")]
    NoConvergence(usize),

    #[error("invalid generator spec: {0}")]
    BadGeneratorSpec(String),

    #[error("numerical validation failed: {0}")]
    Validation(String),
}
