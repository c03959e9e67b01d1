//! Antitriangular forms of skew-symmetric and skew-Hermitian matrices.
//!
//! A real skew-symmetric matrix can always be carried to antitriangular form
//! by an orthogonal similarity `M = Q^T A Q`; this crate provides both a
//! Givens route (antidiagonal-by-antidiagonal annihilation plus deflation)
//! and a pivoted Householder route with numerical rank detection, the
//! permutation to multi-arrowhead form, the block antitriangular form of
//! complex Hermitian and skew-Hermitian matrices, seeded test-matrix
//! generation, and a plain-text matrix format shared with the `antitri` CLI.
//!
//! All indices are zero-based. Orthogonal/unitary factors are accumulated on
//! the right, so `A = Q M Q^T` reconstructs the input.

pub mod arrowhead;
pub mod atf;
pub mod complex;
pub mod error;
pub mod matgen;
pub mod matrix;
pub mod reflector;
pub mod rotation;
pub mod textio;

pub use crate::arrowhead::{
    arrowhead_pattern_allows, arrowhead_permutation, to_multi_arrowhead, zero_first_row_odd,
};
pub use crate::atf::givens::{
    antidiagonal_deflate, antidiagonal_profile, deflate_to_rank, det_antitriangular,
    rank_antitriangular, reduce_givens, reduce_givens_rank_revealing,
    reduce_givens_rank_revealing_with_tol, AntidiagonalProfile, DeflateStatus,
};
pub use crate::atf::householder::{
    atf_pivoted, atf_pivoted_with, atf_rank_revealing, atf_rank_revealing_with, default_tol,
    HouseholderOptions, PivotedAtf, ReflectorStore, StoredReflector, UNIT_ROUNDOFF,
};
pub use crate::atf::{AtfResult, PivotRecord};
pub use crate::complex::{
    block_atf_hermitian, block_atf_skew_hermitian, hermitian_eigensolve, inertia_hermitian,
    inertia_skew_hermitian, BlockAtfResult, ComplexDenseMatrix, Inertia,
};
pub use crate::error::Error;
pub use crate::matgen::{
    murnaghan, random_orthogonal_similarity, rank_experiment_suite, MurnaghanSpec, SuiteMember,
};
pub use crate::matrix::{
    flip_antitriangular, skew_check, skew_symmetrize, skew_symmetrize_window, DenseMatrix,
    PermutationVector, SkewCheck,
};
pub use crate::reflector::{
    accumulate_reflector, apply_householder_left, apply_householder_right, HouseholderReflector,
};
pub use crate::rotation::{
    accumulate_rotation, apply_givens_similarity, givens_from_pair, GivensRotation,
};
