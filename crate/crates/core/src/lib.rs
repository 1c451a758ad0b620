//! Stable index of 0-1 matrices.
//!
//! For a square 0-1 matrix `A`, the stable index `θ(A)` is the largest `k`
//! such that `A, A², …, A^k` are all 0-1 matrices (infinite if every power
//! is). This crate computes it with a bit-packed kernel, builds and
//! recognizes the glasses digraphs that attain the largest finite value,
//! and searches small orders exhaustively.
//!
//! Dense arithmetic is generic over [`Scalar`]; the aliases below fix the
//! scalar types used throughout.

pub mod bitmatrix;
pub mod dense;
pub mod digraph;
pub mod error;
pub mod extremal;
pub mod oracle;
pub mod scalar;
pub mod search;
pub mod spectral;
pub mod stable_index;
pub mod verify;

pub use bitmatrix::{Block, BlockKind, BoolMatrix, CappedMatrix, Permutation, ZeroOneProduct};
pub use dense::{walk_count, DenseMatrix};
pub use digraph::{build_glasses, circulant, glasses_matrix, is_isomorphic, recognize_glasses, Digraph, GlassesSpec};
pub use error::{Error, Result};
pub use extremal::{
    classify_extremal, extremal_census, extremal_pair, g_as_coprime_max, g_of, phi, ExtremalCensus, ExtremalReport,
};
pub use scalar::Scalar;
pub use search::{canonical_form, cross_check_small, enumerate_s, merge_reports, run_search, SearchOptions, SearchReport, ShardSpec};
pub use spectral::{spectral_bound_check, spectral_radius, SpectralReport};
pub use stable_index::{
    max_finite_theta, stable_index, theta, witness_walks, Certificate, HorizonPolicy, StableIndexOutcome,
};
pub use verify::LemmaReport;

/// Exact walk counts.
pub type WalkCount = num_bigint::BigUint;
/// Exact integer matrices (walk counting, circulant identities).
pub type ExactMatrix = DenseMatrix<WalkCount>;
/// Machine-word integer matrices, for sizes where counts provably fit.
pub type CountMatrix = DenseMatrix<u64>;
/// Floating point scalar for spectral estimates.
pub type Real = f64;
pub type RealMatrix = DenseMatrix<Real>;

/// `A^k(i, j)` computed exactly.
pub fn exact_walk_count(a: &BoolMatrix, k: usize, i: usize, j: usize) -> Result<WalkCount> {
    walk_count(a, k, i, j)
}
