//! Spectral radius estimates and the check `ρ(A) ≤ n^{1/θ}`.
//!
//! `ρ(A)` is the maximum over the diagonal blocks of the Frobenius normal
//! form. Cycle blocks contribute exactly 1 and trivial blocks 0; the rest
//! are estimated by power iteration on `B + I`, which is primitive, so the
//! iteration converges without the oscillation a periodic block would show.

use num_traits::Float;
use serde::{Deserialize, Serialize};

use crate::bitmatrix::{BlockKind, BoolMatrix};
use crate::error::{Error, Result};
use crate::stable_index::{stable_index, HorizonPolicy};

pub const POWER_ITERATIONS: usize = 200;
/// Convergence threshold on successive estimates.
pub const CONVERGENCE_TOL: f64 = 1e-6;
/// Relative slack allowed when comparing the estimate with `n^{1/θ}`.
pub const BOUND_REL_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadiusEstimate<T> {
    pub rho: T,
    pub converged: bool,
}

/// Estimates `ρ(A)` in the scalar type `T`.
pub fn spectral_radius<T: Float>(a: &BoolMatrix) -> RadiusEstimate<T> {
    let mut best = RadiusEstimate {
        rho: T::zero(),
        converged: true,
    };
    for block in a.condensation() {
        let est = match block.kind {
            BlockKind::Trivial => continue,
            BlockKind::Cycle => RadiusEstimate {
                rho: T::one(),
                converged: true,
            },
            BlockKind::Other => irreducible_radius(&a.principal_submatrix(&block.vertices)),
        };
        if est.rho > best.rho {
            best = est;
        }
    }
    best
}

fn irreducible_radius<T: Float>(a: &BoolMatrix) -> RadiusEstimate<T> {
    let n = a.n();
    let tol = T::from(CONVERGENCE_TOL).expect("representable tolerance");
    let mut x = vec![T::one() / T::from(n).expect("representable order"); n];
    let mut lambda = T::zero();
    let mut delta = T::infinity();
    for _ in 0..POWER_ITERATIONS {
        // y = (A + I) x
        let y: Vec<T> = (0..n)
            .map(|i| a.row_ones(i).fold(x[i], |acc, j| acc + x[j]))
            .collect();
        let norm = y.iter().fold(T::zero(), |acc, &v| acc + v);
        // ‖x‖₁ = 1, so the 1-norm ratio is just ‖y‖₁
        delta = (norm - lambda).abs();
        lambda = norm;
        x = y.into_iter().map(|v| v / norm).collect();
        if delta <= T::epsilon() * lambda {
            break;
        }
    }
    RadiusEstimate {
        rho: lambda - T::one(),
        converged: delta <= tol,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralReport {
    pub theta: usize,
    pub rho_estimate: f64,
    pub bound: f64,
    pub converged: bool,
    pub satisfied: bool,
}

/// Checks `ρ(A) ≤ n^{1/θ(A)}`. Only meaningful for finite `θ`.
pub fn spectral_bound_check(a: &BoolMatrix) -> Result<SpectralReport> {
    let theta = stable_index(a, HorizonPolicy::TheoremBound)?
        .theta()
        .ok_or(Error::InfiniteStableIndex)?;
    let est = spectral_radius::<f64>(a);
    let bound = (a.n() as f64).powf(1.0 / theta as f64);
    Ok(SpectralReport {
        theta,
        rho_estimate: est.rho,
        bound,
        converged: est.converged,
        satisfied: est.rho <= bound * (1.0 + BOUND_REL_TOL),
    })
}
