//! The stable index `θ(A)`: the largest `k` with `A, A², …, A^k` all 0-1,
//! or infinity when every power is 0-1.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::bitmatrix::{BoolMatrix, ZeroOneProduct};
use crate::dense::step_backward;
use crate::error::{Error, Result};
use crate::extremal::g_of;

/// `s(n)` for `n = 2..=6`, computed by exhaustive search (not given by the
/// closed form).
pub const SMALL_ORDER_MAX_THETA: [(usize, usize); 5] = [(2, 1), (3, 3), (4, 4), (5, 6), (6, 7)];

/// Why a matrix was declared to have infinite stable index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Certificate {
    /// All powers up to `horizon + 1` are 0-1.
    BoundExceeded { horizon: usize },
    /// `A^a = A^b` with `a < b` and every power up to `b` 0-1, so the power
    /// sequence is eventually periodic inside `M_n{0,1}`.
    PowerCycle { a: usize, b: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum StableIndexOutcome {
    /// `A^{theta+1}(witness) ≥ 2` and all lower powers are 0-1.
    Finite { theta: usize, witness: (usize, usize) },
    Infinite { certificate: Certificate },
}

impl StableIndexOutcome {
    pub fn theta(&self) -> Option<usize> {
        match *self {
            StableIndexOutcome::Finite { theta, .. } => Some(theta),
            StableIndexOutcome::Infinite { .. } => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, StableIndexOutcome::Finite { .. })
    }
}

/// How far to iterate before declaring the stable index infinite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum HorizonPolicy {
    /// Stop past `max_finite_theta(n)`.
    #[default]
    TheoremBound,
    /// Stop past a caller-supplied horizon.
    ExplicitCap { cap: usize },
    /// Iterate until a power repeats.
    CycleDetect,
}

/// `s(n)`, the largest finite stable index among `n × n` 0-1 matrices.
pub fn max_finite_theta(n: usize) -> Result<usize> {
    if n < 2 {
        return Err(Error::OrderTooSmall {
            n,
            min: 2,
            what: "a finite stable index",
        });
    }
    if let Some(&(_, s)) = SMALL_ORDER_MAX_THETA.iter().find(|&&(m, _)| m == n) {
        return Ok(s);
    }
    Ok(g_of(n) as usize)
}

/// Bound on the number of stored powers under [`HorizonPolicy::CycleDetect`].
pub fn cycle_detect_limit(n: usize) -> usize {
    4 * n * n * n
}

/// Computes `θ(A)` by iterating `P_{m+1} = P_m · A` and stopping at the first
/// entry ≥ 2. Ties for the witness go to the smallest `(i, j)` in row-major
/// order.
pub fn stable_index(a: &BoolMatrix, policy: HorizonPolicy) -> Result<StableIndexOutcome> {
    let n = a.n();
    if n == 0 {
        return Err(Error::EmptyMatrix);
    }
    if n == 1 {
        // [0] and [1] are both idempotent
        return Ok(StableIndexOutcome::Infinite {
            certificate: Certificate::PowerCycle { a: 1, b: 2 },
        });
    }
    let horizon = match policy {
        HorizonPolicy::TheoremBound => Some(max_finite_theta(n)?),
        HorizonPolicy::ExplicitCap { cap } if cap == 0 => return Err(Error::InvalidCap(cap)),
        HorizonPolicy::ExplicitCap { cap } => Some(cap),
        HorizonPolicy::CycleDetect => None,
    };
    let limit = cycle_detect_limit(n);
    let mut seen: HashMap<BoolMatrix, usize> = HashMap::new();
    if horizon.is_none() {
        seen.insert(a.clone(), 1);
    }
    let mut power = a.clone();
    let mut m = 1;
    loop {
        if let Some(h) = horizon {
            if m > h {
                return Ok(StableIndexOutcome::Infinite {
                    certificate: Certificate::BoundExceeded { horizon: h },
                });
            }
        }
        match power.zero_one_product(a)? {
            ZeroOneProduct::Overflow { first } => {
                return Ok(StableIndexOutcome::Finite { theta: m, witness: first });
            }
            ZeroOneProduct::ZeroOne(next) => {
                if horizon.is_none() {
                    if let Some(&prev) = seen.get(&next) {
                        return Ok(StableIndexOutcome::Infinite {
                            certificate: Certificate::PowerCycle { a: prev, b: m + 1 },
                        });
                    }
                    if seen.len() >= limit {
                        return Err(Error::Inconclusive { stored: seen.len() });
                    }
                    seen.insert(next.clone(), m + 1);
                }
                power = next;
            }
        }
        m += 1;
    }
}

/// `θ(A)` under [`HorizonPolicy::TheoremBound`]; `None` means infinite.
pub fn theta(a: &BoolMatrix) -> Option<usize> {
    stable_index(a, HorizonPolicy::TheoremBound)
        .expect("theorem-bound policy cannot fail on a non-empty matrix")
        .theta()
}

/// Two distinct walks of length `len` from `i` to `j`, found by backtracking
/// over exact walk counts. The first is the lexicographically smallest
/// walk, the second the largest.
pub fn witness_walks(a: &BoolMatrix, i: usize, j: usize, len: usize) -> Result<(Vec<usize>, Vec<usize>)> {
    let n = a.n();
    if i >= n || j >= n {
        return Err(Error::IndexOutOfRange { row: i, col: j, n });
    }
    // to_target[l][v] = number of l-walks from v to j
    let mut to_target: Vec<Vec<BigUint>> = Vec::with_capacity(len + 1);
    let mut v = vec![BigUint::zero(); n];
    v[j] = BigUint::one();
    to_target.push(v);
    for l in 1..=len {
        let next = step_backward(a, &to_target[l - 1]);
        to_target.push(next);
    }
    if to_target[len][i] < BigUint::from(2u8) {
        return Err(Error::FewerThanTwoWalks { from: i, to: j, len });
    }
    let trace = |largest: bool| {
        let mut walk = Vec::with_capacity(len + 1);
        let mut cur = i;
        walk.push(cur);
        for rem in (0..len).rev() {
            let mut viable = a.row_ones(cur).filter(|&w| !to_target[rem][w].is_zero());
            cur = if largest { viable.last() } else { viable.next() }.expect("count is positive");
            walk.push(cur);
        }
        walk
    };
    Ok((trace(false), trace(true)))
}
