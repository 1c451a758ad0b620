//! Closed-form extremal data: the bound `g(n)`, its coprime pairs, and the
//! digraphs that attain it.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::bitmatrix::BoolMatrix;
use crate::digraph::{build_glasses, recognize_glasses, Digraph, GlassesSpec};
use crate::error::{Error, Result};
use crate::stable_index::{stable_index, HorizonPolicy};

/// Smallest order covered by the extremal characterization.
pub const MIN_EXTREMAL_ORDER: usize = 7;

/// `g(n)`: `(n²−1)/4` for odd `n`, `(n²−4)/4` for `n ≡ 0 (mod 4)`,
/// `(n²−16)/4` for `n ≡ 2 (mod 4)`. Negative at `n = 2`.
pub fn g_of(n: usize) -> i64 {
    let sq = (n as i64) * (n as i64);
    match n % 4 {
        1 | 3 => (sq - 1) / 4,
        0 => (sq - 4) / 4,
        _ => (sq - 16) / 4,
    }
}

/// `φ(t) = g(t) − t`.
pub fn phi(t: usize) -> i64 {
    g_of(t) - t as i64
}

fn check_extremal_order(n: usize) -> Result<()> {
    if n < MIN_EXTREMAL_ORDER {
        return Err(Error::OrderTooSmall {
            n,
            min: MIN_EXTREMAL_ORDER,
            what: "the extremal characterization",
        });
    }
    Ok(())
}

/// The coprime split `n = p + q` maximizing `pq`, larger part first.
pub fn extremal_pair(n: usize) -> Result<(usize, usize)> {
    check_extremal_order(n)?;
    let (p, q) = match n % 4 {
        1 | 3 => ((n + 1) / 2, (n - 1) / 2),
        0 => ((n + 2) / 2, (n - 2) / 2),
        _ => ((n + 4) / 2, (n - 4) / 2),
    };
    debug_assert_eq!(p + q, n);
    debug_assert_eq!(p.gcd(&q), 1);
    debug_assert_eq!((p * q) as i64, g_of(n));
    Ok((p, q))
}

/// Human label for the residue case that selects the pair.
pub fn residue_case(n: usize) -> &'static str {
    match n % 4 {
        1 | 3 => "n odd",
        0 => "n = 0 mod 4",
        _ => "n = 2 mod 4",
    }
}

/// Brute-force `max{pq : p + q = n, gcd(p, q) = 1}` with its argmax (smaller
/// part first).
pub fn g_as_coprime_max(n: usize) -> Result<(usize, (usize, usize))> {
    if n < 2 {
        return Err(Error::OrderTooSmall {
            n,
            min: 2,
            what: "a coprime split",
        });
    }
    let best = (1..=n / 2)
        .filter(|&p| p.gcd(&(n - p)) == 1)
        .map(|p| (p * (n - p), (p, n - p)))
        .max_by_key(|&(v, _)| v)
        .expect("p = 1 is always coprime");
    Ok(best)
}

/// Every digraph (up to isomorphism) whose stable index equals `g(n)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremalCensus {
    pub n: usize,
    pub g_value: usize,
    pub family: Vec<GlassesSpec>,
}

impl ExtremalCensus {
    pub fn contains_shape(&self, shape: (usize, usize, usize)) -> bool {
        self.family.iter().any(|s| s.shape() == shape)
    }

    pub fn matrices(&self) -> Vec<BoolMatrix> {
        self.family
            .iter()
            .map(|s| build_glasses(s.p, s.k, s.q).expect("census specs are valid").0.to_matrix())
            .collect()
    }
}

pub fn extremal_census(n: usize) -> Result<ExtremalCensus> {
    check_extremal_order(n)?;
    let shapes: Vec<(usize, usize, usize)> = if n == 10 {
        vec![(3, 2, 7), (7, 2, 3), (4, 3, 5), (5, 3, 4)]
    } else {
        let (p, q) = extremal_pair(n)?;
        vec![(p, 2, q), (q, 2, p)]
    };
    let family = shapes
        .into_iter()
        .map(|(p, k, q)| build_glasses(p, k, q).map(|(_, s)| s))
        .collect::<Result<Vec<_>>>()?;
    Ok(ExtremalCensus {
        n,
        g_value: g_of(n) as usize,
        family,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremalReport {
    pub n: usize,
    pub theta: Option<usize>,
    pub g_value: usize,
    pub is_extremal: bool,
    pub matched_spec: Option<GlassesSpec>,
    pub note: String,
}

/// Decides whether `θ(a) = g(n)` and cross-checks the answer against the
/// census. Any disagreement between the engine and the census is an error.
pub fn classify_extremal(a: &BoolMatrix) -> Result<ExtremalReport> {
    let n = a.n();
    check_extremal_order(n)?;
    let census = extremal_census(n)?;
    let g_value = census.g_value;
    let outcome = stable_index(a, HorizonPolicy::TheoremBound)?;
    let recognized = recognize_glasses(&Digraph::from_matrix(a));
    let in_census = recognized.as_ref().is_some_and(|s| census.contains_shape(s.shape()));

    let Some(theta) = outcome.theta() else {
        return Ok(ExtremalReport {
            n,
            theta: None,
            g_value,
            is_extremal: false,
            matched_spec: None,
            note: "theta infinite, not extremal".into(),
        });
    };
    if theta > g_value {
        return Err(Error::CensusMismatch(format!("theta = {theta} exceeds g({n}) = {g_value}")));
    }
    let is_extremal = theta == g_value;
    if is_extremal != in_census {
        return Err(Error::CensusMismatch(format!(
            "theta = {theta}, g({n}) = {g_value}, recognized {recognized:?}"
        )));
    }
    let note = if is_extremal {
        format!("theta={theta} = g({n}), extremal")
    } else {
        format!("theta={theta} < g({n})={g_value}, not extremal")
    };
    Ok(ExtremalReport {
        n,
        theta: Some(theta),
        g_value,
        is_extremal,
        matched_spec: if is_extremal { recognized } else { None },
        note,
    })
}
