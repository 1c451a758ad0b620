//! Computational checks of the structural facts behind the extremal bound.
//! Each check runs over an explicit parameter grid and reports every
//! counterexample it finds.

use std::collections::HashSet;

use num_integer::Integer;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bitmatrix::BoolMatrix;
use crate::dense::DenseMatrix;
use crate::digraph::{build_glasses, circulant, glasses_matrix, recognize_glasses, Digraph};
use crate::error::{Error, Result};
use crate::extremal::{extremal_census, extremal_pair, g_of, phi, MIN_EXTREMAL_ORDER};
use crate::stable_index::{stable_index, theta, HorizonPolicy, StableIndexOutcome};

/// Seed used by every randomized check unless the caller overrides it.
pub const DEFAULT_SEED: u64 = 0x5eed_0001;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub lemma_id: String,
    pub parameter_range: String,
    pub cases_checked: u64,
    pub failures: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl LemmaReport {
    fn new(lemma_id: &str, parameter_range: String) -> Self {
        LemmaReport {
            lemma_id: lemma_id.to_owned(),
            parameter_range,
            cases_checked: 0,
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Folds per-case results in grid order.
    fn absorb(&mut self, results: impl IntoIterator<Item = std::result::Result<(), String>>) {
        for r in results {
            self.cases_checked += 1;
            if let Err(e) = r {
                self.failures.push(e);
            }
        }
    }

    fn merge(&mut self, other: LemmaReport) {
        self.cases_checked += other.cases_checked;
        self.failures.extend(other.failures);
        self.notes.extend(other.notes);
    }
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn circulant_powers(n: usize) -> Vec<DenseMatrix<u64>> {
    let c = DenseMatrix::from_bool(&circulant(n));
    (0..n).map(|k| c.pow(k).expect("square")).collect()
}

/// Sum identity for one `(m, n)`; failures are recorded, not returned.
fn lemma3_grid(m: usize, n: usize, lemma_id: &str) -> LemmaReport {
    let mut report = LemmaReport::new(lemma_id, format!("m={m}, n={n}, all (i,j)"));
    let left = circulant_powers(m);
    let right = circulant_powers(n);
    let total = m * n;
    let ones: DenseMatrix<u64> = DenseMatrix::from_fn(m, n, |_, _| 1);
    let positions: Vec<(usize, usize)> = (0..m).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    let results: Vec<_> = positions
        .par_iter()
        .map(|&(i, j)| {
            let e = DenseMatrix::unit(m, n, i, j);
            let mut sum = DenseMatrix::zeros(m, n);
            let mut supports = HashSet::with_capacity(total);
            let mut problems = Vec::new();
            for k in 0..total {
                let term = &(&left[k % m] * &e) * &right[(total - k - 1) % n];
                let support: Vec<(usize, usize)> = term.entries().filter(|(_, &v)| v != 0).map(|(p, _)| p).collect();
                if support.len() != 1 {
                    problems.push(format!("({i},{j}) term {k} has {} nonzero entries", support.len()));
                } else if !supports.insert(support[0]) {
                    problems.push(format!("({i},{j}) term {k} repeats support {:?}", support[0]));
                }
                sum = &sum + &term;
            }
            if sum != ones {
                problems.push(format!("({},{}) sum is not J_{{{m}x{n}}}", i + 1, j + 1));
            }
            if problems.is_empty() {
                Ok(())
            } else {
                Err(problems.join("; "))
            }
        })
        .collect();
    report.absorb(results);
    report
}

/// `Σ_{k<mn} C_m^k E_ij C_n^{mn−k−1} = J` with pairwise distinct supports,
/// for coprime `m, n`.
pub fn verify_lemma3(m: usize, n: usize) -> Result<LemmaReport> {
    if m == 0 || n == 0 || m.gcd(&n) != 1 {
        return Err(Error::NotCoprime { m, n });
    }
    Ok(lemma3_grid(m, n, "lemma3"))
}

/// Runs the identity for any `m, n`; the failures show how it breaks when
/// `gcd(m, n) > 1`.
pub fn probe_lemma3(m: usize, n: usize) -> LemmaReport {
    lemma3_grid(m, n, "lemma3-probe")
}

/// [`verify_lemma3`] over every coprime pair with `1 ≤ m, n ≤ max`.
pub fn verify_lemma3_range(max: usize) -> LemmaReport {
    let mut report = LemmaReport::new("lemma3", format!("coprime 1 <= m,n <= {max}"));
    for m in 1..=max {
        for n in 1..=max {
            if m.gcd(&n) == 1 {
                report.merge(lemma3_grid(m, n, "lemma3"));
            }
        }
    }
    report
}

/// Random strongly connected matrix: a random Hamiltonian cycle plus every
/// other arc independently with probability `1/n`.
pub fn random_irreducible(n: usize, rng: &mut impl Rng) -> BoolMatrix {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut a = BoolMatrix::zeros(n);
    for w in 0..n {
        a.set(order[w], order[(w + 1) % n], true);
    }
    let p = 1.0 / n as f64;
    for i in 0..n {
        for j in 0..n {
            if !a.get(i, j) && rng.gen_bool(p) {
                a.set(i, j, true);
            }
        }
    }
    a
}

fn lemma8_case(a: &BoolMatrix) -> std::result::Result<(), String> {
    let n = a.n();
    // strongly connected with exactly n arcs is a Hamiltonian cycle
    let is_cycle = a.count_ones() == n;
    if is_cycle {
        let out = stable_index(a, HorizonPolicy::CycleDetect).map_err(|e| e.to_string())?;
        check(!out.is_finite(), || format!("cycle {a:?} reported finite"))
    } else {
        let out = stable_index(a, HorizonPolicy::ExplicitCap { cap: n }).map_err(|e| e.to_string())?;
        check(out.is_finite(), || format!("irreducible non-cycle with theta > {n}:\n{a}"))
    }
}

/// Irreducible `A` has `θ = ∞` iff `D(A)` is the `n`-cycle, and `θ ≤ n`
/// otherwise. Exhaustive for `n ≤ 4`, `trials` random samples beyond.
pub fn verify_lemma8(n: usize, trials: usize, seed: u64) -> Result<LemmaReport> {
    if n < 2 {
        return Err(Error::OrderTooSmall {
            n,
            min: 2,
            what: "the irreducible bound",
        });
    }
    if n <= 4 {
        let mut report = LemmaReport::new("lemma8", format!("n={n}, exhaustive"));
        let results: Vec<_> = (0..1u64 << (n * n))
            .into_par_iter()
            .filter_map(|code| {
                let a = BoolMatrix::from_code(n, code);
                a.is_irreducible().then(|| lemma8_case(&a))
            })
            .collect();
        report.absorb(results);
        return Ok(report);
    }
    let mut report = LemmaReport::new("lemma8", format!("n={n}, {trials} random, seed={seed:#x}"));
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ n as u64);
    let samples: Vec<BoolMatrix> = (0..trials).map(|_| random_irreducible(n, &mut rng)).collect();
    let results: Vec<_> = samples
        .par_iter()
        .map(|a| {
            check(a.is_irreducible(), || format!("generator produced reducible {a:?}"))?;
            lemma8_case(a)
        })
        .collect();
    report.absorb(results);
    Ok(report)
}

/// `θ(g(p,k,q)) ≤ lcm(p,q) + k − 2` over the grid.
pub fn verify_eq3(p_max: usize, q_max: usize, k_max: usize) -> LemmaReport {
    let mut report = LemmaReport::new("eq3", format!("2<=p<={p_max}, 2<=q<={q_max}, 2<=k<={k_max}"));
    let grid: Vec<(usize, usize, usize)> = (2..=p_max)
        .flat_map(|p| (2..=q_max).flat_map(move |q| (2..=k_max).map(move |k| (p, k, q))))
        .collect();
    let results: Vec<_> = grid
        .par_iter()
        .map(|&(p, k, q)| {
            let bound = p.lcm(&q) + k - 2;
            let a = glasses_matrix(p, k, q).map_err(|e| e.to_string())?;
            let out = stable_index(&a, HorizonPolicy::ExplicitCap { cap: bound }).map_err(|e| e.to_string())?;
            check(out.is_finite(), || format!("theta(g({p},{k},{q})) > {bound}"))
        })
        .collect();
    report.absorb(results);
    report
}

/// `B = [[C_p, X], [0, C_q]]`.
pub fn block_glasses(p: usize, q: usize, ones: &[(usize, usize)]) -> BoolMatrix {
    let n = p + q;
    let mut b = BoolMatrix::zeros(n);
    for i in 0..p {
        b.set(i, (i + 1) % p, true);
    }
    for i in 0..q {
        b.set(p + i, p + (i + 1) % q, true);
    }
    for &(i, j) in ones {
        b.set(i, p + j, true);
    }
    b
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairCoverage {
    /// Every two-entry `X`.
    Exhaustive,
    /// Exhaustive up to [`LEMMA4_EXHAUSTIVE_PAIRS`] position pairs, else a
    /// fixed-seed sample of [`LEMMA4_SAMPLED_PAIRS`].
    Auto,
}

pub const LEMMA4_EXHAUSTIVE_PAIRS: usize = 400;
pub const LEMMA4_SAMPLED_PAIRS: usize = 1000;

/// Single-entry `X` attains `pq = g(p+q)` exactly for the extremal pair
/// (and then `D(B)` is `g(p,q)`), and stays below `g(p+q)` otherwise. Any
/// `X` with two ones gives `θ(B) < pq`.
pub fn verify_lemma4(p: usize, q: usize, coverage: PairCoverage, seed: u64) -> Result<LemmaReport> {
    let n = p + q;
    if n < MIN_EXTREMAL_ORDER || p == 0 || q == 0 {
        return Err(Error::OrderTooSmall {
            n,
            min: MIN_EXTREMAL_ORDER,
            what: "the block-glasses bound",
        });
    }
    let g = g_of(n) as usize;
    let (ep, eq) = extremal_pair(n)?;
    let is_pair = (p, q) == (ep, eq) || (p, q) == (eq, ep);
    let mut report = LemmaReport::new("lemma4", format!("p={p}, q={q}, g({n})={g}, extremal pair: {is_pair}"));

    let singles: Vec<(usize, usize)> = (0..p).flat_map(|i| (0..q).map(move |j| (i, j))).collect();
    let results: Vec<_> = singles
        .par_iter()
        .map(|&(i, j)| {
            let b = block_glasses(p, q, &[(i, j)]);
            let t = theta(&b);
            if is_pair {
                check(t == Some(p * q), || format!("single X at ({},{}): theta {t:?} != {}", i + 1, j + 1, p * q))?;
                let shape = recognize_glasses(&Digraph::from_matrix(&b)).map(|s| s.shape());
                check(shape == Some((p, 2, q)), || format!("single X at ({},{}) not recognized: {shape:?}", i + 1, j + 1))
            } else {
                check(t.is_some_and(|t| t < g), || format!("single X at ({},{}): theta {t:?} not < {g}", i + 1, j + 1))
            }
        })
        .collect();
    report.absorb(results);

    let all_pairs: Vec<[(usize, usize); 2]> = (0..singles.len())
        .flat_map(|a| ((a + 1)..singles.len()).map(move |b| (a, b)))
        .map(|(a, b)| [singles[a], singles[b]])
        .collect();
    let pairs = if coverage == PairCoverage::Exhaustive || all_pairs.len() <= LEMMA4_EXHAUSTIVE_PAIRS {
        all_pairs
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        report.notes.push(format!("two-entry X sampled: {LEMMA4_SAMPLED_PAIRS} pairs, seed={seed:#x}"));
        all_pairs
            .choose_multiple(&mut rng, LEMMA4_SAMPLED_PAIRS)
            .copied()
            .collect()
    };
    let results: Vec<_> = pairs
        .par_iter()
        .map(|ones| {
            let t = theta(&block_glasses(p, q, ones));
            check(t.is_some_and(|t| t < p * q), || format!("two-entry X {ones:?}: theta {t:?} not < {}", p * q))
        })
        .collect();
    report.absorb(results);
    Ok(report)
}

/// `φ(r) ≥ φ(s)` for `7 ≤ r ≤ r_max`, `s < r`, with equality only at
/// `(10, 9)`, plus the tabulated values `φ(1..=10)`.
pub fn verify_lemma5(r_max: usize) -> Result<LemmaReport> {
    if r_max < 10 {
        return Err(Error::OrderTooSmall {
            n: r_max,
            min: 10,
            what: "the phi monotonicity check",
        });
    }
    let mut report = LemmaReport::new("lemma5", format!("7 <= r <= {r_max}, 1 <= s < r"));
    const TABLE: [i64; 10] = [-1, -5, -1, -1, 1, -1, 5, 7, 11, 11];
    report.absorb(
        TABLE
            .iter()
            .enumerate()
            .map(|(i, &v)| check(phi(i + 1) == v, || format!("phi({}) = {} != {v}", i + 1, phi(i + 1)))),
    );
    let mut equalities = Vec::new();
    let mut results = Vec::new();
    for r in MIN_EXTREMAL_ORDER..=r_max {
        for s in 1..r {
            let (a, b) = (phi(r), phi(s));
            if a == b {
                equalities.push((r, s));
            }
            results.push(check(a > b || (a == b && (r, s) == (10, 9)), || {
                format!("phi({r}) = {a} vs phi({s}) = {b}")
            }));
        }
    }
    report.absorb(results);
    report.absorb([check(equalities == [(10, 9)], || format!("equality cases {equalities:?}"))]);
    report.notes.push(format!("equality at {equalities:?}"));
    Ok(report)
}

/// Every `g(p,k,q)` with `p, q ≥ 2` on exactly `n` vertices.
pub fn glasses_shapes(n: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for k in 2..=n {
        let pq = n + 2 - k;
        for p in 2..pq.saturating_sub(1) {
            out.push((p, k, pq - p));
        }
    }
    out
}

/// Census members attain `g(n)`; every other glasses-family digraph on `n`
/// vertices falls short; plus the `n = 10` exceptional checks.
pub fn verify_theorem1(n_max: usize) -> Result<LemmaReport> {
    if n_max < MIN_EXTREMAL_ORDER {
        return Err(Error::OrderTooSmall {
            n: n_max,
            min: MIN_EXTREMAL_ORDER,
            what: "the extremal census",
        });
    }
    if n_max > 24 {
        return Err(Error::OrderTooLarge {
            n: n_max,
            max: 24,
            what: "the glasses sweep",
        });
    }
    let mut report = LemmaReport::new("theorem1", format!("7 <= n <= {n_max}"));
    for n in MIN_EXTREMAL_ORDER..=n_max {
        let census = extremal_census(n)?;
        let g = census.g_value;
        let results: Vec<_> = census
            .family
            .par_iter()
            .map(|s| {
                let t = theta(&glasses_matrix(s.p, s.k, s.q).map_err(|e| e.to_string())?);
                check(t == Some(g), || format!("n={n}: census {s} has theta {t:?} != {g}"))
            })
            .collect();
        report.absorb(results);
        let results: Vec<_> = glasses_shapes(n)
            .into_par_iter()
            .filter(|&shape| !census.contains_shape(shape))
            .map(|(p, k, q)| {
                let t = theta(&glasses_matrix(p, k, q).map_err(|e| e.to_string())?);
                check(t.is_some_and(|t| t < g), || format!("n={n}: g({p},{k},{q}) has theta {t:?}, not < {g}"))
            })
            .collect();
        report.absorb(results);
    }
    if n_max >= 10 {
        let expect = [((4, 3, 5), true), ((5, 3, 4), true), ((5, 2, 5), false), ((4, 2, 6), false)];
        report.absorb(expect.iter().map(|&((p, k, q), attains)| {
            let t = glasses_matrix(p, k, q).ok().and_then(|a| theta(&a));
            check((t == Some(21)) == attains, || format!("n=10: g({p},{k},{q}) has theta {t:?}"))
        }));
        let attaining = glasses_shapes(10)
            .into_iter()
            .filter(|&(p, k, q)| glasses_matrix(p, k, q).ok().and_then(|a| theta(&a)) == Some(21))
            .count();
        report.absorb([check(attaining == 4, || format!("n=10: {attaining} glasses digraphs attain 21"))]);
    }
    Ok(report)
}

/// Digraphs containing a copy of some `g(p,k,q)` (with `p, q ≥ 1`): the
/// glasses on `m ≤ n` vertices padded with isolated vertices, and each of
/// those with one extra arc. All stay at or below `g(n)` and only census
/// members reach it.
pub fn verify_lemma9(n_max: usize) -> Result<LemmaReport> {
    if !(MIN_EXTREMAL_ORDER..=8).contains(&n_max) {
        return Err(Error::OrderTooLarge {
            n: n_max,
            max: 8,
            what: "single-arc augmentation sweep",
        });
    }
    let mut report = LemmaReport::new("lemma9", format!("7 <= n <= {n_max}, glasses plus one arc"));
    for n in MIN_EXTREMAL_ORDER..=n_max {
        let census = extremal_census(n)?;
        let g = census.g_value;
        let mut bases = Vec::new();
        for k in 2..=n {
            for p in 1..=n {
                for q in 1..=n {
                    if p + q + k - 2 <= n {
                        let (d, _) = build_glasses(p, k, q)?;
                        bases.push(Digraph::new(n, d.arcs())?);
                    }
                }
            }
        }
        let cases: Vec<Digraph> = bases
            .iter()
            .flat_map(|d| {
                let extra = (0..n * n).filter_map(move |c| {
                    let (u, v) = (c / n, c % n);
                    let mut e = d.clone();
                    e.add_arc(u, v).ok()?.then_some(e)
                });
                std::iter::once(d.clone()).chain(extra)
            })
            .collect();
        let results: Vec<_> = cases
            .par_iter()
            .map(|d| {
                let t = theta(&d.to_matrix());
                let member = recognize_glasses(d).is_some_and(|s| census.contains_shape(s.shape()));
                match t {
                    Some(t) if t > g => Err(format!("n={n}: theta {t} > g = {g} for arcs {:?}", d.arcs().collect::<Vec<_>>())),
                    Some(t) if (t == g) != member => Err(format!("n={n}: theta {t}, census member {member}")),
                    _ => Ok(()),
                }
            })
            .collect();
        report.absorb(results);
    }
    report.notes.push("only single-arc augmentations are covered".into());
    Ok(report)
}

/// Wrapper so callers can run a fixed-policy comparison on one matrix.
pub fn outcomes_agree(a: &BoolMatrix) -> Result<bool> {
    let bound = stable_index(a, HorizonPolicy::TheoremBound)?;
    let cycle = stable_index(a, HorizonPolicy::CycleDetect)?;
    Ok(match (bound, cycle) {
        (StableIndexOutcome::Finite { theta: x, witness: w }, StableIndexOutcome::Finite { theta: y, witness: v }) => {
            x == y && w == v
        }
        (StableIndexOutcome::Infinite { .. }, StableIndexOutcome::Infinite { .. }) => true,
        _ => false,
    })
}
