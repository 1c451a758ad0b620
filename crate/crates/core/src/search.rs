//! Exhaustive search of `M_n{0,1}` for the largest finite stable index.
//!
//! The space `[0, 2^{n²})` of row-major codes is cut into contiguous shards.
//! Each shard is scanned independently with a fixed-width kernel and
//! produces a partial [`SearchReport`]; merging is associative and
//! commutative, so the final report does not depend on the shard count or
//! on scheduling.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bitmatrix::BoolMatrix;
use crate::error::{Error, Result};
use crate::extremal::{g_as_coprime_max, g_of};
use crate::oracle;
use crate::stable_index::{cycle_detect_limit, max_finite_theta, stable_index, HorizonPolicy};

pub const MIN_SEARCH_ORDER: usize = 2;
pub const MAX_SEARCH_ORDER: usize = 6;
/// Orders above this need [`SearchOptions::allow_long_run`].
pub const MAX_UNGATED_ORDER: usize = 5;
pub const MAX_CANONICAL_ORDER: usize = 8;

/// Horizon used while scanning: `g(n) + n`, clamped to at least `n`. Chosen
/// independently of the table being reproduced.
pub fn search_cap(n: usize) -> usize {
    (g_of(n) + n as i64).max(n as i64) as usize
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ShardSpec {
    pub index: u64,
    pub count: u64,
}

impl ShardSpec {
    pub fn new(index: u64, count: u64) -> Result<Self> {
        if count == 0 || index >= count {
            return Err(Error::InvalidShard { index, count });
        }
        Ok(ShardSpec { index, count })
    }

    pub fn whole() -> Self {
        ShardSpec { index: 0, count: 1 }
    }

    /// Half-open code range `[start, end)` covered by this shard. For a
    /// power-of-two count this is a fixed prefix of high bits.
    pub fn range(&self, n: usize) -> (u64, u64) {
        let total = 1u128 << (n * n);
        let at = |i: u64| (total * i as u128 / self.count as u128) as u64;
        (at(self.index), at(self.index + 1))
    }

    pub fn file_name(&self) -> String {
        format!("shard-{}-of-{}.json", self.index, self.count)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub n: usize,
    /// Horizon used for the scan.
    pub cap: usize,
    /// Largest finite stable index seen; 0 if none.
    pub s_value: usize,
    /// Canonical forms attaining `s_value`, as row strings, sorted.
    pub extremal_matrices: Vec<Vec<String>>,
    /// Number of labeled matrices per finite stable index.
    pub counts: BTreeMap<usize, u64>,
    /// Matrices still 0-1 at the horizon.
    pub infinite: u64,
    /// Of those, how many a power cycle confirmed.
    pub cycle_confirmed: u64,
    /// Matrices that were 0-1 at the horizon yet turned out finite.
    pub horizon_escapes: u64,
    pub matrices_scanned: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shard: Option<ShardSpec>,
}

impl SearchReport {
    pub fn empty(n: usize) -> Self {
        SearchReport {
            n,
            cap: search_cap(n),
            s_value: 0,
            extremal_matrices: Vec::new(),
            counts: BTreeMap::new(),
            infinite: 0,
            cycle_confirmed: 0,
            horizon_escapes: 0,
            matrices_scanned: 0,
            shard: None,
        }
    }

    pub fn extremal_bool_matrices(&self) -> Vec<BoolMatrix> {
        self.extremal_matrices
            .iter()
            .map(|rows| BoolMatrix::from_rows(rows).expect("report rows are well formed"))
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[derive(Debug, Clone, Default)]
pub struct SearchOptions {
    /// Permits `n = 6` (`2^36` matrices).
    pub allow_long_run: bool,
    /// Directory for per-shard checkpoint files.
    pub resume_dir: Option<PathBuf>,
}

fn check_order(n: usize, opts: &SearchOptions) -> Result<()> {
    if n < MIN_SEARCH_ORDER {
        return Err(Error::OrderTooSmall {
            n,
            min: MIN_SEARCH_ORDER,
            what: "exhaustive search",
        });
    }
    if n > MAX_SEARCH_ORDER {
        return Err(Error::OrderTooLarge {
            n,
            max: MAX_SEARCH_ORDER,
            what: "exhaustive search",
        });
    }
    if n > MAX_UNGATED_ORDER && !opts.allow_long_run {
        return Err(Error::LongRunNotAllowed);
    }
    Ok(())
}

/// A value the global maximum always reaches: a glasses digraph on a
/// coprime split `p + q = n` has stable index `pq`. Shards whose own maximum
/// is below it cannot contribute maximizers, and skipping them keeps shards
/// where almost everything has `θ = 1` from hoarding candidates.
fn extremal_floor(n: usize) -> usize {
    g_as_coprime_max(n).map_or(1, |(v, _)| v)
}

/// Scans one shard of `M_n{0,1}`. `extremal_matrices` stays empty when the
/// shard's maximum is below [`extremal_floor`].
pub fn enumerate_s(n: usize, shard: ShardSpec, opts: &SearchOptions) -> Result<SearchReport> {
    check_order(n, opts)?;
    let shard = ShardSpec::new(shard.index, shard.count)?;
    let cap = search_cap(n);
    let (start, end) = shard.range(n);
    let mut counts = vec![0u64; cap + 1];
    let mut best = 0usize;
    let mut best_codes: Vec<u64> = Vec::new();
    let floor = extremal_floor(n);
    let mut compact_at = 1usize << 16;
    let perms = small::all_permutations(n);
    let mut report = SearchReport::empty(n);

    for code in start..end {
        let a = small::Small::from_code(n, code);
        let theta = match a.theta_capped(cap) {
            Some(t) => Some(t),
            None => {
                report.infinite += 1;
                match a.cycle_detect() {
                    small::CycleOutcome::Cycle => {
                        report.cycle_confirmed += 1;
                        None
                    }
                    small::CycleOutcome::Finite(t) => {
                        report.infinite -= 1;
                        report.horizon_escapes += 1;
                        Some(t)
                    }
                    small::CycleOutcome::Inconclusive => None,
                }
            }
        };
        let Some(t) = theta else { continue };
        if t >= counts.len() {
            counts.resize(t + 1, 0);
        }
        counts[t] += 1;
        if t > best {
            best = t;
            best_codes.clear();
        }
        if t == best && t >= floor {
            best_codes.push(code);
            if best_codes.len() >= compact_at {
                canonicalize_codes(n, &mut best_codes, &perms);
                if best_codes.len() * 2 >= compact_at {
                    compact_at *= 2;
                }
            }
        }
    }

    report.matrices_scanned = end - start;
    report.s_value = best;
    report.counts = counts
        .into_iter()
        .enumerate()
        .filter(|&(_, c)| c > 0)
        .map(|(t, c)| (t, c))
        .collect();
    canonicalize_codes(n, &mut best_codes, &perms);
    report.extremal_matrices = best_codes
        .into_iter()
        .map(|c| rows_of(&BoolMatrix::from_code(n, c)))
        .collect();
    report.shard = Some(shard);
    Ok(report)
}

fn canonicalize_codes(n: usize, codes: &mut Vec<u64>, perms: &[Vec<usize>]) {
    for c in codes.iter_mut() {
        *c = small::canonical_code(n, *c, perms);
    }
    codes.sort_unstable();
    codes.dedup();
}

fn rows_of(a: &BoolMatrix) -> Vec<String> {
    a.to_string().lines().map(str::to_owned).collect()
}

/// Combines partial reports. Parts must agree on `n` and the horizon, and
/// if they carry shard specs those must be distinct shards of one
/// partition.
pub fn merge_reports(parts: &[SearchReport]) -> Result<SearchReport> {
    let first = parts
        .first()
        .ok_or_else(|| Error::InconsistentReports("no parts to merge".into()))?;
    let mut out = SearchReport::empty(first.n);
    out.cap = first.cap;
    let mut shard_count = None;
    let mut seen_shards = std::collections::BTreeSet::new();
    for part in parts {
        if part.n != first.n || part.cap != first.cap {
            return Err(Error::InconsistentReports(format!(
                "n/cap {}/{} vs {}/{}",
                part.n, part.cap, first.n, first.cap
            )));
        }
        if let Some(s) = part.shard {
            if *shard_count.get_or_insert(s.count) != s.count {
                return Err(Error::InconsistentReports("mixed shard counts".into()));
            }
            if !seen_shards.insert(s.index) {
                return Err(Error::InconsistentReports(format!("shard {} repeated", s.index)));
            }
        }
    }
    out.s_value = parts.iter().map(|p| p.s_value).max().unwrap_or(0);
    let mut extremal: Vec<Vec<String>> = parts
        .iter()
        .filter(|p| p.s_value == out.s_value && out.s_value > 0)
        .flat_map(|p| p.extremal_matrices.iter().cloned())
        .collect();
    extremal.sort();
    extremal.dedup();
    out.extremal_matrices = extremal;
    for part in parts {
        for (&t, &c) in &part.counts {
            *out.counts.entry(t).or_insert(0) += c;
        }
        out.infinite += part.infinite;
        out.cycle_confirmed += part.cycle_confirmed;
        out.horizon_escapes += part.horizon_escapes;
        out.matrices_scanned += part.matrices_scanned;
    }
    Ok(out)
}

fn load_checkpoint(path: &Path, n: usize, shard: ShardSpec) -> Option<SearchReport> {
    let text = fs::read_to_string(path).ok()?;
    let report: SearchReport = serde_json::from_str(&text).ok()?;
    (report.n == n && report.shard == Some(shard) && report.cap == search_cap(n)).then_some(report)
}

fn write_checkpoint(dir: &Path, report: &SearchReport, shard: ShardSpec) -> Result<()> {
    let path = dir.join(shard.file_name());
    let tmp = dir.join(format!(".{}.tmp", shard.file_name()));
    fs::write(&tmp, report.to_json())?;
    fs::rename(&tmp, &path)?;
    Ok(())
}

/// Runs the given shards (all of them when `indices` is `None`) in parallel,
/// reusing and writing checkpoints when a resume directory is set, and
/// merges the results.
pub fn run_search(n: usize, shard_count: u64, indices: Option<&[u64]>, opts: &SearchOptions) -> Result<SearchReport> {
    check_order(n, opts)?;
    let shards: Vec<ShardSpec> = match indices {
        Some(ix) => ix.iter().map(|&i| ShardSpec::new(i, shard_count)).collect::<Result<_>>()?,
        None => (0..shard_count).map(|i| ShardSpec::new(i, shard_count)).collect::<Result<_>>()?,
    };
    if let Some(dir) = &opts.resume_dir {
        fs::create_dir_all(dir)?;
    }
    let parts = shards
        .par_iter()
        .map(|&shard| {
            if let Some(dir) = &opts.resume_dir {
                if let Some(done) = load_checkpoint(&dir.join(shard.file_name()), n, shard) {
                    return Ok(done);
                }
            }
            let report = enumerate_s(n, shard, opts)?;
            if let Some(dir) = &opts.resume_dir {
                write_checkpoint(dir, &report, shard)?;
            }
            Ok(report)
        })
        .collect::<Result<Vec<_>>>()?;
    merge_reports(&parts)
}

/// Lexicographically smallest row-major encoding over all simultaneous
/// row/column permutations.
pub fn canonical_form(a: &BoolMatrix) -> Result<BoolMatrix> {
    let n = a.n();
    if n > MAX_CANONICAL_ORDER {
        return Err(Error::OrderTooLarge {
            n,
            max: MAX_CANONICAL_ORDER,
            what: "canonical form",
        });
    }
    let perms = small::all_permutations(n);
    Ok(BoolMatrix::from_code(n, small::canonical_code(n, a.code(), &perms)))
}

/// Compares the engine against walk enumeration on every matrix of order
/// `n ≤ 4`, using the same horizon for both.
pub fn cross_check_small(n: usize) -> Result<bool> {
    if n == 0 || n > 4 {
        return Err(Error::OrderTooLarge {
            n,
            max: 4,
            what: "walk-enumeration cross-check",
        });
    }
    let horizon = if n == 1 { 2 } else { max_finite_theta(n)? };
    Ok((0..1u64 << (n * n)).into_par_iter().all(|code| {
        let a = BoolMatrix::from_code(n, code);
        let engine = stable_index(&a, HorizonPolicy::TheoremBound).map(|o| o.theta());
        engine == Ok(oracle::theta_by_walk_enumeration(&a, horizon))
    }))
}

/// Fixed-width kernel for `n ≤ 8`: one byte per row.
pub(crate) mod small {
    use super::cycle_detect_limit;

    /// Row `i` holds entry `(i, j)` at bit `n − 1 − j`, which makes the
    /// row-major code of the whole matrix a plain concatenation of rows.
    #[derive(Debug, Clone, Copy, PartialEq, Eq)]
    pub struct Small {
        n: usize,
        rows: [u8; 8],
    }

    pub enum CycleOutcome {
        Finite(usize),
        Cycle,
        Inconclusive,
    }

    impl Small {
        #[inline]
        pub fn from_code(n: usize, code: u64) -> Self {
            let mask = ((1u16 << n) - 1) as u64;
            let mut rows = [0u8; 8];
            for (i, r) in rows.iter_mut().enumerate().take(n) {
                *r = ((code >> (n * (n - 1 - i))) & mask) as u8;
            }
            Small { n, rows }
        }

        #[inline]
        fn key(&self) -> u64 {
            u64::from_le_bytes(self.rows)
        }

        /// `self · rhs` if it is 0-1.
        #[inline]
        fn mul(&self, rhs: &Small) -> Option<Small> {
            let n = self.n;
            let mut rows = [0u8; 8];
            for i in 0..n {
                let mut sel = self.rows[i];
                let mut seen = 0u8;
                let mut dup = 0u8;
                while sel != 0 {
                    let b = sel.trailing_zeros() as usize;
                    sel &= sel - 1;
                    let r = rhs.rows[n - 1 - b];
                    dup |= seen & r;
                    seen |= r;
                }
                if dup != 0 {
                    return None;
                }
                rows[i] = seen;
            }
            Some(Small { n, rows })
        }

        /// `θ` if it is at most `cap`.
        #[inline]
        pub fn theta_capped(&self, cap: usize) -> Option<usize> {
            let mut p = *self;
            for m in 1..=cap {
                p = match p.mul(self) {
                    Some(next) => next,
                    None => return Some(m),
                };
            }
            None
        }

        pub fn cycle_detect(&self) -> CycleOutcome {
            let limit = cycle_detect_limit(self.n);
            let mut seen = vec![self.key()];
            let mut p = *self;
            let mut m = 1;
            loop {
                p = match p.mul(self) {
                    Some(next) => next,
                    None => return CycleOutcome::Finite(m),
                };
                let key = p.key();
                if seen.contains(&key) {
                    return CycleOutcome::Cycle;
                }
                if seen.len() >= limit {
                    return CycleOutcome::Inconclusive;
                }
                seen.push(key);
                m += 1;
            }
        }
    }

    pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
        // Heap's algorithm
        let mut perm: Vec<usize> = (0..n).collect();
        let mut c = vec![0usize; n];
        let mut out = vec![perm.clone()];
        let mut i = 0;
        while i < n {
            if c[i] < i {
                if i % 2 == 0 {
                    perm.swap(0, i);
                } else {
                    perm.swap(c[i], i);
                }
                out.push(perm.clone());
                c[i] += 1;
                i = 0;
            } else {
                c[i] = 0;
                i += 1;
            }
        }
        out
    }

    pub fn canonical_code(n: usize, code: u64, perms: &[Vec<usize>]) -> u64 {
        let nn = n * n;
        let bit = |i: usize, j: usize| (code >> (nn - 1 - (i * n + j))) & 1;
        let mut best: Option<u64> = None;
        'perm: for p in perms {
            let mut c = 0u64;
            for i in 0..n {
                for j in 0..n {
                    c = (c << 1) | bit(p[i], p[j]);
                }
                // rows are emitted most significant first: a prefix above the
                // best one cannot win
                if let Some(b) = best {
                    if c > b >> (nn - n * (i + 1)) {
                        continue 'perm;
                    }
                }
            }
            if best.is_none_or(|b| c < b) {
                best = Some(c);
            }
        }
        best.unwrap_or(code)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floor_never_exceeds_the_maximum() {
        for n in MIN_SEARCH_ORDER..=MAX_SEARCH_ORDER {
            assert!(extremal_floor(n) <= max_finite_theta(n).unwrap(), "n = {n}");
        }
        // the last shard at n = 4 (first row all ones) tops out below the floor
        let last = enumerate_s(4, ShardSpec::new(15, 16).unwrap(), &SearchOptions::default()).unwrap();
        assert!(last.s_value < extremal_floor(4));
        assert!(last.extremal_matrices.is_empty());
    }

    #[test]
    fn shard_ranges_partition() {
        for n in 2..=4 {
            for count in [1u64, 3, 4, 7, 16] {
                let mut next = 0;
                for i in 0..count {
                    let (s, e) = ShardSpec::new(i, count).unwrap().range(n);
                    assert_eq!(s, next);
                    assert!(e >= s);
                    next = e;
                }
                assert_eq!(next, 1 << (n * n));
            }
        }
        assert!(ShardSpec::new(4, 4).is_err());
        assert!(ShardSpec::new(0, 0).is_err());
        // power-of-two counts split on the high bits
        assert_eq!(ShardSpec::new(1, 4).unwrap().range(3), (128, 256));
    }

    #[test]
    fn small_kernel_matches_engine() {
        for n in 2..=3 {
            for code in 0..(1u64 << (n * n)) {
                let a = BoolMatrix::from_code(n, code);
                let engine = stable_index(&a, HorizonPolicy::ExplicitCap { cap: search_cap(n) })
                    .unwrap()
                    .theta();
                assert_eq!(small::Small::from_code(n, code).theta_capped(search_cap(n)), engine, "{a:?}");
            }
        }
    }

    #[test]
    fn canonical_form_examples() {
        assert_eq!(canonical_form(&BoolMatrix::identity(4)).unwrap(), BoolMatrix::identity(4));
        let c3 = crate::digraph::circulant(3);
        let canon = canonical_form(&c3).unwrap();
        assert_eq!(canonical_form(&c3.transpose()).unwrap(), canon);
        assert!(canonical_form(&BoolMatrix::zeros(9)).is_err());
    }

    #[test]
    fn small_orders() {
        let opts = SearchOptions::default();
        let r = enumerate_s(2, ShardSpec::whole(), &opts).unwrap();
        assert_eq!(r.s_value, 1);
        assert_eq!(r.matrices_scanned, 16);
        assert!(r.extremal_matrices.contains(&vec!["11".to_string(), "11".to_string()]));
        let r = enumerate_s(3, ShardSpec::whole(), &opts).unwrap();
        assert_eq!(r.s_value, 3);
        assert_eq!(r.horizon_escapes, 0);
        assert_eq!(r.infinite, r.cycle_confirmed);
    }

    #[test]
    fn gating() {
        let opts = SearchOptions::default();
        assert_eq!(enumerate_s(6, ShardSpec::whole(), &opts).unwrap_err(), Error::LongRunNotAllowed);
        assert!(enumerate_s(1, ShardSpec::whole(), &opts).is_err());
        assert!(enumerate_s(7, ShardSpec::whole(), &opts).is_err());
    }

    #[test]
    fn merge_rejects_inconsistent_parts() {
        let a = enumerate_s(2, ShardSpec::new(0, 2).unwrap(), &SearchOptions::default()).unwrap();
        let b = enumerate_s(3, ShardSpec::new(1, 2).unwrap(), &SearchOptions::default()).unwrap();
        assert!(merge_reports(&[a.clone(), b]).is_err());
        assert!(merge_reports(&[a.clone(), a.clone()]).is_err());
        assert_eq!(merge_reports(&[a.clone()]).unwrap().s_value, a.s_value);
        assert!(merge_reports(&[]).is_err());
    }
}
