//! Brute-force reference computations that share no code path with the
//! power-iteration engine: walks are enumerated one by one by depth-first
//! search.

use crate::bitmatrix::BoolMatrix;

/// Counts walks of length exactly `len` from `start`, stopping as soon as
/// some endpoint is reached twice. Returns that endpoint if so.
fn first_double_endpoint(a: &BoolMatrix, start: usize, len: usize) -> Option<usize> {
    fn dfs(a: &BoolMatrix, v: usize, rem: usize, hits: &mut [u8]) -> Option<usize> {
        if rem == 0 {
            hits[v] += 1;
            return (hits[v] >= 2).then_some(v);
        }
        for w in 0..a.n() {
            if a.get(v, w) {
                if let Some(hit) = dfs(a, w, rem - 1, hits) {
                    return Some(hit);
                }
            }
        }
        None
    }
    let mut hits = vec![0u8; a.n()];
    dfs(a, start, len, &mut hits)
}

/// `θ(A)` from walk enumeration: the first length `L ≤ horizon + 1` at which
/// two distinct `L`-walks share both endpoints gives `θ = L − 1`. `None`
/// when no such length exists up to the horizon.
pub fn theta_by_walk_enumeration(a: &BoolMatrix, horizon: usize) -> Option<usize> {
    (1..=horizon + 1).find_map(|len| {
        (0..a.n())
            .any(|s| first_double_endpoint(a, s, len).is_some())
            .then(|| len - 1)
    })
    .filter(|&t| t >= 1)
}

/// Every walk of length `len` from `i` to `j`, in lexicographic order.
pub fn enumerate_walks(a: &BoolMatrix, i: usize, j: usize, len: usize) -> Vec<Vec<usize>> {
    fn dfs(a: &BoolMatrix, j: usize, rem: usize, walk: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let v = *walk.last().expect("walk is never empty");
        if rem == 0 {
            if v == j {
                out.push(walk.clone());
            }
            return;
        }
        for w in 0..a.n() {
            if a.get(v, w) {
                walk.push(w);
                dfs(a, j, rem - 1, walk, out);
                walk.pop();
            }
        }
    }
    let mut out = Vec::new();
    dfs(a, j, len, &mut vec![i], &mut out);
    out
}

/// Vertices reachable from `v` (including `v`) by breadth-first search.
pub fn reachable_from(a: &BoolMatrix, v: usize) -> Vec<bool> {
    let mut seen = vec![false; a.n()];
    let mut queue = std::collections::VecDeque::from([v]);
    seen[v] = true;
    while let Some(u) = queue.pop_front() {
        for w in 0..a.n() {
            if a.get(u, w) && !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    seen
}
