//! Digraphs `D(A)`, the basic circulant, and the glasses family `g(p,k,q)`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::bitmatrix::{BlockKind, BoolMatrix};
use crate::error::{Error, Result};

/// Largest order accepted by [`is_isomorphic`].
pub const MAX_ISOMORPHISM_ORDER: usize = 12;

/// Vertex count plus a duplicate-free arc set. Loops are allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Digraph {
    n: usize,
    arcs: BTreeSet<(usize, usize)>,
}

impl Digraph {
    pub fn new(n: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (u, v) in arcs {
            if u >= n || v >= n || !set.insert((u, v)) {
                return Err(Error::InvalidArc(u, v));
            }
        }
        Ok(Digraph { n, arcs: set })
    }

    pub fn empty(n: usize) -> Self {
        Digraph {
            n,
            arcs: BTreeSet::new(),
        }
    }

    /// `D(A)`: arc `(i, j)` iff `A(i, j) = 1`.
    pub fn from_matrix(a: &BoolMatrix) -> Self {
        Digraph {
            n: a.n(),
            arcs: a.ones_positions().collect(),
        }
    }

    /// The adjacency matrix `A_D`.
    pub fn to_matrix(&self) -> BoolMatrix {
        let mut m = BoolMatrix::zeros(self.n);
        for &(u, v) in &self.arcs {
            m.set(u, v, true);
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.arcs.iter().copied()
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.arcs.contains(&(u, v))
    }

    /// Adds an arc; returns false if it was already present.
    pub fn add_arc(&mut self, u: usize, v: usize) -> Result<bool> {
        if u >= self.n || v >= self.n {
            return Err(Error::InvalidArc(u, v));
        }
        Ok(self.arcs.insert((u, v)))
    }

    pub fn out_degree(&self, u: usize) -> usize {
        self.arcs.range((u, 0)..(u + 1, 0)).count()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.arcs.iter().filter(|&&(_, w)| w == v).count()
    }

    /// Reverses every arc.
    pub fn reverse(&self) -> Self {
        Digraph {
            n: self.n,
            arcs: self.arcs.iter().map(|&(u, v)| (v, u)).collect(),
        }
    }
}

/// `C_n`: ones on the superdiagonal plus the corner `(n−1, 0)`. `C_1 = [1]`.
pub fn circulant(n: usize) -> BoolMatrix {
    BoolMatrix::from_fn(n, |i, j| j == (i + 1) % n)
}

/// Parameters and labeling of a `g(p,k,q)`: a `p`-cycle and a disjoint
/// `q`-cycle joined by a path of length `k−1` from `left_attach` through
/// `path_vertices` to `right_attach`. `k = 2` is the glasses digraph
/// `g(p,q)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GlassesSpec {
    pub p: usize,
    pub k: usize,
    pub q: usize,
    pub left_attach: usize,
    pub right_attach: usize,
    pub path_vertices: Vec<usize>,
}

impl GlassesSpec {
    /// `(p, k, q)`; the isomorphism class.
    pub fn shape(&self) -> (usize, usize, usize) {
        (self.p, self.k, self.q)
    }

    pub fn vertex_count(&self) -> usize {
        self.p + self.q + self.k - 2
    }

    pub fn arc_count(&self) -> usize {
        self.p + self.q + self.k - 1
    }

    pub fn is_glasses(&self) -> bool {
        self.k == 2
    }
}

impl std::fmt::Display for GlassesSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.k == 2 {
            write!(f, "g({},{})", self.p, self.q)
        } else {
            write!(f, "g({},{},{})", self.p, self.k, self.q)
        }
    }
}

/// Canonical `g(p,k,q)`: vertices `0..p` form the left cycle, the next
/// `k−2` the connector interior, the rest the right cycle. The connector
/// starts at vertex 0 and ends at the first right-cycle vertex.
pub fn build_glasses(p: usize, k: usize, q: usize) -> Result<(Digraph, GlassesSpec)> {
    if p == 0 || q == 0 || k < 2 {
        return Err(Error::InvalidGlasses { p, k, q });
    }
    let n = p + q + k - 2;
    let right = p + k - 2;
    let mut arcs = Vec::with_capacity(n + 1);
    for i in 0..p {
        arcs.push((i, (i + 1) % p));
    }
    for i in 0..q {
        arcs.push((right + i, right + (i + 1) % q));
    }
    let path_vertices: Vec<usize> = (p..right).collect();
    let mut prev = 0;
    for &v in path_vertices.iter().chain(std::iter::once(&right)) {
        arcs.push((prev, v));
        prev = v;
    }
    let d = Digraph::new(n, arcs)?;
    let spec = GlassesSpec {
        p,
        k,
        q,
        left_attach: 0,
        right_attach: right,
        path_vertices,
    };
    Ok((d, spec))
}

/// Adjacency matrix of the canonical `g(p,k,q)`.
pub fn glasses_matrix(p: usize, k: usize, q: usize) -> Result<BoolMatrix> {
    Ok(build_glasses(p, k, q)?.0.to_matrix())
}

/// Structural recognition of the family `g(p,k,q)` (with `p, q ≥ 1`, loops
/// standing in for 1-cycles). Runs at any order.
pub fn recognize_glasses(d: &Digraph) -> Option<GlassesSpec> {
    let n = d.n();
    if d.arc_count() != n + 1 {
        return None;
    }
    let a = d.to_matrix();
    let blocks = a.condensation();
    let mut cycles = blocks.iter().filter(|b| b.kind == BlockKind::Cycle);
    let (left, right) = (cycles.next()?, cycles.next()?);
    if cycles.next().is_some() || blocks.iter().any(|b| b.kind == BlockKind::Other) {
        return None;
    }
    let mut block_of = vec![usize::MAX; n];
    for (bi, b) in blocks.iter().enumerate() {
        for &v in &b.vertices {
            block_of[v] = bi;
        }
    }
    let left_id = block_of[left.vertices[0]];
    let right_id = block_of[right.vertices[0]];

    let mut exits = left
        .vertices
        .iter()
        .flat_map(|&u| a.row_ones(u).map(move |w| (u, w)))
        .filter(|&(_, w)| block_of[w] != left_id);
    let (left_attach, mut cur) = exits.next()?;
    if exits.next().is_some() {
        return None;
    }
    let mut path_vertices = Vec::new();
    while block_of[cur] != right_id {
        if block_of[cur] == left_id || path_vertices.len() >= n || a.row_count(cur) != 1 || a.col_count(cur) != 1 {
            return None;
        }
        path_vertices.push(cur);
        cur = a.row_ones(cur).next()?;
    }
    let (p, q) = (left.len(), right.len());
    if p + q + path_vertices.len() != n {
        return None;
    }
    Some(GlassesSpec {
        p,
        k: path_vertices.len() + 2,
        q,
        left_attach,
        right_attach: cur,
        path_vertices,
    })
}

fn signature(d: &Digraph) -> Vec<(usize, usize, bool)> {
    let mut out = vec![0; d.n];
    let mut inn = vec![0; d.n];
    for (u, v) in d.arcs() {
        out[u] += 1;
        inn[v] += 1;
    }
    (0..d.n).map(|v| (out[v], inn[v], d.has_arc(v, v))).collect()
}

/// Exact isomorphism test by backtracking with degree pruning.
pub fn is_isomorphic(d: &Digraph, h: &Digraph) -> Result<bool> {
    let n = d.n();
    if n > MAX_ISOMORPHISM_ORDER || h.n() > MAX_ISOMORPHISM_ORDER {
        return Err(Error::OrderTooLarge {
            n: n.max(h.n()),
            max: MAX_ISOMORPHISM_ORDER,
            what: "isomorphism testing",
        });
    }
    if n != h.n() || d.arc_count() != h.arc_count() {
        return Ok(false);
    }
    let sd = signature(d);
    let sh = signature(h);
    let mut a = sd.clone();
    let mut b = sh.clone();
    a.sort_unstable();
    b.sort_unstable();
    if a != b {
        return Ok(false);
    }
    let dm = d.to_matrix();
    let hm = h.to_matrix();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    Ok(extend(0, &dm, &hm, &sd, &sh, &mut map, &mut used))
}

fn extend(
    v: usize,
    d: &BoolMatrix,
    h: &BoolMatrix,
    sd: &[(usize, usize, bool)],
    sh: &[(usize, usize, bool)],
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    if v == d.n() {
        return true;
    }
    for w in 0..h.n() {
        if used[w] || sd[v] != sh[w] {
            continue;
        }
        let consistent = (0..v).all(|u| d.get(u, v) == h.get(map[u], w) && d.get(v, u) == h.get(w, map[u]));
        if !consistent {
            continue;
        }
        map[v] = w;
        used[w] = true;
        if extend(v + 1, d, h, sd, sh, map, used) {
            return true;
        }
        used[w] = false;
    }
    map[v] = usize::MAX;
    false
}
