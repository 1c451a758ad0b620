//! Packed 0-1 matrices and the kernels the stable-index engine runs on.
//!
//! Rows are stored as little-endian runs of `u64` words; bit `j % 64` of word
//! `j / 64` in row `i` is the entry `(i, j)`. Indices are 0-based here; the
//! 1-based convention only appears at the I/O boundary.

use std::fmt;

use crate::error::{Error, Result};

const WORD: usize = 64;

#[inline]
fn words_for(n: usize) -> usize {
    n.div_ceil(WORD)
}

/// Square 0-1 matrix with bit-packed rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BoolMatrix {
    n: usize,
    stride: usize,
    bits: Vec<u64>,
}

/// Result of multiplying two 0-1 matrices when only "0, 1, or at least 2"
/// matters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ZeroOneProduct {
    /// Every entry of the integer product is 0 or 1.
    ZeroOne(BoolMatrix),
    /// Some entry is at least 2; `first` is the smallest such position in
    /// row-major order.
    Overflow { first: (usize, usize) },
}

impl BoolMatrix {
    pub fn zeros(n: usize) -> Self {
        let stride = words_for(n);
        BoolMatrix {
            n,
            stride,
            bits: vec![0; n * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// The all-ones matrix `J`.
    pub fn ones(n: usize) -> Self {
        Self::from_fn(n, |_, _| true)
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                if f(i, j) {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    /// Builds a matrix from rows written as `'0'`/`'1'` strings.
    pub fn from_rows<S: AsRef<str>>(rows: &[S]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::EmptyMatrix);
        }
        let mut m = Self::zeros(n);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref().as_bytes();
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    left: n,
                    right: row.len(),
                });
            }
            for (j, &c) in row.iter().enumerate() {
                match c {
                    b'0' => {}
                    b'1' => m.set(i, j, true),
                    _ => return Err(Error::IndexOutOfRange { row: i, col: j, n }),
                }
            }
        }
        Ok(m)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        debug_assert!(i < self.n && j < self.n);
        (self.bits[i * self.stride + j / WORD] >> (j % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        debug_assert!(i < self.n && j < self.n);
        let w = &mut self.bits[i * self.stride + j / WORD];
        let mask = 1u64 << (j % WORD);
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    pub fn checked_get(&self, i: usize, j: usize) -> Result<bool> {
        if i >= self.n || j >= self.n {
            return Err(Error::IndexOutOfRange {
                row: i,
                col: j,
                n: self.n,
            });
        }
        Ok(self.get(i, j))
    }

    #[inline]
    pub fn row_words(&self, i: usize) -> &[u64] {
        &self.bits[i * self.stride..(i + 1) * self.stride]
    }

    /// Column indices of the ones in row `i`, ascending.
    pub fn row_ones(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.row_words(i)
            .iter()
            .enumerate()
            .flat_map(|(w, &word)| BitIter(word).map(move |b| w * WORD + b))
    }

    /// All `(i, j)` with a one, row-major.
    pub fn ones_positions(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |i| self.row_ones(i).map(move |j| (i, j)))
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn row_count(&self, i: usize) -> usize {
        self.row_words(i).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn col_count(&self, j: usize) -> usize {
        (0..self.n).filter(|&i| self.get(i, j)).count()
    }

    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    fn check_same_order(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    /// Boolean semiring product: entry is 1 iff some `k` has
    /// `a(i,k) = b(k,j) = 1`.
    pub fn bool_product(&self, rhs: &Self) -> Result<Self> {
        self.check_same_order(rhs)?;
        let mut out = Self::zeros(self.n);
        let stride = self.stride;
        for i in 0..self.n {
            let dst = i * stride;
            for k in self.row_ones(i) {
                let src = rhs.row_words(k);
                for (d, s) in out.bits[dst..dst + stride].iter_mut().zip(src) {
                    *d |= *s;
                }
            }
        }
        Ok(out)
    }

    /// Integer product of two 0-1 matrices, stopping at the first row that
    /// contains an entry of at least 2.
    pub fn zero_one_product(&self, rhs: &Self) -> Result<ZeroOneProduct> {
        self.check_same_order(rhs)?;
        let stride = self.stride;
        let mut out = Self::zeros(self.n);
        let mut dup = vec![0u64; stride];
        for i in 0..self.n {
            dup.iter_mut().for_each(|w| *w = 0);
            let dst = i * stride;
            for k in self.row_ones(i) {
                let src = rhs.row_words(k);
                for ((d, s), x) in out.bits[dst..dst + stride].iter_mut().zip(src).zip(&mut dup) {
                    *x |= *d & *s;
                    *d |= *s;
                }
            }
            if let Some((w, word)) = dup.iter().enumerate().find(|(_, &w)| w != 0) {
                let j = w * WORD + word.trailing_zeros() as usize;
                return Ok(ZeroOneProduct::Overflow { first: (i, j) });
            }
        }
        Ok(ZeroOneProduct::ZeroOne(out))
    }

    /// Boolean `k`-th power; `k = 0` gives the identity.
    pub fn bool_power(&self, k: usize) -> Self {
        let mut acc = Self::identity(self.n);
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.bool_product(&base).expect("same order");
            }
            e >>= 1;
            if e > 0 {
                base = base.bool_product(&base).expect("same order");
            }
        }
        acc
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.n);
        for (i, j) in self.ones_positions() {
            t.set(j, i, true);
        }
        t
    }

    /// Simultaneous relabeling: `result(i, j) = a(p(i), p(j))`, i.e. `PᵀAP`.
    pub fn permute(&self, p: &Permutation) -> Result<Self> {
        if p.len() != self.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: p.len(),
            });
        }
        Ok(Self::from_fn(self.n, |i, j| self.get(p.apply(i), p.apply(j))))
    }

    /// Principal submatrix on the given (distinct, in-range) indices.
    pub fn principal_submatrix(&self, keep: &[usize]) -> Self {
        Self::from_fn(keep.len(), |i, j| self.get(keep[i], keep[j]))
    }

    /// Row-major bit code with entry `(0,0)` as the most significant bit.
    /// Only defined for `n ≤ 8`.
    pub fn code(&self) -> u64 {
        assert!(self.n <= 8, "code() needs n <= 8");
        let nn = self.n * self.n;
        let mut c = 0u64;
        for (i, j) in self.ones_positions() {
            c |= 1 << (nn - 1 - (i * self.n + j));
        }
        c
    }

    pub fn from_code(n: usize, code: u64) -> Self {
        assert!(n <= 8, "from_code needs n <= 8");
        let nn = n * n;
        Self::from_fn(n, |i, j| (code >> (nn - 1 - (i * n + j))) & 1 == 1)
    }

    pub fn to_capped(&self) -> CappedMatrix {
        let mut c = CappedMatrix::zeros(self.n);
        for (i, j) in self.ones_positions() {
            c.entries[i * self.n + j] = 1;
        }
        c
    }

    /// Strongly connected components of `D(A)` in an order that makes the
    /// permuted matrix block upper triangular.
    pub fn condensation(&self) -> Vec<Block> {
        let comps = tarjan(self);
        comps
            .into_iter()
            .rev()
            .map(|mut vertices| {
                vertices.sort_unstable();
                let kind = self.block_kind(&vertices);
                Block { vertices, kind }
            })
            .collect()
    }

    fn block_kind(&self, vertices: &[usize]) -> BlockKind {
        if vertices.len() == 1 {
            let v = vertices[0];
            return if self.get(v, v) {
                BlockKind::Cycle
            } else {
                BlockKind::Trivial
            };
        }
        let mut inside = vec![false; self.n];
        for &v in vertices {
            inside[v] = true;
        }
        // strongly connected with every in/out-degree equal to 1 inside the
        // block is exactly a directed cycle
        let mut indeg = vec![0usize; self.n];
        for &v in vertices {
            let out = self.row_ones(v).filter(|&w| inside[w]).inspect(|&w| indeg[w] += 1).count();
            if out != 1 {
                return BlockKind::Other;
            }
        }
        if vertices.iter().all(|&v| indeg[v] == 1) {
            BlockKind::Cycle
        } else {
            BlockKind::Other
        }
    }

    /// `D(A)` is strongly connected. A 1×1 zero matrix is reducible.
    pub fn is_irreducible(&self) -> bool {
        if self.n == 1 {
            return self.get(0, 0);
        }
        self.condensation().len() == 1
    }
}

impl fmt::Debug for BoolMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BoolMatrix({})", self.n)?;
        write!(f, "{self}")
    }
}

impl fmt::Display for BoolMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            for j in 0..self.n {
                f.write_str(if self.get(i, j) { "1" } else { "0" })?;
            }
            if i + 1 < self.n {
                f.write_str("\n")?;
            }
        }
        Ok(())
    }
}

struct BitIter(u64);

impl Iterator for BitIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let b = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(b)
    }
}

/// Square matrix over `{0, 1, 2}` where 2 stands for "at least 2".
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CappedMatrix {
    n: usize,
    entries: Vec<u8>,
}

impl CappedMatrix {
    pub fn zeros(n: usize) -> Self {
        CappedMatrix {
            n,
            entries: vec![0; n * n],
        }
    }

    /// Entries are clamped into `{0, 1, 2}`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> u64) -> Self {
        let mut c = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                c.entries[i * n + j] = f(i, j).min(2) as u8;
            }
        }
        c
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.entries[i * self.n + j]
    }

    pub fn has_overflow(&self) -> bool {
        self.entries.iter().any(|&e| e >= 2)
    }

    /// First 2-entry in row-major order.
    pub fn first_overflow(&self) -> Option<(usize, usize)> {
        self.entries
            .iter()
            .position(|&e| e >= 2)
            .map(|p| (p / self.n, p % self.n))
    }

    /// Lossless conversion when no entry is 2.
    pub fn to_bool(&self) -> Option<BoolMatrix> {
        if self.has_overflow() {
            return None;
        }
        Some(BoolMatrix::from_fn(self.n, |i, j| self.get(i, j) == 1))
    }

    /// Saturating product: `min(2, Σ_k a(i,k)·b(k,j))`.
    pub fn capped_product(&self, rhs: &Self) -> Result<Self> {
        if self.n != rhs.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: rhs.n,
            });
        }
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i * n + k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let b = rhs.entries[k * n + j];
                    if b != 0 {
                        let e = &mut out.entries[i * n + j];
                        *e = (*e + a * b).min(2);
                    }
                }
            }
        }
        Ok(out)
    }
}

/// Bijection on `{0, …, n−1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    map: Vec<usize>,
}

impl Permutation {
    pub fn new(map: Vec<usize>) -> Result<Self> {
        let n = map.len();
        let mut seen = vec![false; n];
        for &m in &map {
            if m >= n || seen[m] {
                return Err(Error::InvalidPermutation(format!("{map:?}")));
            }
            seen[m] = true;
        }
        Ok(Permutation { map })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            map: (0..n).collect(),
        }
    }

    /// `i ↦ i + shift (mod n)`.
    pub fn rotation(n: usize, shift: usize) -> Self {
        Permutation {
            map: (0..n).map(|i| (i + shift) % n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.map
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.map.len()];
        for (i, &m) in self.map.iter().enumerate() {
            inv[m] = i;
        }
        Permutation { map: inv }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BlockKind {
    /// A single vertex without a loop.
    Trivial,
    /// Exactly a directed cycle; a looped single vertex is a 1-cycle.
    Cycle,
    /// Strongly connected but not a single cycle.
    Other,
}

/// One diagonal block of the Frobenius normal form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Block {
    pub vertices: Vec<usize>,
    pub kind: BlockKind,
}

impl Block {
    pub fn is_single_cycle(&self) -> bool {
        self.kind == BlockKind::Cycle
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

/// Iterative Tarjan; components come out sinks first.
fn tarjan(a: &BoolMatrix) -> Vec<Vec<usize>> {
    const UNSEEN: usize = usize::MAX;
    let n = a.n();
    let succ: Vec<Vec<usize>> = (0..n).map(|v| a.row_ones(v).collect()).collect();
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut comps = Vec::new();
    let mut next = 0;
    let mut call: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        call.push((root, 0));
        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            if *pos == 0 && index[v] == UNSEEN {
                index[v] = next;
                low[v] = next;
                next += 1;
                stack.push(v);
                on_stack[v] = true;
            }
            if *pos < succ[v].len() {
                let w = succ[v][*pos];
                *pos += 1;
                if index[w] == UNSEEN {
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack");
                    on_stack[w] = false;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                comps.push(comp);
            }
        }
    }
    comps
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circ(n: usize) -> BoolMatrix {
        BoolMatrix::from_fn(n, |i, j| j == (i + 1) % n)
    }

    #[test]
    fn bool_product_examples() {
        let i3 = BoolMatrix::identity(3);
        assert_eq!(i3.bool_product(&i3).unwrap(), i3);
        let c4 = circ(4);
        let shift2 = BoolMatrix::from_fn(4, |i, j| j == (i + 2) % 4);
        assert_eq!(c4.bool_product(&c4).unwrap(), shift2);
        let j2 = BoolMatrix::ones(2);
        assert_eq!(j2.bool_product(&j2).unwrap(), j2);
        assert!(j2.bool_product(&BoolMatrix::ones(3)).is_err());
    }

    #[test]
    fn capped_product_examples() {
        let j2 = BoolMatrix::ones(2).to_capped();
        let sq = j2.capped_product(&j2).unwrap();
        assert!((0..2).all(|i| (0..2).all(|j| sq.get(i, j) == 2)));
        let c5 = circ(5).to_capped();
        let sq = c5.capped_product(&c5).unwrap();
        assert!(!sq.has_overflow());
        assert_eq!(sq.to_bool().unwrap(), circ(5).bool_power(2));
        // 2 is absorbing
        let two = CappedMatrix::from_fn(2, |i, j| if i == j { 2 } else { 0 });
        let id = BoolMatrix::identity(2).to_capped();
        assert_eq!(two.capped_product(&id).unwrap(), two);
    }

    #[test]
    fn zero_one_product_finds_first_overflow() {
        let j2 = BoolMatrix::ones(2);
        assert_eq!(
            j2.zero_one_product(&j2).unwrap(),
            ZeroOneProduct::Overflow { first: (0, 0) }
        );
        let a = BoolMatrix::from_rows(&["011", "001", "000"]).unwrap();
        // a² has a single 1 at (0,2)
        match a.zero_one_product(&a).unwrap() {
            ZeroOneProduct::ZeroOne(m) => {
                assert_eq!(m, BoolMatrix::from_rows(&["001", "000", "000"]).unwrap())
            }
            other => panic!("{other:?}"),
        }
        let b = BoolMatrix::from_rows(&["000", "011", "001"]).unwrap();
        assert_eq!(
            b.zero_one_product(&b).unwrap(),
            ZeroOneProduct::Overflow { first: (1, 2) }
        );
    }

    #[test]
    fn wide_rows_span_words() {
        let n = 130;
        let c = circ(n);
        assert_eq!(c.bool_power(n), BoolMatrix::identity(n));
        assert_eq!(c.transpose(), c.bool_power(n - 1));
        assert_eq!(c.row_ones(127).collect::<Vec<_>>(), vec![128]);
    }

    #[test]
    fn permute_examples() {
        let a = BoolMatrix::from_rows(&["0110", "0010", "1001", "0100"]).unwrap();
        assert_eq!(a.permute(&Permutation::identity(4)).unwrap(), a);
        let c3 = circ(3);
        assert_eq!(c3.permute(&Permutation::rotation(3, 1)).unwrap(), c3);
        let p = Permutation::new(vec![2, 0, 3, 1]).unwrap();
        assert_eq!(a.permute(&p).unwrap().permute(&p.inverse()).unwrap(), a);
        assert!(a.permute(&Permutation::identity(3)).is_err());
        assert!(Permutation::new(vec![0, 0]).is_err());
        assert!(Permutation::new(vec![0, 2]).is_err());
    }

    #[test]
    fn transpose_examples() {
        assert_eq!(BoolMatrix::identity(4).transpose(), BoolMatrix::identity(4));
        for n in 1..8 {
            assert_eq!(circ(n).transpose(), circ(n).bool_power(n - 1));
        }
    }

    #[test]
    fn code_round_trip_and_order() {
        let a = BoolMatrix::from_rows(&["10", "00"]).unwrap();
        assert_eq!(a.code(), 0b1000);
        let b = BoolMatrix::from_rows(&["01", "11"]).unwrap();
        assert_eq!(b.code(), 0b0111);
        assert_eq!(BoolMatrix::from_code(2, 0b0111), b);
    }

    #[test]
    fn condensation_examples() {
        let blocks = circ(6).condensation();
        assert_eq!(blocks.len(), 1);
        assert!(blocks[0].is_single_cycle());

        let upper = BoolMatrix::from_fn(5, |i, j| i < j);
        let blocks = upper.condensation();
        assert_eq!(blocks.len(), 5);
        assert!(blocks.iter().all(|b| b.kind == BlockKind::Trivial));
        let order: Vec<usize> = blocks.iter().map(|b| b.vertices[0]).collect();
        assert_eq!(order, vec![0, 1, 2, 3, 4]);

        // a loop is a 1-cycle
        let looped = BoolMatrix::identity(1);
        assert!(looped.condensation()[0].is_single_cycle());

        // two overlapping cycles
        let theta = BoolMatrix::from_rows(&["011", "100", "100"]).unwrap();
        let blocks = theta.condensation();
        assert_eq!(blocks.len(), 1);
        assert_eq!(blocks[0].kind, BlockKind::Other);
    }

    #[test]
    fn irreducibility_conventions() {
        assert!(!BoolMatrix::zeros(1).is_irreducible());
        assert!(BoolMatrix::identity(1).is_irreducible());
        assert!(circ(5).is_irreducible());
        assert!(!BoolMatrix::from_fn(3, |i, j| i < j).is_irreducible());
        assert!(!BoolMatrix::identity(2).is_irreducible());
    }
}
