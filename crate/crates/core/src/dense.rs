//! Dense matrices over a generic [`Scalar`], used where exact integer (or
//! floating point) arithmetic is needed rather than 0-1 saturation.

use std::ops::{Add, Mul};


use crate::bitmatrix::BoolMatrix;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DenseMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> DenseMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = T::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        DenseMatrix { rows, cols, data }
    }

    pub fn from_bool(a: &BoolMatrix) -> Self {
        Self::from_fn(a.n(), a.n(), |i, j| if a.get(i, j) { T::one() } else { T::zero() })
    }

    /// The `rows × cols` matrix with a single one at `(i, j)`.
    pub fn unit(rows: usize, cols: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(rows, cols);
        m.data[i * cols + j] = T::one();
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), &T)> + '_ {
        let cols = self.cols;
        self.data.iter().enumerate().map(move |(p, v)| ((p / cols, p % cols), v))
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                left: self.cols,
                right: rhs.rows,
            });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs.data[k * rhs.cols + j];
                    if b.is_zero() {
                        continue;
                    }
                    let e = &mut out.data[i * rhs.cols + j];
                    *e = e.clone() + a.clone() * b.clone();
                }
            }
        }
        Ok(out)
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::DimensionMismatch {
                left: self.rows * self.cols,
                right: rhs.rows * rhs.cols,
            });
        }
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a.clone() + b.clone())
            .collect();
        Ok(DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    /// `self^k` by repeated squaring. Square matrices only.
    pub fn pow(&self, k: usize) -> Result<Self> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch {
                left: self.rows,
                right: self.cols,
            });
        }
        let mut acc = Self::identity(self.rows);
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.checked_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.checked_mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// True when every entry is 0 or 1.
    pub fn is_zero_one(&self) -> bool {
        self.data.iter().all(|v| v.is_zero() || v.is_one())
    }

    pub fn map<U: Scalar>(&self, f: impl FnMut(&T) -> U) -> DenseMatrix<U> {
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }
}

impl<T: Scalar> Mul for &DenseMatrix<T> {
    type Output = DenseMatrix<T>;

    fn mul(self, rhs: Self) -> DenseMatrix<T> {
        self.checked_mul(rhs).expect("dimension mismatch in matrix product")
    }
}

impl<T: Scalar> Add for &DenseMatrix<T> {
    type Output = DenseMatrix<T>;

    fn add(self, rhs: Self) -> DenseMatrix<T> {
        self.checked_add(rhs).expect("dimension mismatch in matrix sum")
    }
}

/// Number of walks of length `k` from `i` to `j` in `D(a)`, i.e. `A^k(i,j)`,
/// by iterating the row vector `e_i · A` over `T`.
pub fn walk_count<T: Scalar>(a: &BoolMatrix, k: usize, i: usize, j: usize) -> Result<T> {
    let n = a.n();
    if i >= n || j >= n {
        return Err(Error::IndexOutOfRange { row: i, col: j, n });
    }
    let mut v: Vec<T> = vec![T::zero(); n];
    v[i] = T::one();
    for _ in 0..k {
        v = step_forward(a, &v);
    }
    Ok(v.swap_remove(j))
}

/// `v · A`.
pub(crate) fn step_forward<T: Scalar>(a: &BoolMatrix, v: &[T]) -> Vec<T> {
    let mut next = vec![T::zero(); a.n()];
    for (u, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for w in a.row_ones(u) {
            next[w] = next[w].clone() + c.clone();
        }
    }
    next
}

/// `A · v`.
pub(crate) fn step_backward<T: Scalar>(a: &BoolMatrix, v: &[T]) -> Vec<T> {
    (0..a.n())
        .map(|u| a.row_ones(u).fold(T::zero(), |acc, w| acc + v[w].clone()))
        .collect()
}
