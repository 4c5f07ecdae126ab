//! Exact vectors over ℕ, ℤ and ℚ, plus a small dense matrix type.
//!
//! Every numeric value in this crate is arbitrary precision: Hilbert bases
//! and affine register machines overflow machine words almost immediately,
//! so there are no fast paths over primitive integers.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A vector over ℕ. Entries are stored as `BigInt` with a nonnegativity
/// invariant enforced at construction.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NatVector(Vec<BigInt>);

/// A vector over ℤ.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntVector(Vec<BigInt>);

/// A vector over ℚ. Entries are exact rationals kept in lowest terms by
/// `BigRational` itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatVector(Vec<BigRational>);

impl NatVector {
    /// Builds a vector from nonnegative entries; errors on a negative entry.
    pub fn new(entries: Vec<BigInt>) -> Result<Self> {
        if let Some(e) = entries.iter().find(|e| e.is_negative()) {
            return Err(Error::NegativeEntry(e.to_string()));
        }
        Ok(NatVector(entries))
    }

    pub fn from_u64s(entries: &[u64]) -> Self {
        NatVector(entries.iter().map(|&e| BigInt::from(e)).collect())
    }

    pub fn zeros(dim: usize) -> Self {
        NatVector(vec![BigInt::zero(); dim])
    }

    /// The unit vector ē_i.
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = vec![BigInt::zero(); dim];
        v[i] = BigInt::one();
        NatVector(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.0
    }

    pub fn get(&self, i: usize) -> &BigInt {
        &self.0[i]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &NatVector) -> NatVector {
        debug_assert_eq!(self.dim(), other.dim());
        NatVector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// Adds `k` copies of `other`.
    pub fn add_scaled(&self, other: &NatVector, k: &BigInt) -> NatVector {
        debug_assert_eq!(self.dim(), other.dim());
        NatVector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b * k)
                .collect(),
        )
    }

    /// Componentwise `self ≤ other`.
    pub fn leq(&self, other: &NatVector) -> bool {
        debug_assert_eq!(self.dim(), other.dim());
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Componentwise difference; `None` if any entry would go negative.
    pub fn checked_sub(&self, other: &NatVector) -> Option<NatVector> {
        if !other.leq(self) {
            return None;
        }
        Some(NatVector(
            self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect(),
        ))
    }

    pub fn l1_norm(&self) -> BigInt {
        self.0.iter().sum()
    }

    /// Extends with zeros to dimension `dim`, placing the current entries at
    /// the positions given by `positions` (a strictly increasing injection).
    pub fn embed(&self, dim: usize, positions: &[usize]) -> NatVector {
        debug_assert_eq!(positions.len(), self.dim());
        let mut v = vec![BigInt::zero(); dim];
        for (e, &p) in self.0.iter().zip(positions) {
            v[p] = e.clone();
        }
        NatVector(v)
    }

    /// Keeps only the entries at `positions`, in order.
    pub fn project(&self, positions: &[usize]) -> NatVector {
        NatVector(positions.iter().map(|&p| self.0[p].clone()).collect())
    }

    pub fn concat(&self, other: &NatVector) -> NatVector {
        let mut v = self.0.clone();
        v.extend(other.0.iter().cloned());
        NatVector(v)
    }

    pub fn to_int(&self) -> IntVector {
        IntVector(self.0.clone())
    }
}

impl IntVector {
    pub fn new(entries: Vec<BigInt>) -> Self {
        IntVector(entries)
    }

    pub fn from_i64s(entries: &[i64]) -> Self {
        IntVector(entries.iter().map(|&e| BigInt::from(e)).collect())
    }

    pub fn zeros(dim: usize) -> Self {
        IntVector(vec![BigInt::zero(); dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.0
    }

    pub fn get(&self, i: usize) -> &BigInt {
        &self.0[i]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn sub(&self, other: &IntVector) -> IntVector {
        debug_assert_eq!(self.dim(), other.dim());
        IntVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn dot(&self, other: &IntVector) -> BigInt {
        debug_assert_eq!(self.dim(), other.dim());
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    /// `Some` iff all entries are nonnegative.
    pub fn to_nat(&self) -> Option<NatVector> {
        if self.0.iter().any(Signed::is_negative) {
            return None;
        }
        Some(NatVector(self.0.clone()))
    }
}

impl RatVector {
    pub fn new(entries: Vec<BigRational>) -> Self {
        RatVector(entries)
    }

    pub fn zeros(dim: usize) -> Self {
        RatVector(vec![BigRational::zero(); dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.0
    }

    pub fn get(&self, i: usize) -> &BigRational {
        &self.0[i]
    }
}

/// A dense r×c matrix over ℤ, row major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<IntVector>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, IntVector::dim);
        debug_assert!(rows.iter().all(|row| row.dim() == c));
        IntMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flat_map(|row| row.0).collect(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            *m.get_mut(i, i) = BigInt::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn get_mut(&mut self, r: usize, c: usize) -> &mut BigInt {
        &mut self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> IntVector {
        IntVector(self.data[r * self.cols..(r + 1) * self.cols].to_vec())
    }

    pub fn column(&self, c: usize) -> IntVector {
        IntVector((0..self.rows).map(|r| self.get(r, c).clone()).collect())
    }

    pub fn mul_int_vec(&self, v: &IntVector) -> IntVector {
        debug_assert_eq!(self.cols, v.dim());
        IntVector(
            (0..self.rows)
                .map(|r| {
                    (0..self.cols)
                        .map(|c| self.get(r, c) * v.get(c))
                        .sum()
                })
                .collect(),
        )
    }

    /// Matrix-vector product over ℕ; the matrix must be nonnegative.
    pub fn mul_nat_vec(&self, v: &NatVector) -> NatVector {
        let out = self.mul_int_vec(&v.to_int());
        out.to_nat()
            .expect("nonnegative matrix applied to natural vector")
    }

    pub fn is_nonnegative(&self) -> bool {
        self.data.iter().all(|e| !e.is_negative())
    }
}

/// A dense square-or-rectangular matrix over ℚ, row major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMatrix::zeros(n, n);
        for i in 0..n {
            *m.get_mut(i, i) = BigRational::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigRational {
        &self.data[r * self.cols + c]
    }

    pub fn get_mut(&mut self, r: usize, c: usize) -> &mut BigRational {
        &mut self.data[r * self.cols + c]
    }

    pub fn mul_vec(&self, v: &RatVector) -> RatVector {
        debug_assert_eq!(self.cols, v.dim());
        RatVector(
            (0..self.rows)
                .map(|r| {
                    (0..self.cols)
                        .map(|c| self.get(r, c) * v.get(c))
                        .sum()
                })
                .collect(),
        )
    }

    /// `self · other` (composition order: apply `other` first when these are
    /// transformation matrices).
    pub fn mul_mat(&self, other: &RatMatrix) -> RatMatrix {
        debug_assert_eq!(self.cols, other.rows);
        let mut out = RatMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let add = a * other.get(k, c);
                    *out.get_mut(r, c) += add;
                }
            }
        }
        out
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.data
    }
}
