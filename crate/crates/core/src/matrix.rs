//! Dense symmetric matrices of small order.
//!
//! Storage is row-major with both triangles kept, so `entries[i * n + j]`
//! and `entries[j * n + i]` are the same value bit for bit. Everything the
//! criteria need (traces, quadratic forms, inverses and the centered
//! Moore-Penrose inverse of an intrablock matrix) lives here.

use thiserror::Error;

use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("matrix order must be at least 1")]
    Empty,
    #[error("expected {expected} entries, got {got}")]
    InvalidData { expected: usize, got: usize },
    #[error("entries ({row},{col}) and ({col},{row}) differ")]
    NotSymmetric { row: usize, col: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("row {row} does not sum to zero")]
    NotCentered { row: usize },
    #[error("matrix has rank below order - 1 (disconnected design)")]
    Disconnected,
}

/// A symmetric matrix, stored in full.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix<T> {
    order: usize,
    entries: Vec<T>,
}

impl<T: Scalar> SymMatrix<T> {
    /// Builds a matrix from row-major entries, rejecting anything that is not
    /// exactly symmetric.
    pub fn new(order: usize, entries: Vec<T>) -> Result<Self, MatrixError> {
        if order == 0 {
            return Err(MatrixError::Empty);
        }
        if entries.len() != order * order {
            return Err(MatrixError::InvalidData {
                expected: order * order,
                got: entries.len(),
            });
        }
        for i in 0..order {
            for j in (i + 1)..order {
                if entries[i * order + j] != entries[j * order + i] {
                    return Err(MatrixError::NotSymmetric { row: i, col: j });
                }
            }
        }
        Ok(Self { order, entries })
    }

    pub fn from_rows(rows: &[&[T]]) -> Result<Self, MatrixError> {
        let order = rows.len();
        let mut entries = Vec::with_capacity(order * order);
        for row in rows {
            if row.len() != order {
                return Err(MatrixError::DimensionMismatch {
                    expected: order,
                    got: row.len(),
                });
            }
            entries.extend_from_slice(row);
        }
        Self::new(order, entries)
    }

    /// Fills the upper triangle from `f(i, j)` with `i <= j` and mirrors it.
    pub fn from_upper_fn(order: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        assert!(order > 0, "matrix order must be at least 1");
        let mut entries = vec![T::zero(); order * order];
        for i in 0..order {
            for j in i..order {
                let x = f(i, j);
                entries[i * order + j] = x;
                entries[j * order + i] = x;
            }
        }
        Self { order, entries }
    }

    pub fn identity(order: usize) -> Self {
        Self::from_upper_fn(order, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn zeros(order: usize) -> Self {
        Self::from_upper_fn(order, |_, _| T::zero())
    }

    /// Matrix of ones, `J`.
    pub fn ones(order: usize) -> Self {
        Self::from_upper_fn(order, |_, _| T::one())
    }

    pub fn diagonal(diag: &[T]) -> Self {
        Self::from_upper_fn(diag.len(), |i, j| if i == j { diag[i] } else { T::zero() })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> T {
        self.entries[i * self.order + j]
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.entries[i * self.order..(i + 1) * self.order]
    }

    pub fn row_sums(&self) -> Vec<T> {
        (0..self.order)
            .map(|i| self.row(i).iter().copied().sum())
            .collect()
    }

    pub fn scale(&self, c: T) -> Self {
        Self {
            order: self.order,
            entries: self.entries.iter().map(|&x| x * c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, MatrixError> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, MatrixError> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(T, T) -> T) -> Result<Self, MatrixError> {
        self.check_order(other.order)?;
        Ok(Self {
            order: self.order,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }

    fn check_order(&self, n: usize) -> Result<(), MatrixError> {
        if n != self.order {
            return Err(MatrixError::DimensionMismatch {
                expected: self.order,
                got: n,
            });
        }
        Ok(())
    }

    pub fn trace(&self) -> T {
        (0..self.order).map(|i| self.get(i, i)).sum()
    }

    /// `xᵀ A x`.
    pub fn quad_form(&self, x: &[T]) -> Result<T, MatrixError> {
        self.check_order(x.len())?;
        let mut acc = T::zero();
        for i in 0..self.order {
            if x[i] == T::zero() {
                continue;
            }
            let row = self.row(i);
            let mut inner = T::zero();
            for j in 0..self.order {
                inner += row[j] * x[j];
            }
            acc += x[i] * inner;
        }
        Ok(acc)
    }

    pub fn mul_vec(&self, x: &[T]) -> Result<Vec<T>, MatrixError> {
        self.check_order(x.len())?;
        Ok((0..self.order)
            .map(|i| self.row(i).iter().zip(x).map(|(&a, &b)| a * b).sum())
            .collect())
    }

    /// General product; the result need not be symmetric.
    pub fn mul(&self, other: &Self) -> Result<Square<T>, MatrixError> {
        Square::from(self.clone()).mul(other)
    }

    /// Inverse by Gauss-Jordan elimination with partial pivoting.
    ///
    /// The result is re-symmetrized by averaging mirrored entries so the
    /// storage invariant holds exactly.
    pub fn invert(&self) -> Result<Self, MatrixError> {
        let n = self.order;
        let mut a = self.entries.clone();
        let mut inv = Self::identity(n).entries;
        for col in 0..n {
            let pivot_row = (col..n)
                .max_by(|&p, &q| {
                    a[p * n + col]
                        .abs()
                        .partial_cmp(&a[q * n + col].abs())
                        .unwrap_or(std::cmp::Ordering::Equal)
                })
                .expect("non-empty pivot range");
            let pivot = a[pivot_row * n + col];
            if pivot.is_nan() || pivot.abs() < T::PIVOT_TOL {
                return Err(MatrixError::Singular);
            }
            if pivot_row != col {
                for j in 0..n {
                    a.swap(pivot_row * n + j, col * n + j);
                    inv.swap(pivot_row * n + j, col * n + j);
                }
            }
            let recip = T::one() / pivot;
            for j in 0..n {
                a[col * n + j] *= recip;
                inv[col * n + j] *= recip;
            }
            for row in 0..n {
                if row == col {
                    continue;
                }
                let factor = a[row * n + col];
                if factor == T::zero() {
                    continue;
                }
                for j in 0..n {
                    let (pa, pi) = (a[col * n + j], inv[col * n + j]);
                    a[row * n + j] -= factor * pa;
                    inv[row * n + j] -= factor * pi;
                }
            }
        }
        Ok(Self::symmetrized(n, inv))
    }

    fn symmetrized(n: usize, mut e: Vec<T>) -> Self {
        let half = T::of(0.5);
        for i in 0..n {
            for j in (i + 1)..n {
                let m = (e[i * n + j] + e[j * n + i]) * half;
                e[i * n + j] = m;
                e[j * n + i] = m;
            }
        }
        Self {
            order: n,
            entries: e,
        }
    }

    /// Moore-Penrose inverse of a centered matrix of rank `n - 1`, computed
    /// as `(M + J/n)⁻¹ - J/n`.
    pub fn mp_inverse_centered(&self, n: usize) -> Result<Self, MatrixError> {
        self.check_order(n)?;
        for (row, s) in self.row_sums().into_iter().enumerate() {
            if s.is_nan() || s.abs() > T::CENTER_TOL {
                return Err(MatrixError::NotCentered { row });
            }
        }
        let j = Self::ones(n).scale(T::one() / T::count(n));
        let shifted = self.add(&j)?;
        let inv = match shifted.invert() {
            Ok(inv) => inv,
            Err(MatrixError::Singular) => return Err(MatrixError::Disconnected),
            Err(e) => return Err(e),
        };
        inv.sub(&j)
    }
}

/// A general (not necessarily symmetric) square matrix, used for products.
#[derive(Debug, Clone, PartialEq)]
pub struct Square<T> {
    order: usize,
    entries: Vec<T>,
}

impl<T: Scalar> From<SymMatrix<T>> for Square<T> {
    fn from(m: SymMatrix<T>) -> Self {
        Self {
            order: m.order,
            entries: m.entries,
        }
    }
}

impl<T: Scalar> Square<T> {
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> T {
        self.entries[i * self.order + j]
    }

    pub fn mul(&self, other: &SymMatrix<T>) -> Result<Self, MatrixError> {
        let n = self.order;
        if other.order != n {
            return Err(MatrixError::DimensionMismatch {
                expected: n,
                got: other.order,
            });
        }
        let mut out = vec![T::zero(); n * n];
        for i in 0..n {
            for l in 0..n {
                let a = self.entries[i * n + l];
                if a == T::zero() {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] += a * other.get(l, j);
                }
            }
        }
        Ok(Self {
            order: n,
            entries: out,
        })
    }

    pub fn transpose(&self) -> Self {
        let n = self.order;
        let mut out = self.entries.clone();
        for i in 0..n {
            for j in 0..n {
                out[j * n + i] = self.entries[i * n + j];
            }
        }
        Self {
            order: n,
            entries: out,
        }
    }

    /// Largest entrywise absolute difference from `other`.
    pub fn max_abs_diff(&self, other: &Square<T>) -> T {
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| (a - b).abs())
            .fold(T::zero(), T::max)
    }

    pub fn max_abs_diff_sym(&self, other: &SymMatrix<T>) -> T {
        self.max_abs_diff(&Square::from(other.clone()))
    }
}
