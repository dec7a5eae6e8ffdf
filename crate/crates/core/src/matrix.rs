//! Square matrices over an exact ring, with a division-free characteristic
//! polynomial and trace-of-powers census.

use std::fmt;

use crate::poly::Polynomial;
use crate::scalar::Ring;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    order: usize,
    entries: Vec<T>,
}

impl<T: Ring> Matrix<T> {
    pub fn zeros(order: usize) -> Self {
        Matrix {
            order,
            entries: vec![T::zero(); order * order],
        }
    }

    pub fn identity(order: usize) -> Self {
        let mut m = Self::zeros(order);
        for i in 0..order {
            m.entries[i * order + i] = T::one();
        }
        m
    }

    /// Builds from rows.
    ///
    /// # Panics
    /// If the rows do not form a square array.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let order = rows.len();
        let mut entries = Vec::with_capacity(order * order);
        for row in rows {
            assert_eq!(row.len(), order, "matrix must be square");
            entries.extend(row);
        }
        Matrix { order, entries }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.order + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: T) {
        self.entries[i * self.order + j] = value;
    }

    pub fn rows(&self) -> impl Iterator<Item = &[T]> {
        // chunks(0) panics, so the empty matrix gets an empty iterator.
        self.entries.chunks(self.order.max(1)).take(self.order)
    }

    pub fn trace(&self) -> T {
        (0..self.order).fold(T::zero(), |acc, i| acc + self.get(i, i).clone())
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            order: self.order,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn mul(&self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.order, rhs.order);
        let n = self.order;
        let mut out = Matrix::<T>::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let v = out.get(i, j).clone() + a.clone() * rhs.get(k, j).clone();
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        let n = self.order;
        (0..n)
            .map(|i| {
                (0..n).fold(T::zero(), |acc, j| {
                    let a = self.get(i, j);
                    if a.is_zero() {
                        acc
                    } else {
                        acc + a.clone() * v[j].clone()
                    }
                })
            })
            .collect()
    }

    /// `det(xI - A)` by Berkowitz's algorithm.
    ///
    /// Division-free: each leading principal block extends the previous
    /// characteristic polynomial by a lower-triangular Toeplitz product, so
    /// the computation is exact in any commutative ring.
    pub fn char_poly(&self) -> Polynomial<T> {
        let n = self.order;
        // Descending coefficients of the characteristic polynomial of the
        // leading r x r block.
        let mut current: Vec<T> = vec![T::one()];
        for r in 0..n {
            let corner = self.get(r, r).clone();
            let row: Vec<T> = (0..r).map(|j| self.get(r, j).clone()).collect();
            let mut col: Vec<T> = (0..r).map(|i| self.get(i, r).clone()).collect();

            // Toeplitz column: 1, -a, -R C, -R A C, ..., -R A^{r-1} C
            let mut toeplitz = Vec::with_capacity(r + 2);
            toeplitz.push(T::one());
            toeplitz.push(-corner);
            for step in 0..r {
                let dot = row
                    .iter()
                    .zip(&col)
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone());
                toeplitz.push(-dot);
                if step + 1 < r {
                    col = self.leading_block_mul(r, &col);
                }
            }

            let next: Vec<T> = (0..r + 2)
                .map(|i| {
                    (0..=i.min(r)).fold(T::zero(), |acc, j| {
                        acc + toeplitz[i - j].clone() * current[j].clone()
                    })
                })
                .collect();
            current = next;
        }
        current.reverse();
        Polynomial::new(current)
    }

    fn leading_block_mul(&self, r: usize, v: &[T]) -> Vec<T> {
        (0..r)
            .map(|i| {
                (0..r).fold(T::zero(), |acc, j| {
                    acc + self.get(i, j).clone() * v[j].clone()
                })
            })
            .collect()
    }

    /// `det(I - uA)`, with trailing zero coefficients dropped.
    pub fn reversed_char_poly(&self) -> Polynomial<T> {
        self.char_poly().reversed(self.order)
    }

    /// `[tr(A), tr(A^2), ..., tr(A^upto)]`.
    ///
    /// Each basis vector is pushed through `A` repeatedly and the diagonal
    /// entry of each iterate is accumulated, so no matrix powers are stored.
    pub fn trace_powers(&self, upto: usize) -> Vec<T> {
        let n = self.order;
        let mut traces = vec![T::zero(); upto];
        for i in 0..n {
            let mut v = vec![T::zero(); n];
            v[i] = T::one();
            for t in traces.iter_mut() {
                v = self.mul_vec(&v);
                *t = t.clone() + v[i].clone();
            }
        }
        traces
    }
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut list = f.debug_list();
        for i in 0..self.order {
            list.entry(&&self.entries[i * self.order..(i + 1) * self.order]);
        }
        list.finish()
    }
}
