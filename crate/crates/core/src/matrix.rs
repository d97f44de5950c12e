//! Dense square-or-rectangular matrices over arbitrary-precision integers.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Row-major matrix of `BigInt`.
#[derive(Clone, PartialEq, Eq, Hash)]
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

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from nested rows. Panics if the rows are ragged.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row.iter().cloned().map(Into::into));
        }
        IntMatrix {
            rows: r,
            cols: c,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    /// Exact matrix power by repeated squaring. `self` must be square.
    pub fn pow(&self, mut exp: u64) -> Self {
        assert!(self.is_square(), "pow of non-square matrix");
        let mut result = Self::identity(self.rows);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                result = &result * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Row vector times matrix.
    pub fn left_mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![BigInt::zero(); self.cols];
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                let m = self.get(i, j);
                if !m.is_zero() {
                    *o += vi * m;
                }
            }
        }
        out
    }

    /// Matrix times column vector.
    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.rows).all(|i| (0..i.min(self.cols)).all(|j| self.get(i, j).is_zero()))
    }

    pub fn is_nonnegative(&self) -> bool {
        self.data.iter().all(|x| !x.is_negative())
    }

    /// Applies a simultaneous row/column permutation: entry (i, j) of the
    /// result is entry (perm[i], perm[j]) of `self`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        assert!(self.is_square() && perm.len() == self.rows);
        let n = self.rows;
        let mut out = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out.data[i * n + j] = self.get(perm[i], perm[j]).clone();
            }
        }
        out
    }

    /// Rank over the rationals (fraction-free elimination).
    pub fn rank(&self) -> usize {
        let mut a = self.to_rows();
        let (rows, cols) = (self.rows, self.cols);
        let mut rank = 0;
        for col in 0..cols {
            let Some(pivot) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
                continue;
            };
            a.swap(rank, pivot);
            for r in 0..rows {
                if r != rank && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    let p = a[rank][col].clone();
                    for c in 0..cols {
                        let v = &a[r][c] * &p - &a[rank][c] * &f;
                        a[r][c] = v;
                    }
                }
            }
            rank += 1;
            if rank == rows {
                break;
            }
        }
        rank
    }

    /// Inverse of an upper unitriangular matrix, exact over the integers.
    /// Returns `None` if `self` is not upper unitriangular.
    pub fn unitriangular_inverse(&self) -> Option<Self> {
        if !self.is_square() || !self.is_upper_triangular() {
            return None;
        }
        let n = self.rows;
        if (0..n).any(|i| !self.get(i, i).is_one()) {
            return None;
        }
        let mut inv = Self::identity(n);
        // Back substitution column by column: inv[i][j] = -sum_{i<k<=j} a[i][k] inv[k][j].
        for j in 0..n {
            for i in (0..j).rev() {
                let mut s = BigInt::zero();
                for k in i + 1..=j {
                    s += self.get(i, k) * inv.get(k, j);
                }
                inv.set(i, j, -s);
            }
        }
        Some(inv)
    }
}

impl<'a> Mul<&'a IntMatrix> for &'a IntMatrix {
    type Output = IntMatrix;

    fn mul(self, rhs: &'a IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in product");
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries((0..self.rows).map(|i| {
                self.row(i)
                    .iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
            }))
            .finish()
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn power_of_unipotent_two_by_two() {
        let m = IntMatrix::from_rows(&[vec![1, 1], vec![0, 1]]);
        assert_eq!(m.pow(7), IntMatrix::from_rows(&[vec![1, 7], vec![0, 1]]));
        assert_eq!(m.pow(0), IntMatrix::identity(2));
    }

    #[test]
    fn large_powers_do_not_overflow() {
        let m = IntMatrix::from_rows(&[vec![2, 1], vec![1, 1]]);
        let p = m.pow(200);
        assert!(p.get(0, 0).bits() > 64);
    }

    #[test]
    fn rank_and_inverse() {
        let m = IntMatrix::from_rows(&[vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]]);
        assert_eq!(m.rank(), 2);
        let u = IntMatrix::from_rows(&[vec![1, 3, -2], vec![0, 1, 5], vec![0, 0, 1]]);
        let inv = u.unitriangular_inverse().unwrap();
        assert_eq!(&u * &inv, IntMatrix::identity(3));
        assert!(m.unitriangular_inverse().is_none());
    }

    #[test]
    fn permuted_relabels_both_axes() {
        let m = IntMatrix::from_rows(&[vec![0, 1], vec![0, 0]]);
        let p = m.permuted(&[1, 0]);
        assert_eq!(p, IntMatrix::from_rows(&[vec![0, 0], vec![1, 0]]));
    }
}
