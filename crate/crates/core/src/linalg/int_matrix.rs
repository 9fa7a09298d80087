use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::matrix::Matrix;
use super::scalar::FieldSpec;
use crate::error::{Error, Result};

/// Dense integer matrix with arbitrary-precision entries, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<BigInt>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count does not match shape");
        IntMatrix { rows, cols, data }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        IntMatrix { rows, cols, data }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        Self::from_fn(r, c, |i, j| BigInt::from(rows[i][j]))
    }

    /// Column vector from a slice.
    pub fn column(v: &[i64]) -> Self {
        Self::from_fn(v.len(), 1, |i, _| BigInt::from(v[i]))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> IntMatrix {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn add(&self, o: &IntMatrix) -> IntMatrix {
        assert_eq!(self.shape(), o.shape(), "shape mismatch in add");
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect();
        IntMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, o: &IntMatrix) -> IntMatrix {
        assert_eq!(self.shape(), o.shape(), "shape mismatch in sub");
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect();
        IntMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> IntMatrix {
        let data = self.data.iter().map(|a| -a).collect();
        IntMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: &BigInt) -> IntMatrix {
        let data = self.data.iter().map(|a| a * s).collect();
        IntMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn mul(&self, o: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, o.rows, "inner dimension mismatch in mul");
        let mut out = IntMatrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        out.data[i * o.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn try_mul(&self, o: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != o.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        Ok(self.mul(o))
    }

    pub fn trace(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "trace of non-square matrix");
        (0..self.rows).map(|i| self.get(i, i).clone()).sum()
    }

    /// Standard Kronecker product: block (i,j) is `a_ij * b`.
    pub fn kronecker(&self, b: &IntMatrix) -> IntMatrix {
        Self::from_fn(self.rows * b.rows, self.cols * b.cols, |i, j| {
            self.get(i / b.rows, j / b.cols) * b.get(i % b.rows, j % b.cols)
        })
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.data.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k * n + k].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a[i * n + k].is_zero()) else {
                    return BigInt::zero();
                };
                for j in 0..n {
                    a.swap(k * n + j, p * n + j);
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i * n + j] * &a[k * n + k] - &a[i * n + k] * &a[k * n + j];
                    a[i * n + j] = v / &prev;
                }
            }
            prev = a[k * n + k].clone();
        }
        sign * &a[n * n - 1]
    }

    /// Exact integer inverse of a unimodular matrix.
    pub fn int_inverse(&self) -> Result<IntMatrix> {
        if self.rows != self.cols {
            return Err(Error::Dimension(format!(
                "int_inverse of non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let det = self.det();
        if det.abs() != BigInt::one() {
            return Err(Error::Unimodularity { det });
        }
        let inv = self
            .to_matrix(FieldSpec::Rationals)
            .inverse()
            .ok_or_else(|| Error::InvariantViolation("unimodular matrix not invertible".into()))?;
        let data = inv
            .entries()
            .iter()
            .map(|s| s.to_integer())
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::InvariantViolation("non-integral inverse".into()))?;
        Ok(IntMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn to_matrix(&self, field: FieldSpec) -> Matrix {
        Matrix::from_vec(
            field,
            self.rows,
            self.cols,
            self.data.iter().map(|v| field.from_bigint(v)).collect(),
        )
    }

    /// Column vectorization (stack columns top to bottom) as an `rows*cols x 1` matrix.
    pub fn vec_columns(&self) -> IntMatrix {
        let mut data = Vec::with_capacity(self.rows * self.cols);
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        IntMatrix { rows: self.rows * self.cols, cols: 1, data }
    }

    /// Inverse of [`vec_columns`](Self::vec_columns).
    pub fn unvec_columns(v: &IntMatrix, rows: usize, cols: usize) -> IntMatrix {
        assert_eq!(v.data.len(), rows * cols, "length mismatch in unvec");
        Self::from_fn(rows, cols, |i, j| v.data[j * rows + i].clone())
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_examples() {
        assert_eq!(IntMatrix::identity(3).int_inverse().unwrap(), IntMatrix::identity(3));
        let m = IntMatrix::from_i64_rows(&[&[1, 0], &[1, 1]]);
        assert_eq!(m.int_inverse().unwrap(), IntMatrix::from_i64_rows(&[&[1, 0], &[-1, 1]]));
        let bad = IntMatrix::from_i64_rows(&[&[2, 0], &[0, 1]]);
        assert_eq!(bad.int_inverse(), Err(Error::Unimodularity { det: BigInt::from(2) }));
    }

    #[test]
    fn determinant() {
        let m = IntMatrix::from_i64_rows(&[&[0, 2, 1], &[1, 0, 0], &[3, 1, 4]]);
        // expansion along the second row: -1 * (2*4 - 1*1) = -7
        assert_eq!(m.det(), BigInt::from(-7));
        assert_eq!(IntMatrix::zeros(0, 0).det(), BigInt::one());
    }

    #[test]
    fn kronecker_examples() {
        assert_eq!(IntMatrix::identity(2).kronecker(&IntMatrix::identity(2)), IntMatrix::identity(4));
        let c = IntMatrix::from_i64_rows(&[&[1, 0], &[1, 1]]);
        assert_eq!(c.kronecker(&IntMatrix::identity(1)), c);
        let k = c.transpose().kronecker(&c);
        assert_eq!(
            k,
            IntMatrix::from_i64_rows(&[
                &[1, 0, 1, 0],
                &[1, 1, 1, 1],
                &[0, 0, 1, 0],
                &[0, 0, 1, 1]
            ])
        );
    }

    #[test]
    fn vectorization_round_trip() {
        let m = IntMatrix::from_i64_rows(&[&[1, 2, 3], &[4, 5, 6]]);
        let v = m.vec_columns();
        assert_eq!(v.entries()[..3], [BigInt::from(1), BigInt::from(4), BigInt::from(2)]);
        assert_eq!(IntMatrix::unvec_columns(&v, 2, 3), m);
    }
}
