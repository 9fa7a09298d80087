use std::fmt;

use super::scalar::{FieldSpec, Scalar};
use crate::error::{Error, Result};

/// Dense matrix over a field, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Builds a matrix from row-major entries. Panics if the length is wrong or
    /// an entry lives in another field.
    pub fn from_vec(field: FieldSpec, rows: usize, cols: usize, data: Vec<Scalar>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count does not match shape");
        assert!(data.iter().all(|s| s.field() == field), "mixed fields in matrix");
        Matrix { field, rows, cols, data }
    }

    pub fn from_fn(
        field: FieldSpec,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self::from_vec(field, rows, cols, data)
    }

    pub fn from_i64_rows(field: FieldSpec, rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        Self::from_fn(field, r, c, |i, j| field.from_i64(rows[i][j]))
    }

    pub fn field(&self) -> FieldSpec {
        self.field
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

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        debug_assert_eq!(v.field(), self.field);
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_matrix(&self, i: usize) -> Matrix {
        Matrix::from_vec(self.field, 1, self.cols, self.row(i).to_vec())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    fn check_same_shape(&self, o: &Matrix, what: &str) {
        assert_eq!(self.shape(), o.shape(), "shape mismatch in {what}");
        assert_eq!(self.field, o.field, "field mismatch in {what}");
    }

    pub fn add(&self, o: &Matrix) -> Matrix {
        self.check_same_shape(o, "add");
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a.add(b)).collect();
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, o: &Matrix) -> Matrix {
        self.check_same_shape(o, "sub");
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a.sub(b)).collect();
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> Matrix {
        let data = self.data.iter().map(Scalar::neg).collect();
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        let data = self.data.iter().map(|a| a.mul(s)).collect();
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    /// Matrix product. Panics on inner-dimension mismatch.
    pub fn mul(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.rows, "inner dimension mismatch in mul");
        assert_eq!(self.field, o.field, "field mismatch in mul");
        let mut out = Matrix::zeros(self.field, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = out.data[idx].add(&a.mul(b));
                }
            }
        }
        out
    }

    pub fn try_mul(&self, o: &Matrix) -> Result<Matrix> {
        if self.cols != o.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        Ok(self.mul(o))
    }

    pub fn trace(&self) -> Scalar {
        assert!(self.is_square(), "trace of non-square matrix");
        let mut t = self.field.zero();
        for i in 0..self.rows {
            t = t.add(self.get(i, i));
        }
        t
    }

    pub fn kronecker(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.field, o.field, "field mismatch in kronecker");
        Matrix::from_fn(self.field, self.rows * o.rows, self.cols * o.cols, |i, j| {
            self.get(i / o.rows, j / o.cols).mul(o.get(i % o.rows, j % o.cols))
        })
    }

    pub fn hstack(parts: &[&Matrix], field: FieldSpec, rows: usize) -> Matrix {
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let mut off = 0;
        for m in parts {
            assert_eq!(m.rows, rows, "row mismatch in hstack");
            out.set_block(0, off, m);
            off += m.cols;
        }
        out
    }

    pub fn vstack(parts: &[&Matrix], field: FieldSpec, cols: usize) -> Matrix {
        let rows = parts.iter().map(|m| m.rows).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for m in parts {
            assert_eq!(m.cols, cols, "column mismatch in vstack");
            assert_eq!(m.field, field, "field mismatch in vstack");
            data.extend_from_slice(&m.data);
        }
        Matrix { field, rows, cols, data }
    }

    pub fn block_diag(parts: &[&Matrix], field: FieldSpec) -> Matrix {
        let rows = parts.iter().map(|m| m.rows).sum();
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let (mut r, mut c) = (0, 0);
        for m in parts {
            out.set_block(r, c, m);
            r += m.rows;
            c += m.cols;
        }
        out
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, m: &Matrix) {
        assert!(r0 + m.rows <= self.rows && c0 + m.cols <= self.cols, "block out of range");
        for i in 0..m.rows {
            for j in 0..m.cols {
                self.data[(r0 + i) * self.cols + c0 + j] = m.get(i, j).clone();
            }
        }
    }

    pub fn add_block(&mut self, r0: usize, c0: usize, m: &Matrix) {
        assert!(r0 + m.rows <= self.rows && c0 + m.cols <= self.cols, "block out of range");
        for i in 0..m.rows {
            for j in 0..m.cols {
                let v = m.get(i, j);
                if !v.is_zero() {
                    let idx = (r0 + i) * self.cols + c0 + j;
                    self.data[idx] = self.data[idx].add(v);
                }
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        Matrix::from_fn(self.field, rows, cols, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend_from_slice(self.row(i));
        }
        Matrix { field: self.field, rows: idx.len(), cols: self.cols, data }
    }

    pub fn select_cols(&self, idx: &[usize]) -> Matrix {
        Matrix::from_fn(self.field, self.rows, idx.len(), |i, j| self.get(i, idx[j]).clone())
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv();
            if !inv.is_one() {
                for j in c..m.cols {
                    let v = m.get(r, j).mul(&inv);
                    m.set(r, j, v);
                }
            }
            let pivot_row: Vec<(usize, Scalar)> = (c..m.cols)
                .filter(|&j| !m.get(r, j).is_zero())
                .map(|j| (j, m.get(r, j).clone()))
                .collect();
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for (j, v) in &pivot_row {
                    let nv = m.get(i, *j).sub(&f.mul(v));
                    m.set(i, *j, nv);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Columns form a basis of `{x : self * x = 0}`.
    pub fn kernel_basis(&self) -> Matrix {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Matrix::zeros(self.field, self.cols, free.len());
        for (t, &f) in free.iter().enumerate() {
            k.set(f, t, self.field.one());
            for (pi, &pc) in pivots.iter().enumerate() {
                k.set(pc, t, r.get(pi, f).neg());
            }
        }
        k
    }

    /// Rows form a basis of `{y : y * self = 0}`.
    pub fn left_kernel(&self) -> Matrix {
        self.transpose().kernel_basis().transpose()
    }

    /// Rows form a basis (in reduced echelon form) of the row space.
    pub fn row_space(&self) -> Matrix {
        let (r, pivots) = self.rref();
        let idx: Vec<usize> = (0..pivots.len()).collect();
        r.select_rows(&idx)
    }

    /// Some `x` with `self * x = b`, or `None` when inconsistent.
    pub fn solve_linear(&self, b: &Matrix) -> Result<Option<Matrix>> {
        if self.rows != b.rows {
            return Err(Error::Dimension(format!(
                "solve_linear: {} equations but right-hand side has {} rows",
                self.rows, b.rows
            )));
        }
        let aug = Matrix::hstack(&[self, b], self.field, self.rows);
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return Ok(None);
        }
        let mut x = Matrix::zeros(self.field, self.cols, b.cols);
        for (pi, &pc) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(pc, j, r.get(pi, self.cols + j).clone());
            }
        }
        Ok(Some(x))
    }

    /// Some `x` with `x * self = b`, or `None` when inconsistent.
    pub fn solve_left(&self, b: &Matrix) -> Result<Option<Matrix>> {
        if self.cols != b.cols {
            return Err(Error::Dimension(format!(
                "solve_left: matrix has {} columns but right-hand side has {}",
                self.cols, b.cols
            )));
        }
        Ok(self.transpose().solve_linear(&b.transpose())?.map(|x| x.transpose()))
    }

    /// Inverse of a square matrix, or `None` if singular.
    pub fn inverse(&self) -> Option<Matrix> {
        assert!(self.is_square(), "inverse of non-square matrix");
        let id = Matrix::identity(self.field, self.rows);
        if self.rank() < self.rows {
            return None;
        }
        self.solve_linear(&id).ok().flatten()
    }
}

impl fmt::Debug for Matrix {
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

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn rref_examples() {
        let (r, p) = Matrix::identity(Q, 2).rref();
        assert_eq!(r, Matrix::identity(Q, 2));
        assert_eq!(p, vec![0, 1]);

        let (r, p) = Matrix::zeros(Q, 2, 2).rref();
        assert!(r.is_zero());
        assert!(p.is_empty());

        let m = Matrix::from_i64_rows(Q, &[&[1, 2], &[2, 4]]);
        let (r, p) = m.rref();
        assert_eq!(r, Matrix::from_i64_rows(Q, &[&[1, 2], &[0, 0]]));
        assert_eq!(p.len(), 1);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(Matrix::identity(Q, 3).kernel_basis().cols(), 0);

        let k = Matrix::from_i64_rows(Q, &[&[1, 1]]).kernel_basis();
        assert_eq!(k.cols(), 1);
        assert_eq!(k.get(0, 0), &k.get(1, 0).neg());

        let k = Matrix::from_i64_rows(Q, &[&[1, 2], &[2, 4]]).kernel_basis();
        assert_eq!(k.cols(), 1);
        // proportional to (-2, 1)
        assert_eq!(k.get(0, 0), &k.get(1, 0).mul(&Q.from_i64(-2)));
        assert!(!k.is_zero());
    }

    #[test]
    fn solve_examples() {
        let b = Matrix::from_i64_rows(Q, &[&[3], &[-5]]);
        assert_eq!(Matrix::identity(Q, 2).solve_linear(&b).unwrap(), Some(b.clone()));

        let a = Matrix::from_i64_rows(Q, &[&[1, 1]]);
        let x = a.solve_linear(&Matrix::zeros(Q, 1, 1)).unwrap().unwrap();
        assert!(a.mul(&x).is_zero());

        let a = Matrix::from_i64_rows(Q, &[&[1], &[1]]);
        let b = Matrix::from_i64_rows(Q, &[&[0], &[1]]);
        assert_eq!(a.solve_linear(&b).unwrap(), None);

        assert!(a.solve_linear(&Matrix::zeros(Q, 3, 1)).is_err());
    }

    #[test]
    fn left_solve_and_kernel() {
        let a = Matrix::from_i64_rows(Q, &[&[1, 2], &[2, 4], &[0, 1]]);
        let lk = a.left_kernel();
        assert_eq!(lk.rows(), 1);
        assert!(lk.mul(&a).is_zero());
        let b = Matrix::from_i64_rows(Q, &[&[3, 7]]);
        let x = a.solve_left(&b).unwrap().unwrap();
        assert_eq!(x.mul(&a), b);
    }

    #[test]
    fn prime_field_rank() {
        let f = FieldSpec::Prime(2);
        let m = Matrix::from_i64_rows(f, &[&[1, 1], &[1, -1]]);
        assert_eq!(m.rank(), 1);
        assert_eq!(Matrix::from_i64_rows(Q, &[&[1, 1], &[1, -1]]).rank(), 2);
    }
}
