//! Dense exact matrices with Gaussian elimination.
//!
//! Everything here is deterministic: pivots are always the first nonzero
//! entry, so reduced row-echelon forms are canonical and can be compared
//! entrywise.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: Field,
    data: Vec<Scalar>, // row-major
}

/// Output of [`Matrix::rref`].
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix { rows, cols, field, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: Field, cols: usize, rows: &[Vec<Scalar>]) -> Result<Matrix> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, got: row.len() });
            }
            for s in row {
                if s.field() != field {
                    return Err(Error::FieldMismatch);
                }
                data.push(s.clone());
            }
        }
        Ok(Matrix { rows: rows.len(), cols, field, data })
    }

    /// Convenience constructor from integer literals.
    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .flat_map(|r| {
                assert_eq!(r.len(), cols);
                r.iter().map(|&n| field.from_i64(n))
            })
            .collect();
        Matrix { rows: rows.len(), cols, field, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn at(&self, r: usize, c: usize) -> &Scalar {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        debug_assert!(r < self.rows && c < self.cols);
        debug_assert!(v.field() == self.field);
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> Vec<Scalar> {
        self.data[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn col(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.at(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.at(r, c).clone());
            }
        }
        out
    }

    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        if other.cols != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, got: other.cols });
        }
        if other.field != self.field {
            return Err(Error::FieldMismatch);
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix { rows: self.rows + other.rows, cols: self.cols, field: self.field, data })
    }

    pub fn hstack(&self, other: &Matrix) -> Result<Matrix> {
        if other.rows != self.rows {
            return Err(Error::DimensionMismatch { expected: self.rows, got: other.rows });
        }
        if other.field != self.field {
            return Err(Error::FieldMismatch);
        }
        let mut out = Matrix::zeros(self.field, self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.at(r, c).clone());
            }
            for c in 0..other.cols {
                out.set(r, self.cols + c, other.at(r, c).clone());
            }
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, got: other.rows });
        }
        if other.field != self.field {
            return Err(Error::FieldMismatch);
        }
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = self.field.zero();
                for k in 0..self.cols {
                    let a = self.at(r, k);
                    if a.is_zero() {
                        continue;
                    }
                    acc = acc.add(&a.mul(other.at(k, c)));
                }
                out.set(r, c, acc);
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, got: v.len() });
        }
        let mut out = Vec::with_capacity(self.rows);
        for r in 0..self.rows {
            let mut acc = self.field.zero();
            for c in 0..self.cols {
                let a = self.at(r, c);
                if !a.is_zero() {
                    acc = acc.add(&a.mul(&v[c]));
                }
            }
            out.push(acc);
        }
        Ok(out)
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        let data = self.data.iter().map(|x| x.mul(s)).collect();
        Matrix { rows: self.rows, cols: self.cols, field: self.field, data }
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch { expected: self.rows * self.cols, got: other.rows * other.cols });
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.add(b)).collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, field: self.field, data })
    }

    /// Reduced row-echelon form with the pivot column list.
    ///
    /// Rerunning on the output is the identity, and the output is the unique
    /// canonical representative of the row space.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0usize;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(pr) = (row..m.rows).find(|&r| !m.at(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, pr);
            let inv = m.at(row, col).inv().expect("pivot nonzero");
            m.scale_row(row, &inv);
            for r in 0..m.rows {
                if r != row && !m.at(r, col).is_zero() {
                    let factor = m.at(r, col).clone();
                    m.sub_scaled_row(r, row, &factor);
                }
            }
            pivots.push(col);
            row += 1;
        }
        Rref { matrix: m, rank: pivots.len(), pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of {v : self · v = 0}, one row per basis vector.
    ///
    /// The rows come out of the standard free-column construction; callers
    /// wanting a canonical form should feed them through `Subspace`.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let Rref { matrix: r, pivots, .. } = self.rref();
        let pivot_of_col: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (i, &c) in pivots.iter().enumerate() {
                v[c] = Some(i);
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_of_col[free].is_some() {
                continue;
            }
            let mut vec_ = vec![self.field.zero(); self.cols];
            vec_[free] = self.field.one();
            for (i, &pc) in pivots.iter().enumerate() {
                vec_[pc] = r.at(i, free).neg();
            }
            basis.push(vec_);
        }
        basis
    }

    /// Any solution x of self · x = b, or None when inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch { expected: self.rows, got: b.len() });
        }
        let rhs = Matrix::from_rows(self.field, self.rows, &[b.to_vec()])?.transpose();
        let aug = self.hstack(&rhs)?;
        let Rref { matrix: r, pivots, .. } = aug.rref();
        if pivots.contains(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = r.at(i, self.cols).clone();
        }
        Ok(Some(x))
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let aug = self.hstack(&Matrix::identity(self.field, self.rows)).expect("same rows");
        let Rref { matrix: r, rank, .. } = aug.rref();
        if rank != self.rows {
            return None;
        }
        let mut out = Matrix::zeros(self.field, self.rows, self.rows);
        for i in 0..self.rows {
            for j in 0..self.rows {
                out.set(i, j, r.at(i, self.rows + j).clone());
            }
        }
        Some(out)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn scale_row(&mut self, r: usize, s: &Scalar) {
        for c in 0..self.cols {
            let v = self.at(r, c).mul(s);
            self.set(r, c, v);
        }
    }

    fn sub_scaled_row(&mut self, dst: usize, src: usize, factor: &Scalar) {
        for c in 0..self.cols {
            let v = self.at(dst, c).sub(&factor.mul(self.at(src, c)));
            self.set(dst, c, v);
        }
    }

    /// Deterministic byte key; used for hashing and lexicographic tie-breaks.
    pub fn canon_key(&self) -> String {
        let mut s = alloc::format!("{}x{}:", self.rows, self.cols);
        for (i, v) in self.data.iter().enumerate() {
            if i > 0 {
                s.push(',');
            }
            s.push_str(&v.to_serial());
        }
        s
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            write!(f, "  [")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.at(r, c))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> Field {
        Field::prime(3).unwrap()
    }

    #[test]
    fn rref_zero_and_identity() {
        let z = Matrix::zeros(Field::Rationals, 3, 3);
        let r = z.rref();
        assert!(r.matrix.is_zero());
        assert_eq!(r.rank, 0);
        assert!(r.pivots.is_empty());

        let id = Matrix::identity(Field::Rationals, 4);
        let r = id.rref();
        assert_eq!(r.matrix, id);
        assert_eq!(r.rank, 4);
        assert_eq!(r.pivots, vec![0, 1, 2, 3]);
    }

    #[test]
    fn rref_mod_3_rank_drop() {
        // second row = 2 * first over F_3
        let m = Matrix::from_i64(f3(), &[&[1, 2], &[2, 1]]);
        let r = m.rref();
        assert_eq!(r.rank, 1);
        assert_eq!(r.matrix, Matrix::from_i64(f3(), &[&[1, 2], &[0, 0]]));
    }

    #[test]
    fn rref_is_idempotent() {
        let m = Matrix::from_i64(f3(), &[&[1, 2, 0, 1], &[2, 1, 1, 0], &[0, 0, 2, 2]]);
        let r1 = m.rref();
        let r2 = r1.matrix.rref();
        assert_eq!(r1.matrix, r2.matrix);
    }

    #[test]
    fn kernel_dimensions() {
        let id = Matrix::identity(f3(), 4);
        assert!(id.kernel_basis().is_empty());

        let z = Matrix::zeros(f3(), 4, 4);
        assert_eq!(z.kernel_basis().len(), 4);

        // one equation x + y = 0 over Q in 3 unknowns
        let m = Matrix::from_i64(Field::Rationals, &[&[1, 1, 0]]);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.mul_vec(v).unwrap().iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn solve_examples() {
        let f5 = Field::prime(5).unwrap();
        let a = Matrix::from_i64(f5, &[&[2]]);
        let x = a.solve(&[f5.from_i64(3)]).unwrap().unwrap();
        assert_eq!(x, vec![f5.from_i64(4)]);

        let z = Matrix::zeros(f5, 2, 2);
        assert!(z.solve(&[f5.from_i64(1), f5.zero()]).unwrap().is_none());

        let id = Matrix::identity(f5, 3);
        let b = [f5.from_i64(1), f5.from_i64(2), f5.from_i64(3)];
        assert_eq!(id.solve(&b).unwrap().unwrap(), b.to_vec());
    }

    #[test]
    fn rank_equals_rank_of_transpose() {
        let m = Matrix::from_i64(f3(), &[&[1, 2, 1], &[2, 1, 0], &[0, 0, 1], &[1, 2, 2]]);
        assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn inverse_round_trip() {
        let f7 = Field::prime(7).unwrap();
        let m = Matrix::from_i64(f7, &[&[1, 2, 0], &[0, 1, 4], &[3, 0, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(f7, 3));
    }
}
