use std::fmt;

use num::traits::Zero;

use super::ring::{Ring, Scalar};
use crate::error::{Error, Result};

/// Dense row-major matrix over a [`Ring`].
///
/// Linear maps `Rᶜ → Rʳ` act on column vectors: `y = M·x`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(ring: Ring, rows: usize, cols: usize) -> Matrix {
        Matrix { ring, rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(ring: Ring, n: usize) -> Matrix {
        let mut m = Matrix::zeros(ring, n, n);
        for i in 0..n {
            m.data[i * n + i] = ring.one();
        }
        m
    }

    /// Builds a matrix from raw entries, validating membership in `ring`.
    pub fn new(ring: Ring, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Matrix> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        for x in &data {
            if !ring.contains(x) {
                return Err(Error::InvalidEntry(x.to_string(), ring.to_string()));
            }
        }
        Ok(Matrix { ring, rows, cols, data })
    }

    /// Builds a matrix from entries that are reduced into `ring` first.
    pub fn from_scalars(ring: Ring, rows: usize, cols: usize, data: Vec<Scalar>) -> Matrix {
        assert_eq!(data.len(), rows * cols);
        let data = data.into_iter().map(|x| ring.reduce(x)).collect();
        Matrix { ring, rows, cols, data }
    }

    pub fn from_i64(ring: Ring, rows: &[Vec<i64>]) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        Self::from_i64_shape(ring, r, c, rows)
    }

    /// Like [`Matrix::from_i64`] but with an explicit column count, so that
    /// `r × 0` and `0 × c` shapes survive.
    pub fn from_i64_shape(ring: Ring, rows: usize, cols: usize, entries: &[Vec<i64>]) -> Matrix {
        assert_eq!(entries.len(), rows);
        let mut data = Vec::with_capacity(rows * cols);
        for row in entries {
            assert_eq!(row.len(), cols, "ragged matrix");
            data.extend(row.iter().map(|&v| ring.from_i64(v)));
        }
        Matrix { ring, rows, cols, data }
    }

    pub fn from_rows(ring: Ring, cols: usize, rows: Vec<Vec<Scalar>>) -> Matrix {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols);
            data.extend(row);
        }
        Matrix { ring, rows: r, cols, data }
    }

    pub fn from_columns(ring: Ring, rows: usize, cols: Vec<Vec<Scalar>>) -> Matrix {
        let c = cols.len();
        let mut m = Matrix::zeros(ring, rows, c);
        for (j, col) in cols.into_iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, v) in col.into_iter().enumerate() {
                m.data[i * c + j] = v;
            }
        }
        m
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = self.ring.reduce(v);
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.check_ring(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let ring = self.ring;
        let mut out = Matrix::zeros(ring, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * other.cols + j;
                    out.data[idx] = &out.data[idx] + a * b;
                }
            }
        }
        out.data.iter_mut().for_each(|x| *x = ring.reduce(std::mem::take(x)));
        Ok(out)
    }

    /// `M·v` for a column vector `v`.
    pub fn apply(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} for a {}x{} matrix",
                v.len(),
                self.rows,
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                let s = self
                    .row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Scalar::zero(), |acc, (a, b)| acc + a * b);
                self.ring.reduce(s)
            })
            .collect())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.zip_with(other, |r, a, b| r.add(a, b))
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.zip_with(other, |r, a, b| r.sub(a, b))
    }

    pub fn scale(&self, k: &Scalar) -> Matrix {
        let ring = self.ring;
        Matrix { ring, rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| ring.mul(x, k)).collect() }
    }

    pub fn neg(&self) -> Matrix {
        self.scale(&self.ring.from_i64(-1))
    }

    fn zip_with(&self, other: &Matrix, f: impl Fn(Ring, &Scalar, &Scalar) -> Scalar) -> Result<Matrix> {
        self.check_ring(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Matrix {
            ring: self.ring,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(self.ring, a, b)).collect(),
        })
    }

    fn check_ring(&self, other: &Matrix) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring.to_string(), other.ring.to_string()));
        }
        Ok(())
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Result<Matrix> {
        self.check_ring(other)?;
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch("hstack row counts differ".into()));
        }
        let mut m = Matrix::zeros(self.ring, self.rows, self.cols + other.cols);
        m.set_block(0, 0, self);
        m.set_block(0, self.cols, other);
        Ok(m)
    }

    /// `[self; other]`.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        self.check_ring(other)?;
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch("vstack column counts differ".into()));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(Matrix { ring: self.ring, rows: self.rows + other.rows, cols: self.cols, data })
    }

    pub fn block_diag(ring: Ring, blocks: &[Matrix]) -> Matrix {
        let rows = blocks.iter().map(Matrix::rows).sum();
        let cols = blocks.iter().map(Matrix::cols).sum();
        let mut m = Matrix::zeros(ring, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            m.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.data[(r0 + i) * self.cols + c0 + j] = block.get(i, j).clone();
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        let mut m = Matrix::zeros(self.ring, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.data[i * cols + j] = self.get(r0 + i, c0 + j).clone();
            }
        }
        m
    }

    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(self.ring, rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m.data[a * cols.len() + b] = self.get(i, j).clone();
            }
        }
        m
    }

    /// Determinant by fraction-free (Bareiss) elimination. The empty matrix has determinant one.
    pub fn determinant(&self) -> Result<Scalar> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("determinant of a non-square matrix".into()));
        }
        let ring = self.ring;
        let n = self.rows;
        let mut a = self.row_vecs();
        let mut sign = ring.one();
        let mut prev = ring.one();
        for k in 0..n {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(k, i);
                        sign = ring.neg(&sign);
                    }
                    None => return Ok(ring.zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = ring.sub(&ring.mul(&a[i][j], &a[k][k]), &ring.mul(&a[i][k], &a[k][j]));
                    a[i][j] = ring.exact_div(&num, &prev).expect("Bareiss division is exact");
                }
                a[i][k] = ring.zero();
            }
            prev = a[k][k].clone();
        }
        if n == 0 {
            return Ok(ring.one());
        }
        Ok(ring.mul(&sign, &a[n - 1][n - 1]))
    }

    /// Re-interprets the entries in another ring (e.g. ℤ → ℚ or ℤ → ℤ/p).
    pub fn change_ring(&self, ring: Ring) -> Matrix {
        Matrix::from_scalars(ring, self.rows, self.cols, self.data.clone())
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix<{}>{}x{}[", self.ring, self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiplication_and_identity() {
        let z = Ring::Integers;
        let a = Matrix::from_i64(z, &[vec![1, 2], vec![3, 4]]);
        let i = Matrix::identity(z, 2);
        assert_eq!(a.mul(&i).unwrap(), a);
        let sq = a.mul(&a).unwrap();
        assert_eq!(sq, Matrix::from_i64(z, &[vec![7, 10], vec![15, 22]]));
    }

    #[test]
    fn bareiss_determinant() {
        let z = Ring::Integers;
        let a = Matrix::from_i64(z, &[vec![2, 4], vec![6, 8]]);
        assert_eq!(a.determinant().unwrap(), z.from_i64(-8));
        let b = Matrix::from_i64(z, &[vec![0, 1, 2], vec![3, 4, 5], vec![6, 7, 9]]);
        assert_eq!(b.determinant().unwrap(), z.from_i64(-3));
        assert_eq!(Matrix::zeros(z, 0, 0).determinant().unwrap(), z.one());
        let f = Ring::PrimeField(3);
        assert_eq!(b.change_ring(f).determinant().unwrap(), f.zero());
    }

    #[test]
    fn shape_mismatch_is_an_error() {
        let z = Ring::Integers;
        let a = Matrix::zeros(z, 2, 3);
        assert!(a.mul(&a).is_err());
        assert!(a.apply(&[z.one()]).is_err());
    }
}
