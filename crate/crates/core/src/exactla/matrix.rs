use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_traits::{One, Zero};

use super::echelon::{reduced_echelon, EchelonBuilder};
use super::kernel_of_rows;
use super::poly::{EigenSplit, Poly};
use super::{check_len, format_rational, rat, Rational, Subspace};
use crate::error::{Error, Result};

/// Dense rational matrix, row-major storage. Matrices act on column vectors.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(nrows * ncols);
        for row in rows {
            check_len(&row, ncols)?;
            data.extend(row);
        }
        Ok(Matrix {
            rows: nrows,
            cols: ncols,
            data,
        })
    }

    /// Integer entries, convenient for fixtures.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let r: Vec<Vec<Rational>> = rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect();
        Matrix::from_rows(r).expect("ragged integer matrix")
    }

    pub fn from_columns(rows: usize, columns: &[Vec<Rational>]) -> Result<Self> {
        for c in columns {
            check_len(c, rows)?;
        }
        Ok(Matrix::from_fn(rows, columns.len(), |i, j| columns[j][i].clone()))
    }

    /// Inverse of [`Matrix::to_col_major`].
    pub fn from_col_major(rows: usize, cols: usize, v: &[Rational]) -> Result<Self> {
        check_len(v, rows * cols)?;
        Ok(Matrix::from_fn(rows, cols, |i, j| v[j * rows + i].clone()))
    }

    pub fn diagonal(entries: &[Rational]) -> Self {
        let n = entries.len();
        Matrix::from_fn(n, n, |i, j| if i == j { entries[i].clone() } else { Rational::zero() })
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

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Rational>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    /// Entries listed column by column.
    pub fn to_col_major(&self) -> Vec<Rational> {
        let mut v = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                v.push(self[(i, j)].clone());
            }
        }
        v
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).sum()
    }

    pub fn scale(&self, a: &Rational) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * a).collect(),
        }
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols, "matrix-vector dimension mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    /// `self * other - other * self`
    pub fn commutator(&self, other: &Matrix) -> Matrix {
        &(self * other) - &(other * self)
    }

    pub fn rank(&self) -> usize {
        let mut b = EchelonBuilder::new(self.cols);
        for i in 0..self.rows {
            b.push(self.row(i));
            if b.is_full() {
                break;
            }
        }
        b.rank()
    }

    pub fn nullspace(&self) -> Subspace {
        kernel_of_rows((0..self.rows).map(|i| self.row(i).to_vec()), self.cols)
    }

    /// Column space as a subspace of the codomain.
    pub fn image(&self) -> Subspace {
        Subspace::span(self.rows, &self.columns()).expect("columns have row length")
    }

    /// Solves `self * x = b`, returning one solution if the system is consistent.
    pub fn solve(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(b.len(), self.rows, "right-hand side length mismatch");
        let augmented: Vec<Vec<Rational>> = (0..self.rows)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.push(b[i].clone());
                r
            })
            .collect();
        let e = reduced_echelon(&augmented, self.cols + 1);
        if e.pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (row, &p) in e.rows.iter().zip(&e.pivots) {
            x[p] = row[self.cols].clone();
        }
        Some(x)
    }

    fn require_square(&self) -> Result<()> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(())
    }

    /// True iff `self^n = 0` where `n` is the size.
    pub fn is_nilpotent(&self) -> Result<bool> {
        self.require_square()?;
        let mut p = self.clone();
        for _ in 1..self.rows {
            if p.is_zero() {
                return Ok(true);
            }
            p = &p * self;
        }
        Ok(p.is_zero())
    }

    /// Characteristic polynomial `det(x I - A)` by the Faddeev-LeVerrier recursion.
    pub fn charpoly(&self) -> Result<Poly> {
        self.require_square()?;
        let n = self.rows;
        let mut coeffs = vec![Rational::zero(); n + 1];
        coeffs[n] = Rational::one();
        // M_k = A M_{k-1} + c_{n-k+1} I,  c_{n-k} = -tr(A M_k) / k
        let mut am = Matrix::zeros(n, n);
        for k in 1..=n {
            let mut m = am;
            for i in 0..n {
                m[(i, i)] += &coeffs[n - k + 1];
            }
            am = self * &m;
            coeffs[n - k] = -am.trace() / rat(k as i64);
        }
        Ok(Poly::new(coeffs))
    }

    pub fn rational_eigen_split(&self) -> Result<EigenSplit> {
        Ok(self.charpoly()?.eigen_split())
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Rational;

    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        assert!(i < self.rows && j < self.cols, "matrix index out of range");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        assert!(i < self.rows && j < self.cols, "matrix index out of range");
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &Matrix {
    type Output = Matrix;

    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl Add for &Matrix {
    type Output = Matrix;

    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix sum dimension mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;

    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix difference dimension mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(format_rational).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shift3() -> Matrix {
        Matrix::from_i64(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]])
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Matrix::identity(2).rank(), 2);
        assert_eq!(Matrix::zeros(3, 3).rank(), 0);
        assert_eq!(Matrix::from_i64(&[&[1, 2], &[2, 4]]).rank(), 1);
    }

    #[test]
    fn nullspace_examples() {
        assert_eq!(Matrix::identity(3).nullspace(), Subspace::zero(3));
        assert_eq!(Matrix::zeros(2, 3).nullspace(), Subspace::full(3));
        let k = Matrix::from_i64(&[&[1, 1, 0]]).nullspace();
        let expected = Subspace::span(3, &[vec![rat(1), rat(-1), rat(0)], vec![rat(0), rat(0), rat(1)]]).unwrap();
        assert_eq!(k, expected);
        assert_eq!(k.dim(), 2);
    }

    #[test]
    fn nilpotency_examples() {
        assert!(shift3().is_nilpotent().unwrap());
        assert!(!Matrix::identity(3).is_nilpotent().unwrap());
        assert!(!Matrix::diagonal(&[rat(0), rat(1)]).is_nilpotent().unwrap());
        assert!(matches!(Matrix::zeros(2, 3).is_nilpotent(), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn eigen_split_examples() {
        let s = shift3().rational_eigen_split().unwrap();
        assert_eq!(s.rational_roots, vec![(rat(0), 3)]);
        assert_eq!(s.residual_degree(), 0);

        let s = Matrix::diagonal(&[rat(1), rat(2)]).rational_eigen_split().unwrap();
        assert_eq!(s.rational_roots, vec![(rat(1), 1), (rat(2), 1)]);
        assert_eq!(s.residual_degree(), 0);

        let rot = Matrix::from_i64(&[&[0, -1], &[1, 0]]);
        // det(x I - R) = x^2 + 1
        assert_eq!(rot.charpoly().unwrap(), Poly::new(vec![rat(1), rat(0), rat(1)]));
        let s = rot.rational_eigen_split().unwrap();
        assert!(s.rational_roots.is_empty());
        assert_eq!(s.residual_degree(), 2);
    }

    #[test]
    fn solve_and_col_major() {
        let m = Matrix::from_i64(&[&[1, 0], &[0, 2], &[1, 1]]);
        let x = m.solve(&[rat(3), rat(4), rat(5)]).unwrap();
        assert_eq!(x, vec![rat(3), rat(2)]);
        assert!(m.solve(&[rat(1), rat(0), rat(0)]).is_none());
        let v = m.to_col_major();
        assert_eq!(v, vec![rat(1), rat(0), rat(1), rat(0), rat(2), rat(1)]);
        assert_eq!(Matrix::from_col_major(3, 2, &v).unwrap(), m);
    }
}
