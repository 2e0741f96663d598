//! Small dense linear algebra over `Complex64` and `f64`.
//!
//! Only what the detectors need: multiply, conjugate transpose, norms, and a
//! pivoted solve for the (at most Nt x Nt) Gram systems behind least-squares
//! channel estimation. Everything is row-major and double precision.

use num_complex::Complex64;

use crate::{Error, Result};

/// Fixed-length vector of complex scalars.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexVector {
    entries: Vec<Complex64>,
}

impl ComplexVector {
    /// Wraps `entries`; rejects non-finite values.
    pub fn from_vec(entries: Vec<Complex64>) -> Result<Self> {
        if entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::invalid("vector entries must be finite"));
        }
        Ok(ComplexVector { entries })
    }

    pub fn from_fn(n: usize, f: impl FnMut(usize) -> Complex64) -> Self {
        ComplexVector {
            entries: (0..n).map(f).collect(),
        }
    }

    pub fn zeros(n: usize) -> Self {
        ComplexVector {
            entries: vec![Complex64::new(0.0, 0.0); n],
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Complex64> {
        self.entries.iter()
    }

    /// Squared Euclidean norm.
    pub fn norm_sqr(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Squared Euclidean distance to `other`.
    pub fn dist_sqr(&self, other: &ComplexVector) -> f64 {
        debug_assert_eq!(self.len(), other.len());
        self.entries
            .iter()
            .zip(other.entries.iter())
            .map(|(a, b)| (a - b).norm_sqr())
            .sum()
    }

    pub fn add(&self, other: &ComplexVector) -> ComplexVector {
        debug_assert_eq!(self.len(), other.len());
        ComplexVector::from_fn(self.len(), |i| self.entries[i] + other.entries[i])
    }

    pub fn sub(&self, other: &ComplexVector) -> ComplexVector {
        debug_assert_eq!(self.len(), other.len());
        ComplexVector::from_fn(self.len(), |i| self.entries[i] - other.entries[i])
    }

    pub fn scale(&self, s: f64) -> ComplexVector {
        ComplexVector::from_fn(self.len(), |i| self.entries[i] * s)
    }
}

impl std::ops::Index<usize> for ComplexVector {
    type Output = Complex64;

    fn index(&self, i: usize) -> &Complex64 {
        &self.entries[i]
    }
}

/// Row-major complex matrix with fixed dimensions.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn from_data(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::invalid(format!(
                "matrix data length {} does not match {rows}x{cols}",
                data.len()
            )));
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::invalid("matrix entries must be finite"));
        }
        Ok(ComplexMatrix { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let data = (0..rows * cols).map(|i| f(i / cols, i % cols)).collect();
        ComplexMatrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        ComplexMatrix {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        ComplexMatrix::from_fn(n, n, |r, c| {
            Complex64::new(if r == c { 1.0 } else { 0.0 }, 0.0)
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Complex64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Complex64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> ComplexVector {
        ComplexVector::from_fn(self.rows, |r| self.get(r, c))
    }

    /// Conjugate transpose.
    pub fn hermitian(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r).conj())
    }

    pub fn mul_vec(&self, v: &ComplexVector) -> ComplexVector {
        debug_assert_eq!(self.cols, v.len());
        ComplexVector::from_fn(self.rows, |r| {
            self.row(r)
                .iter()
                .zip(v.iter())
                .map(|(a, b)| a * b)
                .sum()
        })
    }

    pub fn mul_mat(&self, other: &ComplexMatrix) -> ComplexMatrix {
        debug_assert_eq!(self.cols, other.rows);
        let mut out = ComplexMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                let orow = other.row(k);
                let out_row = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (o, b) in out_row.iter_mut().zip(orow.iter()) {
                    *o += a * b;
                }
            }
        }
        out
    }

    pub fn add(&self, other: &ComplexMatrix) -> ComplexMatrix {
        debug_assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        ComplexMatrix::from_fn(self.rows, self.cols, |r, c| self.get(r, c) + other.get(r, c))
    }

    pub fn sub(&self, other: &ComplexMatrix) -> ComplexMatrix {
        debug_assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        ComplexMatrix::from_fn(self.rows, self.cols, |r, c| self.get(r, c) - other.get(r, c))
    }

    pub fn scale(&self, s: f64) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.rows, self.cols, |r, c| self.get(r, c) * s)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

/// Solves the normal-equation form of the least-squares problem
/// `min_X ||B - X A||_F`, i.e. returns `B A^H (A A^H)^{-1}`.
///
/// `A` must have full row rank so the Gram matrix is invertible.
pub fn ls_solve(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    if a.cols() != b.cols() {
        return Err(Error::invalid(format!(
            "column counts differ: A is {}x{}, B is {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    let ah = a.hermitian();
    let gram = a.mul_mat(&ah);
    let rhs = b.mul_mat(&ah);
    // X gram = rhs with Hermitian gram  =>  gram X^H = rhs^H.
    let w = solve_multi(&gram, &rhs.hermitian())?;
    Ok(w.hermitian())
}

/// Solves `M X = B` by Gaussian elimination with partial pivoting.
fn solve_multi(m: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    debug_assert_eq!(m.rows(), m.cols());
    debug_assert_eq!(m.rows(), b.rows());
    let n = m.rows();
    let nrhs = b.cols();
    let mut lhs = m.clone();
    let mut rhs = b.clone();
    let tol = lhs.max_abs() * (n as f64) * f64::EPSILON;

    for col in 0..n {
        let pivot_row = (col..n)
            .max_by(|&r1, &r2| {
                lhs.get(r1, col)
                    .norm()
                    .total_cmp(&lhs.get(r2, col).norm())
            })
            .unwrap();
        if lhs.get(pivot_row, col).norm() <= tol {
            return Err(Error::RankDeficient(format!(
                "pivot {} below tolerance while solving {n}x{n} system",
                lhs.get(pivot_row, col).norm()
            )));
        }
        if pivot_row != col {
            for c in 0..n {
                let tmp = lhs.get(col, c);
                lhs.set(col, c, lhs.get(pivot_row, c));
                lhs.set(pivot_row, c, tmp);
            }
            for c in 0..nrhs {
                let tmp = rhs.get(col, c);
                rhs.set(col, c, rhs.get(pivot_row, c));
                rhs.set(pivot_row, c, tmp);
            }
        }
        let pivot = lhs.get(col, col);
        for r in col + 1..n {
            let factor = lhs.get(r, col) / pivot;
            if factor.norm_sqr() == 0.0 {
                continue;
            }
            for c in col..n {
                let v = lhs.get(r, c) - factor * lhs.get(col, c);
                lhs.set(r, c, v);
            }
            for c in 0..nrhs {
                let v = rhs.get(r, c) - factor * rhs.get(col, c);
                rhs.set(r, c, v);
            }
        }
    }

    let mut x = ComplexMatrix::zeros(n, nrhs);
    for r in (0..n).rev() {
        for c in 0..nrhs {
            let mut acc = rhs.get(r, c);
            for k in r + 1..n {
                acc -= lhs.get(r, k) * x.get(k, c);
            }
            x.set(r, c, acc / lhs.get(r, r));
        }
    }
    Ok(x)
}

/// Row-major real matrix. Backs responsibilities, transition matrices, and
/// the MLP layers.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let data = (0..rows * cols).map(|i| f(i / cols, i % cols)).collect();
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::invalid("rows have inconsistent lengths"));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.iter().flatten().copied().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: f64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[f64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [f64] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r))
    }

    /// `self * other`, accumulated in a fixed order per output entry.
    pub fn matmul(&self, other: &Matrix) -> Matrix {
        debug_assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0.0 {
                    continue;
                }
                let orow = other.row(k);
                let out_row = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (o, b) in out_row.iter_mut().zip(orow.iter()) {
                    *o += a * b;
                }
            }
        }
        out
    }
}
