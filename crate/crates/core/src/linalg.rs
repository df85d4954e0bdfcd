//! Small dense complex matrices.
//!
//! Everything here is sized for desk-scale truncations (a few hundred rows at
//! most), so the routines favour clarity over blocking or SIMD.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Index, IndexMut, Mul, Sub};

use crate::error::{Error, Result};
use crate::scalar::{c, C64};

/// Row-major dense complex matrix.
#[derive(Clone, PartialEq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for col in 0..self.cols {
                let z = self[(r, col)];
                write!(f, "{:.6}{:+.6}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![C64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = c(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for col in 0..cols {
                data.push(f(r, col));
            }
        }
        Mat { rows, cols, data }
    }

    /// Builds a matrix from row-major data; `data.len()` must equal `rows * cols`.
    pub fn from_rows(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(Mat { rows, cols, data })
    }

    pub fn diag(values: &[C64]) -> Self {
        let mut m = Mat::zeros(values.len(), values.len());
        for (i, v) in values.iter().enumerate() {
            m[(i, i)] = *v;
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[C64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, col: usize) -> Vec<C64> {
        (0..self.rows).map(|r| self[(r, col)]).collect()
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Mat {
        Mat::from_fn(self.cols, self.rows, |r, col| self[(col, r)].conj())
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.cols, self.rows, |r, col| self[(col, r)])
    }

    pub fn conj(&self) -> Mat {
        Mat::from_fn(self.rows, self.cols, |r, col| self[(r, col)].conj())
    }

    pub fn scale(&self, s: C64) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn mul_vec(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(v.len(), self.cols, "mul_vec: dimension mismatch");
        (0..self.rows)
            .map(|r| self.row(r).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Top-left `rows x cols` block.
    pub fn leading(&self, rows: usize, cols: usize) -> Mat {
        self.block(0, 0, rows, cols)
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Mat {
        Mat::from_fn(rows, cols, |r, col| self[(r0 + r, c0 + col)])
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Mat) {
        for r in 0..b.rows {
            for col in 0..b.cols {
                self[(r0 + r, c0 + col)] = b[(r, col)];
            }
        }
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Mat) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `max |A - A^*|`.
    pub fn hermitian_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        self.max_abs_diff(&self.adjoint())
    }

    pub fn is_lower_triangular(&self, tol: f64) -> bool {
        (0..self.rows).all(|r| ((r + 1)..self.cols).all(|col| self[(r, col)].norm() <= tol))
    }

    pub fn is_upper_triangular(&self, tol: f64) -> bool {
        (0..self.rows).all(|r| (0..r.min(self.cols)).all(|col| self[(r, col)].norm() <= tol))
    }

    /// Determinant by LU with partial pivoting.
    pub fn det(&self) -> Result<C64> {
        self.require_square()?;
        let n = self.rows;
        let mut a = self.clone();
        let mut det = c(1.0, 0.0);
        for k in 0..n {
            let p = (k..n)
                .max_by(|&i, &j| a[(i, k)].norm().total_cmp(&a[(j, k)].norm()))
                .unwrap_or(k);
            if a[(p, k)].norm() == 0.0 {
                return Ok(c(0.0, 0.0));
            }
            if p != k {
                a.swap_rows(p, k);
                det = -det;
            }
            let pivot = a[(k, k)];
            det *= pivot;
            for i in (k + 1)..n {
                let f = a[(i, k)] / pivot;
                if f == c(0.0, 0.0) {
                    continue;
                }
                for j in k..n {
                    let v = a[(k, j)];
                    a[(i, j)] -= f * v;
                }
            }
        }
        Ok(det)
    }

    /// Inverse by Gauss-Jordan elimination with partial pivoting.
    pub fn inverse(&self) -> Result<Mat> {
        self.require_square()?;
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Mat::identity(n);
        let scale = self.max_abs().max(f64::MIN_POSITIVE);
        for k in 0..n {
            let p = (k..n)
                .max_by(|&i, &j| a[(i, k)].norm().total_cmp(&a[(j, k)].norm()))
                .unwrap_or(k);
            if a[(p, k)].norm() <= 1e-14 * scale {
                return Err(Error::Singular { index: k });
            }
            a.swap_rows(p, k);
            inv.swap_rows(p, k);
            let pivot = a[(k, k)];
            for j in 0..n {
                a[(k, j)] /= pivot;
                inv[(k, j)] /= pivot;
            }
            for i in 0..n {
                if i == k {
                    continue;
                }
                let f = a[(i, k)];
                if f == c(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    let (ak, ik) = (a[(k, j)], inv[(k, j)]);
                    a[(i, j)] -= f * ak;
                    inv[(i, j)] -= f * ik;
                }
            }
        }
        Ok(inv)
    }

    /// Inverse of a lower triangular matrix by forward substitution.
    pub fn lower_triangular_inverse(&self) -> Result<Mat> {
        self.require_square()?;
        let n = self.rows;
        let mut inv = Mat::zeros(n, n);
        for j in 0..n {
            if self[(j, j)].norm() == 0.0 {
                return Err(Error::Singular { index: j });
            }
            inv[(j, j)] = self[(j, j)].inv();
            for i in (j + 1)..n {
                let mut acc = c(0.0, 0.0);
                for k in j..i {
                    acc += self[(i, k)] * inv[(k, j)];
                }
                inv[(i, j)] = -acc / self[(i, i)];
            }
        }
        Ok(inv)
    }

    /// Cholesky factor `L` (lower, positive diagonal) with `A = L L^*`.
    ///
    /// Fails when some pivot is not above `tol` times the largest diagonal entry.
    pub fn cholesky(&self, tol: f64) -> Result<Mat> {
        self.cholesky_impl(tol, false)
    }

    /// Cholesky factorization allowing zero pivots (positive semidefinite input).
    /// Columns with a vanishing pivot are set to zero.
    pub fn cholesky_semidefinite(&self, tol: f64) -> Result<Mat> {
        self.cholesky_impl(tol, true)
    }

    fn cholesky_impl(&self, tol: f64, allow_zero: bool) -> Result<Mat> {
        self.require_square()?;
        let n = self.rows;
        let scale = (0..n).map(|i| self[(i, i)].re.abs()).fold(0.0, f64::max).max(1.0);
        let mut l = Mat::zeros(n, n);
        for j in 0..n {
            let mut d = self[(j, j)].re;
            for k in 0..j {
                d -= l[(j, k)].norm_sqr();
            }
            if d <= tol * scale {
                if allow_zero && d >= -libm::sqrt(tol) * scale {
                    // Zero pivot: the rest of column j must vanish as well.
                    for i in (j + 1)..n {
                        let mut s = self[(i, j)];
                        for k in 0..j {
                            s -= l[(i, k)] * l[(j, k)].conj();
                        }
                        if s.norm() > libm::sqrt(tol) * scale {
                            return Err(Error::NotPositive { index: j, value: d });
                        }
                    }
                    continue;
                }
                return Err(Error::NotPositive { index: j, value: d });
            }
            let djj = libm::sqrt(d);
            l[(j, j)] = c(djj, 0.0);
            for i in (j + 1)..n {
                let mut s = self[(i, j)];
                for k in 0..j {
                    s -= l[(i, k)] * l[(j, k)].conj();
                }
                l[(i, j)] = s / djj;
            }
        }
        Ok(l)
    }

    /// Eigenvalues of a Hermitian matrix, ascending.
    ///
    /// Uses cyclic Jacobi rotations on the real symmetric embedding
    /// `[[Re A, -Im A], [Im A, Re A]]`, whose spectrum is that of `A` doubled.
    pub fn hermitian_eigenvalues(&self) -> Result<Vec<f64>> {
        self.require_square()?;
        let n = self.rows;
        if n == 0 {
            return Ok(Vec::new());
        }
        let m = 2 * n;
        let mut a = vec![0.0f64; m * m];
        for i in 0..n {
            for j in 0..n {
                // symmetrize to shed rounding asymmetry
                let z = (self[(i, j)] + self[(j, i)].conj()) * 0.5;
                a[i * m + j] = z.re;
                a[(i + n) * m + (j + n)] = z.re;
                a[i * m + (j + n)] = -z.im;
                a[(i + n) * m + j] = z.im;
            }
        }
        jacobi_symmetric(&mut a, m);
        let mut ev: Vec<f64> = (0..m).map(|i| a[i * m + i]).collect();
        ev.sort_by(f64::total_cmp);
        Ok(ev.into_iter().step_by(2).collect())
    }

    /// Smallest eigenvalue of a Hermitian matrix.
    pub fn min_hermitian_eigenvalue(&self) -> Result<f64> {
        Ok(self
            .hermitian_eigenvalues()?
            .first()
            .copied()
            .unwrap_or(f64::INFINITY))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for col in 0..self.cols {
            self.data.swap(a * self.cols + col, b * self.cols + col);
        }
    }

    fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.rows,
                found: self.cols,
            })
        }
    }
}

fn jacobi_symmetric(a: &mut [f64], m: usize) {
    for _sweep in 0..100 {
        let mut off = 0.0;
        let mut total = 0.0;
        for i in 0..m {
            for j in 0..m {
                let v = a[i * m + j] * a[i * m + j];
                total += v;
                if i != j {
                    off += v;
                }
            }
        }
        if off <= 1e-30 * total.max(f64::MIN_POSITIVE) {
            return;
        }
        for p in 0..m {
            for q in (p + 1)..m {
                let apq = a[p * m + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * m + p];
                let aqq = a[q * m + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + libm::sqrt(theta * theta + 1.0));
                let t = if theta == 0.0 { 1.0 } else { t };
                let cs = 1.0 / libm::sqrt(t * t + 1.0);
                let sn = t * cs;
                for k in 0..m {
                    let akp = a[k * m + p];
                    let akq = a[k * m + q];
                    a[k * m + p] = cs * akp - sn * akq;
                    a[k * m + q] = sn * akp + cs * akq;
                }
                for k in 0..m {
                    let apk = a[p * m + k];
                    let aqk = a[q * m + k];
                    a[p * m + k] = cs * apk - sn * aqk;
                    a[q * m + k] = sn * apk + cs * aqk;
                }
            }
        }
    }
}

impl Index<(usize, usize)> for Mat {
    type Output = C64;
    #[inline]
    fn index(&self, (r, col): (usize, usize)) -> &C64 {
        debug_assert!(r < self.rows && col < self.cols);
        &self.data[r * self.cols + col]
    }
}

impl IndexMut<(usize, usize)> for Mat {
    #[inline]
    fn index_mut(&mut self, (r, col): (usize, usize)) -> &mut C64 {
        debug_assert!(r < self.rows && col < self.cols);
        &mut self.data[r * self.cols + col]
    }
}

impl Mul for &Mat {
    type Output = Mat;
    fn mul(self, rhs: &Mat) -> Mat {
        assert_eq!(self.cols, rhs.rows, "matrix product: dimension mismatch");
        let mut out = Mat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == c(0.0, 0.0) {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += a * rhs.data[k * rhs.cols + j];
                }
            }
        }
        out
    }
}

impl Add for &Mat {
    type Output = Mat;
    fn add(self, rhs: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &Mat {
    type Output = Mat;
    fn sub(self, rhs: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}
