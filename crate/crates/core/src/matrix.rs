//! Dense square matrices and permutations.
//!
//! [`Mat`] wraps a `nalgebra::DMatrix<f64>` and guarantees it is square,
//! non-empty and finite. Everything else in the crate takes and returns `Mat`.

use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};

use nalgebra::DMatrix;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A finite, non-empty, square real matrix.
#[derive(Clone, PartialEq)]
pub struct Mat(DMatrix<f64>);

impl Mat {
    /// Builds a matrix from a list of rows.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let d = rows.len();
        if d == 0 {
            return Err(Error::InvalidMatrix("empty matrix".into()));
        }
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != d) {
            return Err(Error::InvalidMatrix(format!(
                "row {i} has {} entries, expected {d}",
                r.len()
            )));
        }
        Self::from_inner(DMatrix::from_fn(d, d, |i, j| rows[i][j]))
    }

    /// Builds a `d×d` matrix from entries listed row by row.
    pub fn from_row_slice(d: usize, entries: &[f64]) -> Result<Self> {
        if d == 0 || entries.len() != d * d {
            return Err(Error::InvalidMatrix(format!(
                "{} entries cannot fill a {d}x{d} matrix",
                entries.len()
            )));
        }
        Self::from_inner(DMatrix::from_row_slice(d, d, entries))
    }

    /// Wraps an existing nalgebra matrix after validating it.
    pub fn from_inner(m: DMatrix<f64>) -> Result<Self> {
        if m.nrows() == 0 || m.nrows() != m.ncols() {
            return Err(Error::InvalidMatrix(format!(
                "shape {}x{} is not square",
                m.nrows(),
                m.ncols()
            )));
        }
        if let Some(k) = m.iter().position(|x| !x.is_finite()) {
            let d = m.nrows();
            // nalgebra stores column-major
            return Err(Error::InvalidMatrix(format!(
                "entry ({}, {}) is not finite",
                k % d,
                k / d
            )));
        }
        Ok(Self(m))
    }

    /// Builds a matrix entry by entry; `f` must return finite values.
    pub fn from_fn(d: usize, f: impl FnMut(usize, usize) -> f64) -> Self {
        assert!(d > 0, "dimension must be positive");
        let m = DMatrix::from_fn(d, d, f);
        assert!(m.iter().all(|x| x.is_finite()), "non-finite entry");
        Self(m)
    }

    pub fn identity(d: usize) -> Self {
        assert!(d > 0, "dimension must be positive");
        Self(DMatrix::identity(d, d))
    }

    pub fn zeros(d: usize) -> Self {
        assert!(d > 0, "dimension must be positive");
        Self(DMatrix::zeros(d, d))
    }

    /// The all-ones matrix.
    pub fn ones(d: usize) -> Self {
        Self::from_fn(d, |_, _| 1.0)
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn inner(&self) -> &DMatrix<f64> {
        &self.0
    }

    pub fn into_inner(self) -> DMatrix<f64> {
        self.0
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        (0..self.dim())
            .map(|i| self.0.row(i).iter().copied().collect())
            .collect()
    }

    pub fn row(&self, i: usize) -> Vec<f64> {
        self.0.row(i).iter().copied().collect()
    }

    pub fn row_sums(&self) -> Vec<f64> {
        (0..self.dim()).map(|i| self.0.row(i).sum()).collect()
    }

    pub fn col_sums(&self) -> Vec<f64> {
        (0..self.dim()).map(|j| self.0.column(j).sum()).collect()
    }

    pub fn trace(&self) -> f64 {
        self.0.trace()
    }

    pub fn determinant(&self) -> f64 {
        self.0.determinant()
    }

    pub fn transpose(&self) -> Self {
        Self(self.0.transpose())
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0, |a, x| a.max(x.abs()))
    }

    /// Induced ∞-norm: the largest absolute row sum.
    pub fn norm_inf(&self) -> f64 {
        (0..self.dim())
            .map(|i| self.0.row(i).iter().map(|x| x.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Induced 1-norm: the largest absolute column sum.
    pub fn norm_one(&self) -> f64 {
        self.transpose().norm_inf()
    }

    pub fn scale(&self, s: f64) -> Self {
        Self(&self.0 * s)
    }

    /// `self^n` by repeated squaring.
    pub fn pow(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity(self.dim());
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Row vector times matrix.
    pub fn left_mul_vec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.dim());
        (0..self.dim())
            .map(|j| (0..self.dim()).map(|i| x[i] * self.0[(i, j)]).sum())
            .collect()
    }

    /// Matrix times column vector.
    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(v.len(), self.dim());
        (0..self.dim())
            .map(|i| (0..self.dim()).map(|j| self.0[(i, j)] * v[j]).sum())
            .collect()
    }

    /// `max |self - other|` over all entries.
    pub fn max_diff(&self, other: &Mat) -> f64 {
        assert_eq!(self.dim(), other.dim());
        self.0
            .iter()
            .zip(other.0.iter())
            .fold(0.0, |a, (x, y)| a.max((x - y).abs()))
    }

    /// Same as [`Mat::max_diff`] but in the induced ∞-norm.
    pub fn dist_inf(&self, other: &Mat) -> f64 {
        (self - other).norm_inf()
    }

    pub fn approx_eq(&self, other: &Mat, tol: f64) -> bool {
        self.dim() == other.dim() && self.max_diff(other) <= tol
    }

    /// Applies `f` to every entry.
    pub fn map(&self, f: impl FnMut(f64) -> f64) -> Self {
        let m = self.0.map(f);
        assert!(m.iter().all(|x| x.is_finite()), "non-finite entry");
        Self(m)
    }
}

impl Index<(usize, usize)> for Mat {
    type Output = f64;
    fn index(&self, ij: (usize, usize)) -> &f64 {
        &self.0[ij]
    }
}

impl Serialize for Mat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows().serialize(s)
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat{:?}", self.rows())
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prec = f.precision().unwrap_or(6);
        for i in 0..self.dim() {
            write!(f, "[")?;
            for j in 0..self.dim() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{:>w$.p$}", self.0[(i, j)], w = prec + 4, p = prec)?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $op:tt) => {
        impl $tr<&Mat> for &Mat {
            type Output = Mat;
            fn $method(self, rhs: &Mat) -> Mat {
                assert_eq!(self.dim(), rhs.dim(), "dimension mismatch");
                Mat(&self.0 $op &rhs.0)
            }
        }
        impl $tr<Mat> for Mat {
            type Output = Mat;
            fn $method(self, rhs: Mat) -> Mat {
                &self $op &rhs
            }
        }
        impl $tr<&Mat> for Mat {
            type Output = Mat;
            fn $method(self, rhs: &Mat) -> Mat {
                &self $op rhs
            }
        }
        impl $tr<Mat> for &Mat {
            type Output = Mat;
            fn $method(self, rhs: Mat) -> Mat {
                self $op &rhs
            }
        }
    };
}

binop!(Add, add, +);
binop!(Sub, sub, -);
binop!(Mul, mul, *);

impl Mul<&Mat> for f64 {
    type Output = Mat;
    fn mul(self, rhs: &Mat) -> Mat {
        rhs.scale(self)
    }
}

impl Mul<Mat> for f64 {
    type Output = Mat;
    fn mul(self, rhs: Mat) -> Mat {
        rhs.scale(self)
    }
}

impl Neg for &Mat {
    type Output = Mat;
    fn neg(self) -> Mat {
        self.scale(-1.0)
    }
}

impl Neg for Mat {
    type Output = Mat;
    fn neg(self) -> Mat {
        self.scale(-1.0)
    }
}

/// A permutation of `{0, …, d-1}`, stored as its image list `pi[i] = π(i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    /// Validates a zero-based image list.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let d = images.len();
        if d == 0 {
            return Err(Error::InvalidPermutation("empty".into()));
        }
        let mut seen = vec![false; d];
        for &p in &images {
            if p >= d || seen[p] {
                return Err(Error::InvalidPermutation(format!(
                    "{images:?} is not a bijection of 0..{d}"
                )));
            }
            seen[p] = true;
        }
        Ok(Self(images))
    }

    /// Validates a one-based image list, as in `(2, 3, 1)`.
    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::InvalidPermutation("labels start at 1".into()));
        }
        Self::new(images.iter().map(|&p| p - 1).collect())
    }

    pub fn identity(d: usize) -> Self {
        Self((0..d).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.len()];
        for (i, &p) in self.0.iter().enumerate() {
            inv[p] = i;
        }
        Self(inv)
    }

    /// `P_π` with entries `δ_{i, π(j)}`, so that `P_π e_j = e_{π(j)}`.
    pub fn matrix(&self) -> Mat {
        Mat::from_fn(self.len(), |i, j| if i == self.0[j] { 1.0 } else { 0.0 })
    }

    /// `P_π M P_π⁻¹`, computed by reindexing: entry `(π(i), π(j))` is `m_ij`.
    pub fn conjugate(&self, m: &Mat) -> Result<Mat> {
        if m.dim() != self.len() {
            return Err(Error::DimMismatch(m.dim(), self.len()));
        }
        let inv = self.inverse();
        Ok(Mat::from_fn(self.len(), |a, b| m[(inv.0[a], inv.0[b])]))
    }
}

/// `P_π` for a permutation.
pub fn permutation_matrix(pi: &Permutation) -> Mat {
    pi.matrix()
}

/// `P_π M P_π⁻¹`.
pub fn perm_conjugate(m: &Mat, pi: &Permutation) -> Result<Mat> {
    pi.conjugate(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_ragged_and_non_finite() {
        assert!(Mat::from_rows(&[vec![1.0, 0.0], vec![1.0]]).is_err());
        assert!(Mat::from_rows(&[]).is_err());
        assert!(Mat::from_rows(&[vec![f64::NAN]]).is_err());
        assert!(Mat::from_row_slice(2, &[1.0, 2.0, 3.0]).is_err());
    }

    #[test]
    fn pow_matches_repeated_product() {
        let m = Mat::from_rows(&[vec![0.9, 0.1], vec![0.3, 0.7]]).unwrap();
        let mut p = Mat::identity(2);
        for _ in 0..7 {
            p = &p * &m;
        }
        assert!(m.pow(7).approx_eq(&p, 1e-15));
        assert_eq!(m.pow(0), Mat::identity(2));
    }

    #[test]
    fn norms() {
        let m = Mat::from_rows(&[vec![1.0, -2.0], vec![0.5, 0.25]]).unwrap();
        assert_eq!(m.norm_inf(), 3.0);
        assert_eq!(m.norm_one(), 2.25);
        assert_eq!(m.max_abs(), 2.0);
    }

    #[test]
    fn permutation_validation() {
        assert!(Permutation::new(vec![0, 0, 1]).is_err());
        assert!(Permutation::new(vec![0, 3, 1]).is_err());
        assert!(Permutation::from_one_based(&[2, 3, 1]).is_ok());
    }

    #[test]
    fn identity_permutation_gives_identity_matrix() {
        assert_eq!(Permutation::identity(4).matrix(), Mat::identity(4));
    }

    #[test]
    fn permutation_matrix_times_inverse_is_identity() {
        let pi = Permutation::from_one_based(&[3, 1, 4, 2]).unwrap();
        let p = pi.matrix();
        let q = pi.inverse().matrix();
        assert_eq!(&p * &q, Mat::identity(4));
        assert_eq!(p.transpose(), q);
    }

    #[test]
    fn conjugation_by_reindexing_matches_matrix_products() {
        let pi = Permutation::from_one_based(&[2, 3, 1]).unwrap();
        let m = Mat::from_rows(&[
            vec![0.1, 0.2, 0.7],
            vec![0.3, 0.3, 0.4],
            vec![0.5, 0.0, 0.5],
        ])
        .unwrap();
        let direct = &(&pi.matrix() * &m) * &pi.inverse().matrix();
        assert!(pi.conjugate(&m).unwrap().approx_eq(&direct, 0.0));
    }

    #[test]
    fn conjugating_an_elementary_matrix_moves_its_unit_entry() {
        let pi = Permutation::from_one_based(&[3, 1, 2]).unwrap();
        for k in 0..3 {
            for l in 0..3 {
                let e = Mat::from_fn(3, |i, j| if (i, j) == (k, l) { 1.0 } else { 0.0 });
                let (pk, pl) = (pi.apply(k), pi.apply(l));
                let expect = Mat::from_fn(3, |i, j| if (i, j) == (pk, pl) { 1.0 } else { 0.0 });
                assert_eq!(pi.conjugate(&e).unwrap(), expect);
            }
        }
    }
}
