use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense real square matrix stored row-major.
///
/// Sizes up to 6 are supported by the arithmetic (the reduced monodromy of a
/// spatial orbit starts from a 6x6 matrix); spectral routines are limited to
/// `n <= 4`.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
pub struct SquareMatrix {
    n: usize,
    data: Vec<f64>,
}

pub const MAX_DIM: usize = 6;

impl SquareMatrix {
    pub fn zeros(n: usize) -> Self {
        assert!((1..=MAX_DIM).contains(&n), "unsupported dimension {n}");
        Self {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_diag(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    /// Builds a matrix from a row-major slice, validating size and finiteness.
    pub fn from_row_major(n: usize, entries: &[f64]) -> Result<Self> {
        if n == 0 || n > MAX_DIM {
            return Err(Error::UnsupportedDimension(n));
        }
        if entries.len() != n * n {
            return Err(Error::ShapeMismatch {
                expected: n * n,
                found: entries.len(),
            });
        }
        if entries.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self {
            n,
            data: entries.to_vec(),
        })
    }

    /// Infers `n` from the entry count (must be a perfect square).
    pub fn from_flat(entries: &[f64]) -> Result<Self> {
        let n = (entries.len() as f64).sqrt().round() as usize;
        Self::from_row_major(n, entries)
    }

    pub fn from_rows<const N: usize>(rows: [[f64; N]; N]) -> Self {
        let mut m = Self::zeros(N);
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        m
    }

    /// The standard complex structure `[[0, I], [-I, 0]]` of size `2 * half`.
    pub fn standard_j(half: usize) -> Self {
        let mut j = Self::zeros(2 * half);
        for i in 0..half {
            j[(i, half + i)] = 1.0;
            j[(half + i, i)] = -1.0;
        }
        j
    }

    /// `[[a, b], [c, d]]` from four equally sized blocks.
    pub fn from_blocks(a: &Self, b: &Self, c: &Self, d: &Self) -> Self {
        let k = a.n;
        assert!(b.n == k && c.n == k && d.n == k, "block size mismatch");
        let mut m = Self::zeros(2 * k);
        for i in 0..k {
            for j in 0..k {
                m[(i, j)] = a[(i, j)];
                m[(i, k + j)] = b[(i, j)];
                m[(k + i, j)] = c[(i, j)];
                m[(k + i, k + j)] = d[(i, j)];
            }
        }
        m
    }

    /// Extracts the `k x k` block starting at (`row`, `col`).
    pub fn block(&self, row: usize, col: usize, k: usize) -> Self {
        let mut m = Self::zeros(k);
        for i in 0..k {
            for j in 0..k {
                m[(i, j)] = self[(row + i, col + j)];
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn to_vec(&self) -> Vec<f64> {
        self.data.clone()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    /// Largest absolute entry.
    pub fn max_norm(&self) -> f64 {
        self.data.iter().fold(0.0_f64, |m, x| m.max(x.abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|x| x.is_finite())
    }

    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(v.len(), self.n);
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self[(i, j)] * v[j]).sum())
            .collect()
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(v.len(), self.n);
        (0..self.n)
            .map(|j| (0..self.n).map(|i| v[i] * self[(i, j)]).sum())
            .collect()
    }

    /// LU factorisation with partial pivoting. Returns the packed factors,
    /// the row permutation and its sign, or `None` if a zero pivot appears.
    fn lu(&self) -> Option<(Vec<f64>, Vec<usize>, f64)> {
        let n = self.n;
        let mut a = self.data.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut sign = 1.0;
        for k in 0..n {
            let p = (k..n)
                .max_by(|&i, &j| a[i * n + k].abs().total_cmp(&a[j * n + k].abs()))
                .unwrap();
            if a[p * n + k] == 0.0 {
                return None;
            }
            if p != k {
                for j in 0..n {
                    a.swap(k * n + j, p * n + j);
                }
                perm.swap(k, p);
                sign = -sign;
            }
            let pivot = a[k * n + k];
            for i in (k + 1)..n {
                let f = a[i * n + k] / pivot;
                a[i * n + k] = f;
                for j in (k + 1)..n {
                    a[i * n + j] -= f * a[k * n + j];
                }
            }
        }
        Some((a, perm, sign))
    }

    pub fn det(&self) -> f64 {
        match self.n {
            1 => self.data[0],
            2 => self.data[0] * self.data[3] - self.data[1] * self.data[2],
            n => match self.lu() {
                Some((lu, _, sign)) => (0..n).fold(sign, |acc, i| acc * lu[i * n + i]),
                None => 0.0,
            },
        }
    }

    /// Inverse via LU; fails when the matrix is numerically singular.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.n;
        let scale = self.max_norm().max(f64::MIN_POSITIVE);
        let (lu, perm, _) = self.lu().ok_or(Error::Singular)?;
        if (0..n).any(|i| lu[i * n + i].abs() <= 1e-14 * scale) {
            return Err(Error::Singular);
        }
        let mut inv = Self::zeros(n);
        for col in 0..n {
            // forward substitution on the permuted unit vector
            let mut y = vec![0.0; n];
            for i in 0..n {
                let mut s = if perm[i] == col { 1.0 } else { 0.0 };
                for j in 0..i {
                    s -= lu[i * n + j] * y[j];
                }
                y[i] = s;
            }
            for i in (0..n).rev() {
                let mut s = y[i];
                for j in (i + 1)..n {
                    s -= lu[i * n + j] * inv[(j, col)];
                }
                inv[(i, col)] = s / lu[i * n + i];
            }
        }
        Ok(inv)
    }

    /// Max-norm distance between two matrices of the same size.
    pub fn dist(&self, other: &Self) -> f64 {
        assert_eq!(self.n, other.n);
        self.data
            .iter()
            .zip(&other.data)
            .fold(0.0_f64, |m, (a, b)| m.max((a - b).abs()))
    }

    /// Symmetric part residual `max |m_ij - m_ji|`.
    pub fn asymmetry(&self) -> f64 {
        self.dist(&self.transpose())
    }

    /// Principal minor on the given (sorted) index set.
    pub(crate) fn principal_minor(&self, idx: &[usize]) -> f64 {
        let k = idx.len();
        let mut sub = Self::zeros(k);
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                sub[(a, b)] = self[(i, j)];
            }
        }
        sub.det()
    }
}

impl Index<(usize, usize)> for SquareMatrix {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for SquareMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.n + j]
    }
}

impl Mul for &SquareMatrix {
    type Output = SquareMatrix;
    fn mul(self, rhs: &SquareMatrix) -> SquareMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let n = self.n;
        let mut out = SquareMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl Add for &SquareMatrix {
    type Output = SquareMatrix;
    fn add(self, rhs: &SquareMatrix) -> SquareMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        SquareMatrix {
            n: self.n,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &SquareMatrix {
    type Output = SquareMatrix;
    fn sub(self, rhs: &SquareMatrix) -> SquareMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        SquareMatrix {
            n: self.n,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &SquareMatrix {
    type Output = SquareMatrix;
    fn neg(self) -> SquareMatrix {
        self.scale(-1.0)
    }
}

impl fmt::Debug for SquareMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SquareMatrix({}x{})", self.n, self.n)?;
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| format!("{:>12.6e}", self[(i, j)])).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}
