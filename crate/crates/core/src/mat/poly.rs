use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{allowed, SquareMatrix};

/// Real polynomial with coefficients in ascending degree.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
pub struct Polynomial {
    coeffs: Vec<f64>,
}

impl Polynomial {
    /// Trailing exact zeros are trimmed so the leading coefficient is nonzero
    /// (the zero polynomial keeps a single `0.0`).
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        while coeffs.len() > 1 && *coeffs.last().unwrap() == 0.0 {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(0.0);
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> f64 {
        *self.coeffs.last().unwrap()
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * t + c)
    }

    pub fn eval_complex(&self, t: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * t + c)
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().fold(0.0_f64, |m, c| m.max(c.abs()))
    }

    /// True when the coefficient list reads the same reversed, up to `tol`
    /// relative to the largest coefficient.
    pub fn is_palindromic(&self, tol: f64) -> bool {
        let d = self.degree();
        let bound = allowed(self.max_abs_coeff(), tol);
        (0..=d / 2).all(|i| (self.coeffs[i] - self.coeffs[d - i]).abs() <= bound)
    }

    /// Largest coefficientwise difference divided by `max(1, |c|)`.
    pub fn relative_distance(&self, other: &Self) -> f64 {
        let len = self.coeffs.len().max(other.coeffs.len());
        (0..len)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0.0);
                let b = other.coeffs.get(i).copied().unwrap_or(0.0);
                (a - b).abs() / 1.0_f64.max(a.abs()).max(b.abs())
            })
            .fold(0.0, f64::max)
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial{:?}", self.coeffs)
    }
}

/// `det(A - tI)` expanded in powers of `t`.
///
/// Coefficients come from sums of principal minors, each evaluated with a
/// pivoted LU, which stays accurate for the ill-scaled conjugates produced by
/// the group action.
pub fn char_poly(a: &SquareMatrix) -> Polynomial {
    let n = a.dim();
    // det(tI - A) = sum_k (-1)^k E_k t^(n-k), E_k = sum of k x k principal minors
    let mut monic = vec![0.0; n + 1];
    monic[n] = 1.0;
    for k in 1..=n {
        let e_k: f64 = subsets(n, k).iter().map(|idx| a.principal_minor(idx)).sum();
        monic[n - k] = if k % 2 == 0 { e_k } else { -e_k };
    }
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    Polynomial::new(monic.into_iter().map(|c| sign * c).collect())
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}
