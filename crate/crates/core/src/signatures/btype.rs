use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mat::{allowed, check_tol, eigs, symmetric_eigenvalues, SquareMatrix};
use crate::wonenburger::WonenburgerTriple;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of(x: f64, zero_band: f64) -> Self {
        if x.abs() <= zero_band {
            Sign::Zero
        } else if x > 0.0 {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Positive => '+',
            Sign::Negative => '-',
            Sign::Zero => '0',
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// B-sign of one real eigenvalue `μ` of `A`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BType {
    pub mu: f64,
    pub sign: Sign,
}

/// Left eigenvector of a 2×2 matrix, unit length.
pub(crate) fn left_eigenvector(a: &SquareMatrix, mu: f64) -> [f64; 2] {
    // null vector of Aᵀ - μI from whichever row of it is larger
    let (p, q) = (a[(0, 0)] - mu, a[(1, 0)]);
    let (r, s) = (a[(0, 1)], a[(1, 1)] - mu);
    let v = if p.hypot(q) >= r.hypot(s) {
        [-q, p]
    } else {
        [-s, r]
    };
    let norm = v[0].hypot(v[1]);
    if norm == 0.0 {
        [1.0, 0.0]
    } else {
        [v[0] / norm, v[1] / norm]
    }
}

pub(crate) fn quadratic_form(b: &SquareMatrix, w: &[f64]) -> f64 {
    let bw = b.mul_vec(w);
    w.iter().zip(&bw).map(|(x, y)| x * y).sum()
}

/// B-signs of the real eigenvalues of `A`, in increasing `μ`.
///
/// For distinct eigenvalues the sign is that of `wᵀBw` with `w` an
/// eigenvector of `Aᵀ`; this is unchanged by the `GL_n` action because `w`
/// transforms by `R⁻ᵀ` while `B` transforms by `R·Rᵀ`. When `A` is a
/// multiple of the identity the two signs are the signature of `B`.
/// Eigenvalues `±1` and vanishing `wᵀBw` are flagged [`Sign::Zero`].
pub fn b_signature(t: &WonenburgerTriple, tol: f64) -> Result<Vec<BType>> {
    check_tol(tol)?;
    let (a, b) = (t.a(), t.b());
    let unit = |mu: f64| (mu.abs() - 1.0).abs() <= 1e-9_f64.max(tol) * (1.0 + mu.abs());
    let zero_band = allowed(b.max_norm(), tol);
    if t.n() == 1 {
        let mu = a[(0, 0)];
        let sign = if unit(mu) {
            Sign::Zero
        } else {
            Sign::of(b[(0, 0)], zero_band)
        };
        return Ok(vec![BType { mu, sign }]);
    }
    let spec = eigs(a, tol)?;
    if !spec.is_real() {
        return Err(Error::ComplexEigenvalues);
    }
    let mut out = Vec::with_capacity(2);
    for e in &spec.eigenvalues {
        let mu = e.value.re;
        if e.multiplicity == 2 {
            if !e.is_semisimple() {
                return Err(Error::NonDiagonalizable);
            }
            for lam in symmetric_eigenvalues(b) {
                let sign = if unit(mu) { Sign::Zero } else { Sign::of(lam, zero_band) };
                out.push(BType { mu, sign });
            }
            continue;
        }
        let w = left_eigenvector(a, mu);
        let sign = if unit(mu) {
            Sign::Zero
        } else {
            Sign::of(quadratic_form(b, &w), zero_band)
        };
        out.push(BType { mu, sign });
    }
    Ok(out)
}
