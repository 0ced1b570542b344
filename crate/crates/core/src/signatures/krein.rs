use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::btype::{b_signature, Sign};
use crate::error::{Error, Result};
use crate::mat::{
    check_tol, complex_null_space_of_dim, eigs, hermitian_signature, symplectic_check,
    symplectic_residual, SquareMatrix,
};
use crate::wonenburger::WonenburgerTriple;

/// Krein type `(p, q)` of a unit-circle eigenvalue.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KreinEntry {
    pub lambda: Complex64,
    pub p: usize,
    pub q: usize,
}

impl KreinEntry {
    pub fn is_definite(&self) -> bool {
        self.p == 0 || self.q == 0
    }

    /// Entry of the conjugate eigenvalue.
    pub fn conjugate(&self) -> Self {
        Self {
            lambda: self.lambda.conj(),
            p: self.q,
            q: self.p,
        }
    }
}

pub type KreinSignature = Vec<KreinEntry>;

/// `G(x, y) = ⟨-iJx, y⟩` with `⟨u, v⟩ = Σ u_k conj(v_k)`.
pub fn krein_form(x: &[Complex64], y: &[Complex64]) -> Complex64 {
    let h = x.len() / 2;
    let i = Complex64::new(0.0, 1.0);
    (0..h)
        .map(|k| {
            // (Jx)_k = x_{k+h}, (Jx)_{k+h} = -x_k
            -i * (x[k + h] * y[k].conj() - x[k] * y[k + h].conj())
        })
        .sum()
}

fn orthonormalize(vs: Vec<Vec<Complex64>>) -> Vec<Vec<Complex64>> {
    let mut out: Vec<Vec<Complex64>> = Vec::with_capacity(vs.len());
    for mut v in vs {
        for u in &out {
            let proj: Complex64 = v.iter().zip(u).map(|(a, b)| a * b.conj()).sum();
            for (a, b) in v.iter_mut().zip(u) {
                *a -= proj * b;
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 0.0 {
            v.iter_mut().for_each(|z| *z /= norm);
            out.push(v);
        }
    }
    out
}

/// Basis of the generalized eigenspace of `M` for an eigenvalue of known
/// algebraic multiplicity, orthonormalized.
pub(crate) fn generalized_eigenspace(
    m: &SquareMatrix,
    lambda: Complex64,
    multiplicity: usize,
) -> Vec<Vec<Complex64>> {
    let n = m.dim();
    let mut shifted: Vec<Complex64> = m.as_slice().iter().map(|&x| x.into()).collect();
    for i in 0..n {
        shifted[i * n + i] -= lambda;
    }
    let mut power = shifted.clone();
    for _ in 1..multiplicity {
        let mut next = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = power[i * n + k];
                for j in 0..n {
                    next[i * n + j] += a * shifted[k * n + j];
                }
            }
        }
        power = next;
    }
    orthonormalize(complex_null_space_of_dim(&power, n, n, multiplicity))
}

/// Gram matrix of the Krein form on an orthonormal basis of the generalized
/// eigenspace of `λ`, row-major, together with its size.
pub fn krein_gram(m: &SquareMatrix, lambda: Complex64, tol: f64) -> Result<(Vec<Complex64>, usize)> {
    check_tol(tol)?;
    if !symplectic_check(m, tol.sqrt())? {
        return Err(Error::NotSymplectic {
            residual: symplectic_residual(m)?,
        });
    }
    let spec = eigs(m, tol)?;
    let e = spec
        .nearest(lambda)
        .filter(|e| (e.value - lambda).norm() <= tol.sqrt() * m.max_norm().max(1.0))
        .ok_or_else(|| Error::NotAnEigenvalue(format!("{lambda}")))?;
    let basis = generalized_eigenspace(m, e.value, e.multiplicity);
    let k = basis.len();
    let mut gram = vec![Complex64::new(0.0, 0.0); k * k];
    for i in 0..k {
        for j in 0..k {
            gram[i * k + j] = krein_form(&basis[j], &basis[i]);
        }
    }
    Ok((gram, k))
}

/// Signature of the Krein form on the generalized eigenspace of `λ`.
pub fn krein_signature(m: &SquareMatrix, lambda: Complex64, tol: f64) -> Result<(usize, usize)> {
    check_tol(tol)?;
    let loose = tol.sqrt();
    if (lambda.norm() - 1.0).abs() > loose {
        return Err(Error::NotOnUnitCircle(lambda.norm()));
    }
    let (gram, k) = krein_gram(m, lambda, tol)?;
    let (mut p, mut q, z) = hermitian_signature(&gram, k, loose);
    // a degenerate direction carries no definite sign; count it on both sides
    p += z.div_ceil(2);
    q += z / 2;
    Ok((p, q))
}

/// Krein types predicted from B-signs: for elliptic `μ`, the eigenvalue
/// `μ + i√(1-μ²)` is Krein-positive exactly when `μ` is B-positive.
pub fn krein_from_btype(t: &WonenburgerTriple, tol: f64) -> Result<KreinSignature> {
    let bt = b_signature(t, tol)?;
    let mut out: KreinSignature = Vec::new();
    for b in bt {
        if b.mu.abs() >= 1.0 || b.sign == Sign::Zero {
            continue;
        }
        let lambda = Complex64::new(b.mu, (1.0 - b.mu * b.mu).sqrt());
        let (dp, dq) = match b.sign {
            Sign::Positive => (1, 0),
            _ => (0, 1),
        };
        match out.iter_mut().find(|e| e.lambda == lambda) {
            Some(e) => {
                e.p += dp;
                e.q += dq;
            }
            None => out.push(KreinEntry {
                lambda,
                p: dp,
                q: dq,
            }),
        }
    }
    if out.is_empty() {
        return Err(Error::NoEllipticEigenvalue);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mat::SquareMatrix;

    fn rotation(th: f64) -> SquareMatrix {
        SquareMatrix::from_rows([[th.cos(), -th.sin()], [th.sin(), th.cos()]])
    }

    #[test]
    fn krein_form_of_rotation_eigenvector() {
        let v = [Complex64::new(1.0, 0.0), Complex64::new(0.0, -1.0)];
        assert_eq!(krein_form(&v, &v), Complex64::new(-2.0, 0.0));
    }

    #[test]
    fn rotation_is_krein_negative() {
        let th = 1.0;
        let m = rotation(th);
        assert_eq!(krein_signature(&m, Complex64::from_polar(1.0, th), 1e-9).unwrap(), (0, 1));
        assert_eq!(krein_signature(&m, Complex64::from_polar(1.0, -th), 1e-9).unwrap(), (1, 0));
    }

    #[test]
    fn identity_is_indefinite() {
        let m = SquareMatrix::identity(2);
        assert_eq!(krein_signature(&m, 1.0.into(), 1e-9).unwrap(), (1, 1));
    }

    #[test]
    fn rejects_off_circle_and_non_eigenvalues() {
        let m = rotation(1.0);
        assert!(matches!(
            krein_signature(&m, Complex64::new(2.0, 0.0), 1e-9),
            Err(Error::NotOnUnitCircle(_))
        ));
        assert!(matches!(
            krein_signature(&m, Complex64::from_polar(1.0, 0.3), 1e-9),
            Err(Error::NotAnEigenvalue(_))
        ));
    }

    #[test]
    fn prediction_from_b_signs() {
        let (t1, t2) = (0.9_f64, 2.0_f64);
        // B-positive first eigenvalue, B-negative second
        let t = WonenburgerTriple::new(
            SquareMatrix::from_diag(&[t1.cos(), t2.cos()]),
            SquareMatrix::from_diag(&[t1.sin(), -t2.sin()]),
            SquareMatrix::from_diag(&[-t1.sin(), t2.sin()]),
            1e-9,
        )
        .unwrap();
        let pred = krein_from_btype(&t, 1e-9).unwrap();
        assert_eq!(pred.len(), 2);
        let m = t.assemble();
        for e in &pred {
            assert_eq!(krein_signature(&m, e.lambda, 1e-9).unwrap(), (e.p, e.q));
            let c = e.conjugate();
            assert_eq!(krein_signature(&m, c.lambda, 1e-9).unwrap(), (c.p, c.q));
        }
        // cos(2.0) < cos(0.9): the B-negative eigenvalue comes first
        assert_eq!((pred[0].p, pred[0].q), (0, 1));
        assert_eq!((pred[1].p, pred[1].q), (1, 0));
    }

    #[test]
    fn hyperbolic_only_has_no_prediction() {
        let u = 0.7_f64;
        let t = WonenburgerTriple::new(
            SquareMatrix::from_diag(&[u.cosh(), (u + 0.3).cosh()]),
            SquareMatrix::from_diag(&[u.sinh(), (u + 0.3).sinh()]),
            SquareMatrix::from_diag(&[u.sinh(), (u + 0.3).sinh()]),
            1e-9,
        )
        .unwrap();
        assert!(matches!(krein_from_btype(&t, 1e-9), Err(Error::NoEllipticEigenvalue)));
    }
}
