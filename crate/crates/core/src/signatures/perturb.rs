//! Symplectic perturbations, for probing strong stability.

use num_complex::Complex64;
use rand::Rng;

use super::krein::generalized_eigenspace;
use super::stability::{stability_check, StabilityVerdict};
use crate::error::Result;
use crate::mat::{complex_null_space, eigs, mat_exp, SquareMatrix};

fn omega(x: &[f64], y: &[f64]) -> f64 {
    let h = x.len() / 2;
    (0..h).map(|i| x[i] * y[i + h] - x[i + h] * y[i]).sum()
}

/// Random symmetric matrix with max-norm one.
pub fn random_symmetric<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> SquareMatrix {
    let mut s = SquareMatrix::zeros(dim);
    for i in 0..dim {
        for j in i..dim {
            let x = rng.gen_range(-1.0..1.0);
            s[(i, j)] = x;
            s[(j, i)] = x;
        }
    }
    let n = s.max_norm();
    s.scale(1.0 / n)
}

/// `M·exp(εJS)` for a random symmetric `S` of max-norm one.
pub fn random_symplectic_perturbation<R: Rng + ?Sized>(
    m: &SquareMatrix,
    eps: f64,
    rng: &mut R,
) -> SquareMatrix {
    let dim = m.dim();
    let j = SquareMatrix::standard_j(dim / 2);
    let s = random_symmetric(dim, rng);
    m * &mat_exp(&(&j * &s).scale(eps), 1e-15)
}

/// A perturbation that destroys stability.
#[derive(Debug, Clone, PartialEq)]
pub struct Destabilization {
    /// Max-norm of the infinitesimal generator `X` in `M·exp(X)`.
    pub size: f64,
    pub perturbed: SquareMatrix,
    pub verdict: StabilityVerdict,
}

fn real_orthonormal(vs: Vec<Vec<f64>>) -> Vec<Vec<f64>> {
    let mut out: Vec<Vec<f64>> = Vec::new();
    for mut v in vs {
        for u in &out {
            let d: f64 = v.iter().zip(u).map(|(a, b)| a * b).sum();
            v.iter_mut().zip(u).for_each(|(a, b)| *a -= d * b);
        }
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 1e-8 {
            v.iter_mut().for_each(|x| *x /= n);
            out.push(v);
        }
    }
    out
}

/// Hyperbolic generator `Xa = ω(a, w)u + ω(a, u)w` for a symplectic pair
/// `ω(u, w) = 1` of real eigenvectors of `±1`; it acts as `diag(1, -1)` on
/// `span(u, w)` and kills the symplectic complement.
fn unit_eigenvalue_generator(m: &SquareMatrix, value: f64) -> Option<SquareMatrix> {
    let dim = m.dim();
    let mut shifted: Vec<Complex64> = m.as_slice().iter().map(|&x| x.into()).collect();
    for i in 0..dim {
        shifted[i * dim + i] -= value;
    }
    let scale = m.max_norm().max(1.0);
    let null: Vec<Vec<f64>> = complex_null_space(&shifted, dim, dim, 1e-6 * scale)
        .into_iter()
        .map(|v| v.iter().map(|z| z.re).collect())
        .collect();
    let null = real_orthonormal(null);
    let mut best = (0, 0, 0.0);
    for i in 0..null.len() {
        for j in (i + 1)..null.len() {
            let o = omega(&null[i], &null[j]).abs();
            if o > best.2 {
                best = (i, j, o);
            }
        }
    }
    if best.2 < 1e-8 {
        return None;
    }
    let u = &null[best.0];
    let o = omega(u, &null[best.1]);
    let w: Vec<f64> = null[best.1].iter().map(|x| x / o).collect();
    let mut x = SquareMatrix::zeros(dim);
    for col in 0..dim {
        let mut a = vec![0.0; dim];
        a[col] = 1.0;
        let (aw, au) = (omega(&a, &w), omega(&a, u));
        for row in 0..dim {
            x[(row, col)] = aw * u[row] + au * w[row];
        }
    }
    let n = x.max_norm();
    Some(x.scale(1.0 / n))
}

/// Generator `J·S` with `S = JᵀQ S₀ QᵀJ`, so that `JS` maps into the real
/// span `Q` of a generalized eigenspace and kills its symplectic complement.
fn restricted_generator<R: Rng + ?Sized>(q: &[Vec<f64>], dim: usize, rng: &mut R) -> SquareMatrix {
    let k = q.len();
    let s0 = random_symmetric(k, rng);
    let j = SquareMatrix::standard_j(dim / 2);
    let mut qm = vec![vec![0.0; k]; dim];
    for (c, v) in q.iter().enumerate() {
        for r in 0..dim {
            qm[r][c] = v[r];
        }
    }
    // X = Q S₀ Qᵀ J
    let mut x = SquareMatrix::zeros(dim);
    for r in 0..dim {
        for c in 0..dim {
            let mut acc = 0.0;
            for a in 0..k {
                for b in 0..k {
                    // (QᵀJ)_{b,c} = Σ_l Q_{l,b} J_{l,c}
                    let qtj: f64 = (0..dim).map(|l| qm[l][b] * j[(l, c)]).sum();
                    acc += qm[r][a] * s0[(a, b)] * qtj;
                }
            }
            x[(r, c)] = acc;
        }
    }
    let n = x.max_norm();
    x.scale(1.0 / n)
}

/// Searches for `X` with `‖X‖_max ≤ max_size` such that `M·exp(X)` is
/// unstable. Eigenvalues `±1` get an explicit hyperbolic generator; other
/// Krein-indefinite eigenvalues get random generators supported on their
/// eigenspace, at increasing sizes.
pub fn find_destabilizing_perturbation<R: Rng + ?Sized>(
    m: &SquareMatrix,
    max_size: f64,
    tol: f64,
    rng: &mut R,
) -> Result<Option<Destabilization>> {
    let dim = m.dim();
    let verdict = stability_check(m, tol)?;
    let witness = match verdict {
        StabilityVerdict::Unstable { .. } => {
            return Ok(Some(Destabilization {
                size: 0.0,
                perturbed: m.clone(),
                verdict,
            }))
        }
        StabilityVerdict::StronglyStable => return Ok(None),
        StabilityVerdict::StableNotStrong { witness } => witness,
    };
    let sizes: Vec<f64> = (0..8).map(|k| max_size / 2f64.powi(7 - k)).collect();
    let try_generator = |x: &SquareMatrix| -> Result<Option<Destabilization>> {
        for &eps in &sizes {
            let pert = m * &mat_exp(&x.scale(eps), 1e-15);
            let v = stability_check(&pert, tol)?;
            if !v.is_stable() {
                return Ok(Some(Destabilization {
                    size: eps,
                    perturbed: pert,
                    verdict: v,
                }));
            }
        }
        Ok(None)
    };
    if witness.im.abs() <= tol.sqrt() {
        if let Some(x) = unit_eigenvalue_generator(m, witness.re.signum()) {
            if let Some(d) = try_generator(&x)? {
                return Ok(Some(d));
            }
        }
    }
    let spec = eigs(m, tol)?;
    let e = spec.nearest(witness).copied();
    let mut span: Vec<Vec<f64>> = Vec::new();
    if let Some(e) = e {
        for v in generalized_eigenspace(m, e.value, e.multiplicity) {
            span.push(v.iter().map(|z| z.re).collect());
            span.push(v.iter().map(|z| z.im).collect());
        }
    }
    let q = real_orthonormal(span);
    if q.is_empty() {
        return Ok(None);
    }
    for _ in 0..64 {
        let x = restricted_generator(&q, dim, rng);
        if let Some(d) = try_generator(&x)? {
            return Ok(Some(d));
        }
    }
    Ok(None)
}
