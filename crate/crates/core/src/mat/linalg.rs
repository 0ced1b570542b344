use num_complex::Complex64;

use super::{SquareMatrix, ABS_FLOOR};
use crate::error::{Error, Result};

/// Row echelon form with complete pivoting. Returns the pivot columns in
/// elimination order together with the reduced matrix and column order.
fn full_pivot_reduce(
    m: &[Complex64],
    rows: usize,
    cols: usize,
    threshold: f64,
    max_rank: usize,
) -> (Vec<Complex64>, Vec<usize>, usize) {
    let mut a = m.to_vec();
    let mut perm: Vec<usize> = (0..cols).collect();
    let mut rank = 0;
    for k in 0..rows.min(cols).min(max_rank) {
        let mut best = (k, k, 0.0);
        for i in k..rows {
            for j in k..cols {
                let v = a[i * cols + j].norm();
                if v > best.2 {
                    best = (i, j, v);
                }
            }
        }
        if best.2 <= threshold {
            break;
        }
        let (pi, pj, _) = best;
        if pi != k {
            for j in 0..cols {
                a.swap(k * cols + j, pi * cols + j);
            }
        }
        if pj != k {
            for i in 0..rows {
                a.swap(i * cols + k, i * cols + pj);
            }
            perm.swap(k, pj);
        }
        let piv = a[k * cols + k];
        for j in k..cols {
            a[k * cols + j] /= piv;
        }
        for i in 0..rows {
            if i == k {
                continue;
            }
            let f = a[i * cols + k];
            if f == Complex64::new(0.0, 0.0) {
                continue;
            }
            for j in k..cols {
                let sub = f * a[k * cols + j];
                a[i * cols + j] -= sub;
            }
        }
        rank += 1;
    }
    (a, perm, rank)
}

/// Numerical rank: number of complete-pivoting pivots above `threshold`.
pub fn complex_rank(m: &[Complex64], rows: usize, cols: usize, threshold: f64) -> usize {
    full_pivot_reduce(m, rows, cols, threshold, usize::MAX).2
}

/// Basis of the right null space, pivots at or below `threshold` counting as
/// zero.
pub fn complex_null_space(
    m: &[Complex64],
    rows: usize,
    cols: usize,
    threshold: f64,
) -> Vec<Vec<Complex64>> {
    null_space_from(full_pivot_reduce(m, rows, cols, threshold, usize::MAX), cols)
}

/// Null space of known dimension `nullity`: elimination stops after
/// `cols - nullity` pivots, whatever their size.
pub fn complex_null_space_of_dim(
    m: &[Complex64],
    rows: usize,
    cols: usize,
    nullity: usize,
) -> Vec<Vec<Complex64>> {
    let max_rank = cols.saturating_sub(nullity);
    null_space_from(full_pivot_reduce(m, rows, cols, 0.0, max_rank), cols)
}

fn null_space_from(
    (a, perm, rank): (Vec<Complex64>, Vec<usize>, usize),
    cols: usize,
) -> Vec<Vec<Complex64>> {
    let mut basis = Vec::with_capacity(cols - rank);
    for free in rank..cols {
        let mut x = vec![Complex64::new(0.0, 0.0); cols];
        x[perm[free]] = Complex64::new(1.0, 0.0);
        for k in 0..rank {
            x[perm[k]] = -a[k * cols + free];
        }
        basis.push(x);
    }
    basis
}

/// Eigen-decomposition of a real symmetric matrix by cyclic Jacobi sweeps.
/// Eigenvalues ascend; eigenvectors are the columns of the returned matrix.
pub fn symmetric_eigen(s: &SquareMatrix) -> (Vec<f64>, SquareMatrix) {
    let n = s.dim();
    let mut a = s.clone();
    let mut v = SquareMatrix::identity(n);
    for _ in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)] * a[(i, j)])
            .sum();
        if off <= f64::MIN_POSITIVE || off.sqrt() <= 1e-17 * a.max_norm() {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let sn = t * c;
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = c * akp - sn * akq;
                    a[(k, q)] = sn * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = c * apk - sn * aqk;
                    a[(q, k)] = sn * apk + c * aqk;
                }
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = c * vkp - sn * vkq;
                    v[(k, q)] = sn * vkp + c * vkq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].total_cmp(&a[(j, j)]));
    let values = order.iter().map(|&i| a[(i, i)]).collect();
    let mut vecs = SquareMatrix::zeros(n);
    for (col, &i) in order.iter().enumerate() {
        for k in 0..n {
            vecs[(k, col)] = v[(k, i)];
        }
    }
    (values, vecs)
}

pub fn symmetric_eigenvalues(s: &SquareMatrix) -> Vec<f64> {
    symmetric_eigen(s).0
}

/// `(positive, negative, zero)` counts for a Hermitian `k×k` matrix given
/// row-major. Eigenvalues with modulus at most `tol·max|h_ij|` count as zero.
pub fn hermitian_signature(h: &[Complex64], k: usize, tol: f64) -> (usize, usize, usize) {
    // real embedding [[Re, -Im], [Im, Re]] doubles every eigenvalue
    let mut emb = SquareMatrix::zeros(2 * k);
    for i in 0..k {
        for j in 0..k {
            let z = 0.5 * (h[i * k + j] + h[j * k + i].conj());
            emb[(i, j)] = z.re;
            emb[(i + k, j + k)] = z.re;
            emb[(i, j + k)] = -z.im;
            emb[(i + k, j)] = z.im;
        }
    }
    let scale = h.iter().fold(0.0_f64, |m, z| m.max(z.norm()));
    let thr = ABS_FLOOR.max(tol * scale);
    let vals = symmetric_eigenvalues(&emb);
    let pos = vals.iter().filter(|&&x| x > thr).count() / 2;
    let neg = vals.iter().filter(|&&x| x < -thr).count() / 2;
    (pos, neg, k - pos - neg)
}

fn inf_norm(m: &SquareMatrix) -> f64 {
    let n = m.dim();
    (0..n)
        .map(|i| (0..n).map(|j| m[(i, j)].abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Matrix exponential by scaling and squaring of a Taylor polynomial.
pub fn mat_exp(x: &SquareMatrix, tol: f64) -> SquareMatrix {
    let n = x.dim();
    let norm = inf_norm(x);
    let mut squarings = 0u32;
    while norm / 2f64.powi(squarings as i32) > 0.5 {
        squarings += 1;
    }
    let y = x.scale(1.0 / 2f64.powi(squarings as i32));
    let eps = tol.min(f64::EPSILON);
    let mut sum = SquareMatrix::identity(n);
    let mut term = SquareMatrix::identity(n);
    for k in 1..=40 {
        term = &term * &y;
        term = term.scale(1.0 / k as f64);
        sum = &sum + &term;
        // remaining tail is bounded by twice the current term for ‖y‖ ≤ 1/2
        if 2.0 * inf_norm(&term) <= eps * inf_norm(&sum) {
            break;
        }
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}

/// `‖MᵀJM - J‖_max`.
pub fn symplectic_residual(m: &SquareMatrix) -> Result<f64> {
    let n = m.dim();
    if !n.is_multiple_of(2) {
        return Err(Error::OddDimension(n));
    }
    let j = SquareMatrix::standard_j(n / 2);
    let lhs = &(&m.transpose() * &j) * m;
    Ok(lhs.dist(&j))
}

/// True when `‖MᵀJM - J‖_max ≤ tol·(1 + ‖M‖_max²)`.
pub fn symplectic_check(m: &SquareMatrix, tol: f64) -> Result<bool> {
    let r = symplectic_residual(m)?;
    let s = m.max_norm();
    Ok(r <= tol * (1.0 + s * s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{E, PI};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn exp_of_zero_is_identity() {
        assert_eq!(mat_exp(&SquareMatrix::zeros(4), 1e-12), SquareMatrix::identity(4));
    }

    #[test]
    fn exp_of_quarter_turn_generator() {
        let j = SquareMatrix::standard_j(1);
        let e = mat_exp(&j.scale(PI / 2.0), 1e-12);
        assert!(e.dist(&j) < 1e-14);
    }

    #[test]
    fn exp_of_diagonal() {
        let e = mat_exp(&SquareMatrix::from_diag(&[1.0, -1.0]), 1e-12);
        assert!((e[(0, 0)] - E).abs() < 1e-14);
        assert!((e[(1, 1)] - 1.0 / E).abs() < 1e-15);
        assert_eq!(e[(0, 1)], 0.0);
    }

    #[test]
    fn exp_of_large_rotation_generator() {
        // exp(tJ) = cos t·I + sin t·J
        let t = 37.3_f64;
        let j = SquareMatrix::standard_j(2);
        let want = &SquareMatrix::identity(4).scale(t.cos()) + &j.scale(t.sin());
        assert!(mat_exp(&j.scale(t), 1e-12).dist(&want) < 1e-11);
    }

    #[test]
    fn symplectic_examples() {
        assert!(symplectic_check(&SquareMatrix::identity(4), 1e-9).unwrap());
        assert!(symplectic_check(&SquareMatrix::from_diag(&[2.0, 1.0, 0.5, 1.0]), 1e-9).unwrap());
        assert!(!symplectic_check(&SquareMatrix::from_diag(&[2.0, 1.0, 1.0, 1.0]), 1e-9).unwrap());
        assert!(matches!(
            symplectic_check(&SquareMatrix::identity(3), 1e-9),
            Err(Error::OddDimension(3))
        ));
    }

    #[test]
    fn null_space_of_rank_one() {
        // [[1, i], [i, -1]] has null vector (1, i)·(-i)... check M x = 0 directly
        let m = vec![c(1.0, 0.0), c(0.0, 1.0), c(0.0, 1.0), c(-1.0, 0.0)];
        assert_eq!(complex_rank(&m, 2, 2, 1e-12), 1);
        let ns = complex_null_space(&m, 2, 2, 1e-12);
        assert_eq!(ns.len(), 1);
        let x = &ns[0];
        for i in 0..2 {
            let r = m[i * 2] * x[0] + m[i * 2 + 1] * x[1];
            assert!(r.norm() < 1e-15);
        }
    }

    #[test]
    fn jacobi_reconstructs() {
        let s = SquareMatrix::from_rows([[2.0, 1.0, 0.3], [1.0, -1.0, 0.5], [0.3, 0.5, 0.7]]);
        let (vals, v) = symmetric_eigen(&s);
        let d = SquareMatrix::from_diag(&vals);
        let back = &(&v * &d) * &v.transpose();
        assert!(back.dist(&s) < 1e-13);
        assert!(vals.windows(2).all(|w| w[0] <= w[1]));
        // trace and determinant are preserved
        assert!((vals.iter().sum::<f64>() - s.trace()).abs() < 1e-13);
        assert!((vals.iter().product::<f64>() - s.det()).abs() < 1e-13);
    }

    #[test]
    fn hermitian_signature_of_krein_form() {
        // -iJ on C² has eigenvalues ±1
        let h = vec![c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)];
        assert_eq!(hermitian_signature(&h, 2, 1e-9), (1, 1, 0));
        let d = vec![c(2.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)];
        assert_eq!(hermitian_signature(&d, 2, 1e-9), (1, 0, 1));
    }
}
