use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::linalg::complex_rank;
use super::{char_poly, check_tol, Polynomial, SquareMatrix, ABS_FLOOR};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Eigenvalue {
    pub value: Complex64,
    /// Algebraic multiplicity.
    pub multiplicity: usize,
    /// Dimension of the eigenspace.
    pub geometric: usize,
}

impl Eigenvalue {
    pub fn is_semisimple(&self) -> bool {
        self.geometric == self.multiplicity
    }

    pub fn is_real(&self) -> bool {
        self.value.im == 0.0
    }
}

/// Eigenvalues with multiplicities, sorted by real part and then imaginary
/// part.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    pub eigenvalues: Vec<Eigenvalue>,
}

impl Spectrum {
    pub fn total_multiplicity(&self) -> usize {
        self.eigenvalues.iter().map(|e| e.multiplicity).sum()
    }

    pub fn is_real(&self) -> bool {
        self.eigenvalues.iter().all(Eigenvalue::is_real)
    }

    /// Every eigenvalue repeated according to its algebraic multiplicity.
    pub fn values(&self) -> Vec<Complex64> {
        self.eigenvalues
            .iter()
            .flat_map(|e| std::iter::repeat_n(e.value, e.multiplicity))
            .collect()
    }

    /// The listed eigenvalue closest to `z`.
    pub fn nearest(&self, z: Complex64) -> Option<&Eigenvalue> {
        self.eigenvalues
            .iter()
            .min_by(|a, b| (a.value - z).norm().total_cmp(&(b.value - z).norm()))
    }
}

/// Roots of a real monic quadratic `t² + bt + c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum QuadraticRoots {
    Double(f64),
    /// Distinct real roots, smaller first.
    Real(f64, f64),
    /// The root with positive imaginary part; the other is its conjugate.
    Complex(Complex64),
}

/// Solves `t² + bt + c = 0`.
///
/// The discriminant is declared zero when `|b² - 4c| < tol·max(b², 4|c|)`.
pub fn solve_quadratic(b: f64, c: f64, tol: f64) -> QuadraticRoots {
    let disc = b * b - 4.0 * c;
    let scale = (b * b).max(4.0 * c.abs());
    if disc.abs() < ABS_FLOOR.max(tol * scale) {
        return QuadraticRoots::Double(-0.5 * b);
    }
    if disc > 0.0 {
        let sq = disc.sqrt();
        // avoid cancellation: the larger root first, the other from the product
        let q = -0.5 * (b + b.signum() * sq);
        let (r1, r2) = if q == 0.0 {
            (-0.5 * sq, 0.5 * sq)
        } else {
            (q, c / q)
        };
        QuadraticRoots::Real(r1.min(r2), r1.max(r2))
    } else {
        QuadraticRoots::Complex(Complex64::new(-0.5 * b, 0.5 * (-disc).sqrt()))
    }
}

/// Roots of `t² - s·t + 1` for complex `s`, the larger-modulus root first.
fn reciprocal_pair(s: Complex64) -> (Complex64, Complex64) {
    let sq = (s * s - 4.0).sqrt();
    let r1 = if (s + sq).norm() >= (s - sq).norm() {
        0.5 * (s + sq)
    } else {
        0.5 * (s - sq)
    };
    (r1, 1.0 / r1)
}

/// Eigenvalues of a 1×1, 2×2 or symplectic 4×4 matrix.
///
/// Quartics are solved through `s = t + 1/t`, so only reciprocal
/// characteristic polynomials are accepted in dimension four.
pub fn eigs(a: &SquareMatrix, tol: f64) -> Result<Spectrum> {
    check_tol(tol)?;
    let n = a.dim();
    let p = char_poly(a);
    // char_poly is det(A - tI); make it monic
    let monic: Vec<f64> = p.coeffs().iter().map(|c| c / p.leading()).collect();
    let roots: Vec<(Complex64, usize)> = match n {
        1 => vec![(Complex64::new(a[(0, 0)], 0.0), 1)],
        2 => quadratic_roots(monic[1], monic[0], tol),
        4 => quartic_roots(&Polynomial::new(monic), tol)?,
        _ => return Err(Error::UnsupportedDimension(n)),
    };
    let scale = a.max_norm().max(1.0);
    // roots closer than about √tol are merged above, and a merged pair that
    // is really split by ε leaves singular values of order ε·cond; only a
    // coupling above tol^¼ counts as a Jordan block
    let rank_tol = tol.powf(0.25);
    let mut eigenvalues: Vec<Eigenvalue> = roots
        .into_iter()
        .map(|(value, multiplicity)| {
            let geometric = if multiplicity == 1 {
                1
            } else {
                let shifted = shifted_complex(a, value);
                n - complex_rank(&shifted, n, n, rank_tol * scale.max(value.norm()))
            };
            Eigenvalue {
                value,
                multiplicity,
                geometric: geometric.clamp(1, multiplicity),
            }
        })
        .collect();
    eigenvalues.sort_by(|x, y| {
        x.value
            .re
            .total_cmp(&y.value.re)
            .then(x.value.im.total_cmp(&y.value.im))
    });
    Ok(Spectrum { eigenvalues })
}

fn quadratic_roots(b: f64, c: f64, tol: f64) -> Vec<(Complex64, usize)> {
    match solve_quadratic(b, c, tol) {
        QuadraticRoots::Double(r) => vec![(Complex64::new(r, 0.0), 2)],
        QuadraticRoots::Real(r1, r2) => vec![(r1.into(), 1), (r2.into(), 1)],
        QuadraticRoots::Complex(z) => vec![(z, 1), (z.conj(), 1)],
    }
}

fn quartic_roots(p: &Polynomial, tol: f64) -> Result<Vec<(Complex64, usize)>> {
    let c = p.coeffs();
    let scale = p.max_abs_coeff();
    let check = tol.sqrt() * scale;
    if (c[0] - 1.0).abs() > check || (c[1] - c[3]).abs() > check {
        return Err(Error::NonReciprocalQuartic);
    }
    // t⁻² p(t) = s² + a s + (c₂ - 2) with s = t + 1/t
    let a = 0.5 * (c[1] + c[3]);
    let mut out = Vec::with_capacity(4);
    match solve_quadratic(a, c[2] - 2.0, tol) {
        QuadraticRoots::Double(s) => {
            for (z, m) in quadratic_roots(-s, 1.0, tol) {
                out.push((z, 2 * m));
            }
        }
        QuadraticRoots::Real(s1, s2) => {
            out.extend(quadratic_roots(-s1, 1.0, tol));
            out.extend(quadratic_roots(-s2, 1.0, tol));
        }
        QuadraticRoots::Complex(s) => {
            let (r1, r2) = reciprocal_pair(s);
            out.extend([(r1, 1), (r2, 1), (r1.conj(), 1), (r2.conj(), 1)]);
        }
    }
    Ok(out)
}

fn shifted_complex(a: &SquareMatrix, z: Complex64) -> Vec<Complex64> {
    let n = a.dim();
    let mut m: Vec<Complex64> = a.as_slice().iter().map(|&x| x.into()).collect();
    for i in 0..n {
        m[i * n + i] -= z;
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn close(a: Complex64, b: Complex64, eps: f64) -> bool {
        (a - b).norm() < eps
    }

    #[test]
    fn diagonal_simple() {
        let s = eigs(&SquareMatrix::from_diag(&[2.0, 0.5]), 1e-9).unwrap();
        assert_eq!(s.eigenvalues.len(), 2);
        assert!(close(s.eigenvalues[0].value, 0.5.into(), 1e-14));
        assert!(close(s.eigenvalues[1].value, 2.0.into(), 1e-14));
        assert!(s.eigenvalues.iter().all(|e| e.multiplicity == 1 && e.is_semisimple()));
    }

    #[test]
    fn jordan_block_not_semisimple() {
        let s = eigs(&SquareMatrix::from_rows([[1.0, 1.0], [0.0, 1.0]]), 1e-9).unwrap();
        assert_eq!(s.eigenvalues.len(), 1);
        let e = s.eigenvalues[0];
        assert_eq!(e.value, Complex64::new(1.0, 0.0));
        assert_eq!(e.multiplicity, 2);
        assert!(!e.is_semisimple());
    }

    #[test]
    fn identity_is_semisimple() {
        let s = eigs(&SquareMatrix::identity(4), 1e-9).unwrap();
        assert_eq!(s.eigenvalues.len(), 1);
        assert_eq!(s.eigenvalues[0].multiplicity, 4);
        assert!(s.eigenvalues[0].is_semisimple());
    }

    #[test]
    fn rotation_roots() {
        let t = PI / 3.0;
        let r = SquareMatrix::from_rows([[t.cos(), -t.sin()], [t.sin(), t.cos()]]);
        let s = eigs(&r, 1e-9).unwrap();
        let want = Complex64::from_polar(1.0, t);
        assert!(close(s.eigenvalues[0].value, want.conj(), 1e-14));
        assert!(close(s.eigenvalues[1].value, want, 1e-14));
    }

    #[test]
    fn symplectic_quartic_block_diagonal() {
        // blockdiag(diag(2, 1/2)) on the (q1,p1) plane and a rotation on (q2,p2),
        // written in (q1,q2,p1,p2) order
        let t = 0.7_f64;
        let m = SquareMatrix::from_rows([
            [2.0, 0.0, 0.0, 0.0],
            [0.0, t.cos(), 0.0, -t.sin()],
            [0.0, 0.0, 0.5, 0.0],
            [0.0, t.sin(), 0.0, t.cos()],
        ]);
        let s = eigs(&m, 1e-9).unwrap();
        let vals = s.values();
        assert_eq!(vals.len(), 4);
        for want in [
            Complex64::new(0.5, 0.0),
            Complex64::new(2.0, 0.0),
            Complex64::from_polar(1.0, t),
            Complex64::from_polar(1.0, -t),
        ] {
            assert!(vals.iter().any(|v| close(*v, want, 1e-12)), "{want}");
        }
    }

    #[test]
    fn quartic_rejects_non_reciprocal() {
        let m = SquareMatrix::from_diag(&[2.0, 1.0, 1.0, 1.0]);
        assert!(matches!(eigs(&m, 1e-9), Err(Error::NonReciprocalQuartic)));
    }

    #[test]
    fn complex_quadruple() {
        // A = r·rot(θ) in the Sp^I block form with B = diag(1,-1), C = B(A² - I)
        let (r, th) = (1.3_f64, 0.4_f64);
        let a = [[r * th.cos(), -r * th.sin()], [r * th.sin(), r * th.cos()]];
        let r2c = r * r * (2.0 * th).cos();
        let r2s = r * r * (2.0 * th).sin();
        let m = SquareMatrix::from_rows([
            [a[0][0], a[0][1], 1.0, 0.0],
            [a[1][0], a[1][1], 0.0, -1.0],
            [r2c - 1.0, -r2s, a[0][0], a[1][0]],
            [-r2s, 1.0 - r2c, a[0][1], a[1][1]],
        ]);
        let s = eigs(&m, 1e-9).unwrap();
        assert_eq!(s.eigenvalues.len(), 4);
        let vals = s.values();
        for v in &vals {
            assert!(vals.iter().any(|w| close(*w, v.conj(), 1e-12)));
            assert!(vals.iter().any(|w| close(*w, 1.0 / v, 1e-12)));
            assert!((v.norm() - 1.0).abs() > 1e-3);
        }
    }

    #[test]
    fn quadratic_thresholds() {
        assert_eq!(solve_quadratic(-2.0, 1.0 + 1e-13, 1e-9), QuadraticRoots::Double(1.0));
        match solve_quadratic(-2.5, 1.0, 1e-9) {
            QuadraticRoots::Real(a, b) => {
                assert!((a - 0.5).abs() < 1e-15 && (b - 2.0).abs() < 1e-15)
            }
            other => panic!("{other:?}"),
        }
    }
}
