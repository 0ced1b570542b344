use serde::{Deserialize, Serialize};

use crate::base::{base_from_triple, classify_base, BasePoint, Region, SingularPoint, Stratum, Wall, WallBranch};
use crate::error::{Error, Result};
use crate::mat::{allowed, check_tol, symmetric_eigenvalues, SquareMatrix};
use crate::signatures::{left_eigenvector, quadratic_form, Sign};
use crate::wonenburger::{GLElement, WonenburgerTriple};

/// Canonical representative of the class of a spatial triple.
///
/// `parameters` depend on the stratum:
/// - real regions: one angle per eigenvalue of `A`, in increasing `μ`;
///   `θ = acos μ` for elliptic and `u = acosh |μ|` for hyperbolic ones;
/// - `N`: `(r, θ)` with `A`-eigenvalues `r·e^{±iθ}`, `0 < θ < π`;
/// - discriminant branches: the angle of the double eigenvalue;
/// - unit walls: the angle of the eigenvalue other than `±1`;
/// - singular points: none.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormalForm {
    pub stratum: Stratum,
    pub parameters: Vec<f64>,
    /// B-signs in increasing `μ`, [`Sign::Zero`] at `±1`. Over the
    /// discriminant the signature of `B`, positive entries first.
    pub signs: Vec<Sign>,
    pub representative: WonenburgerTriple,
    /// `R` with `R·t = representative`, on regions only.
    pub realizing: Option<GLElement>,
}

/// Angle coordinate of a real eigenvalue of `A`.
pub fn eigen_angle(mu: f64) -> f64 {
    if mu.abs() <= 1.0 {
        mu.acos()
    } else {
        mu.abs().acosh()
    }
}

/// `b = s·√|μ² - 1|` and `c = (μ² - 1)/b`, zero at `μ = ±1`.
fn diagonal_entries(mu: f64, sign: Sign) -> (f64, f64) {
    let q = mu * mu - 1.0;
    let beta = q.abs().sqrt();
    let b = match sign {
        Sign::Positive => beta,
        Sign::Negative => -beta,
        Sign::Zero => 0.0,
    };
    let c = if b == 0.0 { 0.0 } else { q / b };
    (b, c)
}

/// Diagonal triple with `A = diag(μ)` and `|bᵢ| = |cᵢ| = √|μᵢ² - 1|`.
pub fn diagonal_representative(mus: [f64; 2], signs: [Sign; 2]) -> WonenburgerTriple {
    let (b0, c0) = diagonal_entries(mus[0], signs[0]);
    let (b1, c1) = diagonal_entries(mus[1], signs[1]);
    WonenburgerTriple::from_parts(
        SquareMatrix::from_diag(&mus),
        SquareMatrix::from_diag(&[b0, b1]),
        SquareMatrix::from_diag(&[c0, c1]),
    )
}

/// `A = r·Rot(θ)`, `B = diag(1, -1)`, `C = B(A² - I)`.
pub fn n_representative(r: f64, theta: f64) -> WonenburgerTriple {
    let (s, c) = theta.sin_cos();
    let (s2, c2) = (2.0 * theta).sin_cos();
    let r2 = r * r;
    WonenburgerTriple::from_parts(
        SquareMatrix::from_rows([[r * c, -r * s], [r * s, r * c]]),
        SquareMatrix::from_diag(&[1.0, -1.0]),
        SquareMatrix::from_rows([[r2 * c2 - 1.0, -r2 * s2], [-r2 * s2, 1.0 - r2 * c2]]),
    )
}

/// Representative of a singular point.
pub fn singular_representative(s: SingularPoint) -> WonenburgerTriple {
    let a = match s {
        SingularPoint::Identity => SquareMatrix::identity(2),
        SingularPoint::MinusIdentity => SquareMatrix::identity(2).scale(-1.0),
        SingularPoint::Mixed => SquareMatrix::from_diag(&[1.0, -1.0]),
    };
    WonenburgerTriple::from_parts(a, SquareMatrix::zeros(2), SquareMatrix::zeros(2))
}

/// Real roots `μ₁ ≤ μ₂` of `t² - τt + δ`, clamping a slightly negative
/// discriminant to zero.
fn real_roots(p: BasePoint) -> (f64, f64) {
    let h = 0.5 * p.tau;
    let d = (h * h - p.delta).max(0.0).sqrt();
    if h >= 0.0 {
        let hi = h + d;
        let lo = if hi == 0.0 { 0.0 } else { p.delta / hi };
        (lo.min(hi), lo.max(hi))
    } else {
        let lo = h - d;
        let hi = p.delta / lo;
        (lo.min(hi), lo.max(hi))
    }
}

/// Null vector of `A - μI` for a 2×2 `A`.
fn right_eigenvector(a: &SquareMatrix, mu: f64) -> [f64; 2] {
    let (p, q) = (a[(0, 0)] - mu, a[(0, 1)]);
    let (r, s) = (a[(1, 0)], a[(1, 1)] - mu);
    if p.hypot(q) >= r.hypot(s) {
        [-q, p]
    } else {
        [-s, r]
    }
}

/// Flips the rows of `r` so that each row's largest entry is positive.
fn normalize_rows(r: &mut SquareMatrix) {
    let n = r.dim();
    for i in 0..n {
        let mut k = 0;
        for j in 1..n {
            if r[(i, j)].abs() > r[(i, k)].abs() {
                k = j;
            }
        }
        if r[(i, k)] < 0.0 {
            for j in 0..n {
                r[(i, j)] = -r[(i, j)];
            }
        }
    }
}

fn normalize_global(r: &mut SquareMatrix) {
    let mut best = 0.0_f64;
    for &x in r.as_slice() {
        if x.abs() > best.abs() {
            best = x;
        }
    }
    if best < 0.0 {
        *r = r.scale(-1.0);
    }
}

/// Normal form of a spatial triple.
pub fn normal_form(t: &WonenburgerTriple, tol: f64) -> Result<NormalForm> {
    check_tol(tol)?;
    if t.n() != 2 {
        return Err(Error::UnsupportedDimension(t.n()));
    }
    let p = base_from_triple(t)?;
    let stratum = classify_base(p, tol);
    match stratum {
        Stratum::Region(Region::N) => complex_form(t, p),
        Stratum::Region(_) => real_form(t, p, stratum, tol),
        Stratum::Wall(w) if w.wall() == Wall::Discriminant => discriminant_form(t, p, w, tol),
        Stratum::Wall(w) => unit_wall_form(t, p, w, tol),
        Stratum::Singular(s) => Ok(NormalForm {
            stratum,
            parameters: Vec::new(),
            signs: vec![Sign::Zero; 2],
            representative: singular_representative(s),
            realizing: None,
        }),
    }
}

fn real_form(t: &WonenburgerTriple, p: BasePoint, stratum: Stratum, tol: f64) -> Result<NormalForm> {
    let (a, b) = (t.a(), t.b());
    let (m0, m1) = real_roots(p);
    let mus = [m0, m1];
    let mut pm = SquareMatrix::zeros(2);
    for (col, &mu) in mus.iter().enumerate() {
        let v = right_eigenvector(a, mu);
        pm[(0, col)] = v[0];
        pm[(1, col)] = v[1];
    }
    let p_inv = pm.inverse()?;
    let b_diag = &(&p_inv * b) * &p_inv.transpose();
    let band = allowed(b_diag.max_norm(), tol);
    let mut signs = [Sign::Zero; 2];
    let mut r = p_inv.clone();
    for i in 0..2 {
        let bi = b_diag[(i, i)];
        signs[i] = Sign::of(bi, band);
        if signs[i] == Sign::Zero {
            return Err(Error::InconsistentRegion {
                mu: format!("{}", mus[i]),
                stratum,
            });
        }
        let beta = (mus[i] * mus[i] - 1.0).abs().sqrt();
        let scale = (beta / bi.abs()).sqrt();
        for j in 0..2 {
            r[(i, j)] *= scale;
        }
    }
    normalize_rows(&mut r);
    Ok(NormalForm {
        stratum,
        parameters: mus.iter().map(|&m| eigen_angle(m)).collect(),
        signs: signs.to_vec(),
        representative: diagonal_representative(mus, signs),
        realizing: Some(GLElement::new(r)?),
    })
}

fn complex_form(t: &WonenburgerTriple, p: BasePoint) -> Result<NormalForm> {
    let (a, b) = (t.a(), t.b());
    let re = 0.5 * p.tau;
    let im = (p.delta - re * re).max(0.0).sqrt();
    // eigenvector v = u + iw of A for re + i·im, from the larger row of A - μI
    let rows = [
        (a[(0, 0)] - re, -im, a[(0, 1)], 0.0),
        (a[(1, 0)], 0.0, a[(1, 1)] - re, -im),
    ];
    let size = |r: &(f64, f64, f64, f64)| r.0.hypot(r.1).hypot(r.2.hypot(r.3));
    let (pr, pi, qr, qi) = if size(&rows[0]) >= size(&rows[1]) { rows[0] } else { rows[1] };
    // (p, q)·(-q, p) = 0
    let (u, w) = ([-qr, pr], [-qi, pi]);
    let pm = SquareMatrix::from_rows([[u[0], -w[0]], [u[1], -w[1]]]);
    let p_inv = pm.inverse()?;
    // in this basis A = [[re, -im], [im, re]] and B is traceless
    let bp = &(&p_inv * b) * &p_inv.transpose();
    let (x, y) = (0.5 * (bp[(0, 0)] - bp[(1, 1)]), bp[(0, 1)]);
    let beta = x.hypot(y);
    if beta == 0.0 {
        return Err(Error::Singular);
    }
    let phi = 0.5 * y.atan2(x);
    let (sp, cp) = phi.sin_cos();
    let q = SquareMatrix::from_rows([[cp, sp], [-sp, cp]]);
    let mut r = (&q * &p_inv).scale(1.0 / beta.sqrt());
    normalize_global(&mut r);
    let radius = p.delta.max(0.0).sqrt();
    let theta = im.atan2(re);
    Ok(NormalForm {
        stratum: Stratum::Region(Region::N),
        parameters: vec![radius, theta],
        signs: Vec::new(),
        representative: n_representative(radius, theta),
        realizing: Some(GLElement::new(r)?),
    })
}

fn discriminant_form(t: &WonenburgerTriple, p: BasePoint, w: WallBranch, tol: f64) -> Result<NormalForm> {
    let mu = 0.5 * p.tau;
    let band = allowed(t.b().max_norm(), tol);
    let mut signs: Vec<Sign> = symmetric_eigenvalues(t.b())
        .into_iter()
        .map(|x| Sign::of(x, band))
        .collect();
    signs.sort_by(|a, b| b.cmp(a));
    if signs.contains(&Sign::Zero) {
        return Err(Error::InconsistentRegion {
            mu: format!("{mu}"),
            stratum: Stratum::Wall(w),
        });
    }
    let (b0, c0) = diagonal_entries(mu, signs[0]);
    let (b1, c1) = diagonal_entries(mu, signs[1]);
    let representative = WonenburgerTriple::from_parts(
        SquareMatrix::identity(2).scale(mu),
        SquareMatrix::from_diag(&[b0, b1]),
        SquareMatrix::from_diag(&[c0, c1]),
    );
    Ok(NormalForm {
        stratum: Stratum::Wall(w),
        parameters: vec![eigen_angle(mu)],
        signs,
        representative,
        realizing: None,
    })
}

fn unit_wall_form(t: &WonenburgerTriple, p: BasePoint, w: WallBranch, tol: f64) -> Result<NormalForm> {
    let unit = if w.wall() == Wall::PlusOne { 1.0 } else { -1.0 };
    let other = p.tau - unit;
    let lw = left_eigenvector(t.a(), other);
    let band = allowed(t.b().max_norm(), tol);
    let s = Sign::of(quadratic_form(t.b(), &lw), band);
    if s == Sign::Zero {
        return Err(Error::InconsistentRegion {
            mu: format!("{other}"),
            stratum: Stratum::Wall(w),
        });
    }
    let (mus, signs) = if other < unit {
        ([other, unit], [s, Sign::Zero])
    } else {
        ([unit, other], [Sign::Zero, s])
    };
    Ok(NormalForm {
        stratum: Stratum::Wall(w),
        parameters: vec![eigen_angle(other)],
        signs: signs.to_vec(),
        representative: diagonal_representative(mus, signs),
        realizing: None,
    })
}
