//! Random triples over prescribed strata, for tests and demos.

use rand::Rng;

use crate::base::{Region, SingularPoint, Stratum, WallBranch};
use crate::components::{diagonal_representative, n_representative};
use crate::mat::SquareMatrix;
use crate::signatures::Sign;
use crate::wonenburger::{gl_action, GLElement, WonenburgerTriple};

/// Largest condition number of [`random_gl`].
pub const MAX_CONDITION: f64 = 100.0;

pub fn random_sign<R: Rng + ?Sized>(rng: &mut R) -> Sign {
    if rng.gen_bool(0.5) {
        Sign::Positive
    } else {
        Sign::Negative
    }
}

fn random_orthogonal<R: Rng + ?Sized>(rng: &mut R) -> SquareMatrix {
    let (s, c) = rng.gen_range(0.0..std::f64::consts::TAU).sin_cos();
    let f = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
    SquareMatrix::from_rows([[c, -f * s], [s, f * c]])
}

/// `U·diag(σ)·V` with random orthogonal `U, V` and `σᵢ ∈ [0.1, 10]`
/// log-uniform, so the condition number is at most [`MAX_CONDITION`].
pub fn random_gl<R: Rng + ?Sized>(rng: &mut R) -> GLElement {
    let s: [f64; 2] = [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)];
    let d = SquareMatrix::from_diag(&[10f64.powf(s[0]), 10f64.powf(s[1])]);
    let r = &(&random_orthogonal(rng) * &d) * &random_orthogonal(rng);
    GLElement::new(r).expect("well conditioned")
}

fn elliptic<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.gen_range(-0.95..0.95)
}

fn above<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.gen_range(1.05..3.0)
}

fn below<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.gen_range(-3.0..-1.05)
}

fn magnitude<R: Rng + ?Sized>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    let x = rng.gen_range(lo..hi);
    if rng.gen_bool(0.5) {
        x
    } else {
        -x
    }
}

/// Two eigenvalues drawn by `draw`, at least `0.05` apart, increasing.
fn separated<R: Rng + ?Sized>(rng: &mut R, draw: fn(&mut R) -> f64) -> [f64; 2] {
    loop {
        let (a, b) = (draw(rng), draw(rng));
        if (a - b).abs() > 0.05 {
            return [a.min(b), a.max(b)];
        }
    }
}

/// `A = [[μ, 1], [0, μ]]` with `B = [[b₂, b₁], [b₁, 0]]`; `C` solves the
/// structure equations.
pub fn jordan_seed(mu: f64, b1: f64, b2: f64) -> WonenburgerTriple {
    let c1 = (mu * mu - 1.0) / b1;
    let c2 = (2.0 * mu - b2 * c1) / b1;
    WonenburgerTriple::from_parts(
        SquareMatrix::from_rows([[mu, 1.0], [0.0, mu]]),
        SquareMatrix::from_rows([[b2, b1], [b1, 0.0]]),
        SquareMatrix::from_rows([[0.0, c1], [c1, c2]]),
    )
}

/// `(b, c)` over a `±1` eigenline: both zero, or exactly one nonzero.
fn unit_line_entries<R: Rng + ?Sized>(rng: &mut R) -> (f64, f64) {
    match rng.gen_range(0..3) {
        0 => (0.0, 0.0),
        1 => (magnitude(rng, 0.2, 2.0), 0.0),
        _ => (0.0, magnitude(rng, 0.2, 2.0)),
    }
}

fn squeeze<R: Rng + ?Sized>(t: &WonenburgerTriple, rng: &mut R) -> WonenburgerTriple {
    let eps: f64 = rng.gen_range(1e-3..1.0);
    let g = GLElement::new(SquareMatrix::from_diag(&[1.0, 1.0 / eps])).expect("diagonal");
    gl_action(&g, t).expect("same dimension")
}

/// A triple over `s` in a simple position: diagonal or Jordan `A` with
/// random parameters and signs.
pub fn seed_triple<R: Rng + ?Sized>(s: Stratum, rng: &mut R) -> WonenburgerTriple {
    use Region::*;
    use WallBranch::*;
    let signs = [random_sign(rng), random_sign(rng)];
    match s {
        Stratum::Region(r) => match r {
            N => n_representative(rng.gen_range(0.3..2.0), rng.gen_range(0.1..3.04)),
            E2 => diagonal_representative(separated(rng, elliptic), signs),
            EHPlus => diagonal_representative([elliptic(rng), above(rng)], signs),
            EHMinus => diagonal_representative([below(rng), elliptic(rng)], signs),
            HPlusPlus => diagonal_representative(separated(rng, above), signs),
            HMinusMinus => diagonal_representative(separated(rng, below), signs),
            HMinusPlus => diagonal_representative([below(rng), above(rng)], signs),
        },
        Stratum::Wall(w @ (D1 | D2 | D3)) => {
            let mu = match w {
                D1 => below(rng),
                D2 => elliptic(rng),
                _ => above(rng),
            };
            if signs[0] != signs[1] && rng.gen_bool(0.5) {
                let t = jordan_seed(mu, magnitude(rng, 0.3, 2.0), rng.gen_range(-1.0..1.0));
                squeeze(&t, rng)
            } else {
                let mut t = diagonal_representative([mu, mu], signs);
                if rng.gen_bool(0.5) {
                    // rotate B away from diagonal form; A = μI is unchanged
                    let q = GLElement::new(random_orthogonal(rng)).expect("orthogonal");
                    t = gl_action(&q, &t).expect("same dimension");
                }
                t
            }
        }
        Stratum::Wall(w) => {
            let unit = if matches!(w, P1 | P2 | P3) { 1.0 } else { -1.0 };
            let other = match w {
                P1 | M1 => below(rng),
                P2 | M2 => elliptic(rng),
                _ => above(rng),
            };
            let (bu, cu) = unit_line_entries(rng);
            let base = diagonal_representative([unit, other], [Sign::Zero, signs[1]]);
            let (a, mut b, mut c) = base.into_parts();
            b[(0, 0)] = bu;
            c[(0, 0)] = cu;
            WonenburgerTriple::from_parts(a, b, c)
        }
        Stratum::Singular(p) => match p {
            SingularPoint::Identity | SingularPoint::MinusIdentity => {
                let mu = if p == SingularPoint::Identity { 1.0 } else { -1.0 };
                if rng.gen_bool(0.5) {
                    squeeze(&jordan_seed(mu, magnitude(rng, 0.3, 2.0), rng.gen_range(-1.0..1.0)), rng)
                } else {
                    let (b, c) = unit_line_entries(rng);
                    WonenburgerTriple::from_parts(
                        SquareMatrix::identity(2).scale(mu),
                        SquareMatrix::from_diag(&[b, 0.0]),
                        SquareMatrix::from_diag(&[0.0, c]),
                    )
                }
            }
            SingularPoint::Mixed => {
                let (b0, c0) = unit_line_entries(rng);
                let (b1, c1) = unit_line_entries(rng);
                WonenburgerTriple::from_parts(
                    SquareMatrix::from_diag(&[1.0, -1.0]),
                    SquareMatrix::from_diag(&[b0, b1]),
                    SquareMatrix::from_diag(&[c0, c1]),
                )
            }
        },
    }
}

/// [`seed_triple`] moved by a random element of condition at most
/// [`MAX_CONDITION`].
pub fn random_triple<R: Rng + ?Sized>(s: Stratum, rng: &mut R) -> WonenburgerTriple {
    let t = seed_triple(s, rng);
    gl_action(&random_gl(rng), &t).expect("same dimension")
}

/// A random triple over one of the seven regions.
pub fn random_region_triple<R: Rng + ?Sized>(rng: &mut R) -> (Stratum, WonenburgerTriple) {
    let r = Region::ALL[rng.gen_range(0..Region::ALL.len())];
    let s = Stratum::Region(r);
    (s, random_triple(s, rng))
}
