use crate::error::{Error, Result};
use crate::mat::{allowed, check_tol, symplectic_residual, SquareMatrix, DEFAULT_TOL};

/// Linear Hamiltonian system `ẋ = J·A(t)·x` with `A(t)` symmetric and
/// `T`-periodic.
pub trait PeriodicHamiltonian {
    fn period(&self) -> f64;

    /// Phase-space dimension `2n`.
    fn dim(&self) -> usize;

    fn matrix(&self, t: f64) -> SquareMatrix;
}

/// [`PeriodicHamiltonian`] backed by a closure.
pub struct FnHamiltonian<F> {
    period: f64,
    dim: usize,
    f: F,
}

impl<F: Fn(f64) -> SquareMatrix> FnHamiltonian<F> {
    pub fn new(period: f64, dim: usize, f: F) -> Self {
        Self { period, dim, f }
    }
}

impl<F: Fn(f64) -> SquareMatrix> PeriodicHamiltonian for FnHamiltonian<F> {
    fn period(&self) -> f64 {
        self.period
    }

    fn dim(&self) -> usize {
        self.dim
    }

    fn matrix(&self, t: f64) -> SquareMatrix {
        (self.f)(t)
    }
}

pub const DEFAULT_STEPS: usize = 1024;
pub const MIN_STEPS: usize = 16;
/// Largest change allowed when the step is halved.
pub const HALVING_LIMIT: f64 = 1e-6;

fn sampled_generator<H: PeriodicHamiltonian + ?Sized>(
    h: &H,
    j: &SquareMatrix,
    t: f64,
    tol: f64,
) -> Result<SquareMatrix> {
    let a = h.matrix(t);
    if a.dim() != h.dim() {
        return Err(Error::WrongDimension {
            expected: h.dim(),
            found: a.dim(),
        });
    }
    if !a.is_finite() {
        return Err(Error::NonFinite);
    }
    let residual = a.asymmetry();
    if residual > allowed(a.max_norm(), tol) {
        return Err(Error::NonSymmetricA { t, residual });
    }
    Ok(j * &a)
}

/// Classical Runge-Kutta for `Ṙ = J·A(t)·R`, `R(0) = I`, followed by one
/// Newton step back onto the symplectic group when the drift exceeds `tol`.
pub fn integrate_monodromy<H: PeriodicHamiltonian + ?Sized>(
    h: &H,
    steps: usize,
    tol: f64,
) -> Result<SquareMatrix> {
    check_tol(tol)?;
    let period = h.period();
    if !(period.is_finite() && period > 0.0) {
        return Err(Error::InvalidPeriod(period));
    }
    if steps < MIN_STEPS {
        return Err(Error::TooFewSteps {
            min: MIN_STEPS,
            got: steps,
        });
    }
    let dim = h.dim();
    if !dim.is_multiple_of(2) {
        return Err(Error::OddDimension(dim));
    }
    let j = SquareMatrix::standard_j(dim / 2);
    let dt = period / steps as f64;
    let mut r = SquareMatrix::identity(dim);
    let mut next = sampled_generator(h, &j, 0.0, tol)?;
    for k in 0..steps {
        let t = k as f64 * dt;
        let x0 = next;
        let xm = sampled_generator(h, &j, t + 0.5 * dt, tol)?;
        next = sampled_generator(h, &j, t + dt, tol)?;
        let k1 = &x0 * &r;
        let k2 = &xm * &(&r + &k1.scale(0.5 * dt));
        let k3 = &xm * &(&r + &k2.scale(0.5 * dt));
        let k4 = &next * &(&r + &k3.scale(dt));
        let incr = &(&k1 + &k2.scale(2.0)) + &(&k3.scale(2.0) + &k4);
        r = &r + &incr.scale(dt / 6.0);
    }
    let drift = symplectic_residual(&r)?;
    let scale = r.max_norm();
    if drift > tol * (1.0 + scale * scale) {
        // S = R(I + ½JE), E = RᵀJR - J, cancels the drift to first order
        let e = &(&(&r.transpose() * &j) * &r) - &j;
        let corr = &SquareMatrix::identity(dim) + &(&j * &e).scale(0.5);
        r = &r * &corr;
    }
    Ok(r)
}

/// Monodromy `R(T)` at the default tolerance, checked against a run with
/// half the step size.
pub fn floquet_monodromy<H: PeriodicHamiltonian + ?Sized>(h: &H, steps: usize) -> Result<SquareMatrix> {
    floquet_monodromy_tol(h, steps, DEFAULT_TOL)
}

pub fn floquet_monodromy_tol<H: PeriodicHamiltonian + ?Sized>(
    h: &H,
    steps: usize,
    tol: f64,
) -> Result<SquareMatrix> {
    let coarse = integrate_monodromy(h, steps, tol)?;
    let fine = integrate_monodromy(h, 2 * steps, tol)?;
    let change = coarse.dist(&fine);
    if change > HALVING_LIMIT * (1.0 + fine.max_norm()) {
        return Err(Error::NonConvergence { change });
    }
    Ok(coarse)
}
