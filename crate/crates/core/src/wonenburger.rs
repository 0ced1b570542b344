//! Block triples `(A, B, C)` of reflection-symmetric symplectic matrices,
//! the `GL_n` action on them and the reduced monodromy.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, StructureEquation, Violation};
use crate::mat::{allowed, check_tol, symplectic_check, symplectic_residual, Polynomial, SquareMatrix};

/// Blocks of `M = [[A, B], [C, Aᵀ]]` with `B = Bᵀ`, `C = Cᵀ`, `AB = BAᵀ`,
/// `AᵀC = CA` and `A² - BC = I`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WonenburgerTriple {
    a: SquareMatrix,
    b: SquareMatrix,
    c: SquareMatrix,
}

impl WonenburgerTriple {
    /// Validates the structure equations at relative tolerance `tol`.
    pub fn new(a: SquareMatrix, b: SquareMatrix, c: SquareMatrix, tol: f64) -> Result<Self> {
        validate_triple(a, b, c, tol)
    }

    /// Skips validation; callers construct exact solutions of the structure
    /// equations (normal forms, group images).
    pub(crate) fn from_parts(a: SquareMatrix, b: SquareMatrix, c: SquareMatrix) -> Self {
        debug_assert!(a.dim() == b.dim() && b.dim() == c.dim());
        Self { a, b, c }
    }

    /// `(I, 0, 0)` in dimension `n`.
    pub fn identity(n: usize) -> Self {
        Self::from_parts(
            SquareMatrix::identity(n),
            SquareMatrix::zeros(n),
            SquareMatrix::zeros(n),
        )
    }

    pub fn n(&self) -> usize {
        self.a.dim()
    }

    pub fn a(&self) -> &SquareMatrix {
        &self.a
    }

    pub fn b(&self) -> &SquareMatrix {
        &self.b
    }

    pub fn c(&self) -> &SquareMatrix {
        &self.c
    }

    pub fn into_parts(self) -> (SquareMatrix, SquareMatrix, SquareMatrix) {
        (self.a, self.b, self.c)
    }

    pub fn assemble(&self) -> SquareMatrix {
        assemble(self)
    }

    pub fn char_poly(&self) -> Polynomial {
        char_poly_triple(self)
    }

    /// Triple of `-M`.
    pub fn negate(&self) -> Self {
        Self::from_parts(-&self.a, -&self.b, -&self.c)
    }

    /// Entrywise residuals of the five structure equations.
    pub fn residuals(&self) -> [(StructureEquation, f64, f64); 5] {
        residuals(&self.a, &self.b, &self.c)
    }
}

fn residuals(
    a: &SquareMatrix,
    b: &SquareMatrix,
    c: &SquareMatrix,
) -> [(StructureEquation, f64, f64); 5] {
    let n = a.dim() as f64;
    let (na, nb, nc) = (a.max_norm(), b.max_norm(), c.max_norm());
    let at = a.transpose();
    let unimodular = &(&(a * a) - &(b * c)) - &SquareMatrix::identity(a.dim());
    [
        (StructureEquation::BSymmetric, b.asymmetry(), nb),
        (StructureEquation::CSymmetric, c.asymmetry(), nc),
        (StructureEquation::ABCommute, (a * b).dist(&(b * &at)), n * na * nb),
        (StructureEquation::ACCommute, (&at * c).dist(&(c * a)), n * na * nc),
        (
            StructureEquation::Unimodular,
            unimodular.max_norm(),
            1.0 + n * (na * na + nb * nc),
        ),
    ]
}

/// Checks the structure equations, each residual against
/// `max(1e-12, tol·scale)` where the scale is built from the operand norms.
pub fn validate_triple(
    a: SquareMatrix,
    b: SquareMatrix,
    c: SquareMatrix,
    tol: f64,
) -> Result<WonenburgerTriple> {
    check_tol(tol)?;
    let n = a.dim();
    if !(n == 1 || n == 2) {
        return Err(Error::UnsupportedDimension(n));
    }
    for m in [&b, &c] {
        if m.dim() != n {
            return Err(Error::WrongDimension {
                expected: n,
                found: m.dim(),
            });
        }
    }
    if !(a.is_finite() && b.is_finite() && c.is_finite()) {
        return Err(Error::NonFinite);
    }
    let violations: Vec<Violation> = residuals(&a, &b, &c)
        .into_iter()
        .filter_map(|(equation, residual, scale)| {
            let bound = allowed(scale, tol);
            (residual > bound).then_some(Violation {
                equation,
                residual,
                allowed: bound,
            })
        })
        .collect();
    if !violations.is_empty() {
        return Err(Error::StructureViolation(violations));
    }
    let t = WonenburgerTriple::from_parts(a, b, c);
    let m = t.assemble();
    if !symplectic_check(&m, tol)? {
        return Err(Error::NotSymplectic {
            residual: symplectic_residual(&m)?,
        });
    }
    Ok(t)
}

/// `[[A, B], [C, Aᵀ]]`.
pub fn assemble(t: &WonenburgerTriple) -> SquareMatrix {
    SquareMatrix::from_blocks(&t.a, &t.b, &t.c, &t.a.transpose())
}

/// Reads the blocks of `M` and checks that the lower-right block is `Aᵀ`.
pub fn from_matrix(m: &SquareMatrix, tol: f64) -> Result<WonenburgerTriple> {
    check_tol(tol)?;
    let dim = m.dim();
    if !dim.is_multiple_of(2) {
        return Err(Error::OddDimension(dim));
    }
    if !(dim == 2 || dim == 4) {
        return Err(Error::UnsupportedDimension(dim));
    }
    let n = dim / 2;
    let a = m.block(0, 0, n);
    let d = m.block(n, n, n);
    let residual = d.dist(&a.transpose());
    if residual > allowed(m.max_norm(), tol) {
        return Err(Error::NotInSpI { residual });
    }
    validate_triple(a, m.block(0, n, n), m.block(n, 0, n), tol)
}

/// Invertible `R` acting by `(RAR⁻¹, RBRᵀ, R⁻ᵀCR⁻¹)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GLElement {
    r: SquareMatrix,
    r_inv: SquareMatrix,
}

/// Smallest accepted `|det R|`.
pub const GL_DET_THRESHOLD: f64 = 1e-12;

impl GLElement {
    pub fn new(r: SquareMatrix) -> Result<Self> {
        let det = r.det();
        if !r.is_finite() || det.abs() <= GL_DET_THRESHOLD {
            return Err(Error::SingularR { det });
        }
        let r_inv = r.inverse().map_err(|_| Error::SingularR { det })?;
        Ok(Self { r, r_inv })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            r: SquareMatrix::identity(n),
            r_inv: SquareMatrix::identity(n),
        }
    }

    pub fn matrix(&self) -> &SquareMatrix {
        &self.r
    }

    pub fn inverse_matrix(&self) -> &SquareMatrix {
        &self.r_inv
    }

    pub fn dim(&self) -> usize {
        self.r.dim()
    }

    pub fn inverse(&self) -> Self {
        Self {
            r: self.r_inv.clone(),
            r_inv: self.r.clone(),
        }
    }

    /// `self · other`, acting as `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        Self {
            r: &self.r * &other.r,
            r_inv: &other.r_inv * &self.r_inv,
        }
    }

    /// `blockdiag(R, R⁻ᵀ)`, the symplectic matrix inducing the action.
    pub fn symplectic_lift(&self) -> SquareMatrix {
        let n = self.dim();
        let z = SquareMatrix::zeros(n);
        SquareMatrix::from_blocks(&self.r, &z, &z, &self.r_inv.transpose())
    }
}

pub fn gl_action(g: &GLElement, t: &WonenburgerTriple) -> Result<WonenburgerTriple> {
    if g.dim() != t.n() {
        return Err(Error::WrongDimension {
            expected: t.n(),
            found: g.dim(),
        });
    }
    let (r, ri) = (&g.r, &g.r_inv);
    let a = &(r * &t.a) * ri;
    let b = &(r * &t.b) * &r.transpose();
    let c = &(&ri.transpose() * &t.c) * ri;
    Ok(WonenburgerTriple::from_parts(
        a,
        symmetrize(&b),
        symmetrize(&c),
    ))
}

pub(crate) fn symmetrize(m: &SquareMatrix) -> SquareMatrix {
    (m + &m.transpose()).scale(0.5)
}

/// `det(t²I - 2tA + I)`, which equals the characteristic polynomial of the
/// assembled matrix.
pub fn char_poly_triple(t: &WonenburgerTriple) -> Polynomial {
    match t.n() {
        1 => Polynomial::new(vec![1.0, -2.0 * t.a[(0, 0)], 1.0]),
        _ => {
            let tau = t.a.trace();
            let delta = t.a.det();
            Polynomial::new(vec![
                1.0,
                -2.0 * tau,
                2.0 * (1.0 + 2.0 * delta),
                -2.0 * tau,
                1.0,
            ])
        }
    }
}

/// A symplectic `M` with a fixed vector `v` and an invariant covector `α`
/// vanishing on `v`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReducedMonodromyInput {
    pub m: SquareMatrix,
    pub v: Vec<f64>,
    pub alpha: Vec<f64>,
}

fn omega(x: &[f64], y: &[f64]) -> f64 {
    // xᵀ J y with J = [[0, I], [-I, 0]]
    let h = x.len() / 2;
    (0..h).map(|i| x[i] * y[i + h] - x[i + h] * y[i]).sum()
}

fn inf(v: &[f64]) -> f64 {
    v.iter().fold(0.0_f64, |m, x| m.max(x.abs()))
}

/// Matrix of the map induced by `M` on `ker α / ⟨v⟩`, in a symplectic basis
/// built by Gram-Schmidt from projected standard basis vectors.
pub fn reduced_monodromy(input: &ReducedMonodromyInput, tol: f64) -> Result<SquareMatrix> {
    check_tol(tol)?;
    let m = &input.m;
    let dim = m.dim();
    if !dim.is_multiple_of(2) {
        return Err(Error::OddDimension(dim));
    }
    if dim < 4 {
        return Err(Error::UnsupportedDimension(dim));
    }
    for len in [input.v.len(), input.alpha.len()] {
        if len != dim {
            return Err(Error::ShapeMismatch {
                expected: dim,
                found: len,
            });
        }
    }
    let (v, alpha) = (&input.v, &input.alpha);
    if !(m.is_finite() && v.iter().chain(alpha).all(|x| x.is_finite())) {
        return Err(Error::NonFinite);
    }
    if !symplectic_check(m, tol)? {
        return Err(Error::NotSymplectic {
            residual: symplectic_residual(m)?,
        });
    }
    let (nv, na, nm) = (inf(v), inf(alpha), m.max_norm());
    if nv == 0.0 || na == 0.0 {
        return Err(Error::DegenerateQuotient("v and α must be nonzero".into()));
    }
    let mv = m.mul_vec(v);
    let r = mv.iter().zip(v).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    if r > allowed(dim as f64 * nm * nv, tol) {
        return Err(Error::InvariantViolation {
            what: "Mv = v",
            residual: r,
        });
    }
    let am = m.vec_mul(alpha);
    let r = am.iter().zip(alpha).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    if r > allowed(dim as f64 * nm * na, tol) {
        return Err(Error::InvariantViolation {
            what: "αM = α",
            residual: r,
        });
    }
    let av: f64 = alpha.iter().zip(v).map(|(a, b)| a * b).sum();
    if av.abs() > allowed(dim as f64 * na * nv, tol) {
        return Err(Error::DegenerateQuotient(format!(
            "α(v) = {av:.3e} does not vanish"
        )));
    }
    // ker α must be the ω-complement of v, i.e. α ∝ ω(v, ·)
    let h = dim / 2;
    let w: Vec<f64> = (0..dim)
        .map(|i| if i < h { -v[i + h] } else { v[i - h] })
        .collect();
    let nw = inf(&w);
    let wedge = (0..dim)
        .flat_map(|i| (0..dim).map(move |j| (i, j)))
        .map(|(i, j)| (alpha[i] * w[j] - alpha[j] * w[i]).abs())
        .fold(0.0, f64::max);
    if wedge > allowed(na * nw, tol.sqrt()) {
        return Err(Error::DegenerateQuotient(
            "ker α is not the symplectic complement of v".into(),
        ));
    }

    let p = (0..dim)
        .max_by(|&i, &j| alpha[i].abs().total_cmp(&alpha[j].abs()))
        .unwrap();
    let mut cands: Vec<Vec<f64>> = (0..dim)
        .filter(|&i| i != p)
        .map(|i| {
            let mut e = vec![0.0; dim];
            e[i] = 1.0;
            e[p] = -alpha[i] / alpha[p];
            e
        })
        .collect();
    let mut es = Vec::with_capacity(h - 1);
    let mut fs = Vec::with_capacity(h - 1);
    for _ in 0..(h - 1) {
        let mut best = (0, 0, 0.0);
        for i in 0..cands.len() {
            for j in (i + 1)..cands.len() {
                let o = omega(&cands[i], &cands[j]).abs();
                if o > best.2 {
                    best = (i, j, o);
                }
            }
        }
        if best.2 <= tol {
            return Err(Error::DegenerateQuotient(
                "symplectic form degenerates on ker α / ⟨v⟩".into(),
            ));
        }
        let (i, j, _) = best;
        let y = cands.remove(j);
        let x = cands.remove(i);
        let nx = x.iter().map(|t| t * t).sum::<f64>().sqrt();
        let e: Vec<f64> = x.iter().map(|t| t / nx).collect();
        let oy = omega(&e, &y);
        let f: Vec<f64> = y.iter().map(|t| t / oy).collect();
        for c in cands.iter_mut() {
            let (cf, ce) = (omega(c, &f), omega(c, &e));
            for k in 0..dim {
                c[k] += -cf * e[k] + ce * f[k];
            }
        }
        es.push(e);
        fs.push(f);
    }
    let k = h - 1;
    let basis: Vec<&Vec<f64>> = es.iter().chain(fs.iter()).collect();
    let mut out = SquareMatrix::zeros(2 * k);
    for (col, x) in basis.iter().enumerate() {
        let y = m.mul_vec(x);
        for i in 0..k {
            out[(i, col)] = omega(&y, &fs[i]);
            out[(i + k, col)] = -omega(&y, &es[i]);
        }
    }
    if !symplectic_check(&out, tol.sqrt())? {
        return Err(Error::NotSymplectic {
            residual: symplectic_residual(&out)?,
        });
    }
    Ok(out)
}
