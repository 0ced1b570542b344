use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::base::Stratum;

/// One of the five structure equations of a reflection-symmetric symplectic
/// block triple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StructureEquation {
    /// `B = Bᵀ`
    BSymmetric,
    /// `C = Cᵀ`
    CSymmetric,
    /// `AB = BAᵀ`
    ABCommute,
    /// `AᵀC = CA`
    ACCommute,
    /// `A² - BC = I`
    Unimodular,
}

impl fmt::Display for StructureEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StructureEquation::BSymmetric => "B = B^T",
            StructureEquation::CSymmetric => "C = C^T",
            StructureEquation::ABCommute => "AB = BA^T",
            StructureEquation::ACCommute => "A^T C = CA",
            StructureEquation::Unimodular => "A^2 - BC = I",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub equation: StructureEquation,
    pub residual: f64,
    pub allowed: f64,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} violated: residual {:.3e} > {:.3e}",
            self.equation, self.residual, self.allowed
        )
    }
}

fn join_violations(v: &[Violation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported dimension {0}")]
    UnsupportedDimension(usize),
    #[error("expected {expected} entries, found {found}")]
    ShapeMismatch { expected: usize, found: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    WrongDimension { expected: usize, found: usize },
    #[error("non-finite entry")]
    NonFinite,
    #[error("matrix is singular")]
    Singular,
    #[error("odd dimension {0} has no symplectic structure")]
    OddDimension(usize),
    #[error("characteristic polynomial is not reciprocal; only symplectic quartics are supported")]
    NonReciprocalQuartic,
    #[error("invalid tolerance {0}")]
    InvalidTolerance(f64),

    #[error("structure equations violated: {}", join_violations(.0))]
    StructureViolation(Vec<Violation>),
    #[error("lower-right block differs from A^T by {residual:.3e}; matrix is not reflection-symmetric")]
    NotInSpI { residual: f64 },
    #[error("GL element is singular (det = {det:.3e})")]
    SingularR { det: f64 },
    #[error("{what} violated by {residual:.3e}")]
    InvariantViolation { what: &'static str, residual: f64 },
    #[error("degenerate quotient: {0}")]
    DegenerateQuotient(String),

    #[error("eigenvalue {mu} is inconsistent with stratum {stratum}")]
    InconsistentRegion { mu: String, stratum: Stratum },
    #[error("hyperbolic pencil needs |lambda| > 1, got {0}")]
    DegenerateLambda(f64),
    #[error("invalid pencil parameter: {0}")]
    InvalidPencil(String),

    #[error("A has complex eigenvalues; B-signs are undefined")]
    ComplexEigenvalues,
    #[error("A has a double eigenvalue with a single eigenline; take the orbit-closure representative first")]
    NonDiagonalizable,
    #[error("A has no eigenvalue strictly inside (-1, 1)")]
    NoEllipticEigenvalue,
    #[error("|lambda| = {0} is not on the unit circle")]
    NotOnUnitCircle(f64),
    #[error("{0} is not an eigenvalue")]
    NotAnEigenvalue(String),
    #[error("matrix is not symplectic (residual {residual:.3e})")]
    NotSymplectic { residual: f64 },

    #[error("coefficient matrix is not symmetric at t = {t} (residual {residual:.3e})")]
    NonSymmetricA { t: f64, residual: f64 },
    #[error("period must be positive and finite, got {0}")]
    InvalidPeriod(f64),
    #[error("at least {min} integration steps are required, got {got}")]
    TooFewSteps { min: usize, got: usize },
    #[error("monodromy did not converge: halving the step changed it by {change:.3e}")]
    NonConvergence { change: f64 },

    #[error("point lies on the bifurcation locus ({0})")]
    OnBifurcationLocus(Stratum),
    #[error("a family needs at least two samples")]
    TooFewSamples,
    #[error("family parameters are not strictly increasing at sample {index}")]
    NonMonotone { index: usize },
    #[error("samples {index} and {next} carry non-adjacent sheet labels with no detected crossing")]
    SparseSampling { index: usize, next: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
