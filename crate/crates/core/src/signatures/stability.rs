use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::krein::krein_signature;
use crate::error::{Error, Result};
use crate::mat::{check_tol, eigs, symplectic_check, symplectic_residual, SquareMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum StabilityVerdict {
    /// An eigenvalue off the unit circle, or a unit eigenvalue that is not
    /// semisimple.
    Unstable { witness: Complex64 },
    /// Stable with a Krein-indefinite eigenvalue.
    StableNotStrong { witness: Complex64 },
    StronglyStable,
}

impl StabilityVerdict {
    pub fn is_stable(&self) -> bool {
        !matches!(self, StabilityVerdict::Unstable { .. })
    }

    pub fn is_strongly_stable(&self) -> bool {
        matches!(self, StabilityVerdict::StronglyStable)
    }

    pub fn name(&self) -> &'static str {
        match self {
            StabilityVerdict::Unstable { .. } => "unstable",
            StabilityVerdict::StableNotStrong { .. } => "stable-not-strong",
            StabilityVerdict::StronglyStable => "strongly-stable",
        }
    }
}

impl fmt::Display for StabilityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Stability of the iterates of a symplectic matrix.
///
/// Moduli are compared with `1` at `√tol`, and semisimplicity is the rank
/// test of [`eigs`]. Eigenvalues `±1` are always Krein-indefinite.
pub fn stability_check(m: &SquareMatrix, tol: f64) -> Result<StabilityVerdict> {
    check_tol(tol)?;
    if !symplectic_check(m, tol.sqrt())? {
        return Err(Error::NotSymplectic {
            residual: symplectic_residual(m)?,
        });
    }
    let spec = eigs(m, tol)?;
    let loose = tol.sqrt();
    for e in &spec.eigenvalues {
        if (e.value.norm() - 1.0).abs() > loose || !e.is_semisimple() {
            return Ok(StabilityVerdict::Unstable { witness: e.value });
        }
    }
    for e in &spec.eigenvalues {
        if e.value.im.abs() <= loose {
            return Ok(StabilityVerdict::StableNotStrong { witness: e.value });
        }
        let (p, q) = krein_signature(m, e.value, tol)?;
        if p > 0 && q > 0 {
            return Ok(StabilityVerdict::StableNotStrong { witness: e.value });
        }
    }
    Ok(StabilityVerdict::StronglyStable)
}
