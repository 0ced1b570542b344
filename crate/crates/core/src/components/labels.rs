use std::fmt;

use serde::{Deserialize, Serialize};

use super::normal_form::{normal_form, NormalForm};
use crate::base::{Region, Stratum, WallBranch};
use crate::error::Result;
use crate::signatures::Sign;
use crate::wonenburger::WonenburgerTriple;

/// The two quotients: triples modulo `GL₂(ℝ)`, and symplectic matrices
/// modulo symplectic conjugation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Quotient {
    #[serde(rename = "spi")]
    SpI,
    #[serde(rename = "sp4")]
    Sp4,
}

impl Quotient {
    pub fn name(self) -> &'static str {
        match self {
            Quotient::SpI => "spi",
            Quotient::Sp4 => "sp4",
        }
    }
}

impl fmt::Display for Quotient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Quotient {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "spi" => Ok(Quotient::SpI),
            "sp4" => Ok(Quotient::Sp4),
            _ => Err(format!("unknown quotient '{s}' (expected spi or sp4)")),
        }
    }
}

/// A sheet of a quotient over a stratum.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SheetLabel {
    pub stratum: Stratum,
    pub decoration: Vec<Sign>,
}

impl SheetLabel {
    pub fn new(stratum: Stratum, decoration: Vec<Sign>) -> Self {
        Self { stratum, decoration }
    }
}

impl fmt::Display for SheetLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.stratum.code())?;
        if !self.decoration.is_empty() {
            let d: Vec<String> = self.decoration.iter().map(|s| s.to_string()).collect();
            write!(f, "({})", d.join(","))?;
        }
        Ok(())
    }
}

/// Number of sheets over a stratum in the triple quotient and in the
/// symplectic quotient.
pub fn fiber_size(s: Stratum) -> (usize, usize) {
    (sheets(s, Quotient::SpI).len(), sheets(s, Quotient::Sp4).len())
}

const PAIRS: [[Sign; 2]; 4] = [
    [Sign::Positive, Sign::Positive],
    [Sign::Positive, Sign::Negative],
    [Sign::Negative, Sign::Positive],
    [Sign::Negative, Sign::Negative],
];

fn spi_sheets(s: Stratum) -> Vec<Vec<Sign>> {
    use Sign::*;
    match s {
        Stratum::Region(Region::N) | Stratum::Singular(_) => vec![Vec::new()],
        Stratum::Region(_) => PAIRS.iter().map(|p| p.to_vec()).collect(),
        Stratum::Wall(w) => match w {
            WallBranch::D1 | WallBranch::D2 | WallBranch::D3 => vec![
                vec![Positive, Positive],
                vec![Positive, Negative],
                vec![Negative, Negative],
            ],
            // other eigenvalue below the unit one
            WallBranch::P1 | WallBranch::P2 | WallBranch::M1 => {
                vec![vec![Positive, Zero], vec![Negative, Zero]]
            }
            WallBranch::P3 | WallBranch::M2 | WallBranch::M3 => {
                vec![vec![Zero, Positive], vec![Zero, Negative]]
            }
        },
    }
}

/// All sheets over a stratum, in a fixed order.
pub fn sheets(s: Stratum, q: Quotient) -> Vec<SheetLabel> {
    let mut out: Vec<SheetLabel> = Vec::new();
    for d in spi_sheets(s) {
        let l = SheetLabel::new(s, d);
        let l = match q {
            Quotient::SpI => l,
            Quotient::Sp4 => project(&l),
        };
        if !out.contains(&l) {
            out.push(l);
        }
    }
    out
}

/// Image of a triple-quotient sheet in the symplectic quotient: signs of
/// elliptic eigenvalues survive as Krein types, hyperbolic signs are lost.
pub fn project(l: &SheetLabel) -> SheetLabel {
    use Region::*;
    let keep: &[usize] = match l.stratum {
        Stratum::Region(E2) => &[0, 1],
        Stratum::Region(EHPlus) => &[0],
        Stratum::Region(EHMinus) => &[1],
        Stratum::Wall(WallBranch::D2) => &[0, 1],
        // the nonzero entry is the elliptic eigenvalue
        Stratum::Wall(WallBranch::P2) => &[0],
        Stratum::Wall(WallBranch::M2) => &[1],
        _ => &[],
    };
    SheetLabel::new(
        l.stratum,
        keep.iter().filter_map(|&i| l.decoration.get(i).copied()).collect(),
    )
}

/// SpI decoration carried by a normal form.
pub fn label_of(nf: &NormalForm) -> SheetLabel {
    let decoration = match nf.stratum {
        Stratum::Region(Region::N) | Stratum::Singular(_) => Vec::new(),
        _ => nf.signs.clone(),
    };
    SheetLabel::new(nf.stratum, decoration)
}

pub fn quotient_label(t: &WonenburgerTriple, q: Quotient, tol: f64) -> Result<SheetLabel> {
    let l = label_of(&normal_form(t, tol)?);
    Ok(match q {
        Quotient::SpI => l,
        Quotient::Sp4 => project(&l),
    })
}

/// Sheets made of strongly stable matrices: every elliptic pair of
/// eigenvalues, and the double elliptic eigenvalue with definite `B`.
pub fn is_strongly_stable_sheet(l: &SheetLabel) -> bool {
    match l.stratum {
        Stratum::Region(Region::E2) => true,
        Stratum::Wall(WallBranch::D2) => {
            l.decoration.len() == 2 && l.decoration[0] == l.decoration[1]
        }
        _ => false,
    }
}
