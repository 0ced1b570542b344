//! The plane of `(tr A, det A)`: walls, regions, singular points, resonance
//! pencils and the planar model.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mat::check_tol;
use crate::wonenburger::WonenburgerTriple;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BasePoint {
    pub tau: f64,
    pub delta: f64,
}

impl BasePoint {
    pub fn new(tau: f64, delta: f64) -> Self {
        Self { tau, delta }
    }

    /// Half-width of the wall band around this point.
    pub fn band(&self, tol: f64) -> f64 {
        tol * (1.0 + self.tau.abs() + self.delta.abs())
    }
}

/// `(tr A, det A)` of a spatial triple.
pub fn base_from_triple(t: &WonenburgerTriple) -> Result<BasePoint> {
    if t.n() != 2 {
        return Err(Error::WrongDimension {
            expected: 2,
            found: t.n(),
        });
    }
    Ok(BasePoint::new(t.a().trace(), t.a().det()))
}

/// The three curves bounding the regions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Wall {
    /// `δ = τ²/4`: double eigenvalue of `A`.
    Discriminant,
    /// `δ = τ - 1`: eigenvalue `1`.
    PlusOne,
    /// `δ = -τ - 1`: eigenvalue `-1`.
    MinusOne,
}

impl Wall {
    pub const ALL: [Wall; 3] = [Wall::Discriminant, Wall::PlusOne, Wall::MinusOne];

    /// `δ - wall(τ)`; positive above the wall.
    pub fn residual(self, p: BasePoint) -> f64 {
        match self {
            Wall::Discriminant => p.delta - 0.25 * p.tau * p.tau,
            Wall::PlusOne => p.delta - (p.tau - 1.0),
            Wall::MinusOne => p.delta - (-p.tau - 1.0),
        }
    }

    pub fn contains(self, p: BasePoint, tol: f64) -> bool {
        self.residual(p).abs() <= p.band(tol)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Region {
    /// Two elliptic eigenvalues of `A`.
    E2,
    /// One elliptic eigenvalue and one above `1`.
    EHPlus,
    /// One elliptic eigenvalue and one below `-1`.
    EHMinus,
    /// Both eigenvalues above `1`.
    HPlusPlus,
    /// One eigenvalue below `-1` and one above `1`.
    HMinusPlus,
    /// Both eigenvalues below `-1`.
    HMinusMinus,
    /// Complex conjugate eigenvalues.
    N,
}

impl Region {
    pub const ALL: [Region; 7] = [
        Region::E2,
        Region::EHPlus,
        Region::EHMinus,
        Region::HPlusPlus,
        Region::HMinusPlus,
        Region::HMinusMinus,
        Region::N,
    ];
}

/// Connected pieces of the walls with the singular points removed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum WallBranch {
    /// Discriminant wall, `τ < -2`.
    D1,
    /// Discriminant wall, `-2 < τ < 2`.
    D2,
    /// Discriminant wall, `τ > 2`.
    D3,
    /// `δ = τ - 1`, `τ < 0`.
    P1,
    /// `δ = τ - 1`, `0 < τ < 2`.
    P2,
    /// `δ = τ - 1`, `τ > 2`.
    P3,
    /// `δ = -τ - 1`, `τ < -2`.
    M1,
    /// `δ = -τ - 1`, `-2 < τ < 0`.
    M2,
    /// `δ = -τ - 1`, `τ > 0`.
    M3,
}

impl WallBranch {
    pub const ALL: [WallBranch; 9] = [
        WallBranch::D1,
        WallBranch::D2,
        WallBranch::D3,
        WallBranch::P1,
        WallBranch::P2,
        WallBranch::P3,
        WallBranch::M1,
        WallBranch::M2,
        WallBranch::M3,
    ];

    pub fn wall(self) -> Wall {
        use WallBranch::*;
        match self {
            D1 | D2 | D3 => Wall::Discriminant,
            P1 | P2 | P3 => Wall::PlusOne,
            M1 | M2 | M3 => Wall::MinusOne,
        }
    }

    /// Open `τ`-interval of the branch.
    pub fn tau_range(self) -> (f64, f64) {
        use WallBranch::*;
        let inf = f64::INFINITY;
        match self {
            D1 | M1 => (-inf, -2.0),
            D2 => (-2.0, 2.0),
            D3 | P3 => (2.0, inf),
            P1 => (-inf, 0.0),
            P2 => (0.0, 2.0),
            M2 => (-2.0, 0.0),
            M3 => (0.0, inf),
        }
    }

    fn from_tau(wall: Wall, tau: f64) -> Self {
        use WallBranch::*;
        match wall {
            Wall::Discriminant if tau < -2.0 => D1,
            Wall::Discriminant if tau <= 2.0 => D2,
            Wall::Discriminant => D3,
            Wall::PlusOne if tau < 0.0 => P1,
            Wall::PlusOne if tau <= 2.0 => P2,
            Wall::PlusOne => P3,
            Wall::MinusOne if tau < -2.0 => M1,
            Wall::MinusOne if tau <= 0.0 => M2,
            Wall::MinusOne => M3,
        }
    }

    /// Branches of `Γ₁` and `Γ₋₁` whose other eigenvalue is elliptic.
    pub fn is_elliptic_unit_wall(self) -> bool {
        matches!(self, WallBranch::P2 | WallBranch::M2)
    }

    /// A point on the branch, used for sampling and drawing.
    pub fn sample_point(self, s: f64) -> BasePoint {
        let (lo, hi) = self.tau_range();
        let tau = match (lo.is_finite(), hi.is_finite()) {
            (true, true) => lo + (hi - lo) * s,
            (true, false) => lo + 3.0 * s,
            _ => hi - 3.0 * s,
        };
        let delta = match self.wall() {
            Wall::Discriminant => 0.25 * tau * tau,
            Wall::PlusOne => tau - 1.0,
            Wall::MinusOne => -tau - 1.0,
        };
        BasePoint::new(tau, delta)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SingularPoint {
    /// `(2, 1)`, the class of the identity.
    Identity,
    /// `(-2, 1)`, the class of minus the identity.
    MinusIdentity,
    /// `(0, -1)`, eigenvalues `1` and `-1`.
    Mixed,
}

impl SingularPoint {
    pub const ALL: [SingularPoint; 3] = [
        SingularPoint::Identity,
        SingularPoint::MinusIdentity,
        SingularPoint::Mixed,
    ];

    pub fn point(self) -> BasePoint {
        match self {
            SingularPoint::Identity => BasePoint::new(2.0, 1.0),
            SingularPoint::MinusIdentity => BasePoint::new(-2.0, 1.0),
            SingularPoint::Mixed => BasePoint::new(0.0, -1.0),
        }
    }
}

/// Region, wall branch or singular point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Stratum {
    Region(Region),
    Wall(WallBranch),
    Singular(SingularPoint),
}

impl Stratum {
    pub fn all() -> Vec<Stratum> {
        Region::ALL
            .iter()
            .map(|&r| Stratum::Region(r))
            .chain(WallBranch::ALL.iter().map(|&w| Stratum::Wall(w)))
            .chain(SingularPoint::ALL.iter().map(|&s| Stratum::Singular(s)))
            .collect()
    }

    /// Strata over `Γ₁ ∪ Γ₋₁`, where an eigenvalue `±1` appears.
    pub fn is_bifurcation_locus(self) -> bool {
        match self {
            Stratum::Region(_) => false,
            Stratum::Wall(w) => w.wall() != Wall::Discriminant,
            Stratum::Singular(_) => true,
        }
    }

    /// Plain-text identifier, stable across releases.
    pub fn code(self) -> &'static str {
        use Region::*;
        use WallBranch::*;
        match self {
            Stratum::Region(r) => match r {
                E2 => "E2",
                EHPlus => "EH+",
                EHMinus => "EH-",
                HPlusPlus => "H++",
                HMinusPlus => "H-+",
                HMinusMinus => "H--",
                N => "N",
            },
            Stratum::Wall(w) => match w {
                D1 => "Gd1",
                D2 => "Gd2",
                D3 => "Gd3",
                P1 => "G+1_1",
                P2 => "G+1_2",
                P3 => "G+1_3",
                M1 => "G-1_1",
                M2 => "G-1_2",
                M3 => "G-1_3",
            },
            Stratum::Singular(s) => match s {
                SingularPoint::Identity => "(2,1)",
                SingularPoint::MinusIdentity => "(-2,1)",
                SingularPoint::Mixed => "(0,-1)",
            },
        }
    }

    /// Label with superscripts, as used on diagrams.
    pub fn pretty(self) -> &'static str {
        use Region::*;
        use WallBranch::*;
        match self {
            Stratum::Region(r) => match r {
                E2 => "E²",
                EHPlus => "EH⁺",
                EHMinus => "EH⁻",
                HPlusPlus => "H⁺⁺",
                HMinusPlus => "H⁻⁺",
                HMinusMinus => "H⁻⁻",
                N => "N",
            },
            Stratum::Wall(w) => match w {
                D1 => "Γ_d¹",
                D2 => "Γ_d²",
                D3 => "Γ_d³",
                P1 => "Γ₁¹",
                P2 => "Γ₁²",
                P3 => "Γ₁³",
                M1 => "Γ₋₁¹",
                M2 => "Γ₋₁²",
                M3 => "Γ₋₁³",
            },
            Stratum::Singular(_) => self.code(),
        }
    }
}

impl fmt::Display for Stratum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for Stratum {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Stratum::all()
            .into_iter()
            .find(|x| x.code() == s)
            .ok_or_else(|| format!("unknown stratum {s:?}"))
    }
}

impl TryFrom<String> for Stratum {
    type Error = String;

    fn try_from(s: String) -> std::result::Result<Self, String> {
        s.parse()
    }
}

impl From<Stratum> for String {
    fn from(s: Stratum) -> String {
        s.code().to_string()
    }
}

/// Stratum together with a flag for wall points close to a singular point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub stratum: Stratum,
    pub singular_adjacent: bool,
}

/// Stratum of a base point. Singular points win over walls, walls over
/// regions; membership is decided within `tol·(1 + |τ| + |δ|)`.
pub fn classify_base(p: BasePoint, tol: f64) -> Stratum {
    classify_detailed(p, tol).stratum
}

pub fn classify_detailed(p: BasePoint, tol: f64) -> Classification {
    let on_d = Wall::Discriminant.contains(p, tol);
    let on_p = Wall::PlusOne.contains(p, tol);
    let on_m = Wall::MinusOne.contains(p, tol);
    let singular = match (on_d, on_p, on_m) {
        (_, true, true) => Some(SingularPoint::Mixed),
        (true, true, false) => Some(SingularPoint::Identity),
        (true, false, true) => Some(SingularPoint::MinusIdentity),
        _ => None,
    };
    if let Some(s) = singular {
        return Classification {
            stratum: Stratum::Singular(s),
            singular_adjacent: false,
        };
    }
    let wall = if on_d {
        Some(Wall::Discriminant)
    } else if on_p {
        Some(Wall::PlusOne)
    } else if on_m {
        Some(Wall::MinusOne)
    } else {
        None
    };
    if let Some(w) = wall {
        let near = SingularPoint::ALL.iter().any(|s| {
            let q = s.point();
            let d = ((p.tau - q.tau).powi(2) + (p.delta - q.delta).powi(2)).sqrt();
            d <= 10.0 * p.band(tol).sqrt()
        });
        return Classification {
            stratum: Stratum::Wall(WallBranch::from_tau(w, p.tau)),
            singular_adjacent: near,
        };
    }
    Classification {
        stratum: Stratum::Region(open_region(p)),
        singular_adjacent: false,
    }
}

/// Region of a point off all walls, by counting roots of
/// `t² - τt + δ` below `-1`, inside `(-1, 1)` and above `1`.
fn open_region(p: BasePoint) -> Region {
    if Wall::Discriminant.residual(p) > 0.0 {
        return Region::N;
    }
    let p1 = 1.0 - p.tau + p.delta;
    let m1 = 1.0 + p.tau + p.delta;
    let vertex = 0.5 * p.tau;
    let above = if p1 < 0.0 {
        1
    } else if vertex > 1.0 {
        2
    } else {
        0
    };
    let below = if m1 < 0.0 {
        1
    } else if vertex < -1.0 {
        2
    } else {
        0
    };
    match (below, above) {
        (0, 0) => Region::E2,
        (0, 1) => Region::EHPlus,
        (1, 0) => Region::EHMinus,
        (0, 2) => Region::HPlusPlus,
        (1, 1) => Region::HMinusPlus,
        (2, 0) => Region::HMinusMinus,
        // unreachable off the walls; fall back on the nearest sensible label
        _ => Region::HMinusPlus,
    }
}

fn real_part(mu: Complex64) -> Option<f64> {
    (mu.im.abs() <= 1e-12 * (1.0 + mu.re.abs())).then_some(mu.re)
}

/// Kind of an eigenvalue of `A`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum MuKind {
    Elliptic,
    Above,
    Below,
    PlusOne,
    MinusOne,
    Complex,
}

fn allowed_kinds(s: Stratum) -> &'static [MuKind] {
    use MuKind::*;
    use Region::*;
    use WallBranch::*;
    match s {
        Stratum::Region(r) => match r {
            E2 => &[Elliptic],
            EHPlus => &[Elliptic, Above],
            EHMinus => &[Elliptic, Below],
            HPlusPlus => &[Above],
            HMinusPlus => &[Above, Below],
            HMinusMinus => &[Below],
            N => &[Complex],
        },
        Stratum::Wall(w) => match w {
            D1 => &[Below],
            D2 => &[Elliptic],
            D3 => &[Above],
            P1 => &[PlusOne, Below],
            P2 => &[PlusOne, Elliptic],
            P3 => &[PlusOne, Above],
            M1 => &[MinusOne, Below],
            M2 => &[MinusOne, Elliptic],
            M3 => &[MinusOne, Above],
        },
        Stratum::Singular(sp) => match sp {
            SingularPoint::Identity => &[PlusOne],
            SingularPoint::MinusIdentity => &[MinusOne],
            SingularPoint::Mixed => &[PlusOne, MinusOne],
        },
    }
}

/// Eigenvalues of `M` over an eigenvalue `μ` of `A`, from `λ + 1/λ = 2μ`.
///
/// Elliptic `μ` gives `μ ± i√(1-μ²)`, `μ > 1` gives `μ + √(μ²-1)` and its
/// inverse, `μ < -1` gives `μ - √(μ²-1)` and its inverse, and nonreal `μ`
/// gives `λ = μ + √(μ²-1)` (principal root), `1/λ` and their conjugates.
pub fn eigen_lift(mu: Complex64, stratum: Stratum) -> Result<Vec<Complex64>> {
    let unit_band = 1e-9;
    let kind = match real_part(mu) {
        None => MuKind::Complex,
        Some(m) if (m - 1.0).abs() <= unit_band => MuKind::PlusOne,
        Some(m) if (m + 1.0).abs() <= unit_band => MuKind::MinusOne,
        Some(m) if m.abs() < 1.0 => MuKind::Elliptic,
        Some(m) if m > 1.0 => MuKind::Above,
        Some(_) => MuKind::Below,
    };
    if !allowed_kinds(stratum).contains(&kind) {
        return Err(Error::InconsistentRegion {
            mu: format!("{mu}"),
            stratum,
        });
    }
    let one = Complex64::new(1.0, 0.0);
    Ok(match kind {
        MuKind::Elliptic => {
            let lam = Complex64::new(mu.re, (1.0 - mu.re * mu.re).sqrt());
            vec![lam, lam.conj()]
        }
        MuKind::Above => {
            let lam = mu.re + (mu.re * mu.re - 1.0).sqrt();
            vec![lam.into(), (1.0 / lam).into()]
        }
        MuKind::Below => {
            let lam = mu.re - (mu.re * mu.re - 1.0).sqrt();
            vec![lam.into(), (1.0 / lam).into()]
        }
        MuKind::PlusOne => vec![one, one],
        MuKind::MinusOne => vec![-one, -one],
        MuKind::Complex => {
            let lam = mu + (mu * mu - 1.0).sqrt();
            let inv = 1.0 / lam;
            vec![lam, inv, lam.conj(), inv.conj()]
        }
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum PencilKind {
    /// Eigenvalue `e^{2πiθ}`, `θ ∈ [0, 1)` in turns.
    Elliptic { theta: f64 },
    /// Real eigenvalue `λ` with `|λ| > 1`.
    Hyperbolic { lambda: f64 },
    /// Eigenvalue `e^{2πiℓ/k}` with `gcd(k, ℓ) = 1`.
    Resonance { k: u32, l: u32 },
}

/// The line `δ = aτ - a²` of base points whose `A` has eigenvalue `a`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PencilLine {
    pub kind: PencilKind,
    pub slope: f64,
}

impl PencilLine {
    pub fn intercept(&self) -> f64 {
        -self.slope * self.slope
    }

    /// `τ` of the tangency point with the discriminant wall.
    pub fn tangency_tau(&self) -> f64 {
        2.0 * self.slope
    }

    pub fn delta_at(&self, tau: f64) -> f64 {
        self.slope * tau + self.intercept()
    }

    /// `δ - (aτ - a²)`.
    pub fn residual(&self, p: BasePoint) -> f64 {
        p.delta - self.delta_at(p.tau)
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn pencil_line(kind: PencilKind) -> Result<PencilLine> {
    let slope = match kind {
        PencilKind::Elliptic { theta } => {
            if !(0.0..1.0).contains(&theta) {
                return Err(Error::InvalidPencil(format!("θ = {theta} outside [0, 1)")));
            }
            (std::f64::consts::TAU * theta).cos()
        }
        PencilKind::Hyperbolic { lambda } => {
            if !lambda.is_finite() || lambda.abs() <= 1.0 {
                return Err(Error::DegenerateLambda(lambda));
            }
            0.5 * (lambda + 1.0 / lambda)
        }
        PencilKind::Resonance { k, l } => {
            if k == 0 || l >= k || gcd(k, l) != 1 {
                return Err(Error::InvalidPencil(format!(
                    "resonance needs 0 ≤ ℓ < k and gcd(k, ℓ) = 1, got k = {k}, ℓ = {l}"
                )));
            }
            (std::f64::consts::TAU * l as f64 / k as f64).cos()
        }
    };
    Ok(PencilLine { kind, slope })
}

/// Resonance lines `(k, ℓ)` with `3 ≤ k ≤ k_max` and `1 ≤ ℓ < k/2`, coprime.
pub fn resonance_pencil(k_max: u32) -> Vec<(u32, u32, PencilLine)> {
    let mut out = Vec::new();
    for k in 3..=k_max {
        for l in 1..k {
            if 2 * l >= k || gcd(k, l) != 1 {
                continue;
            }
            let line = pencil_line(PencilKind::Resonance { k, l }).expect("valid resonance");
            out.push((k, l, line));
        }
    }
    out
}

/// `(a, b) ↦ (a + b, ab)`: base point of a product of planar classes.
pub fn product_map(a: f64, b: f64) -> BasePoint {
    BasePoint::new(a + b, a * b)
}

pub fn involution(a: f64, b: f64) -> (f64, f64) {
    (b, a)
}

/// A point in one of the planar charts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum PlanarClass {
    /// `e^{iθ}` with `θ ∈ (-π, π)`.
    Angle { theta: f64 },
    /// Hyperbola point `(±cosh u, sinh u)`; `x` carries the sign.
    Hyperbola { x: f64, u: f64 },
    /// Real eigenvalue `r` with `|r| > 1`.
    Ray { r: f64 },
    /// Parabolic boundary point `±1`.
    Boundary { value: f64 },
}

/// The planar triple seen in both quotients and on the base line.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlanarModel {
    pub spi: PlanarClass,
    pub sp2: PlanarClass,
    pub base: f64,
}

pub fn planar_model(t: &WonenburgerTriple, tol: f64) -> Result<PlanarModel> {
    check_tol(tol)?;
    if t.n() != 1 {
        return Err(Error::WrongDimension {
            expected: 1,
            found: t.n(),
        });
    }
    let (a, b) = (t.a()[(0, 0)], t.b()[(0, 0)]);
    let gap = a * a - 1.0;
    if gap.abs() <= tol * (1.0 + a * a) {
        let value = if a > 0.0 { 1.0 } else { -1.0 };
        let class = PlanarClass::Boundary { value };
        return Ok(PlanarModel {
            spi: class,
            sp2: class,
            base: a,
        });
    }
    if gap < 0.0 {
        let s = if b > 0.0 { -1.0 } else { 1.0 };
        let theta = (s * (-gap).sqrt()).atan2(a);
        let class = PlanarClass::Angle { theta };
        return Ok(PlanarModel {
            spi: class,
            sp2: class,
            base: a,
        });
    }
    // GL₁ rescales B by ε² and C by ε⁻²; normalize to |B| = |C| = √(A² - 1)
    let bn = b.signum() * gap.sqrt();
    let u = bn.asinh();
    let sign = a.signum();
    Ok(PlanarModel {
        spi: PlanarClass::Hyperbola {
            x: sign * u.cosh(),
            u,
        },
        sp2: PlanarClass::Ray {
            r: sign * u.abs().exp(),
        },
        base: a,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mat::SquareMatrix;
    use std::f64::consts::PI;

    const TOL: f64 = 1e-9;

    fn region(tau: f64, delta: f64) -> Stratum {
        classify_base(BasePoint::new(tau, delta), TOL)
    }

    #[test]
    fn labeled_points() {
        assert_eq!(region(0.0, -0.5), Stratum::Region(Region::E2));
        assert_eq!(region(3.0, 1.0), Stratum::Region(Region::EHPlus));
        assert_eq!(region(0.0, -1.0), Stratum::Singular(SingularPoint::Mixed));
        assert_eq!(region(0.0, 1.0), Stratum::Region(Region::N));
        assert_eq!(region(3.0, 2.2), Stratum::Region(Region::HPlusPlus));
    }

    #[test]
    fn remaining_regions() {
        assert_eq!(region(-3.0, 1.0), Stratum::Region(Region::EHMinus));
        assert_eq!(region(0.0, -3.0), Stratum::Region(Region::HMinusPlus));
        assert_eq!(region(-3.0, 2.2), Stratum::Region(Region::HMinusMinus));
    }

    #[test]
    fn walls_and_singular_points() {
        assert_eq!(region(2.0, 1.0), Stratum::Singular(SingularPoint::Identity));
        assert_eq!(region(-2.0, 1.0), Stratum::Singular(SingularPoint::MinusIdentity));
        assert_eq!(region(1.0, 0.25), Stratum::Wall(WallBranch::D2));
        assert_eq!(region(4.0, 4.0), Stratum::Wall(WallBranch::D3));
        assert_eq!(region(-4.0, 4.0), Stratum::Wall(WallBranch::D1));
        assert_eq!(region(1.0, 0.0), Stratum::Wall(WallBranch::P2));
        assert_eq!(region(-1.0, -2.0), Stratum::Wall(WallBranch::P1));
        assert_eq!(region(3.0, 2.0), Stratum::Wall(WallBranch::P3));
        assert_eq!(region(-1.0, 0.0), Stratum::Wall(WallBranch::M2));
        assert_eq!(region(-3.0, 2.0), Stratum::Wall(WallBranch::M1));
        assert_eq!(region(1.0, -2.0), Stratum::Wall(WallBranch::M3));
    }

    #[test]
    fn singular_adjacent_flag() {
        let c = classify_detailed(BasePoint::new(2.0 + 3e-4, 0.25 * (2.0 + 3e-4f64).powi(2)), TOL);
        assert_eq!(c.stratum, Stratum::Wall(WallBranch::D3));
        assert!(c.singular_adjacent);
        assert!(!classify_detailed(BasePoint::new(1.0, 0.25), TOL).singular_adjacent);
    }

    #[test]
    fn base_of_triples() {
        let (t1, t2) = (PI / 3.0, PI / 4.0);
        let t = WonenburgerTriple::new(
            SquareMatrix::from_diag(&[t1.cos(), t2.cos()]),
            SquareMatrix::from_diag(&[-t1.sin(), -t2.sin()]),
            SquareMatrix::from_diag(&[t1.sin(), t2.sin()]),
            TOL,
        )
        .unwrap();
        let p = base_from_triple(&t).unwrap();
        let s2 = 2f64.sqrt() / 2.0;
        assert!((p.tau - (0.5 + s2)).abs() < 1e-15);
        assert!((p.delta - 0.5 * s2).abs() < 1e-15);
        let id = base_from_triple(&WonenburgerTriple::identity(2)).unwrap();
        assert_eq!(id, BasePoint::new(2.0, 1.0));
        assert!(matches!(
            base_from_triple(&WonenburgerTriple::identity(1)),
            Err(Error::WrongDimension { .. })
        ));
    }

    #[test]
    fn lift_examples() {
        let up = eigen_lift(1.25.into(), Stratum::Region(Region::HPlusPlus)).unwrap();
        assert!((up[0] - 2.0).norm() < 1e-15 && (up[1] - 0.5).norm() < 1e-15);
        let down = eigen_lift((-1.25).into(), Stratum::Region(Region::HMinusMinus)).unwrap();
        assert!((down[0] + 2.0).norm() < 1e-15 && (down[1] + 0.5).norm() < 1e-15);
        let ell = eigen_lift(0.5.into(), Stratum::Region(Region::E2)).unwrap();
        assert!((ell[0] - Complex64::from_polar(1.0, PI / 3.0)).norm() < 1e-15);
        assert!((ell[1] - Complex64::from_polar(1.0, -PI / 3.0)).norm() < 1e-15);
    }

    #[test]
    fn lift_rejects_inconsistent_region() {
        assert!(matches!(
            eigen_lift(1.25.into(), Stratum::Region(Region::E2)),
            Err(Error::InconsistentRegion { .. })
        ));
        assert!(eigen_lift(Complex64::new(0.3, 0.2), Stratum::Region(Region::HPlusPlus)).is_err());
    }

    #[test]
    fn complex_lift_quadruple() {
        let mu = Complex64::new(0.3, 1.1);
        let l = eigen_lift(mu, Stratum::Region(Region::N)).unwrap();
        for z in &l {
            let m = (z + 1.0 / z) * 0.5;
            assert!((m - mu).norm() < 1e-14 || (m - mu.conj()).norm() < 1e-14);
        }
    }

    #[test]
    fn pencil_examples() {
        let r = pencil_line(PencilKind::Resonance { k: 3, l: 1 }).unwrap();
        assert!((r.slope + 0.5).abs() < 1e-15);
        assert!((r.intercept() + 0.25).abs() < 1e-15);
        let e = pencil_line(PencilKind::Elliptic { theta: 0.25 }).unwrap();
        assert!(e.slope.abs() < 1e-15 && e.intercept().abs() < 1e-30);
        let g1 = pencil_line(PencilKind::Resonance { k: 1, l: 0 }).unwrap();
        assert_eq!((g1.slope, g1.intercept()), (1.0, -1.0));
        assert!(matches!(
            pencil_line(PencilKind::Hyperbolic { lambda: 0.5 }),
            Err(Error::DegenerateLambda(_))
        ));
        let h = pencil_line(PencilKind::Hyperbolic { lambda: 2.0 }).unwrap();
        assert_eq!(h.slope, 1.25);
        assert!(pencil_line(PencilKind::Resonance { k: 4, l: 2 }).is_err());
        assert!(pencil_line(PencilKind::Elliptic { theta: 1.0 }).is_err());
    }

    #[test]
    fn resonance_list() {
        let ks: Vec<(u32, u32)> = resonance_pencil(6).iter().map(|x| (x.0, x.1)).collect();
        assert_eq!(ks, vec![(3, 1), (4, 1), (5, 1), (5, 2), (6, 1)]);
    }

    #[test]
    fn product_map_examples() {
        assert_eq!(product_map(2.0, 3.0), BasePoint::new(5.0, 6.0));
        let d = product_map(0.3, 0.3);
        assert_eq!(classify_base(d, TOL), Stratum::Wall(WallBranch::D2));
        let p = product_map(0.5, -2.0);
        assert_eq!(p, BasePoint::new(-1.5, -1.0));
        assert_eq!(classify_base(p, TOL), Stratum::Region(Region::EHMinus));
    }

    fn planar(a: f64, b: f64, c: f64) -> PlanarModel {
        let t = WonenburgerTriple::new(
            SquareMatrix::from_diag(&[a]),
            SquareMatrix::from_diag(&[b]),
            SquareMatrix::from_diag(&[c]),
            TOL,
        )
        .unwrap();
        planar_model(&t, TOL).unwrap()
    }

    #[test]
    fn planar_elliptic() {
        let th = 1.1_f64;
        let m = planar(th.cos(), -th.sin(), th.sin());
        match m.sp2 {
            PlanarClass::Angle { theta } => assert!((theta - th).abs() < 1e-15),
            other => panic!("{other:?}"),
        }
        assert_eq!(m.base, th.cos());
    }

    #[test]
    fn planar_hyperbolic() {
        let u = 0.8_f64;
        let m = planar(u.cosh(), u.sinh(), u.sinh());
        match m.spi {
            PlanarClass::Hyperbola { x, u: got } => {
                assert!((x - u.cosh()).abs() < 1e-15);
                assert!((got - u).abs() < 1e-14);
            }
            other => panic!("{other:?}"),
        }
        let neg = planar(u.cosh(), -u.sinh(), -u.sinh());
        assert_eq!(m.sp2, neg.sp2);
        match m.sp2 {
            PlanarClass::Ray { r } => assert!((r - u.exp()).abs() < 1e-14),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn planar_identity_is_boundary() {
        let m = planar(1.0, 0.0, 0.0);
        assert_eq!(m.spi, PlanarClass::Boundary { value: 1.0 });
    }

    #[test]
    fn stratum_codes_roundtrip() {
        for s in Stratum::all() {
            assert_eq!(s.code().parse::<Stratum>().unwrap(), s);
        }
        assert_eq!(Stratum::all().len(), 19);
    }
}
