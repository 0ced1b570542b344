use serde::{Deserialize, Serialize};

use super::graph::component_graph;
use super::labels::{quotient_label, Quotient, SheetLabel};
use crate::base::{base_from_triple, resonance_pencil, BasePoint, Wall};
use crate::error::{Error, Result};
use crate::mat::check_tol;
use crate::signatures::{stability_check, StabilityVerdict};
use crate::wonenburger::WonenburgerTriple;

/// Default largest resonance order tracked.
pub const DEFAULT_K_MAX: u32 = 6;

/// Consecutive base points farther apart than this many wall bands draw a
/// sampling warning.
pub const DENSITY_FACTOR: f64 = 1e6;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PathSample {
    pub parameter: f64,
    pub base: BasePoint,
    pub label: SheetLabel,
    pub stability: StabilityVerdict,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum EventKind {
    /// Eigenvalue `1` passes through: bifurcation.
    PlusOneCrossing,
    /// Eigenvalue `-1` passes through: period doubling.
    MinusOneCrossing,
    /// The family touches `Γ₁` or `Γ₋₁` without crossing.
    UnitContact { wall: Wall },
    /// Eigenvalues of `A` collide and change type.
    DiscriminantTransition,
    /// The family touches the discriminant without crossing.
    DiscriminantContact,
    /// A `k`-th root of unity appears.
    Resonance { k: u32, l: u32 },
    StabilityTransition {
        from: StabilityClass,
        to: StabilityClass,
    },
}

impl EventKind {
    pub fn name(&self) -> String {
        match self {
            EventKind::PlusOneCrossing => "plus-one-crossing".into(),
            EventKind::MinusOneCrossing => "minus-one-crossing".into(),
            EventKind::UnitContact { wall } => match wall {
                Wall::PlusOne => "plus-one-contact".into(),
                _ => "minus-one-contact".into(),
            },
            EventKind::DiscriminantTransition => "discriminant-transition".into(),
            EventKind::DiscriminantContact => "discriminant-contact".into(),
            EventKind::Resonance { k, l } => format!("resonance-{k}-{l}"),
            EventKind::StabilityTransition { from, to } => {
                format!("stability-{}-to-{}", from.name(), to.name())
            }
        }
    }

    /// Events that put the family on the bifurcation locus.
    pub fn is_bifurcation(&self) -> bool {
        matches!(
            self,
            EventKind::PlusOneCrossing | EventKind::MinusOneCrossing | EventKind::UnitContact { .. }
        )
    }
}

/// [`StabilityVerdict`] without its witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StabilityClass {
    Unstable,
    StableNotStrong,
    StronglyStable,
}

impl StabilityClass {
    pub fn name(self) -> &'static str {
        match self {
            StabilityClass::Unstable => "unstable",
            StabilityClass::StableNotStrong => "stable-not-strong",
            StabilityClass::StronglyStable => "strongly-stable",
        }
    }
}

impl From<&StabilityVerdict> for StabilityClass {
    fn from(v: &StabilityVerdict) -> Self {
        match v {
            StabilityVerdict::Unstable { .. } => StabilityClass::Unstable,
            StabilityVerdict::StableNotStrong { .. } => StabilityClass::StableNotStrong,
            StabilityVerdict::StronglyStable => StabilityClass::StronglyStable,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PathEvent {
    pub parameter: f64,
    /// Index of the first sample of the segment holding the event.
    pub segment: usize,
    #[serde(flatten)]
    pub kind: EventKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum PathVerdict {
    SingleComponent,
    /// Index into the event list of the first bifurcation.
    Obstructed { event: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PathReport {
    pub quotient: Quotient,
    pub k_max: u32,
    pub samples: Vec<PathSample>,
    pub events: Vec<PathEvent>,
    pub verdict: PathVerdict,
    pub warnings: Vec<String>,
}

/// Crossing kind, contact kind and residual of a tracked curve.
type Curve = (EventKind, EventKind, Box<dyn Fn(BasePoint) -> f64>);

/// Sign of a residual with zeros inside the wall band.
fn band_sign(r: f64, band: f64) -> i8 {
    if r.abs() <= band {
        0
    } else if r > 0.0 {
        1
    } else {
        -1
    }
}

/// A sign-tracked curve crossed by the family.
struct Tracker {
    last: Option<(usize, i8, f64)>,
    /// Start of the current run of on-curve samples.
    run: Option<usize>,
}

enum Hit {
    Crossing { at: f64, segment: usize },
    Contact { at: f64, segment: usize },
}

impl Tracker {
    fn new() -> Self {
        Self { last: None, run: None }
    }

    fn push(&mut self, i: usize, s: i8, r: f64, params: &[f64]) -> Option<Hit> {
        if s == 0 {
            if self.run.is_none() {
                self.run = Some(i);
            }
            return None;
        }
        let run = self.run.take();
        let hit = match (self.last, run) {
            (Some((j, sj, rj)), _) if sj != s => {
                // linear interpolation of the residual between the two
                // off-curve samples
                let at = params[j] + (params[i] - params[j]) * rj / (rj - r);
                Some(Hit::Crossing {
                    at,
                    segment: run.unwrap_or(j + 1) - 1,
                })
            }
            (_, Some(k)) => Some(Hit::Contact {
                at: params[k],
                segment: k.saturating_sub(1),
            }),
            _ => None,
        };
        self.last = Some((i, s, r));
        hit
    }

    fn finish(&mut self, params: &[f64]) -> Option<Hit> {
        self.run.take().map(|k| Hit::Contact {
            at: params[k],
            segment: k.saturating_sub(1),
        })
    }
}

/// Events, stability changes and component verdict of a sampled family.
///
/// Each wall and each resonance line up to order `k_max` is tested for a
/// sign change of its residual on every segment; crossing parameters come
/// from linear interpolation. A family is single-component when it never
/// meets `Γ₁ ∪ Γ₋₁` and consecutive labels are equal, adjacent, or joined
/// through a discriminant sheet on a segment with a discriminant event.
pub fn analyze_path(
    family: &[(f64, WonenburgerTriple)],
    k_max: u32,
    quotient: Quotient,
    tol: f64,
) -> Result<PathReport> {
    check_tol(tol)?;
    if family.len() < 2 {
        return Err(Error::TooFewSamples);
    }
    for (i, w) in family.windows(2).enumerate() {
        // written negated so that NaN parameters are rejected too
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if !(w[1].0 > w[0].0) {
            return Err(Error::NonMonotone { index: i + 1 });
        }
    }
    let params: Vec<f64> = family.iter().map(|(s, _)| *s).collect();
    let mut samples = Vec::with_capacity(family.len());
    for (s, t) in family {
        let stability = stability_check(&t.assemble(), tol)?;
        samples.push(PathSample {
            parameter: *s,
            base: base_from_triple(t)?,
            label: quotient_label(t, quotient, tol)?,
            stability,
        });
    }

    let mut warnings = Vec::new();
    let mut sparse = 0;
    let mut widest = (0, 0.0_f64);
    for (i, w) in samples.windows(2).enumerate() {
        let (a, b) = (w[0].base, w[1].base);
        let gap = (a.tau - b.tau).hypot(a.delta - b.delta);
        if gap >= DENSITY_FACTOR * a.band(tol).max(b.band(tol)) {
            sparse += 1;
            if gap > widest.1 {
                widest = (i, gap);
            }
        }
    }
    if sparse > 0 {
        warnings.push(format!(
            "{sparse} of {} segments exceed the density bound; widest is {:.3e} between samples {} and {}",
            samples.len() - 1,
            widest.1,
            widest.0,
            widest.0 + 1
        ));
    }

    let mut events: Vec<PathEvent> = Vec::new();
    let mut record = |hit: Option<Hit>, crossing: EventKind, contact: EventKind| match hit {
        Some(Hit::Crossing { at, segment }) => events.push(PathEvent {
            parameter: at,
            segment,
            kind: crossing,
        }),
        Some(Hit::Contact { at, segment }) => events.push(PathEvent {
            parameter: at,
            segment,
            kind: contact,
        }),
        None => {}
    };
    let curves: Vec<Curve> = {
        let mut c: Vec<Curve> = vec![
            (
                EventKind::PlusOneCrossing,
                EventKind::UnitContact { wall: Wall::PlusOne },
                Box::new(|p| Wall::PlusOne.residual(p)),
            ),
            (
                EventKind::MinusOneCrossing,
                EventKind::UnitContact { wall: Wall::MinusOne },
                Box::new(|p| Wall::MinusOne.residual(p)),
            ),
            (
                EventKind::DiscriminantTransition,
                EventKind::DiscriminantContact,
                Box::new(|p| Wall::Discriminant.residual(p)),
            ),
        ];
        for (k, l, line) in resonance_pencil(k_max) {
            let kind = EventKind::Resonance { k, l };
            c.push((kind, kind, Box::new(move |p| line.residual(p))));
        }
        c
    };
    for (crossing, contact, residual) in &curves {
        let mut tr = Tracker::new();
        for (i, s) in samples.iter().enumerate() {
            let r = residual(s.base);
            let hit = tr.push(i, band_sign(r, s.base.band(tol)), r, &params);
            record(hit, *crossing, *contact);
        }
        record(tr.finish(&params), *crossing, *contact);
    }
    for (i, w) in samples.windows(2).enumerate() {
        let (from, to) = (StabilityClass::from(&w[0].stability), StabilityClass::from(&w[1].stability));
        if from != to {
            events.push(PathEvent {
                parameter: 0.5 * (w[0].parameter + w[1].parameter),
                segment: i,
                kind: EventKind::StabilityTransition { from, to },
            });
        }
    }
    events.sort_by(|a, b| a.parameter.total_cmp(&b.parameter));

    let verdict = match events.iter().position(|e| e.kind.is_bifurcation()) {
        Some(event) => PathVerdict::Obstructed { event },
        None => {
            check_adjacency(&samples, &events, quotient)?;
            PathVerdict::SingleComponent
        }
    };
    Ok(PathReport {
        quotient,
        k_max,
        samples,
        events,
        verdict,
        warnings,
    })
}

fn check_adjacency(samples: &[PathSample], events: &[PathEvent], q: Quotient) -> Result<()> {
    let g = component_graph(q);
    for (i, w) in samples.windows(2).enumerate() {
        let (a, b) = (&w[0].label, &w[1].label);
        if a == b || g.adjacent(a, b) {
            continue;
        }
        let wall_event = events.iter().any(|e| {
            e.segment == i
                && matches!(
                    e.kind,
                    EventKind::DiscriminantTransition | EventKind::DiscriminantContact
                )
        });
        if wall_event && !g.common_neighbours(a, b).is_empty() {
            continue;
        }
        return Err(Error::SparseSampling { index: i, next: i + 1 });
    }
    Ok(())
}
