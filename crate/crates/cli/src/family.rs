//! Text and CSV renderings of a path report.

use std::fmt::Write as _;
use std::io::Write;

use symclass::base::Wall;
use symclass::components::{EventKind, PathReport, PathVerdict};

use crate::error::Result;

/// Short name of the curve an event lies on.
pub fn line_id(kind: &EventKind) -> String {
    match kind {
        EventKind::PlusOneCrossing => "G+1".into(),
        EventKind::MinusOneCrossing => "G-1".into(),
        EventKind::UnitContact { wall } => match wall {
            Wall::PlusOne => "G+1".into(),
            _ => "G-1".into(),
        },
        EventKind::DiscriminantTransition | EventKind::DiscriminantContact => "Gd".into(),
        EventKind::Resonance { k, l } => format!("G{k},{l}"),
        EventKind::StabilityTransition { .. } => "-".into(),
    }
}

pub fn verdict_line(r: &PathReport) -> String {
    match r.verdict {
        PathVerdict::SingleComponent => "verdict: single-component".into(),
        PathVerdict::Obstructed { event } => {
            let e = &r.events[event];
            format!(
                "verdict: obstructed by {} at parameter {:.9}",
                e.kind.name(),
                e.parameter
            )
        }
    }
}

pub fn render_table(r: &PathReport) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "# {} samples, quotient {}, k_max {}",
        r.samples.len(),
        r.quotient.name(),
        r.k_max
    );
    let _ = writeln!(s, "{:<18} {:<48} line", "parameter", "event");
    for e in &r.events {
        let _ = writeln!(s, "{:<18.9} {:<48} {}", e.parameter, e.kind.name(), line_id(&e.kind));
    }
    for w in &r.warnings {
        let _ = writeln!(s, "warning: {w}");
    }
    let _ = writeln!(s, "{}", verdict_line(r));
    s
}

/// One row `(param, tau, delta, label)` per sample.
pub fn write_csv<W: Write>(r: &PathReport, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["param", "tau", "delta", "label"])?;
    for s in &r.samples {
        w.write_record([
            s.parameter.to_string(),
            s.base.tau.to_string(),
            s.base.delta.to_string(),
            s.label.to_string(),
        ])?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}
