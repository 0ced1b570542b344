//! SVG picture of the `(τ, δ)` plane.

use std::fmt::Write as _;

use symclass::base::{resonance_pencil, Region, SingularPoint, Stratum};
use symclass::components::{fiber_size, EventKind, PathReport};

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 640.0;
const MARGIN: f64 = 48.0;

/// Label positions of the seven regions.
pub const REGION_ANCHORS: [(Region, f64, f64); 7] = [
    (Region::E2, 0.0, -0.5),
    (Region::EHPlus, 2.5, -1.0),
    (Region::EHMinus, -2.5, -1.0),
    (Region::HPlusPlus, 3.5, 2.8),
    (Region::HMinusMinus, -3.5, 2.8),
    (Region::HMinusPlus, 0.0, -3.0),
    (Region::N, 0.0, 2.0),
];

#[derive(Debug, Clone)]
pub struct DiagramOptions {
    pub xrange: (f64, f64),
    pub yrange: (f64, f64),
    /// Resonance lines up to this order; none when `None`.
    pub k_max: Option<u32>,
    pub overlay: Option<PathReport>,
}

impl Default for DiagramOptions {
    fn default() -> Self {
        Self {
            xrange: (-4.5, 4.5),
            yrange: (-4.0, 5.0),
            k_max: None,
            overlay: None,
        }
    }
}

struct Frame {
    x: (f64, f64),
    y: (f64, f64),
}

impl Frame {
    fn px(&self, tau: f64) -> f64 {
        MARGIN + (tau - self.x.0) / (self.x.1 - self.x.0) * (WIDTH - 2.0 * MARGIN)
    }

    fn py(&self, delta: f64) -> f64 {
        HEIGHT - MARGIN - (delta - self.y.0) / (self.y.1 - self.y.0) * (HEIGHT - 2.0 * MARGIN)
    }

    fn contains(&self, tau: f64, delta: f64) -> bool {
        (self.x.0..=self.x.1).contains(&tau) && (self.y.0..=self.y.1).contains(&delta)
    }

    /// Segment of `δ = aτ + b` across the horizontal range.
    fn line(&self, out: &mut String, a: f64, b: f64, attrs: &str) {
        let (x0, x1) = self.x;
        let _ = writeln!(
            out,
            r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" {attrs}/>"#,
            self.px(x0),
            self.py(a * x0 + b),
            self.px(x1),
            self.py(a * x1 + b)
        );
    }
}

fn marker_color(kind: &EventKind) -> &'static str {
    match kind {
        EventKind::PlusOneCrossing | EventKind::MinusOneCrossing | EventKind::UnitContact { .. } => "#d62728",
        EventKind::DiscriminantTransition | EventKind::DiscriminantContact => "#1f77b4",
        EventKind::Resonance { .. } => "#7f7f7f",
        EventKind::StabilityTransition { .. } => "#2ca02c",
    }
}

fn ticks(lo: f64, hi: f64) -> impl Iterator<Item = i64> {
    (lo.ceil() as i64)..=(hi.floor() as i64)
}

pub fn render(opts: &DiagramOptions) -> String {
    let f = Frame {
        x: opts.xrange,
        y: opts.yrange,
    };
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="13">"#
    );
    let (left, top) = (f.px(f.x.0), f.py(f.y.1));
    let (w, h) = (f.px(f.x.1) - left, f.py(f.y.0) - top);
    let _ = writeln!(
        s,
        r#"<defs><clipPath id="plot"><rect x="{left:.2}" y="{top:.2}" width="{w:.2}" height="{h:.2}"/></clipPath></defs>"#
    );
    let _ = writeln!(s, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<rect x="{left:.2}" y="{top:.2}" width="{w:.2}" height="{h:.2}" fill="none" stroke="black"/>"#
    );

    // ticks and axes
    for t in ticks(f.x.0, f.x.1) {
        let x = f.px(t as f64);
        let _ = writeln!(
            s,
            r#"<text x="{x:.2}" y="{:.2}" text-anchor="middle" font-size="11">{t}</text>"#,
            top + h + 16.0
        );
    }
    for t in ticks(f.y.0, f.y.1) {
        let y = f.py(t as f64);
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end" font-size="11">{t}</text>"#,
            left - 6.0,
            y + 4.0
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">τ = tr A</text>"#,
        left + w / 2.0,
        HEIGHT - 8.0
    );
    let _ = writeln!(
        s,
        r#"<text x="14" y="{:.2}" text-anchor="middle" transform="rotate(-90 14 {:.2})">δ = det A</text>"#,
        top + h / 2.0,
        top + h / 2.0
    );

    let _ = writeln!(s, r#"<g clip-path="url(#plot)">"#);
    let grey = r##"stroke="#dddddd" stroke-width="1""##;
    if (f.x.0..=f.x.1).contains(&0.0) {
        let _ = writeln!(
            s,
            r#"<line x1="{0:.2}" y1="{1:.2}" x2="{0:.2}" y2="{2:.2}" {grey}/>"#,
            f.px(0.0),
            top,
            top + h
        );
    }
    if (f.y.0..=f.y.1).contains(&0.0) {
        f.line(&mut s, 0.0, 0.0, grey);
    }

    if let Some(k_max) = opts.k_max {
        for (k, l, line) in resonance_pencil(k_max) {
            f.line(
                &mut s,
                line.slope,
                line.intercept(),
                &format!(
                    r##"class="pencil" data-k="{k}" data-l="{l}" stroke="#999999" stroke-width="0.8" stroke-dasharray="4 3""##
                ),
            );
        }
    }

    // Γ_d: δ = τ²/4
    let steps = 400;
    let pts: Vec<String> = (0..=steps)
        .map(|i| {
            let tau = f.x.0 + (f.x.1 - f.x.0) * i as f64 / steps as f64;
            format!("{:.2},{:.2}", f.px(tau), f.py(tau * tau / 4.0))
        })
        .collect();
    let _ = writeln!(
        s,
        r#"<polyline class="wall" data-wall="discriminant" points="{}" fill="none" stroke="black" stroke-width="1.6"/>"#,
        pts.join(" ")
    );
    // Γ₁: δ = τ - 1, Γ₋₁: δ = -τ - 1
    f.line(
        &mut s,
        1.0,
        -1.0,
        r##"class="wall" data-wall="plus-one" stroke="#d62728" stroke-width="1.6""##,
    );
    f.line(
        &mut s,
        -1.0,
        -1.0,
        r##"class="wall" data-wall="minus-one" stroke="#1f77b4" stroke-width="1.6""##,
    );
    for p in SingularPoint::ALL {
        let b = p.point();
        let _ = writeln!(
            s,
            r#"<circle class="singular" cx="{:.2}" cy="{:.2}" r="3.5" fill="black"/>"#,
            f.px(b.tau),
            f.py(b.delta)
        );
    }

    if let Some(report) = &opts.overlay {
        let pts: Vec<String> = report
            .samples
            .iter()
            .map(|x| format!("{:.2},{:.2}", f.px(x.base.tau), f.py(x.base.delta)))
            .collect();
        let _ = writeln!(
            s,
            r##"<polyline class="family" points="{}" fill="none" stroke="#ff7f0e" stroke-width="2"/>"##,
            pts.join(" ")
        );
        for e in &report.events {
            let a = &report.samples[e.segment];
            let b = &report.samples[(e.segment + 1).min(report.samples.len() - 1)];
            let span = b.parameter - a.parameter;
            let u = if span > 0.0 { (e.parameter - a.parameter) / span } else { 0.0 };
            let tau = a.base.tau + u * (b.base.tau - a.base.tau);
            let delta = a.base.delta + u * (b.base.delta - a.base.delta);
            let _ = writeln!(
                s,
                r#"<circle class="event" cx="{:.2}" cy="{:.2}" r="4.5" fill="{}" stroke="black" stroke-width="0.6"><title>{} at {:.6}</title></circle>"#,
                f.px(tau),
                f.py(delta),
                marker_color(&e.kind),
                e.kind.name(),
                e.parameter
            );
        }
    }
    let _ = writeln!(s, "</g>");

    for (r, tau, delta) in REGION_ANCHORS {
        if !f.contains(tau, delta) {
            continue;
        }
        let st = Stratum::Region(r);
        let (a, b) = fiber_size(st);
        let _ = writeln!(
            s,
            r#"<text class="region" data-region="{}" x="{:.2}" y="{:.2}" text-anchor="middle">{} {a}/{b}</text>"#,
            st.code(),
            f.px(tau),
            f.py(delta),
            st.pretty()
        );
    }
    s.push_str("</svg>\n");
    s
}
