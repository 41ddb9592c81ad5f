//! SVG spacetime diagrams.
//!
//! Time runs up the page and position to the right. Worldline segments in state
//! `g` are solid and in state `e` dashed; flips are filled yellow circles and
//! actors that never flip carry an open circle.

use std::fmt::Write as _;

use crate::kinematics::{FrameTransform, FrameVelocity, Regime};
use crate::scenario::EventGraph;
use crate::worldline::StateLabel;

const CANVAS: f64 = 400.0;
const PAD: f64 = 30.0;
const MARGIN_FRACTION: f64 = 0.15;

/// Axis-aligned box in the drawing frame's `(t, x)` coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bounds {
    pub t_min: f64,
    pub t_max: f64,
    pub x_min: f64,
    pub x_max: f64,
}

impl Bounds {
    pub fn new(t_min: f64, t_max: f64, x_min: f64, x_max: f64) -> Self {
        Bounds {
            t_min,
            t_max,
            x_min,
            x_max,
        }
    }

    pub fn square(half: f64) -> Self {
        Bounds::new(-half, half, -half, half)
    }

    /// Bounding box of `points` grown by 15% of its extent on each side.
    pub fn around(points: &[(f64, f64)]) -> Self {
        let mut b = Bounds::new(f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
        for &(t, x) in points {
            b.t_min = b.t_min.min(t);
            b.t_max = b.t_max.max(t);
            b.x_min = b.x_min.min(x);
            b.x_max = b.x_max.max(x);
        }
        if points.is_empty() {
            return Bounds::square(1.0);
        }
        let grow = |lo: f64, hi: f64| {
            let span = (hi - lo).max(1.0);
            (lo - MARGIN_FRACTION * span, hi + MARGIN_FRACTION * span)
        };
        let (t_min, t_max) = grow(b.t_min, b.t_max);
        let (x_min, x_max) = grow(b.x_min, b.x_max);
        Bounds::new(t_min, t_max, x_min, x_max)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Style {
    pub excited_dash: String,
    pub flip_fill: String,
    pub no_flip_fill: String,
    pub photon_stroke: String,
    pub worldline_stroke: String,
}

impl Default for Style {
    fn default() -> Self {
        Style {
            excited_dash: "6 4".into(),
            flip_fill: "#f5c400".into(),
            no_flip_fill: "#ffffff".into(),
            photon_stroke: "#d03030".into(),
            worldline_stroke: "#000000".into(),
        }
    }
}

impl Style {
    fn dash_for(&self, state: StateLabel) -> Option<&str> {
        match state {
            StateLabel::G => None,
            StateLabel::E => Some(&self.excited_dash),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiagramSpec {
    pub velocity: FrameVelocity,
    /// `None` fits the drawing to the graph.
    pub bounds: Option<Bounds>,
    pub style: Style,
}

impl DiagramSpec {
    pub fn new(velocity: FrameVelocity) -> Self {
        DiagramSpec {
            velocity,
            bounds: None,
            style: Style::default(),
        }
    }
}

/// Print a pixel coordinate with two decimals and no negative zero.
fn px(v: f64) -> String {
    let s = format!("{v:.2}");
    if s == "-0.00" {
        "0.00".into()
    } else {
        s
    }
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

struct Canvas {
    bounds: Bounds,
    scale: f64,
    width: f64,
    height: f64,
    body: String,
}

impl Canvas {
    fn new(bounds: Bounds) -> Self {
        let t_span = bounds.t_max - bounds.t_min;
        let x_span = bounds.x_max - bounds.x_min;
        let scale = CANVAS / t_span.max(x_span);
        Canvas {
            bounds,
            scale,
            width: x_span * scale + 2.0 * PAD,
            height: t_span * scale + 2.0 * PAD,
            body: String::new(),
        }
    }

    fn project(&self, t: f64, x: f64) -> (String, String) {
        (
            px(PAD + (x - self.bounds.x_min) * self.scale),
            px(PAD + (self.bounds.t_max - t) * self.scale),
        )
    }

    fn line(&mut self, class: &str, a: (f64, f64), b: (f64, f64), stroke: &str, width: f64, dash: Option<&str>) {
        let (x1, y1) = self.project(a.0, a.1);
        let (x2, y2) = self.project(b.0, b.1);
        let _ = write!(
            self.body,
            r#"<line class="{class}" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="{stroke}" stroke-width="{width}""#
        );
        if let Some(dash) = dash {
            let _ = write!(self.body, r#" stroke-dasharray="{dash}""#);
        }
        self.body.push_str("/>\n");
    }

    fn circle(&mut self, class: &str, at: (f64, f64), fill: &str) {
        let (cx, cy) = self.project(at.0, at.1);
        let _ = writeln!(
            self.body,
            r##"<circle class="{class}" cx="{cx}" cy="{cy}" r="5" fill="{fill}" stroke="#000000" stroke-width="1"/>"##
        );
    }

    fn text(&mut self, class: &str, at: (f64, f64), dx: f64, dy: f64, label: &str) {
        let (x, y) = self.project(at.0, at.1);
        let _ = writeln!(
            self.body,
            r#"<text class="{class}" x="{x}" y="{y}" dx="{}" dy="{}" font-size="12" font-family="sans-serif">{}</text>"#,
            px(dx),
            px(dy),
            escape(label)
        );
    }

    fn open_group(&mut self, class: &str, key: &str) {
        let _ = writeln!(self.body, r#"<g class="{class}" data-id="{}">"#, escape(key));
    }

    fn close_group(&mut self) {
        self.body.push_str("</g>\n");
    }

    fn frame(&mut self, t_label: &str, x_label: &str) {
        let _ = writeln!(
            self.body,
            r##"<rect class="frame" x="{}" y="{}" width="{}" height="{}" fill="none" stroke="#999999" stroke-width="1"/>"##,
            px(PAD),
            px(PAD),
            px(self.width - 2.0 * PAD),
            px(self.height - 2.0 * PAD)
        );
        let _ = writeln!(
            self.body,
            r#"<text class="axis-label" x="{}" y="{}" font-size="12" font-family="sans-serif">{}</text>"#,
            px(PAD - 20.0),
            px(PAD + 4.0),
            escape(t_label)
        );
        let _ = writeln!(
            self.body,
            r#"<text class="axis-label" x="{}" y="{}" font-size="12" font-family="sans-serif">{}</text>"#,
            px(self.width - PAD - 10.0),
            px(self.height - PAD + 18.0),
            escape(x_label)
        );
    }

    fn finish(self, title: &str) -> String {
        let mut out = String::new();
        out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
            w = px(self.width),
            h = px(self.height)
        );
        let _ = writeln!(out, "<title>{}</title>", escape(title));
        let _ = writeln!(
            out,
            r##"<rect class="background" x="0" y="0" width="{}" height="{}" fill="#ffffff"/>"##,
            px(self.width),
            px(self.height)
        );
        out.push_str(&self.body);
        out.push_str("</svg>\n");
        out
    }
}

/// Portion of the line through the origin along `(dt, dx)` inside `bounds`,
/// ordered from the negative to the positive end of the direction.
fn clip_through_origin(dir: (f64, f64), bounds: &Bounds) -> Option<((f64, f64), (f64, f64))> {
    let mut lo = f64::NEG_INFINITY;
    let mut hi = f64::INFINITY;
    for (d, min, max) in [(dir.0, bounds.t_min, bounds.t_max), (dir.1, bounds.x_min, bounds.x_max)] {
        if d == 0.0 {
            if min > 0.0 || max < 0.0 {
                return None;
            }
            continue;
        }
        let (a, b) = (min / d, max / d);
        lo = lo.max(a.min(b));
        hi = hi.min(a.max(b));
    }
    if lo >= hi {
        return None;
    }
    Some(((lo * dir.0, lo * dir.1), (hi * dir.0, hi * dir.1)))
}

fn title_for(velocity: FrameVelocity) -> String {
    format!(
        "V = {:.6} ({})",
        crate::scenario::fixed(velocity.value()),
        velocity.regime()
    )
}

/// Rest axes, the frame axes `x_V = 0` (x = V t) and `t_V = 0` (t = V x) drawn in
/// rest coordinates, and the light ray x = t.
pub fn render_axes(velocity: FrameVelocity, bounds: Bounds) -> String {
    let transform = FrameTransform::new(velocity);
    let v = velocity.value();
    let mut canvas = Canvas::new(bounds);
    canvas.frame("t", "x");

    let axis = |canvas: &mut Canvas, class: &str, dir: (f64, f64), label: &str, stroke: &str, dash: Option<&str>| {
        if let Some((a, b)) = clip_through_origin(dir, &bounds) {
            canvas.line(class, a, b, stroke, 1.5, dash);
            canvas.text(class, b, 4.0, -4.0, label);
        }
    };
    axis(&mut canvas, "axis rest", (1.0, 0.0), "t", "#000000", None);
    axis(&mut canvas, "axis rest", (0.0, 1.0), "x", "#000000", None);

    // Orient each frame axis toward increasing frame coordinate.
    let along = |dir: (f64, f64), component: usize| {
        let (t, x) = transform.apply_coords(dir.0, dir.1);
        let value = if component == 0 { t } else { x };
        if value < 0.0 {
            (-dir.0, -dir.1)
        } else {
            dir
        }
    };
    let (t_label, x_label) = match velocity.regime() {
        Regime::Subluminal => ("t_V", "x_V"),
        Regime::Superluminal => ("t~", "x~"),
    };
    axis(&mut canvas, "axis frame", along((1.0, v), 0), t_label, "#1f5fbf", Some("4 2"));
    axis(&mut canvas, "axis frame", along((v, 1.0), 1), x_label, "#1f5fbf", Some("4 2"));
    axis(&mut canvas, "light", (1.0, 1.0), "light", "#d03030", None);

    canvas.finish(&format!("axes, {}", title_for(velocity)))
}

/// Worldlines, photon rays and flip markers of `graph` as seen in `spec.velocity`.
pub fn render_scenario(graph: &EventGraph, spec: &DiagramSpec) -> String {
    let transform = FrameTransform::new(spec.velocity);
    let map = |t: f64, x: f64| transform.apply_coords(t, x);
    let style = &spec.style;

    let bounds = spec.bounds.unwrap_or_else(|| {
        let mut points = Vec::new();
        for w in &graph.worldlines {
            points.push(map(w.start(), w.position));
            points.push(map(w.end(), w.position));
        }
        for s in &graph.photon_segments {
            points.push(map(s.start.0, s.start.1));
            points.push(map(s.end.0, s.end.1));
        }
        Bounds::around(&points)
    });

    let mut canvas = Canvas::new(bounds);
    if spec.velocity.value() == 0.0 {
        canvas.frame("t", "x");
    } else {
        canvas.frame("t_V", "x_V");
    }

    for w in &graph.worldlines {
        canvas.open_group("worldline", &w.actor_id);
        for seg in w.segments() {
            canvas.line(
                "state",
                map(seg.t_start, w.position),
                map(seg.t_end, w.position),
                &style.worldline_stroke,
                2.0,
                style.dash_for(seg.state),
            );
        }
        let top = [map(w.start(), w.position), map(w.end(), w.position)]
            .into_iter()
            .max_by(|a, b| a.0.total_cmp(&b.0))
            .unwrap();
        canvas.text("actor-label", top, 4.0, -6.0, &w.actor_id);
        canvas.close_group();
    }

    for s in &graph.photon_segments {
        canvas.line(
            "photon",
            map(s.start.0, s.start.1),
            map(s.end.0, s.end.1),
            &style.photon_stroke,
            1.0,
            None,
        );
    }

    for w in &graph.worldlines {
        if w.flips().is_empty() {
            let mid = 0.5 * (w.start() + w.end());
            canvas.circle("no-flip", map(mid, w.position), &style.no_flip_fill);
        }
    }
    for e in &graph.events {
        let at = map(e.event.t, e.event.x);
        canvas.circle("flip", at, &style.flip_fill);
        canvas.text("event-label", at, 7.0, 4.0, &e.event.id);
    }

    canvas.finish(&title_for(spec.velocity))
}
