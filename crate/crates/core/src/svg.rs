//! Deterministic SVG figures: surfaces with geodesics, developments, and
//! convergence plots.
//!
//! Front-face segments are drawn solid and back-face segments dashed.

use std::fmt::Write as _;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{Isometry, Vec2};
use crate::surface::{Face, Surface};
use crate::tracer::{BoundaryPoint, GeodesicPath};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FigureKind {
    Polygon,
    Disk,
    Development,
    Convergence,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Style {
    pub panel_size: f64,
    pub stroke_width: f64,
    pub outline_width: f64,
    pub marker_radius: f64,
    /// `stroke-dasharray` of back-face segments.
    pub back_dash: String,
    pub front_color: String,
    pub back_color: String,
    pub show_incircle: bool,
}

impl Default for Style {
    fn default() -> Self {
        Style {
            panel_size: 240.0,
            stroke_width: 1.6,
            outline_width: 1.2,
            marker_radius: 2.2,
            back_dash: "5 3".into(),
            front_color: "#1f4e9c".into(),
            back_color: "#b03a2e".into(),
            show_incircle: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RenderSpec {
    /// Written when set; the SVG text is returned either way.
    pub output: Option<PathBuf>,
    pub kind: FigureKind,
    pub style: Style,
}

impl RenderSpec {
    pub fn new(kind: FigureKind) -> Self {
        RenderSpec {
            output: None,
            kind,
            style: Style::default(),
        }
    }
}

/// One surface with any number of geodesics drawn on it.
#[derive(Clone, Debug, PartialEq)]
pub struct Panel {
    pub surface: Surface,
    pub paths: Vec<GeodesicPath>,
    pub label: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Payload {
    Panels(Vec<Panel>),
    /// Unfold the first path of the panel into a straight line across
    /// reflected copies of the polygon.
    Development(Panel),
    Convergence {
        x_label: String,
        y_label: String,
        series: Vec<Series>,
    },
}

const PALETTE: [&str; 6] = ["#1f4e9c", "#b03a2e", "#2e7d32", "#6a1b9a", "#ef6c00", "#00838f"];
const MARGIN: f64 = 12.0;
const LABEL_BAND: f64 = 18.0;

fn f(x: f64) -> String {
    let s = format!("{x:.3}");
    if s == "-0.000" {
        "0.000".into()
    } else {
        s
    }
}

struct Frame {
    scale: f64,
    cx: f64,
    cy: f64,
    ox: f64,
    oy: f64,
}

impl Frame {
    fn map(&self, p: Vec2) -> (String, String) {
        (f(self.ox + (p.x - self.cx) * self.scale), f(self.oy - (p.y - self.cy) * self.scale))
    }
}

fn header(out: &mut String, width: f64, height: f64) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        f(width),
        f(height),
        f(width),
        f(height)
    );
    let _ = writeln!(out, r#"<rect x="0" y="0" width="{}" height="{}" fill="white"/>"#, f(width), f(height));
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn line(out: &mut String, fr: &Frame, a: Vec2, b: Vec2, color: &str, width: f64, dash: Option<&str>) {
    let (x1, y1) = fr.map(a);
    let (x2, y2) = fr.map(b);
    let dash = dash.map(|d| format!(r#" stroke-dasharray="{d}""#)).unwrap_or_default();
    let _ = writeln!(
        out,
        r#"<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="{color}" stroke-width="{}"{dash}/>"#,
        f(width)
    );
}

fn polygon_outline(out: &mut String, fr: &Frame, verts: &[Vec2], width: f64, dash: Option<&str>) {
    let pts: Vec<String> = verts
        .iter()
        .map(|v| {
            let (x, y) = fr.map(*v);
            format!("{x},{y}")
        })
        .collect();
    let dash = dash.map(|d| format!(r#" stroke-dasharray="{d}""#)).unwrap_or_default();
    let _ = writeln!(
        out,
        r#"<polygon points="{}" fill="none" stroke="black" stroke-width="{}"{dash}/>"#,
        pts.join(" "),
        f(width)
    );
}

fn circle(out: &mut String, fr: &Frame, c: Vec2, r_px: f64, stroke: &str, fill: &str, dash: Option<&str>) {
    let (x, y) = fr.map(c);
    let dash = dash.map(|d| format!(r#" stroke-dasharray="{d}""#)).unwrap_or_default();
    let _ = writeln!(
        out,
        r#"<circle cx="{x}" cy="{y}" r="{}" fill="{fill}" stroke="{stroke}"{dash}/>"#,
        f(r_px)
    );
}

fn text(out: &mut String, x: f64, y: f64, anchor: &str, s: &str) {
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}" font-family="sans-serif" font-size="12" text-anchor="{anchor}">{}</text>"#,
        f(x),
        f(y),
        escape(s)
    );
}

fn segment_style(style: &Style, face: Face) -> (&str, Option<&str>) {
    match face {
        Face::Front => (&style.front_color, None),
        Face::Back => (&style.back_color, Some(&style.back_dash)),
    }
}

fn draw_panel(out: &mut String, panel: &Panel, style: &Style, x0: f64) {
    let size = style.panel_size;
    let radius = match &panel.surface {
        Surface::Polygon(p) => p.circumradius(),
        Surface::Disk(d) => d.radius(),
    };
    let fr = Frame {
        scale: (size / 2.0 - MARGIN) / radius,
        cx: 0.0,
        cy: 0.0,
        ox: x0 + size / 2.0,
        oy: size / 2.0,
    };
    let _ = writeln!(out, "<g>");
    match &panel.surface {
        Surface::Polygon(p) => {
            polygon_outline(out, &fr, p.vertices(), style.outline_width, None);
            if style.show_incircle {
                circle(out, &fr, Vec2::ZERO, p.apothem() * fr.scale, "#999999", "none", Some("2 2"));
            }
        }
        Surface::Disk(d) => {
            circle(out, &fr, Vec2::ZERO, d.radius() * fr.scale, "black", "none", None);
        }
    }
    for path in &panel.paths {
        for (i, seg) in path.segments().iter().enumerate() {
            let (a, b) = path.segment_endpoints(i);
            let (color, dash) = segment_style(style, seg.face);
            line(out, &fr, a, b, color, style.stroke_width, dash);
        }
        for h in path.hits() {
            circle(out, &fr, *h, style.marker_radius, "black", "black", None);
        }
    }
    if let Some(label) = &panel.label {
        text(out, x0 + size / 2.0, size + LABEL_BAND - 4.0, "middle", label);
    }
    let _ = writeln!(out, "</g>");
}

fn render_panels(panels: &[Panel], kind: FigureKind, style: &Style) -> Result<String> {
    for p in panels {
        let ok = matches!(
            (kind, &p.surface),
            (FigureKind::Polygon, Surface::Polygon(_)) | (FigureKind::Disk, Surface::Disk(_))
        );
        if !ok {
            return Err(Error::InvalidArgument(format!("{kind:?} figure given a mismatched surface")));
        }
    }
    let count = panels.len().max(1);
    let mut out = String::new();
    header(&mut out, style.panel_size * count as f64, style.panel_size + LABEL_BAND);
    for (i, panel) in panels.iter().enumerate() {
        draw_panel(&mut out, panel, style, i as f64 * style.panel_size);
    }
    out.push_str("</svg>\n");
    Ok(out)
}

fn render_development(panel: &Panel, style: &Style) -> Result<String> {
    let Surface::Polygon(poly) = &panel.surface else {
        return Err(Error::InvalidArgument("development figures need a polygon surface".into()));
    };
    let path = panel.paths.first();
    // One copy per segment, each the reflection of the previous across the
    // edge the segment ends on.
    let mut copies: Vec<(Isometry, Face)> = vec![(Isometry::IDENTITY, Face::Front)];
    let mut chords: Vec<(Vec2, Vec2)> = Vec::new();
    if let Some(path) = path {
        let mut t = Isometry::IDENTITY;
        for (i, seg) in path.segments().iter().enumerate() {
            let (a, b) = path.segment_endpoints(i);
            if i > 0 {
                copies.push((t, seg.face));
            } else {
                copies[0].1 = seg.face;
            }
            chords.push((t.apply(a), t.apply(b)));
            if let BoundaryPoint::Edge(loc) = seg.end {
                let (p, q) = poly.edge(loc.edge);
                t = t.compose(&Isometry::reflection(p, q));
            }
        }
    }
    let mut lo = Vec2::new(f64::INFINITY, f64::INFINITY);
    let mut hi = Vec2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
    let placed: Vec<(Vec<Vec2>, Face)> = copies
        .iter()
        .map(|(t, face)| (poly.vertices().iter().map(|v| t.apply(*v)).collect(), *face))
        .collect();
    for v in placed.iter().flat_map(|(vs, _)| vs) {
        lo = Vec2::new(lo.x.min(v.x), lo.y.min(v.y));
        hi = Vec2::new(hi.x.max(v.x), hi.y.max(v.y));
    }
    let span = (hi - lo).x.max((hi - lo).y).max(1e-12);
    let width = (style.panel_size * 3.0).max(style.panel_size);
    let scale = (width - 2.0 * MARGIN) / span;
    let height = (hi.y - lo.y) * scale + 2.0 * MARGIN;
    let w = (hi.x - lo.x) * scale + 2.0 * MARGIN;
    let fr = Frame {
        scale,
        cx: lo.x,
        cy: hi.y,
        ox: MARGIN,
        oy: MARGIN,
    };
    let mut out = String::new();
    header(&mut out, w, height + LABEL_BAND);
    for (verts, face) in &placed {
        let dash = match face {
            Face::Front => None,
            Face::Back => Some(style.back_dash.as_str()),
        };
        polygon_outline(&mut out, &fr, verts, style.outline_width, dash);
    }
    for (a, b) in &chords {
        line(&mut out, &fr, *a, *b, &style.front_color, style.stroke_width, None);
    }
    for (a, _) in &chords {
        circle(&mut out, &fr, *a, style.marker_radius, "black", "black", None);
    }
    if let Some((_, b)) = chords.last() {
        circle(&mut out, &fr, *b, style.marker_radius, "black", "black", None);
    }
    if let Some(label) = &panel.label {
        text(&mut out, w / 2.0, height + LABEL_BAND - 4.0, "middle", label);
    }
    out.push_str("</svg>\n");
    Ok(out)
}

fn render_convergence(x_label: &str, y_label: &str, series: &[Series], style: &Style) -> Result<String> {
    let pts = series.iter().flat_map(|s| s.points.iter());
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in pts {
        if !(x.is_finite() && y.is_finite()) {
            return Err(Error::InvalidArgument("convergence series contains non-finite values".into()));
        }
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    if !x0.is_finite() {
        (x0, x1, y0, y1) = (0.0, 1.0, 0.0, 1.0);
    }
    if x1 - x0 < 1e-12 {
        x1 = x0 + 1.0;
    }
    if y1 - y0 < 1e-12 {
        y1 = y0 + 1.0;
    }
    let w = style.panel_size * 2.0;
    let h = style.panel_size * 1.5;
    let left = 48.0;
    let bottom = 32.0;
    let pw = w - left - MARGIN;
    let ph = h - bottom - MARGIN;
    let px = |x: f64| left + (x - x0) / (x1 - x0) * pw;
    let py = |y: f64| MARGIN + (y1 - y) / (y1 - y0) * ph;
    let mut out = String::new();
    header(&mut out, w, h);
    let _ = writeln!(
        out,
        r#"<rect x="{}" y="{}" width="{}" height="{}" fill="none" stroke="black" stroke-width="{}"/>"#,
        f(left),
        f(MARGIN),
        f(pw),
        f(ph),
        f(style.outline_width)
    );
    text(&mut out, left, h - 4.0, "start", &f(x0).to_string());
    text(&mut out, w - MARGIN, h - 4.0, "end", &f(x1).to_string());
    text(&mut out, left + pw / 2.0, h - 4.0, "middle", x_label);
    text(&mut out, 4.0, MARGIN + 10.0, "start", &f(y1));
    text(&mut out, 4.0, MARGIN + ph, "start", &f(y0));
    text(&mut out, 4.0, MARGIN + ph / 2.0, "start", y_label);
    for (i, s) in series.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let coords: Vec<String> = s.points.iter().map(|&(x, y)| format!("{},{}", f(px(x)), f(py(y)))).collect();
        let _ = writeln!(
            out,
            r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="{}"/>"#,
            coords.join(" "),
            f(style.stroke_width)
        );
        for &(x, y) in &s.points {
            let _ = writeln!(
                out,
                r#"<circle cx="{}" cy="{}" r="{}" fill="{color}" stroke="none"/>"#,
                f(px(x)),
                f(py(y)),
                f(style.marker_radius)
            );
        }
        text(&mut out, w - MARGIN - 4.0, MARGIN + 14.0 * (i + 1) as f64, "end", &s.label);
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// Render `payload` as SVG text, writing it to `spec.output` when set.
/// Identical inputs give byte-identical output.
pub fn render_svg(spec: &RenderSpec, payload: &Payload) -> Result<String> {
    let svg = match (spec.kind, payload) {
        (FigureKind::Polygon | FigureKind::Disk, Payload::Panels(panels)) => {
            render_panels(panels, spec.kind, &spec.style)?
        }
        (FigureKind::Development, Payload::Development(panel)) => render_development(panel, &spec.style)?,
        (FigureKind::Convergence, Payload::Convergence { x_label, y_label, series }) => {
            render_convergence(x_label, y_label, series, &spec.style)?
        }
        (kind, _) => {
            return Err(Error::InvalidArgument(format!("payload does not match {kind:?} figure")));
        }
    };
    if let Some(path) = &spec.output {
        std::fs::write(path, &svg)?;
    }
    Ok(svg)
}
