//! Text formats for point sets and matchings, and SVG figures.
//!
//! A point-set file starts with `n`, the number of points of each color,
//! followed by `2n` lines `x y c` where `x`, `y` are integers or `p/q`
//! fractions and `c` is `W` or `B`. A matching file starts with `n`
//! followed by `n` lines `w b` of point indices, white end first. Blank
//! lines and lines starting with `#` are ignored in both.

use std::fmt::Write;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::geom::{coord_to_f64, format_coord, parse_coord, Color, DirectedLine, Point, Segment};
use crate::matching::BrMatching;
use crate::pointset::PointSet;

/// Content lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn parse_header<'a>(lines: &mut impl Iterator<Item = (usize, &'a str)>) -> Result<usize> {
    let (no, head) = lines.next().ok_or_else(|| parse_err(1, "empty input"))?;
    let n: usize = head.parse().map_err(|_| parse_err(no, format!("expected a count, found {head:?}")))?;
    if n == 0 {
        return Err(parse_err(no, "count must be positive"));
    }
    Ok(n)
}

/// Parses and validates a point set.
pub fn parse_pointset(text: &str) -> Result<PointSet> {
    let mut lines = content_lines(text);
    let n = parse_header(&mut lines)?;
    let mut points = Vec::new();
    let mut last = 1;
    for (no, line) in lines {
        last = no;
        if points.len() == 2 * n {
            return Err(parse_err(no, format!("more than {} points", 2 * n)));
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [x, y, c] = fields[..] else {
            return Err(parse_err(no, "expected `x y color`"));
        };
        let x = parse_coord(x).ok_or_else(|| parse_err(no, format!("bad coordinate {x:?}")))?;
        let y = parse_coord(y).ok_or_else(|| parse_err(no, format!("bad coordinate {y:?}")))?;
        let color = match c {
            "W" | "w" => Color::White,
            "B" | "b" => Color::Black,
            _ => return Err(parse_err(no, format!("color must be W or B, found {c:?}"))),
        };
        points.push(Point::new(x, y, color));
    }
    if points.len() != 2 * n {
        return Err(parse_err(last, format!("expected {} points, found {}", 2 * n, points.len())));
    }
    PointSet::new(points)
}

pub fn serialize_pointset(ps: &PointSet) -> String {
    let mut out = format!("{}\n", ps.n());
    for p in ps.points() {
        let _ = writeln!(out, "{} {} {}", format_coord(p.x()), format_coord(p.y()), p.color().as_char());
    }
    out
}

/// Parses the index pairs of a matching file without checking them against
/// a point set.
pub fn parse_matching_pairs(text: &str) -> Result<Vec<Segment>> {
    let mut lines = content_lines(text);
    let n = parse_header(&mut lines)?;
    let mut segs = Vec::new();
    let mut last = 1;
    for (no, line) in lines {
        last = no;
        if segs.len() == n {
            return Err(parse_err(no, format!("more than {n} segments")));
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [w, b] = fields[..] else {
            return Err(parse_err(no, "expected `white black`"));
        };
        let w: usize = w.parse().map_err(|_| parse_err(no, format!("bad index {w:?}")))?;
        let b: usize = b.parse().map_err(|_| parse_err(no, format!("bad index {b:?}")))?;
        segs.push(Segment::new(w, b));
    }
    if segs.len() != n {
        return Err(parse_err(last, format!("expected {n} segments, found {}", segs.len())));
    }
    Ok(segs)
}

/// Parses a matching of `ps` and validates it.
pub fn parse_matching(text: &str, ps: &Arc<PointSet>) -> Result<BrMatching> {
    let segs = parse_matching_pairs(text)?;
    if segs.len() != ps.n() {
        return Err(Error::InvalidMatching(format!("{} segments for {} points", segs.len(), ps.len())));
    }
    BrMatching::new(ps.clone(), segs)
}

pub fn serialize_matching(m: &BrMatching) -> String {
    let mut out = format!("{}\n", m.len());
    for s in m.segments() {
        let _ = writeln!(out, "{} {}", s.white, s.black);
    }
    out
}

/// Extra elements drawn on top of a figure.
#[derive(Debug, Clone)]
pub enum Overlay {
    /// A line clipped to the figure, with an optional caption.
    Line { line: DirectedLine, label: Option<String> },
    /// Labels placed at the midpoints of the given segments, in order.
    SegmentLabels(Vec<(Segment, String)>),
    /// A caption in the top-left corner.
    Caption(String),
}

const CANVAS: f64 = 600.0;
const MARGIN: f64 = 40.0;
const RADIUS: f64 = 5.0;

struct Frame {
    min_x: f64,
    min_y: f64,
    span: f64,
}

impl Frame {
    fn fit(points: &[Point]) -> Frame {
        let xs = points.iter().map(|p| coord_to_f64(p.x()));
        let ys = points.iter().map(|p| coord_to_f64(p.y()));
        let (min_x, max_x) = xs.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(v), b.max(v)));
        let (min_y, max_y) = ys.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(v), b.max(v)));
        let span = (max_x - min_x).max(max_y - min_y);
        let span = if span.is_finite() && span > 0.0 { span } else { 1.0 };
        let min_x = if min_x.is_finite() { min_x } else { 0.0 };
        let min_y = if min_y.is_finite() { min_y } else { 0.0 };
        Frame { min_x, min_y, span }
    }

    /// Figure coordinates, y pointing down.
    fn map(&self, x: f64, y: f64) -> (f64, f64) {
        let scale = (CANVAS - 2.0 * MARGIN) / self.span;
        (MARGIN + (x - self.min_x) * scale, CANVAS - MARGIN - (y - self.min_y) * scale)
    }

    fn map_point(&self, p: &Point) -> (f64, f64) {
        self.map(coord_to_f64(p.x()), coord_to_f64(p.y()))
    }

    fn unmap(&self, fx: f64, fy: f64) -> (f64, f64) {
        let scale = (CANVAS - 2.0 * MARGIN) / self.span;
        (self.min_x + (fx - MARGIN) / scale, self.min_y + (CANVAS - MARGIN - fy) / scale)
    }

    /// The part of `line` inside the canvas, by clipping its parametric
    /// form against the four canvas edges.
    fn clip(&self, line: &DirectedLine) -> Option<[(f64, f64); 2]> {
        let (ox, oy) = (coord_to_f64(&line.origin.x), coord_to_f64(&line.origin.y));
        let (dx, dy) = (coord_to_f64(&line.direction.x), coord_to_f64(&line.direction.y));
        let (x0, y1) = self.unmap(0.0, 0.0);
        let (x1, y0) = self.unmap(CANVAS, CANVAS);
        let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
        for (o, d, a, b) in [(ox, dx, x0, x1), (oy, dy, y0, y1)] {
            if d == 0.0 {
                if o < a || o > b {
                    return None;
                }
                continue;
            }
            let (t0, t1) = ((a - o) / d, (b - o) / d);
            lo = lo.max(t0.min(t1));
            hi = hi.min(t0.max(t1));
        }
        if !(lo < hi) {
            return None;
        }
        Some([self.map(ox + lo * dx, oy + lo * dy), self.map(ox + hi * dx, oy + hi * dy)])
    }
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Deterministic SVG drawing of a point set, an optional matching drawn as
/// white-to-black arrows, and overlays.
pub fn render_svg(ps: &PointSet, m: Option<&BrMatching>, overlays: &[Overlay]) -> String {
    let frame = Frame::fit(ps.points());
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{c}" height="{c}" viewBox="0 0 {c} {c}">"#,
        c = CANVAS
    );
    out.push_str(
        "  <defs>\n    <marker id=\"arrow\" markerWidth=\"10\" markerHeight=\"7\" refX=\"10\" refY=\"3.5\" orient=\"auto\">\n      <polygon points=\"0 0, 10 3.5, 0 7\" fill=\"black\"/>\n    </marker>\n  </defs>\n",
    );
    let _ = writeln!(out, r#"  <rect width="{c}" height="{c}" fill="white"/>"#, c = CANVAS);

    for overlay in overlays {
        if let Overlay::Line { line, label } = overlay {
            if let Some([(x1, y1), (x2, y2)]) = frame.clip(line) {
                let _ = writeln!(
                    out,
                    r##"  <line class="overlay" x1="{x1:.6}" y1="{y1:.6}" x2="{x2:.6}" y2="{y2:.6}" stroke="#c03030" stroke-dasharray="6 4"/>"##
                );
                if let Some(text) = label {
                    let _ = writeln!(
                        out,
                        r##"  <text x="{x2:.6}" y="{y2:.6}" font-size="12" fill="#c03030">{}</text>"##,
                        escape(text)
                    );
                }
            }
        }
    }

    if let Some(m) = m {
        for s in m.segments() {
            let (x1, y1) = frame.map_point(ps.point(s.white));
            let (x2, y2) = frame.map_point(ps.point(s.black));
            // stop the arrow at the rim of the black disk
            let len = ((x2 - x1).powi(2) + (y2 - y1).powi(2)).sqrt().max(f64::EPSILON);
            let (ex, ey) = (x2 - (x2 - x1) * RADIUS / len, y2 - (y2 - y1) * RADIUS / len);
            let _ = writeln!(
                out,
                r#"  <line class="segment" x1="{x1:.6}" y1="{y1:.6}" x2="{ex:.6}" y2="{ey:.6}" stroke="black" marker-end="url(#arrow)"/>"#
            );
        }
    }

    for (i, p) in ps.points().iter().enumerate() {
        let (x, y) = frame.map_point(p);
        let fill = match p.color() {
            Color::White => "white",
            Color::Black => "black",
        };
        let _ = writeln!(
            out,
            r#"  <circle class="point" data-index="{i}" cx="{x:.6}" cy="{y:.6}" r="{RADIUS}" fill="{fill}" stroke="black"/>"#
        );
    }

    for overlay in overlays {
        match overlay {
            Overlay::SegmentLabels(labels) => {
                for (s, text) in labels {
                    let mx = (coord_to_f64(ps.point(s.white).x()) + coord_to_f64(ps.point(s.black).x())) / 2.0;
                    let my = (coord_to_f64(ps.point(s.white).y()) + coord_to_f64(ps.point(s.black).y())) / 2.0;
                    let (x, y) = frame.map(mx, my);
                    let _ = writeln!(
                        out,
                        r##"  <text class="label" x="{:.6}" y="{:.6}" font-size="12" fill="#2040a0">{}</text>"##,
                        x + 4.0,
                        y - 4.0,
                        escape(text)
                    );
                }
            }
            Overlay::Caption(text) => {
                let _ = writeln!(out, r#"  <text x="8" y="18" font-size="14">{}</text>"#, escape(text));
            }
            Overlay::Line { .. } => {}
        }
    }
    out.push_str("</svg>\n");
    out
}
