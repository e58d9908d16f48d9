//! Standalone SVG plots of a source polyline and its compression.
//!
//! The viewBox is in data units with y negated, so a data point `(x, y)`
//! appears in path data as `x -y`.

use std::fmt::Write;

use crate::geom::{Point, Polyline};
use crate::lattice::CandidateSet;

const WIDTH_PX: f64 = 800.0;

fn path_data(poly: &Polyline) -> String {
    let mut d = String::new();
    for (i, p) in poly.vertices().iter().enumerate() {
        let _ = write!(d, "{}{} {} ", if i == 0 { 'M' } else { 'L' }, p.x, -p.y);
    }
    if poly.is_closed() {
        d.push('Z');
    }
    d.trim_end().to_string()
}

/// Source in blue, result in red, candidate locations as black dots.
pub fn render_svg(source: &Polyline, result: &Polyline, candidates: Option<&CandidateSet>) -> String {
    let dots: Vec<Point> = candidates
        .map(|c| c.iter().flatten().map(|l| l.position).collect())
        .unwrap_or_default();
    let all = source.vertices().iter().chain(result.vertices()).chain(&dots);
    let (mut lo, mut hi) = (Point::new(f64::MAX, f64::MAX), Point::new(f64::MIN, f64::MIN));
    for p in all {
        lo = Point::new(lo.x.min(p.x), lo.y.min(p.y));
        hi = Point::new(hi.x.max(p.x), hi.y.max(p.y));
    }
    let span = (hi.x - lo.x).max(hi.y - lo.y).max(f64::MIN_POSITIVE);
    let (mx, my) = (0.05 * (hi.x - lo.x).max(span * 1e-3), 0.05 * (hi.y - lo.y).max(span * 1e-3));
    let (vx, vy) = (lo.x - mx, -hi.y - my);
    let (vw, vh) = (hi.x - lo.x + 2.0 * mx, hi.y - lo.y + 2.0 * my);
    let height_px = (WIDTH_PX * vh / vw).clamp(50.0, 4.0 * WIDTH_PX);
    let r = span * 0.004;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH_PX}" height="{height_px:.0}" viewBox="{vx} {vy} {vw} {vh}" preserveAspectRatio="xMidYMid meet">"#
    );
    let _ = writeln!(s, r#"<rect x="{vx}" y="{vy}" width="{vw}" height="{vh}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<path id="source" d="{}" fill="none" stroke="blue" stroke-width="1" vector-effect="non-scaling-stroke"/>"#,
        path_data(source)
    );
    let _ = writeln!(
        s,
        r#"<path id="result" d="{}" fill="none" stroke="red" stroke-width="2" vector-effect="non-scaling-stroke"/>"#,
        path_data(result)
    );
    if !dots.is_empty() {
        s.push_str("<g id=\"candidates\" fill=\"black\">\n");
        for p in &dots {
            let _ = writeln!(s, r#"<circle cx="{}" cy="{}" r="{r}"/>"#, p.x, -p.y);
        }
        s.push_str("</g>\n");
    }
    s.push_str("</svg>\n");
    s
}
