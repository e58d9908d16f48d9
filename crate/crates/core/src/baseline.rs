//! Douglas-Peucker simplification, used as a reference point.

use crate::geom::{point_segment_distance, Point, Polyline};

/// Keeps a subset of the source vertices such that every dropped vertex is
/// within `tolerance` of the kept chord spanning it.
///
/// Closed polylines are simplified as the ring starting and ending at
/// vertex 0.
pub fn douglas_peucker(poly: &Polyline, tolerance: f64) -> Polyline {
    let pts = poly.ring();
    let keep = keep_mask(&pts, tolerance);
    let mut out: Vec<Point> = pts
        .iter()
        .zip(&keep)
        .filter(|(_, &k)| k)
        .map(|(p, _)| *p)
        .collect();
    if poly.is_closed() {
        out.pop();
        // a ring needs at least three corners to stay a ring
        if out.len() < 3 {
            return poly.clone();
        }
    }
    Polyline::new(out, poly.is_closed()).expect("subset of a valid polyline")
}

fn keep_mask(pts: &[Point], tolerance: f64) -> Vec<bool> {
    let n = pts.len();
    let mut keep = vec![false; n];
    keep[0] = true;
    keep[n - 1] = true;
    let mut stack = vec![(0, n - 1)];
    while let Some((s, e)) = stack.pop() {
        let (mut worst, mut at) = (0.0, None);
        for i in s + 1..e {
            let d = point_segment_distance(pts[i], pts[s], pts[e]);
            if d > worst {
                worst = d;
                at = Some(i);
            }
        }
        if let Some(i) = at.filter(|_| worst > tolerance) {
            keep[i] = true;
            stack.push((s, i));
            stack.push((i, e));
        }
    }
    keep
}
