//! Convex hulls with logarithmic extreme-point queries and minimum width.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use crate::geom::Point;

/// Hulls at or below this size answer extreme-point queries by linear scan.
const LINEAR_SCAN_MAX: usize = 12;

/// Strictly convex polygon in counterclockwise order, starting at the
/// lowest (then leftmost) vertex.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConvexHull {
    vertices: Vec<Point>,
    /// Direction of edge `i -> i+1`, in `[0, 2π)` and non-decreasing.
    edge_angles: Vec<f64>,
}

impl ConvexHull {
    /// Andrew's monotone chain; collinear points are dropped.
    pub fn new(points: &[Point]) -> Self {
        let mut pts: Vec<Point> = points.to_vec();
        pts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
        pts.dedup();
        if pts.len() <= 2 {
            return Self::from_ccw(pts);
        }
        let mut hull: Vec<Point> = Vec::with_capacity(pts.len() + 1);
        for &p in &pts {
            while hull.len() >= 2 && turn(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
                hull.pop();
            }
            hull.push(p);
        }
        let lower_len = hull.len() + 1;
        for &p in pts.iter().rev().skip(1) {
            while hull.len() >= lower_len
                && turn(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0
            {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
        Self::from_ccw(hull)
    }

    /// Hull of the union of several hulls.
    pub fn merge<'a>(parts: impl IntoIterator<Item = &'a ConvexHull>) -> Self {
        let pts: Vec<Point> = parts
            .into_iter()
            .flat_map(|h| h.vertices.iter().copied())
            .collect();
        Self::new(&pts)
    }

    fn from_ccw(mut vertices: Vec<Point>) -> Self {
        if let Some(start) = (0..vertices.len()).min_by(|&a, &b| {
            let (p, q) = (vertices[a], vertices[b]);
            p.y.total_cmp(&q.y).then(p.x.total_cmp(&q.x))
        }) {
            vertices.rotate_left(start);
        }
        let n = vertices.len();
        let edge_angles = if n > LINEAR_SCAN_MAX {
            (0..n)
                .map(|i| {
                    let d = vertices[(i + 1) % n] - vertices[i];
                    let a = d.y.atan2(d.x);
                    if a < 0.0 {
                        a + TAU
                    } else {
                        a
                    }
                })
                .collect()
        } else {
            Vec::new()
        };
        ConvexHull {
            vertices,
            edge_angles,
        }
    }

    #[inline]
    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn area(&self) -> f64 {
        let n = self.vertices.len();
        (0..n)
            .map(|i| self.vertices[i].cross(self.vertices[(i + 1) % n]))
            .sum::<f64>()
            / 2.0
    }

    /// Index of a vertex maximizing `dir · p`.
    fn argmax(&self, dir: Point) -> usize {
        let n = self.vertices.len();
        if n <= LINEAR_SCAN_MAX || self.edge_angles.is_empty() {
            let mut best = 0;
            let mut best_v = f64::NEG_INFINITY;
            for (i, p) in self.vertices.iter().enumerate() {
                let v = dir.dot(*p);
                if v > best_v {
                    best_v = v;
                    best = i;
                }
            }
            return best;
        }
        // The extreme vertex is where the edge direction first reaches the
        // direction perpendicular (counterclockwise) to `dir`.
        let mut t = dir.y.atan2(dir.x) + FRAC_PI_2;
        if t < 0.0 {
            t += TAU;
        }
        if t >= TAU {
            t -= TAU;
        }
        let k = self.edge_angles.partition_point(|&a| a < t) % n;
        // guard against rounding in nearly collinear edges
        [(k + n - 1) % n, k, (k + 1) % n]
            .into_iter()
            .max_by(|&a, &b| {
                dir.dot(self.vertices[a])
                    .total_cmp(&dir.dot(self.vertices[b]))
            })
            .unwrap()
    }

    /// `(min, max)` of `dir · p` over the hull.
    pub fn extent(&self, dir: Point) -> (f64, f64) {
        if self.vertices.is_empty() {
            return (f64::INFINITY, f64::NEG_INFINITY);
        }
        let hi = dir.dot(self.vertices[self.argmax(dir)]);
        let lo = dir.dot(self.vertices[self.argmax(-dir)]);
        (lo, hi)
    }

    /// Minimum over all directions of the hull's extent (rotating calipers).
    pub fn width(&self) -> f64 {
        let v = &self.vertices;
        let n = v.len();
        if n <= 2 {
            return 0.0;
        }
        let mut best = f64::INFINITY;
        let mut j = 1;
        for i in 0..n {
            let a = v[i];
            let e = v[(i + 1) % n] - a;
            let len = e.norm();
            if len == 0.0 {
                continue;
            }
            let height = |k: usize| e.cross(v[k % n] - a);
            let mut steps = 0;
            while height(j + 1) >= height(j) && steps < n {
                j += 1;
                steps += 1;
            }
            best = best.min(height(j) / len);
        }
        best.max(0.0)
    }

    /// Interior angle at every vertex, in radians.
    pub fn interior_angles(&self) -> Vec<f64> {
        let v = &self.vertices;
        let n = v.len();
        if n < 3 {
            return vec![0.0; n];
        }
        (0..n)
            .map(|i| {
                let prev = v[(i + n - 1) % n] - v[i];
                let next = v[(i + 1) % n] - v[i];
                let a = prev.cross(next).abs().atan2(prev.dot(next));
                a.clamp(0.0, PI)
            })
            .collect()
    }
}

#[inline]
fn turn(a: Point, b: Point, c: Point) -> f64 {
    (b - a).cross(c - a)
}
