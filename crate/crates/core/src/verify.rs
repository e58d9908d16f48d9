//! Distance sweeps between a source polyline and its compression.

use crate::geom::{point_segment_distance, Point};

/// Distance from `p` to the polyline through `vertices`.
pub fn distance_to_polyline(p: Point, vertices: &[Point]) -> f64 {
    match vertices.len() {
        0 => f64::INFINITY,
        1 => p.dist(vertices[0]),
        _ => vertices
            .windows(2)
            .map(|w| point_segment_distance(p, w[0], w[1]))
            .fold(f64::INFINITY, f64::min),
    }
}

/// Points along `vertices`: every vertex plus `per_segment - 1` interior
/// samples on each segment.
pub fn dense_samples(vertices: &[Point], per_segment: usize) -> Vec<Point> {
    let per_segment = per_segment.max(1);
    let mut out = Vec::with_capacity(vertices.len() * per_segment);
    for w in vertices.windows(2) {
        for s in 0..per_segment {
            let t = s as f64 / per_segment as f64;
            out.push(w[0] + (w[1] - w[0]) * t);
        }
    }
    if let Some(&last) = vertices.last() {
        out.push(last);
    }
    out
}

/// Largest distance from a sample of `from` to the polyline `to`.
pub fn directed_deviation(from: &[Point], to: &[Point], per_segment: usize) -> f64 {
    dense_samples(from, per_segment)
        .into_iter()
        .map(|p| distance_to_polyline(p, to))
        .fold(0.0, f64::max)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepReport {
    /// Max distance from densely sampled source points to the result.
    pub source_to_result: f64,
    /// Max distance from result vertices to the source polyline.
    pub result_vertices_to_source: f64,
}

impl SweepReport {
    pub fn passes(&self, tolerance: f64, q: f64) -> bool {
        self.source_to_result <= tolerance * (1.0 + q) + 1e-9
            && self.result_vertices_to_source <= tolerance
    }
}

/// Both directed deviations, with `per_segment` samples per source segment.
/// Both slices are in drawing order (closed rings repeat the first vertex).
pub fn sweep(source: &[Point], result: &[Point], per_segment: usize) -> SweepReport {
    SweepReport {
        source_to_result: directed_deviation(source, result, per_segment),
        result_vertices_to_source: result
            .iter()
            .map(|&p| distance_to_polyline(p, source))
            .fold(0.0, f64::max),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sweep_of_identical_lines_is_zero() {
        let v = vec![Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(1.0, 1.0)];
        let r = sweep(&v, &v, 8);
        assert_eq!(r.source_to_result, 0.0);
        assert_eq!(r.result_vertices_to_source, 0.0);
    }

    #[test]
    fn detects_missed_excursion() {
        let src = vec![Point::new(0.0, 0.0), Point::new(10.0, 0.0), Point::new(7.5, 0.0)];
        let res = vec![Point::new(0.0, 0.0), Point::new(7.5, 0.0)];
        assert!((directed_deviation(&src, &res, 4) - 2.5).abs() < 1e-12);
    }
}
