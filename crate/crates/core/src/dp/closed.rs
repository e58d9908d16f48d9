//! Closed polylines: solve twice, the second time with the start and end
//! pinned to a vertex the first solution placed in the middle of the ring.

use crate::error::{Error, Result};
use crate::geom::{Point, Polyline};
use crate::hull::ConvexHull;
use crate::lattice::CandidateLocation;

use super::{CompressedResult, Compressor, SolveConfig};

/// A fixed location for both ends of the open sequence in the second pass.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedOrigin {
    pub position: Point,
    pub lattice_coords: (i64, i64),
}

/// Two-pass closure around an open solver.
///
/// `solve_open(points, pin)` receives the ring rotated to a start vertex and
/// closed by repeating it; `pin` fixes both ends in the second pass.
pub(crate) fn two_pass<F>(poly: &Polyline, mut solve_open: F) -> Result<CompressedResult>
where
    F: FnMut(&[Point], Option<ClosedOrigin>) -> Result<CompressedResult>,
{
    let v = poly.vertices();
    let n = v.len();
    if n < 3 {
        return Err(Error::DegenerateInput(format!(
            "closed polyline needs at least 3 vertices, got {n}"
        )));
    }
    let hull = ConvexHull::new(v);
    if hull.len() < 3 || hull.area() <= 0.0 {
        return Err(Error::DegenerateInput("vertices are collinear".into()));
    }
    let angles = hull.interior_angles();
    let sharpest = (0..hull.len())
        .min_by(|&a, &b| angles[a].total_cmp(&angles[b]))
        .unwrap();
    let corner = hull.vertices()[sharpest];
    let start = v.iter().position(|&p| p == corner).expect("hull vertex is a source vertex");

    let first = solve_open(&rotated_ring(v, start), None)?;
    let m = first.segment_count();
    let mid = m / 2;
    let restart = (start + first.sources[mid]) % n;
    let pin = ClosedOrigin {
        position: first.vertices[mid],
        lattice_coords: first.lattice_coords[mid],
    };

    let mut res = solve_open(&rotated_ring(v, restart), Some(pin))?;
    for s in &mut res.sources {
        *s = (*s + restart) % n;
    }
    for r in &mut res.ranges {
        *r = ((r.0 + restart) % n, (r.1 + restart) % n);
    }
    let first_v = res.vertices[0];
    *res.vertices.last_mut().unwrap() = first_v;
    res.closed = true;
    Ok(res)
}

fn rotated_ring(v: &[Point], start: usize) -> Vec<Point> {
    let mut out = Vec::with_capacity(v.len() + 1);
    out.extend_from_slice(&v[start..]);
    out.extend_from_slice(&v[..start]);
    out.push(v[start]);
    out
}

/// Optimal compression of a closed polyline (free directions).
pub fn solve_closed(poly: &Polyline, cfg: &SolveConfig) -> Result<CompressedResult> {
    if !poly.is_closed() {
        return Err(Error::InvalidParameter(
            "solve_closed expects a closed polyline".into(),
        ));
    }
    cfg.validate()?;
    let poly = match cfg.densify {
        Some(d) => poly.densified(d)?,
        None => poly.clone(),
    };
    two_pass(&poly, |points, pin| {
        let mut comp = Compressor::new(points.to_vec(), cfg)?;
        if let Some(pin) = pin {
            comp.restrict_ends(CandidateLocation {
                vertex_index: 0,
                location_index: 0,
                position: pin.position,
                lattice_coords: pin.lattice_coords,
            });
        }
        let dp = comp.run()?;
        let res = comp.finish(&dp)?;
        comp.verify(&res)?;
        Ok(res)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::TAU;

    #[test]
    fn hexagon() {
        let pts: Vec<Point> = (0..6).map(|i| Point::unit(i as f64 * TAU / 6.0) * 10.0).collect();
        let r = solve_closed(&Polyline::closed(pts).unwrap(), &SolveConfig::new(0.01)).unwrap();
        assert_eq!(r.cost.segments, 6);
        assert!(r.closed);
        assert_eq!(r.vertices.first(), r.vertices.last());
    }

    #[test]
    fn noisy_square_any_start() {
        let base = [(0.0, 0.0), (5.0, 0.02), (10.0, 0.0), (10.03, 5.0), (10.0, 10.0), (5.0, 9.98), (0.0, 10.0), (-0.01, 5.0)];
        for s in 0..base.len() {
            let mut c = base.to_vec();
            c.rotate_left(s);
            let poly = Polyline::from_xy(&c, true).unwrap();
            let r = solve_closed(&poly, &SolveConfig::new(0.2)).unwrap();
            assert_eq!(r.cost.segments, 4, "start {s}");
            assert_eq!(r.vertices[0].x.to_bits(), r.vertices[4].x.to_bits());
        }
    }

    #[test]
    fn degenerate_inputs() {
        let line = Polyline::from_xy(&[(0.0, 0.0), (1.0, 0.0), (2.0, 0.0)], true).unwrap();
        assert!(matches!(
            solve_closed(&line, &SolveConfig::new(0.1)),
            Err(Error::DegenerateInput(_))
        ));
        let two = Polyline::from_xy(&[(0.0, 0.0), (1.0, 0.0)], true).unwrap();
        assert!(matches!(
            solve_closed(&two, &SolveConfig::new(0.1)),
            Err(Error::DegenerateInput(_))
        ));
    }
}
