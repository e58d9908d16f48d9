//! Convex hulls of vertex intervals and the geometric feasibility tests that
//! decide whether one straight segment may stand in for a run of vertices.
//!
//! [`HullIndex`] is a segment tree whose nodes hold the hull of their vertex
//! range; any interval is covered by at most `2·⌈log₂ N⌉` node hulls, and an
//! extreme-point query on the interval is the min/max over those hulls.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use crate::error::{Error, Result};
use crate::geom::{Line, Point, Polyline};
use crate::hull::ConvexHull;

/// Number of directions bounding the region around a candidate segment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EndpointDirs {
    /// Rectangle: the segment extended by the tolerance along and across it.
    Four,
    /// Octagon: the rectangle with its corners cut at distance T from the ends.
    #[default]
    Eight,
}

impl EndpointDirs {
    pub fn from_count(n: usize) -> Result<Self> {
        match n {
            4 => Ok(EndpointDirs::Four),
            8 => Ok(EndpointDirs::Eight),
            _ => Err(Error::InvalidParameter(format!(
                "endpoint directions must be 4 or 8, got {n}"
            ))),
        }
    }
}

/// Anything that can report its extent along a direction.
pub trait Support {
    /// `(min, max)` of `dir · p` over the point set.
    fn extent(&self, dir: Point) -> (f64, f64);
}

impl Support for ConvexHull {
    #[inline]
    fn extent(&self, dir: Point) -> (f64, f64) {
        ConvexHull::extent(self, dir)
    }
}

/// The sub-hulls covering one vertex interval.
#[derive(Debug, Clone)]
pub struct HullCover<'a> {
    parts: Vec<&'a ConvexHull>,
}

impl<'a> HullCover<'a> {
    pub fn parts(&self) -> &[&'a ConvexHull] {
        &self.parts
    }

    pub fn merged(&self) -> ConvexHull {
        ConvexHull::merge(self.parts.iter().copied())
    }
}

impl Support for HullCover<'_> {
    fn extent(&self, dir: Point) -> (f64, f64) {
        self.parts.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), h| {
            let (a, b) = h.extent(dir);
            (lo.min(a), hi.max(b))
        })
    }
}

/// `true` iff every point lies within `tol` of `line`.
pub fn within_band<S: Support + ?Sized>(s: &S, line: &Line, tol: f64, eps: f64) -> bool {
    let (lo, hi) = s.extent(line.normal);
    lo >= line.offset - tol - eps && hi <= line.offset + tol + eps
}

/// `true` iff every point lies in the region around segment `a-b` bounded by
/// `dirs` supporting lines at distance `tol`.
pub fn within_segment_region<S: Support + ?Sized>(
    s: &S,
    a: Point,
    b: Point,
    tol: f64,
    dirs: EndpointDirs,
    eps: f64,
) -> bool {
    let d = b - a;
    let len = d.norm();
    let u = d * (1.0 / len);
    let n = Point::new(-u.y, u.x);
    let check = |w: Point| {
        let (wa, wb) = (w.dot(a), w.dot(b));
        let (lo, hi) = s.extent(w);
        lo >= wa.min(wb) - tol - eps && hi <= wa.max(wb) + tol + eps
    };
    if !check(n) || !check(u) {
        return false;
    }
    match dirs {
        EndpointDirs::Four => true,
        EndpointDirs::Eight => {
            check((u + n) * FRAC_1_SQRT_2) && check((u - n) * FRAC_1_SQRT_2)
        }
    }
}

/// Directions, modulo a half turn, of lines through a fixed point `a` that
/// keep every point farther than `√2·tol` from `a` within `tol` of the line.
///
/// Necessary for [`within_band`] on a line through `a`. Each point adds an
/// arc of half-width `asin(tol / r) < 45°`; two such arcs meet in at most one
/// piece, so the running intersection stays a single arc.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum Cone {
    Any,
    Empty,
    Arc { axis: Point, cos_half: f64 },
}

impl Cone {
    pub(crate) fn around(points: &[Point], a: Point, tol: f64) -> Cone {
        let mut arc: Option<(f64, f64, f64)> = None;
        for &p in points {
            let d = p - a;
            let r2 = d.norm_sq();
            if r2 <= 2.0 * tol * tol {
                continue;
            }
            let r = r2.sqrt();
            let phi = d.y.atan2(d.x);
            let w = (tol / r).asin();
            match &mut arc {
                None => arc = Some((phi, -w, w)),
                Some((base, lo, hi)) => {
                    let mut c = phi - *base;
                    c -= PI * (c / PI).round();
                    *lo = lo.max(c - w);
                    *hi = hi.min(c + w);
                    if *lo > *hi + 1e-9 {
                        return Cone::Empty;
                    }
                }
            }
        }
        match arc {
            None => Cone::Any,
            Some((base, lo, hi)) => Cone::Arc {
                axis: Point::unit(base + (lo + hi) / 2.0),
                cos_half: ((hi - lo).max(0.0) / 2.0 + 1e-7).min(FRAC_PI_2_F).cos(),
            },
        }
    }

    /// Whether a line with direction `v` may pass.
    #[inline]
    pub(crate) fn admits(&self, v: Point) -> bool {
        match *self {
            Cone::Any => true,
            Cone::Empty => false,
            Cone::Arc { axis, cos_half } => {
                let d = axis.dot(v);
                d * d >= cos_half * cos_half * v.norm_sq()
            }
        }
    }
}

const FRAC_PI_2_F: f64 = PI / 2.0;

/// Segment tree of convex hulls over a vertex sequence.
#[derive(Debug, Clone)]
pub struct HullIndex {
    n: usize,
    size: usize,
    nodes: Vec<ConvexHull>,
    eps: f64,
}

impl HullIndex {
    pub fn new(points: &[Point]) -> Self {
        let n = points.len();
        let size = n.next_power_of_two().max(1);
        let mut nodes = vec![ConvexHull::default(); 2 * size];
        for (i, &p) in points.iter().enumerate() {
            nodes[size + i] = ConvexHull::new(&[p]);
        }
        for v in (1..size).rev() {
            let (l, r) = (&nodes[2 * v], &nodes[2 * v + 1]);
            nodes[v] = if r.is_empty() {
                l.clone()
            } else {
                ConvexHull::merge([l, r])
            };
        }
        let mag = points
            .iter()
            .fold(1.0f64, |m, p| m.max(p.x.abs()).max(p.y.abs()));
        HullIndex {
            n,
            size,
            nodes,
            eps: 1e-12 * mag,
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Absolute comparison slack used by every containment test.
    #[inline]
    pub fn eps(&self) -> f64 {
        self.eps
    }

    /// Node hulls whose ranges partition `i_s..=i_e`.
    pub fn query(&self, i_s: usize, i_e: usize) -> HullCover<'_> {
        debug_assert!(i_s <= i_e && i_e < self.n);
        let mut parts = Vec::new();
        let (mut l, mut r) = (i_s + self.size, i_e + self.size + 1);
        while l < r {
            if l & 1 == 1 {
                parts.push(&self.nodes[l]);
                l += 1;
            }
            if r & 1 == 1 {
                r -= 1;
                parts.push(&self.nodes[r]);
            }
            l >>= 1;
            r >>= 1;
        }
        HullCover { parts }
    }

    /// Hull of vertices `i_s..=i_e`.
    pub fn interval_hull(&self, i_s: usize, i_e: usize) -> ConvexHull {
        self.query(i_s, i_e).merged()
    }

    fn check_range(&self, i_s: usize, i_e: usize) -> Result<()> {
        if i_s > i_e || i_e >= self.n {
            return Err(Error::IndexOutOfRange {
                start: i_s,
                end: i_e,
                len: self.n,
            });
        }
        Ok(())
    }
}

pub fn build_hull_index(poly: &Polyline) -> HullIndex {
    HullIndex::new(&poly.ring())
}

/// Every vertex in `i_s..=i_e` lies within `tol` of `line`.
pub fn segment_tolerance_test(
    idx: &HullIndex,
    i_s: usize,
    i_e: usize,
    line: &Line,
    tol: f64,
) -> Result<bool> {
    idx.check_range(i_s, i_e)?;
    Ok(within_band(&idx.query(i_s, i_e), line, tol, idx.eps))
}

/// No strip of width `2·tol` covers vertices `i_s..=i_e`.
pub fn width_reject(idx: &HullIndex, i_s: usize, i_e: usize, tol: f64) -> Result<bool> {
    idx.check_range(i_s, i_e)?;
    Ok(idx.interval_hull(i_s, i_e).width() > 2.0 * tol + idx.eps)
}

/// Vertices `i_s..=i_e` lie in the rectangle around `a-b` extended by `tol`.
pub fn endpoint_test(
    idx: &HullIndex,
    i_s: usize,
    i_e: usize,
    a: Point,
    b: Point,
    tol: f64,
) -> Result<bool> {
    endpoint_test_with(idx, i_s, i_e, a, b, tol, EndpointDirs::Four)
}

pub fn endpoint_test_with(
    idx: &HullIndex,
    i_s: usize,
    i_e: usize,
    a: Point,
    b: Point,
    tol: f64,
    dirs: EndpointDirs,
) -> Result<bool> {
    idx.check_range(i_s, i_e)?;
    if a == b {
        return Err(Error::DegenerateSegment);
    }
    Ok(within_segment_region(
        &idx.query(i_s, i_e),
        a,
        b,
        tol,
        dirs,
        idx.eps,
    ))
}

/// Smallest `k'` such that vertices `k'..=k` fit in a strip of width `2·tol`.
///
/// Hull width only grows as the interval extends backwards, so a binary
/// search over `k'` suffices.
pub fn min_feasible_start(idx: &HullIndex, k: usize, tol: f64) -> Result<usize> {
    min_feasible_start_from(idx, 0, k, tol)
}

/// As [`min_feasible_start`], searching only `k' >= lower`.
pub(crate) fn min_feasible_start_from(
    idx: &HullIndex,
    lower: usize,
    k: usize,
    tol: f64,
) -> Result<usize> {
    idx.check_range(lower.min(k), k)?;
    let (mut lo, mut hi) = (lower.min(k), k);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if width_reject(idx, mid, k, tol)? {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::line_through;

    fn index(c: &[(f64, f64)]) -> HullIndex {
        HullIndex::new(&c.iter().copied().map(Point::from).collect::<Vec<_>>())
    }

    #[test]
    fn cover_size_is_logarithmic() {
        let pts: Vec<Point> = (0..1000).map(|i| Point::new(i as f64, (i % 7) as f64)).collect();
        let idx = HullIndex::new(&pts);
        for (s, e) in [(0, 999), (1, 998), (17, 630), (500, 500), (3, 4)] {
            assert!(idx.query(s, e).parts().len() <= 2 * 10);
            let total: usize = idx.query(s, e).parts().iter().map(|h| h.len()).sum();
            assert!(total >= 1);
        }
    }

    #[test]
    fn collinear_subhulls_degenerate() {
        let idx = index(&[(0.0, 0.0), (1.0, 0.0), (2.0, 0.0), (3.0, 0.0)]);
        for v in 1..idx.nodes.len() {
            assert!(idx.nodes[v].len() <= 2);
        }
    }

    #[test]
    fn unit_square_area() {
        let idx = index(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]);
        assert!((idx.interval_hull(0, 3).area() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn tolerance_examples() {
        let idx = index(&[(0.0, 0.0), (1.0, 0.05), (2.0, 0.0)]);
        let l = line_through(Point::new(0.0, 0.0), Point::new(1.0, 0.0)).unwrap();
        assert!(segment_tolerance_test(&idx, 0, 2, &l, 0.1).unwrap());
        assert!(!segment_tolerance_test(&idx, 0, 2, &l, 0.01).unwrap());
    }

    #[test]
    fn width_examples() {
        let idx = index(&[(0.0, 0.0), (1.0, 1.0), (2.0, 2.0)]);
        assert!(!width_reject(&idx, 0, 2, 1e-9).unwrap());
        let idx = index(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]);
        assert!(width_reject(&idx, 0, 3, 0.2).unwrap());
        assert!(!width_reject(&idx, 0, 3, 0.5).unwrap());
    }

    #[test]
    fn endpoint_examples() {
        let a = Point::new(0.0, 0.0);
        let b = Point::new(10.0, 0.0);
        let idx = index(&[(-0.5, 0.0), (10.5, 0.5)]);
        assert!(endpoint_test(&idx, 0, 1, a, b, 1.0).unwrap());
        let idx = index(&[(-0.5, 0.0), (11.5, 0.0)]);
        assert!(!endpoint_test(&idx, 0, 1, a, b, 1.0).unwrap());
        assert_eq!(
            endpoint_test(&idx, 0, 1, a, a, 1.0),
            Err(Error::DegenerateSegment)
        );
    }

    #[test]
    fn octagon_cuts_corners() {
        let a = Point::new(0.0, 0.0);
        let b = Point::new(10.0, 0.0);
        // inside the rectangle corner, outside the octagon
        let idx = index(&[(0.0, 0.0), (10.95, 0.95)]);
        assert!(endpoint_test_with(&idx, 0, 1, a, b, 1.0, EndpointDirs::Four).unwrap());
        assert!(!endpoint_test_with(&idx, 0, 1, a, b, 1.0, EndpointDirs::Eight).unwrap());
    }

    #[test]
    fn right_angle_feasible_start() {
        let idx = index(&[(0.0, 0.0), (5.0, 0.0), (5.0, 5.0)]);
        assert_eq!(min_feasible_start(&idx, 2, 0.1).unwrap(), 1);
        assert_eq!(min_feasible_start(&idx, 1, 0.1).unwrap(), 0);
        let line = index(&[(0.0, 0.0), (1.0, 0.0), (2.0, 0.0), (3.0, 0.0)]);
        for k in 0..4 {
            assert_eq!(min_feasible_start(&line, k, 0.01).unwrap(), 0);
        }
    }

    #[test]
    fn cone_agrees_with_band_test() {
        let pts: Vec<Point> = (0..40)
            .map(|i| Point::new(i as f64 * 0.5, ((i * 7) % 5) as f64 * 0.1))
            .collect();
        let hull = ConvexHull::new(&pts);
        let a = Point::new(0.05, 0.1);
        let cone = Cone::around(hull.vertices(), a, 0.3);
        for t in 0..3600 {
            let v = Point::unit(t as f64 * std::f64::consts::TAU / 3600.0);
            let line = crate::geom::line_through(a, a + v).unwrap();
            if within_band(&hull, &line, 0.3, 1e-12) {
                assert!(cone.admits(v) && cone.admits(-v), "angle step {t}");
            }
        }
        let far = Cone::around(&[Point::new(10.0, 0.0), Point::new(0.0, 10.0)], Point::ORIGIN, 0.5);
        assert_eq!(far, Cone::Empty);
        assert_eq!(Cone::around(&[Point::new(0.5, 0.0)], Point::ORIGIN, 0.5), Cone::Any);
    }

    #[test]
    fn range_errors() {
        let idx = index(&[(0.0, 0.0), (1.0, 0.0)]);
        assert!(width_reject(&idx, 0, 2, 1.0).is_err());
        assert!(min_feasible_start(&idx, 5, 1.0).is_err());
    }
}
