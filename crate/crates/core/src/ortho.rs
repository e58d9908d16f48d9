//! Compression with segment directions restricted to multiples of 90° or 45°
//! (relative to a rotation angle), for building outlines and similar shapes.
//!
//! Locations come from a square lattice aligned with the direction set, so a
//! difference of lattice coordinates decides a direction exactly. The dynamic
//! program runs over `(vertex, location, direction)`: the direction is that of
//! the output segment leaving the vertex, and changing it costs one segment.

use std::cmp::Ordering;

use rayon::prelude::*;

use crate::dp::{closed, CompressedResult, LexCost};
use crate::error::{Error, Result};
use crate::geom::{Line, MomentPrefix, Point, Polyline};
use crate::lattice::{candidates_for_points, make_lattice, CandidateSet, LatticeKind, LatticeSpec};

#[derive(Debug, Clone, PartialEq)]
pub struct OrthoConfig {
    /// Number of directions: 4 (right angles) or 8 (adds diagonals).
    pub directions: usize,
    pub tolerance: f64,
    pub q: f64,
    /// With 8 directions, forbid 135° turns.
    pub forbid_sharp: bool,
    /// Step of the rotation search, in degrees.
    pub rotation_step: f64,
    /// Maximum source segment length; longer segments are subdivided first.
    pub densify: Option<f64>,
}

impl OrthoConfig {
    pub fn new(directions: usize, tolerance: f64) -> Self {
        OrthoConfig {
            directions,
            tolerance,
            q: 0.3,
            forbid_sharp: false,
            rotation_step: 1.0,
            densify: None,
        }
    }

    pub fn with_q(mut self, q: f64) -> Self {
        self.q = q;
        self
    }

    pub fn with_forbid_sharp(mut self, on: bool) -> Self {
        self.forbid_sharp = on;
        self
    }

    pub fn with_rotation_step(mut self, deg: f64) -> Self {
        self.rotation_step = deg;
        self
    }

    /// Rotations are searched over `[0°, 360° / M)`.
    pub fn rotation_range(&self) -> f64 {
        360.0 / self.directions as f64
    }

    pub fn validate(&self) -> Result<()> {
        if self.directions != 4 && self.directions != 8 {
            return Err(Error::InvalidParameter(format!(
                "orthogonal mode needs 4 or 8 directions, got {}",
                self.directions
            )));
        }
        if !(self.rotation_step > 0.0) || !self.rotation_step.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "rotation step must be positive, got {}",
                self.rotation_step
            )));
        }
        if let Some(d) = self.densify {
            if !(d > 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "densify length must be positive, got {d}"
                )));
            }
        }
        make_lattice(self.tolerance, self.q, LatticeKind::Square).map(|_| ())
    }
}

/// Unit step of direction `q` out of `m` on the integer lattice.
fn step(q: usize, m: usize) -> (i64, i64) {
    const EIGHT: [(i64, i64); 8] = [(1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1), (0, -1), (1, -1)];
    EIGHT[q * (8 / m)]
}

/// Whether lattice vector `v` points along direction `q` of `m` (the zero
/// vector points along every direction).
pub fn direction_check(v: (i64, i64), q: usize, m: usize) -> bool {
    if v == (0, 0) {
        return true;
    }
    let (sx, sy) = step(q, m);
    v.0 * sy == v.1 * sx && v.0 * sx + v.1 * sy > 0
}

/// Direction index of a nonzero lattice vector, if it is one of the `m`.
fn direction_of(v: (i64, i64), m: usize) -> Option<usize> {
    (0..m).find(|&q| direction_check(v, q, m))
}

/// Whether the direction may change from `q_prev` to `q`.
pub fn transition_allowed(q_prev: usize, q: usize, m: usize, forbid_sharp: bool) -> bool {
    let diff = q_prev as i64 - q as i64;
    if 2 * diff.abs() == m as i64 {
        return false;
    }
    !(m == 8 && forbid_sharp && (4 - diff.rem_euclid(8)).abs() == 1)
}

/// Cost and back-pointer per `(k, j, q)`. Costs count direction changes.
#[derive(Debug, Clone)]
pub struct OrthoDpTable {
    m: usize,
    offsets: Vec<usize>,
    cost: Vec<LexCost>,
    back: Vec<Option<(u32, u8)>>,
}

impl OrthoDpTable {
    fn new(cands: &CandidateSet, m: usize) -> Self {
        let mut offsets = vec![0];
        for c in cands.iter() {
            offsets.push(offsets.last().unwrap() + c.len() * m);
        }
        let total = *offsets.last().unwrap();
        OrthoDpTable {
            m,
            offsets,
            cost: vec![LexCost::INFINITE; total],
            back: vec![None; total],
        }
    }

    #[inline]
    fn slot(&self, k: usize, j: usize, q: usize) -> usize {
        self.offsets[k] + j * self.m + q
    }

    pub fn cost(&self, k: usize, j: usize, q: usize) -> LexCost {
        self.cost[self.slot(k, j, q)]
    }

    pub fn back(&self, k: usize, j: usize, q: usize) -> Option<(usize, usize)> {
        self.back[self.slot(k, j, q)].map(|(j, q)| (j as usize, q as usize))
    }
}

struct Problem {
    points: Vec<Point>,
    cands: CandidateSet,
    moments: MomentPrefix,
    spec: LatticeSpec,
    m: usize,
    forbid_sharp: bool,
}

impl Problem {
    fn new(points: Vec<Point>, cfg: &OrthoConfig, anchor: Point, rotation: f64) -> Result<Self> {
        let spec = make_lattice(cfg.tolerance, cfg.q, LatticeKind::Square)?
            .with_origin(anchor)
            .with_rotation(rotation);
        Ok(Problem {
            cands: candidates_for_points(&points, &spec, cfg.tolerance),
            moments: MomentPrefix::new(&points),
            points,
            spec,
            m: cfg.directions,
            forbid_sharp: cfg.forbid_sharp,
        })
    }

    /// Carrier line through `b` along direction `q`.
    fn carrier(&self, b: Point, q: usize) -> Line {
        let (sx, sy) = step(q, self.m);
        let dir = Point::new(sx as f64, sy as f64).rotated(self.spec.rotation);
        let dir = dir * (1.0 / dir.norm());
        let normal = Point::new(-dir.y, dir.x);
        Line {
            normal,
            offset: normal.dot(b),
        }
    }

    fn run(&self) -> Result<OrthoDpTable> {
        let m = self.m;
        let mut dp = OrthoDpTable::new(&self.cands, m);
        for j in 0..self.cands.at(0).len() {
            for q in 0..m {
                let s = dp.slot(0, j, q);
                dp.cost[s] = LexCost::ZERO;
            }
        }
        for k in 1..self.points.len() {
            let span = self.moments.interval(k - 1, k)?;
            let (prev, cur) = (self.cands.at(k - 1), self.cands.at(k));
            let mut reached = false;
            for (j, b) in cur.iter().enumerate() {
                let mut best = vec![(LexCost::INFINITE, None); m];
                for (jp, a) in prev.iter().enumerate() {
                    let v = (
                        b.lattice_coords.0 - a.lattice_coords.0,
                        b.lattice_coords.1 - a.lattice_coords.1,
                    );
                    let moves: Vec<usize> = if v == (0, 0) {
                        (0..m).collect()
                    } else {
                        match direction_of(v, m) {
                            Some(q) => vec![q],
                            None => continue,
                        }
                    };
                    for qp in moves {
                        let c = dp.cost(k - 1, jp, qp);
                        if !c.is_finite() {
                            continue;
                        }
                        let eps = self.moments.line_dev(&span, &self.carrier(b.position, qp));
                        for (q, slot) in best.iter_mut().enumerate() {
                            if !transition_allowed(qp, q, m, self.forbid_sharp) {
                                continue;
                            }
                            let cand = LexCost::new(c.segments + (qp != q) as usize, c.sse + eps);
                            if cand.lex_cmp(&slot.0) == Ordering::Less {
                                *slot = (cand, Some((jp as u32, qp as u8)));
                            }
                        }
                    }
                }
                for (q, (c, b)) in best.into_iter().enumerate() {
                    reached |= c.is_finite();
                    let s = dp.slot(k, j, q);
                    dp.cost[s] = c;
                    dp.back[s] = b;
                }
            }
            if !reached {
                return Err(Error::no_solution(
                    Some(k),
                    "no aligned connection between the locations of consecutive vertices",
                ));
            }
        }
        Ok(dp)
    }

    fn finish(&self, dp: &OrthoDpTable) -> Result<CompressedResult> {
        let n = self.points.len();
        let last = n - 1;
        let mut terminal = None;
        let mut best = LexCost::INFINITE;
        for j in 0..self.cands.at(last).len() {
            for q in 0..self.m {
                let c = dp.cost(last, j, q);
                if c.lex_cmp(&best) == Ordering::Less {
                    best = c;
                    terminal = Some((j, q));
                }
            }
        }
        let (mut j, mut q) =
            terminal.ok_or_else(|| Error::no_solution(Some(last), "unreachable end"))?;
        let mut states = vec![(j, q); n];
        for k in (1..n).rev() {
            let (jp, qp) = dp.back(k, j, q).ok_or(Error::CorruptTable(k))?;
            states[k - 1] = (jp, qp);
            (j, q) = (jp, qp);
        }
        // the direction stored at the last vertex leads nowhere
        states[last].1 = states[last.saturating_sub(1)].1;
        let mut keep = vec![0];
        for k in 1..last {
            if states[k].1 != states[k - 1].1 {
                keep.push(k);
            }
        }
        keep.push(last);
        let locs: Vec<_> = keep.iter().map(|&k| self.cands.at(k)[states[k].0]).collect();
        Ok(CompressedResult {
            vertices: locs.iter().map(|l| l.position).collect(),
            closed: false,
            cost: LexCost::new(keep.len() - 1, best.sse),
            ranges: keep.windows(2).map(|w| (w[0], w[1])).collect(),
            sources: keep,
            lattice_coords: locs.iter().map(|l| l.lattice_coords).collect(),
            post_processed: false,
        })
    }
}

fn solve_points(
    points: Vec<Point>,
    cfg: &OrthoConfig,
    anchor: Point,
    rotation: f64,
    pin: Option<closed::ClosedOrigin>,
) -> Result<CompressedResult> {
    let mut p = Problem::new(points, cfg, anchor, rotation)?;
    if let Some(pin) = pin {
        let last = p.points.len() - 1;
        let loc = crate::lattice::CandidateLocation {
            vertex_index: 0,
            location_index: 0,
            position: pin.position,
            lattice_coords: pin.lattice_coords,
        };
        p.cands.restrict(0, loc);
        p.cands.restrict(last, loc);
    }
    let dp = p.run()?;
    p.finish(&dp)
}

/// Optimal direction-restricted compression with the direction set rotated
/// by `rotation` radians. The lattice is anchored at the first vertex.
pub fn solve_ortho(poly: &Polyline, cfg: &OrthoConfig, rotation: f64) -> Result<CompressedResult> {
    cfg.validate()?;
    let poly = match cfg.densify {
        Some(d) => poly.densified(d)?,
        None => poly.clone(),
    };
    let anchor = poly.vertices()[0];
    if !poly.is_closed() {
        return solve_points(poly.into_vertices(), cfg, anchor, rotation, None);
    }
    let mut res = closed::two_pass(&poly, |pts, pin| {
        solve_points(pts.to_vec(), cfg, anchor, rotation, pin)
    })?;
    merge_closing_vertex(&mut res);
    Ok(res)
}

/// Drops the start vertex of a closed result when the segments on both
/// sides of it run in the same direction.
fn merge_closing_vertex(res: &mut CompressedResult) {
    let n = res.vertices.len();
    if !res.closed || n < 4 {
        return;
    }
    let c = &res.lattice_coords;
    let d_in = (c[n - 1].0 - c[n - 2].0, c[n - 1].1 - c[n - 2].1);
    let d_out = (c[1].0 - c[0].0, c[1].1 - c[0].1);
    if !same_direction(d_in, d_out) {
        return;
    }
    res.vertices.pop();
    res.vertices.remove(0);
    res.vertices.push(res.vertices[0]);
    res.lattice_coords.pop();
    res.lattice_coords.remove(0);
    res.lattice_coords.push(res.lattice_coords[0]);
    res.sources.pop();
    res.sources.remove(0);
    res.sources.push(res.sources[0]);
    let first = res.ranges.remove(0);
    let last = res.ranges.last_mut().unwrap();
    last.1 = first.1;
    res.cost.segments -= 1;
}

fn same_direction(a: (i64, i64), b: (i64, i64)) -> bool {
    a != (0, 0) && b != (0, 0) && a.0 * b.1 == a.1 * b.0 && a.0 * b.0 + a.1 * b.1 > 0
}

/// Solves at every rotation in `[0, 360°/M)` and keeps the cheapest result
/// (the smallest angle on ties). Returns the angle in degrees.
pub fn rotation_search(poly: &Polyline, cfg: &OrthoConfig) -> Result<(f64, CompressedResult)> {
    cfg.validate()?;
    let count = (cfg.rotation_range() / cfg.rotation_step).ceil().max(1.0) as usize;
    let results: Vec<(f64, Result<CompressedResult>)> = (0..count)
        .into_par_iter()
        .map(|i| {
            let deg = i as f64 * cfg.rotation_step;
            (deg, solve_ortho(poly, cfg, deg.to_radians()))
        })
        .collect();
    let mut best: Option<(f64, CompressedResult)> = None;
    let mut first_err = None;
    for (deg, r) in results {
        match r {
            Ok(res) => {
                if best
                    .as_ref()
                    .is_none_or(|(_, b)| res.cost.lex_cmp(&b.cost) == Ordering::Less)
                {
                    best = Some((deg, res));
                }
            }
            Err(e) => {
                first_err.get_or_insert(e);
            }
        }
    }
    best.ok_or_else(|| first_err.unwrap_or_else(|| Error::no_solution(None, "no rotation tried")))
}

/// Removes zero-length segments and merges the same-direction neighbours
/// they leave behind.
pub fn strip_zero_segments(result: &CompressedResult) -> CompressedResult {
    let mut out = result.clone();
    let mut i = 1;
    // zero-length segments
    while i < out.vertices.len() {
        if out.lattice_coords[i] == out.lattice_coords[i - 1] && out.vertices.len() > 2 {
            let at = if i == out.vertices.len() - 1 { i - 1 } else { i };
            remove_vertex(&mut out, at);
            out.post_processed = true;
        } else {
            i += 1;
        }
    }
    // interior vertices between segments running the same way
    let mut i = 1;
    while i + 1 < out.vertices.len() {
        let c = &out.lattice_coords;
        let d_in = (c[i].0 - c[i - 1].0, c[i].1 - c[i - 1].1);
        let d_out = (c[i + 1].0 - c[i].0, c[i + 1].1 - c[i].1);
        if same_direction(d_in, d_out) {
            remove_vertex(&mut out, i);
            out.post_processed = true;
        } else {
            i += 1;
        }
    }
    if out.closed && out.post_processed {
        let last = out.vertices.len() - 1;
        out.vertices[last] = out.vertices[0];
        out.lattice_coords[last] = out.lattice_coords[0];
        merge_closing_vertex(&mut out);
    }
    out.cost.segments = out.vertices.len() - 1;
    out
}

fn remove_vertex(res: &mut CompressedResult, i: usize) {
    res.vertices.remove(i);
    res.lattice_coords.remove(i);
    res.sources.remove(i);
    let i = i.min(res.ranges.len() - 1).max(1);
    let (_, end) = res.ranges.remove(i);
    res.ranges[i - 1].1 = end;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{rectangle_corners, sampled_outline};

    #[test]
    fn direction_examples() {
        assert!(direction_check((2, 0), 0, 4));
        assert!(direction_check((0, 0), 3, 4));
        assert!(!direction_check((1, 1), 0, 4));
        assert!(direction_check((3, 3), 1, 8));
        assert!(!direction_check((-3, -3), 1, 8));
        assert!(direction_check((0, -2), 3, 4));
        assert_eq!(direction_of((0, 5), 8), Some(2));
        assert_eq!(direction_of((1, 2), 8), None);
    }

    #[test]
    fn transition_examples() {
        assert!(!transition_allowed(0, 2, 4, false));
        assert!(!transition_allowed(3, 1, 4, false));
        assert!(transition_allowed(0, 1, 4, false));
        assert!(!transition_allowed(0, 3, 8, true));
        assert!(!transition_allowed(0, 5, 8, true));
        assert!(transition_allowed(0, 3, 8, false));
        assert!(transition_allowed(0, 1, 8, true));
        assert!(!transition_allowed(1, 5, 8, false));
    }

    #[test]
    fn staircase_is_reproduced() {
        let poly = Polyline::from_xy(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (2.0, 1.0), (2.0, 2.0)], false).unwrap();
        let r = solve_ortho(&poly, &OrthoConfig::new(4, 0.05), 0.0).unwrap();
        assert_eq!(r.cost.segments, 4);
        for (v, s) in r.vertices.iter().zip(poly.vertices()) {
            assert!(v.dist(*s) < 0.05);
        }
    }

    #[test]
    fn axis_aligned_rectangle() {
        let corners = rectangle_corners(8.0, 5.0, Point::new(3.0, 2.0), 0.0);
        let poly = sampled_outline(&corners, 0.5, 0.02, 4).unwrap();
        let r = solve_ortho(&poly, &OrthoConfig::new(4, 0.3), 0.0).unwrap();
        assert_eq!(r.cost.segments, 4);
        assert!(r.closed);
        assert_eq!(r.vertices.first(), r.vertices.last());
        for w in r.lattice_coords.windows(2) {
            assert!(w[0].0 == w[1].0 || w[0].1 == w[1].1);
        }
    }

    #[test]
    fn strip_removes_duplicates() {
        let res = CompressedResult {
            vertices: vec![Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(1.0, 0.0), Point::new(1.0, 1.0)],
            closed: false,
            cost: LexCost::new(3, 0.0),
            ranges: vec![(0, 2), (2, 3), (3, 5)],
            sources: vec![0, 2, 3, 5],
            lattice_coords: vec![(0, 0), (4, 0), (4, 0), (4, 4)],
            post_processed: false,
        };
        let s = strip_zero_segments(&res);
        assert_eq!(s.vertices.len(), 3);
        assert_eq!(s.cost.segments, 2);
        assert!(s.post_processed);
        assert_eq!(s.ranges, vec![(0, 2), (2, 5)]);
        let again = strip_zero_segments(&s);
        assert!(again.vertices == s.vertices);
    }

    #[test]
    fn bad_config() {
        let poly = Polyline::from_xy(&[(0.0, 0.0), (1.0, 0.0)], false).unwrap();
        assert!(solve_ortho(&poly, &OrthoConfig::new(6, 0.1), 0.0).is_err());
        assert!(solve_ortho(&poly, &OrthoConfig::new(4, 0.1).with_q(0.0), 0.0).is_err());
    }
}
