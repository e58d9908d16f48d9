//! Candidate vertex locations on a global lattice.
//!
//! Every source vertex gets the lattice nodes strictly closer than the
//! tolerance. All vertices share one lattice, so a node seen from two
//! vertices has bit-identical coordinates in both lists.

use std::f64::consts::{PI, SQRT_2};

use crate::error::{Error, Result};
use crate::geom::{Point, Polyline};

const SQRT_3: f64 = 1.732_050_807_568_877_2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LatticeKind {
    /// Equilateral triangles; the sparsest lattice for a given covering radius.
    Triangular,
    /// Squares; used when output segments are restricted to axis directions.
    Square,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticeSpec {
    pub kind: LatticeKind,
    pub side: f64,
    pub origin: Point,
    pub rotation: f64,
}

/// Lattice whose covering radius is `q * tolerance`.
pub fn make_lattice(tolerance: f64, q: f64, kind: LatticeKind) -> Result<LatticeSpec> {
    if !(tolerance > 0.0) || !tolerance.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "tolerance must be positive, got {tolerance}"
        )));
    }
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "grid proportion q must be in (0, 1), got {q}"
        )));
    }
    let side = match kind {
        LatticeKind::Triangular => q * SQRT_3 * tolerance,
        LatticeKind::Square => q * SQRT_2 * tolerance,
    };
    Ok(LatticeSpec {
        kind,
        side,
        origin: Point::ORIGIN,
        rotation: 0.0,
    })
}

impl LatticeSpec {
    pub fn with_origin(mut self, origin: Point) -> Self {
        self.origin = origin;
        self
    }

    pub fn with_rotation(mut self, rotation: f64) -> Self {
        self.rotation = rotation;
        self
    }

    /// Maximum distance from any point of the plane to its nearest node.
    pub fn covering_radius(&self) -> f64 {
        match self.kind {
            LatticeKind::Triangular => self.side / SQRT_3,
            LatticeKind::Square => self.side / SQRT_2,
        }
    }

    /// Expected number of nodes per disk of the given radius.
    pub fn expected_count(&self, radius: f64) -> f64 {
        let cell = match self.kind {
            LatticeKind::Triangular => self.side * self.side * SQRT_3 / 2.0,
            LatticeKind::Square => self.side * self.side,
        };
        PI * radius * radius / cell
    }

    /// Lattice basis in the unrotated frame.
    fn basis(&self) -> (Point, Point) {
        let s = self.side;
        match self.kind {
            LatticeKind::Triangular => (Point::new(s, 0.0), Point::new(s / 2.0, s * SQRT_3 / 2.0)),
            LatticeKind::Square => (Point::new(s, 0.0), Point::new(0.0, s)),
        }
    }

    /// World position of node `(a, b)`.
    #[inline]
    pub fn node(&self, a: i64, b: i64) -> Point {
        let (e1, e2) = self.basis();
        let local = e1 * a as f64 + e2 * b as f64;
        self.origin + local.rotated(self.rotation)
    }

    /// Nodes strictly closer than `radius` to `p`, sorted by lattice coordinates.
    pub fn nodes_within(&self, p: Point, radius: f64) -> Vec<((i64, i64), Point)> {
        let (e1, e2) = self.basis();
        let local = (p - self.origin).rotated(-self.rotation);
        let b_lo = ((local.y - radius) / e2.y).floor() as i64 - 1;
        let b_hi = ((local.y + radius) / e2.y).ceil() as i64 + 1;
        let mut out = Vec::new();
        for b in b_lo..=b_hi {
            let shift = e2.x * b as f64;
            let a_lo = ((local.x - radius - shift) / e1.x).floor() as i64 - 1;
            let a_hi = ((local.x + radius - shift) / e1.x).ceil() as i64 + 1;
            for a in a_lo..=a_hi {
                let pos = self.node(a, b);
                if pos.dist(p) < radius {
                    out.push(((a, b), pos));
                }
            }
        }
        out.sort_by_key(|&(c, _)| c);
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CandidateLocation {
    pub vertex_index: usize,
    pub location_index: usize,
    pub position: Point,
    pub lattice_coords: (i64, i64),
}

/// Considered locations for every vertex of a vertex sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct CandidateSet {
    per_vertex: Vec<Vec<CandidateLocation>>,
}

impl CandidateSet {
    #[inline]
    pub fn len(&self) -> usize {
        self.per_vertex.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.per_vertex.is_empty()
    }

    #[inline]
    pub fn at(&self, vertex: usize) -> &[CandidateLocation] {
        &self.per_vertex[vertex]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[CandidateLocation]> {
        self.per_vertex.iter().map(Vec::as_slice)
    }

    pub fn total(&self) -> usize {
        self.per_vertex.iter().map(Vec::len).sum()
    }

    pub fn max_per_vertex(&self) -> usize {
        self.per_vertex.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Replaces the locations of `vertex` with a single fixed one.
    pub(crate) fn restrict(&mut self, vertex: usize, loc: CandidateLocation) {
        self.per_vertex[vertex] = vec![CandidateLocation {
            vertex_index: vertex,
            location_index: 0,
            ..loc
        }];
    }

    /// Drops nodes already offered by the previous vertex, keeping at least
    /// the node nearest to each vertex. Lossy: it can remove the optimum.
    pub fn dedup_shared(&mut self, points: &[Point]) {
        for i in 1..self.per_vertex.len() {
            let (before, after) = self.per_vertex.split_at_mut(i);
            let prev = &before[i - 1];
            let cur = &mut after[0];
            let nearest = cur
                .iter()
                .min_by(|a, b| {
                    a.position
                        .dist(points[i])
                        .total_cmp(&b.position.dist(points[i]))
                })
                .map(|c| c.lattice_coords);
            cur.retain(|c| {
                Some(c.lattice_coords) == nearest
                    || !prev.iter().any(|p| p.lattice_coords == c.lattice_coords)
            });
            for (j, c) in cur.iter_mut().enumerate() {
                c.location_index = j;
            }
        }
    }
}

pub(crate) fn candidates_for_points(points: &[Point], spec: &LatticeSpec, tolerance: f64) -> CandidateSet {
    let per_vertex = points
        .iter()
        .enumerate()
        .map(|(i, &p)| {
            spec.nodes_within(p, tolerance)
                .into_iter()
                .enumerate()
                .map(|(j, (coords, position))| CandidateLocation {
                    vertex_index: i,
                    location_index: j,
                    position,
                    lattice_coords: coords,
                })
                .collect()
        })
        .collect();
    CandidateSet { per_vertex }
}

/// Considered locations for every vertex of `poly` (the closing vertex of a
/// closed polyline is not repeated).
pub fn candidate_locations(poly: &Polyline, spec: &LatticeSpec, tolerance: f64) -> CandidateSet {
    candidates_for_points(poly.vertices(), spec, tolerance)
}
