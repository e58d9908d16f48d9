//! Direction-reversal tables.
//!
//! For each of `N_d` tabulated directions, `V[j][i]` is the smallest start
//! index `s` such that no vertex in `s..=i` is followed (within `s..=i`) by a
//! vertex more than `2T` behind it along direction `j`. A segment from vertex
//! `i_s` to `i_e` pointing (approximately) along direction `j` is free of
//! zigzags iff `V[j][i_e] <= i_s`.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::TAU;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geom::{Point, Polyline};

#[derive(Debug, Clone, Copy)]
struct Request {
    projection: f64,
    /// One past the index of the vertex that issued the request.
    next: u32,
}

impl PartialEq for Request {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Request {}

impl PartialOrd for Request {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Request {
    fn cmp(&self, other: &Self) -> Ordering {
        self.projection
            .total_cmp(&other.projection)
            .then(self.next.cmp(&other.next))
    }
}

#[derive(Debug, Clone)]
pub struct ZigzagTables {
    directions: usize,
    n: usize,
    tolerance: f64,
    /// `directions × n`, row-major by direction.
    v: Vec<u32>,
    w: Vec<u32>,
}

impl ZigzagTables {
    pub fn new(points: &[Point], tolerance: f64, directions: usize) -> Result<Self> {
        if directions < 4 {
            return Err(Error::InvalidParameter(format!(
                "need at least 4 zigzag directions, got {directions}"
            )));
        }
        if !(tolerance > 0.0) || !tolerance.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "tolerance must be positive, got {tolerance}"
            )));
        }
        if points.len() >= u32::MAX as usize {
            return Err(Error::InvalidParameter("polyline too long".into()));
        }
        let n = points.len();
        let rows: Vec<Vec<u32>> = (0..directions)
            .into_par_iter()
            .map(|j| direction_row(points, Self::angle_of(directions, j), tolerance))
            .collect();
        let mut w = vec![u32::MAX; n];
        let mut v = Vec::with_capacity(directions * n);
        for row in rows {
            for (wi, &x) in w.iter_mut().zip(&row) {
                *wi = (*wi).min(x);
            }
            v.extend(row);
        }
        Ok(ZigzagTables {
            directions,
            n,
            tolerance,
            v,
            w,
        })
    }

    #[inline]
    fn angle_of(directions: usize, j: usize) -> f64 {
        TAU * j as f64 / directions as f64
    }

    #[inline]
    pub fn directions(&self) -> usize {
        self.directions
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    /// Angle of tabulated direction `j`.
    pub fn angle(&self, j: usize) -> f64 {
        Self::angle_of(self.directions, j)
    }

    #[inline]
    pub fn v(&self, j: usize, i: usize) -> usize {
        self.v[j * self.n + i] as usize
    }

    #[inline]
    pub fn w(&self, i: usize) -> usize {
        self.w[i] as usize
    }

    /// Tabulated direction nearest to `alpha`.
    #[inline]
    pub fn nearest_direction(&self, alpha: f64) -> usize {
        let nd = self.directions as f64;
        let j = (nd / TAU * alpha).round().rem_euclid(nd);
        (j as usize) % self.directions
    }

    /// No backward movement beyond `2T` along `alpha` between `i_s` and `i_e`.
    #[inline]
    pub fn passes(&self, i_s: usize, i_e: usize, alpha: f64) -> bool {
        self.v(self.nearest_direction(alpha), i_e) <= i_s
    }

    /// Every tabulated direction has a reversal inside `i_s..=i_e`.
    #[inline]
    pub fn rejects_all(&self, i_s: usize, i_e: usize) -> bool {
        i_s < self.w(i_e)
    }
}

/// One row of `V`: a max-heap of pending projections; each new vertex pops
/// every earlier vertex more than `2T` ahead of it.
fn direction_row(points: &[Point], alpha: f64, tolerance: f64) -> Vec<u32> {
    let dir = Point::unit(alpha);
    let mut queue: BinaryHeap<Request> = BinaryHeap::new();
    let mut k = 0u32;
    let mut row = Vec::with_capacity(points.len());
    for (i, p) in points.iter().enumerate() {
        let d = p.dot(dir);
        let limit = d + 2.0 * tolerance;
        while let Some(top) = queue.peek() {
            if top.projection > limit {
                k = k.max(top.next);
                queue.pop();
            } else {
                break;
            }
        }
        row.push(k);
        queue.push(Request {
            projection: d,
            next: i as u32 + 1,
        });
    }
    row
}

pub fn build_zigzag_tables(poly: &Polyline, tolerance: f64, directions: usize) -> Result<ZigzagTables> {
    ZigzagTables::new(&poly.ring(), tolerance, directions)
}

/// Pass/fail of the reversal check for a segment at angle `alpha`.
pub fn zigzag_test(zt: &ZigzagTables, i_s: usize, i_e: usize, alpha: f64) -> bool {
    zt.passes(i_s, i_e, alpha)
}

pub fn any_direction_reject(zt: &ZigzagTables, i_s: usize, i_e: usize) -> bool {
    zt.rejects_all(i_s, i_e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn on_x(xs: &[f64]) -> Vec<Point> {
        xs.iter().map(|&x| Point::new(x, 0.0)).collect()
    }

    #[test]
    fn monotone_has_no_reversals() {
        let zt = ZigzagTables::new(&on_x(&[0.0, 1.0, 2.0, 3.0]), 0.1, 64).unwrap();
        for i in 0..4 {
            assert_eq!(zt.v(0, i), 0);
            assert!(!zt.rejects_all(0, i));
            assert!(zt.passes(0, i, 0.0));
        }
    }

    #[test]
    fn hand_trace() {
        // projections 0, 3, 0.5 with T = 1: at i = 2 the request (3, 2) exceeds 2.5
        let zt = ZigzagTables::new(&on_x(&[0.0, 3.0, 0.5]), 1.0, 64).unwrap();
        assert_eq!(zt.v(0, 0), 0);
        assert_eq!(zt.v(0, 1), 0);
        assert_eq!(zt.v(0, 2), 2);
        assert!(!zt.passes(0, 2, 0.0));
        assert!(zt.passes(2, 2, 0.0));
    }

    #[test]
    fn exact_priority_not_popped() {
        // backward movement of exactly 2T is allowed
        let zt = ZigzagTables::new(&on_x(&[2.0, 0.0]), 1.0, 4).unwrap();
        assert_eq!(zt.v(0, 1), 0);
    }

    #[test]
    fn nearest_direction_wraps() {
        let zt = ZigzagTables::new(&on_x(&[0.0, 1.0]), 1.0, 64).unwrap();
        assert_eq!(zt.nearest_direction(0.0), 0);
        assert_eq!(zt.nearest_direction(-0.01), 0);
        assert_eq!(zt.nearest_direction(TAU - 0.01), 0);
        assert_eq!(zt.nearest_direction(std::f64::consts::PI), 32);
        assert_eq!(zt.nearest_direction(-std::f64::consts::FRAC_PI_2), 48);
    }

    #[test]
    fn loop_rejects_every_direction() {
        // a circle of radius 5 traversed once, T = 1: every direction sees a
        // backward movement of 10 > 2T
        let pts: Vec<Point> = (0..=64)
            .map(|i| Point::unit(i as f64 * TAU / 64.0) * 5.0)
            .collect();
        let zt = ZigzagTables::new(&pts, 1.0, 16).unwrap();
        assert!(zt.rejects_all(0, 64));
        for j in 0..16 {
            assert!(!zt.passes(0, 64, zt.angle(j)));
        }
    }

    #[test]
    fn invalid_parameters() {
        assert!(ZigzagTables::new(&on_x(&[0.0, 1.0]), 1.0, 3).is_err());
        assert!(ZigzagTables::new(&on_x(&[0.0, 1.0]), 0.0, 8).is_err());
    }
}
