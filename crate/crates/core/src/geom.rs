//! Points, lines, polylines and prefix moments.
//!
//! [`MomentPrefix`] stores cumulative arc length and first/second moments of
//! the source polyline so that the integral of the squared distance between
//! any vertex range and an arbitrary line is available in constant time.

use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    #[inline]
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    #[inline]
    pub fn dot(self, other: Point) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the 3D cross product.
    #[inline]
    pub fn cross(self, other: Point) -> f64 {
        self.x * other.y - self.y * other.x
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.norm_sq().sqrt()
    }

    #[inline]
    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    #[inline]
    pub fn dist(self, other: Point) -> f64 {
        (self - other).norm()
    }

    /// Counterclockwise rotation about the origin.
    #[inline]
    pub fn rotated(self, angle: f64) -> Point {
        let (s, c) = angle.sin_cos();
        Point::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    #[inline]
    pub fn unit(angle: f64) -> Point {
        let (s, c) = angle.sin_cos();
        Point::new(c, s)
    }
}

impl Add for Point {
    type Output = Point;
    #[inline]
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point {
    type Output = Point;
    #[inline]
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    #[inline]
    fn mul(self, s: f64) -> Point {
        Point::new(self.x * s, self.y * s)
    }
}

impl Neg for Point {
    type Output = Point;
    #[inline]
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

impl From<(f64, f64)> for Point {
    fn from((x, y): (f64, f64)) -> Self {
        Point::new(x, y)
    }
}

/// Projection of `p` onto the unit direction at angle `alpha`.
#[inline]
pub fn project(p: Point, alpha: f64) -> f64 {
    p.dot(Point::unit(alpha))
}

/// An ordered vertex sequence, open or closed.
///
/// Closed polylines never store the repeated closing vertex; [`Polyline::ring`]
/// produces it when needed.
#[derive(Debug, Clone, PartialEq)]
pub struct Polyline {
    vertices: Vec<Point>,
    closed: bool,
}

impl Polyline {
    pub fn new(mut vertices: Vec<Point>, closed: bool) -> Result<Self> {
        if let Some(i) = vertices.iter().position(|p| !p.is_finite()) {
            return Err(Error::InvalidPolyline(format!(
                "vertex {i} has a non-finite coordinate"
            )));
        }
        if closed && vertices.len() > 1 && vertices.first() == vertices.last() {
            vertices.pop();
        }
        if vertices.len() < 2 {
            return Err(Error::InvalidPolyline(format!(
                "need at least 2 vertices, got {}",
                vertices.len()
            )));
        }
        Ok(Polyline { vertices, closed })
    }

    pub fn open(vertices: Vec<Point>) -> Result<Self> {
        Self::new(vertices, false)
    }

    pub fn closed(vertices: Vec<Point>) -> Result<Self> {
        Self::new(vertices, true)
    }

    pub fn from_xy(coords: &[(f64, f64)], closed: bool) -> Result<Self> {
        Self::new(coords.iter().copied().map(Point::from).collect(), closed)
    }

    #[inline]
    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    #[inline]
    pub fn is_closed(&self) -> bool {
        self.closed
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Vertices as drawn: closed polylines repeat the first vertex at the end.
    pub fn ring(&self) -> Vec<Point> {
        let mut out = self.vertices.clone();
        if self.closed {
            out.push(self.vertices[0]);
        }
        out
    }

    pub fn into_vertices(self) -> Vec<Point> {
        self.vertices
    }

    /// Source segments as point pairs, including the closing one.
    pub fn segments(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        let n = self.vertices.len();
        let count = if self.closed { n } else { n - 1 };
        (0..count).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    pub fn length(&self) -> f64 {
        self.segments().map(|(a, b)| a.dist(b)).sum()
    }

    pub fn max_abs_coordinate(&self) -> f64 {
        self.vertices
            .iter()
            .fold(0.0f64, |m, p| m.max(p.x.abs()).max(p.y.abs()))
    }

    /// Inserts evenly spaced vertices so that no segment exceeds `max_len`.
    pub fn densified(&self, max_len: f64) -> Result<Polyline> {
        if !(max_len > 0.0) || !max_len.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "densify length must be positive, got {max_len}"
            )));
        }
        let mut out = Vec::with_capacity(self.vertices.len());
        for (a, b) in self.segments() {
            out.push(a);
            let pieces = (a.dist(b) / max_len).ceil() as usize;
            for s in 1..pieces {
                let t = s as f64 / pieces as f64;
                out.push(a + (b - a) * t);
            }
        }
        if !self.closed {
            out.push(*self.vertices.last().unwrap());
        }
        Polyline::new(out, self.closed)
    }

    pub fn reversed(&self) -> Polyline {
        let mut v = self.vertices.clone();
        v.reverse();
        Polyline {
            vertices: v,
            closed: self.closed,
        }
    }

    pub fn map(&self, f: impl Fn(Point) -> Point) -> Polyline {
        Polyline {
            vertices: self.vertices.iter().map(|&p| f(p)).collect(),
            closed: self.closed,
        }
    }
}

/// The line `{p : normal · p = offset}` with a unit normal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Line {
    pub normal: Point,
    pub offset: f64,
}

impl Line {
    /// Unit direction, rotated clockwise from the normal.
    #[inline]
    pub fn direction(&self) -> Point {
        Point::new(self.normal.y, -self.normal.x)
    }

    #[inline]
    pub fn signed_distance(&self, p: Point) -> f64 {
        self.normal.dot(p) - self.offset
    }
}

/// Line through `a` and `b`, oriented so that its direction points from `a` to `b`.
pub fn line_through(a: Point, b: Point) -> Result<Line> {
    let d = b - a;
    let len = d.norm();
    if len == 0.0 {
        return Err(Error::DegenerateSegment);
    }
    let normal = Point::new(-d.y / len, d.x / len);
    Ok(Line {
        normal,
        offset: normal.dot(a),
    })
}

/// Neumaier-compensated accumulator.
#[derive(Debug, Clone, Copy, Default)]
struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    #[inline]
    fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Arc-length moments of a polyline prefix: `[L, ∫x, ∫y, ∫x², ∫xy, ∫y²]`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Moments {
    pub length: f64,
    pub sx: f64,
    pub sy: f64,
    pub sxx: f64,
    pub sxy: f64,
    pub syy: f64,
}

impl Moments {
    fn as_array(&self) -> [f64; 6] {
        [self.length, self.sx, self.sy, self.sxx, self.sxy, self.syy]
    }

    fn from_array(a: [f64; 6]) -> Self {
        Moments {
            length: a[0],
            sx: a[1],
            sy: a[2],
            sxx: a[3],
            sxy: a[4],
            syy: a[5],
        }
    }

    /// Exact moments of the straight segment `a -> b`.
    pub fn of_segment(a: Point, b: Point) -> Self {
        let l = a.dist(b);
        Moments {
            length: l,
            sx: l * (a.x + b.x) / 2.0,
            sy: l * (a.y + b.y) / 2.0,
            sxx: l * (a.x * a.x + a.x * b.x + b.x * b.x) / 3.0,
            sxy: l * (2.0 * a.x * a.y + a.x * b.y + b.x * a.y + 2.0 * b.x * b.y) / 6.0,
            syy: l * (a.y * a.y + a.y * b.y + b.y * b.y) / 3.0,
        }
    }

    fn minus(&self, other: &Moments) -> Moments {
        let (a, b) = (self.as_array(), other.as_array());
        Moments::from_array(std::array::from_fn(|i| a[i] - b[i]))
    }
}

/// Prefix moments over the open vertex sequence of a polyline.
///
/// Moments are accumulated relative to `origin` (the bounding-box centre) to
/// keep the quadratic terms small.
#[derive(Debug, Clone)]
pub struct MomentPrefix {
    origin: Point,
    prefix: Vec<Moments>,
}

impl MomentPrefix {
    pub fn new(points: &[Point]) -> Self {
        let origin = bbox_center(points);
        let mut acc = [CompensatedSum::default(); 6];
        let mut prefix = Vec::with_capacity(points.len());
        prefix.push(Moments::default());
        for w in points.windows(2) {
            let m = Moments::of_segment(w[0] - origin, w[1] - origin).as_array();
            for (a, v) in acc.iter_mut().zip(m) {
                a.add(v);
            }
            prefix.push(Moments::from_array(std::array::from_fn(|i| acc[i].value())));
        }
        MomentPrefix { origin, prefix }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.prefix.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.prefix.is_empty()
    }

    #[inline]
    pub fn origin(&self) -> Point {
        self.origin
    }

    /// Cumulative arc length up to vertex `i`.
    #[inline]
    pub fn arc_length(&self, i: usize) -> f64 {
        self.prefix[i].length
    }

    /// Moments of vertices `i_s..=i_e`, relative to [`MomentPrefix::origin`].
    pub fn interval(&self, i_s: usize, i_e: usize) -> Result<Moments> {
        if i_s > i_e || i_e >= self.prefix.len() {
            return Err(Error::IndexOutOfRange {
                start: i_s,
                end: i_e,
                len: self.prefix.len(),
            });
        }
        Ok(self.prefix[i_e].minus(&self.prefix[i_s]))
    }

    /// `∫ (normal·p − offset)² ds` over vertices `i_s..=i_e`.
    pub fn integral_sq_dev(&self, i_s: usize, i_e: usize, line: &Line) -> Result<f64> {
        let m = self.interval(i_s, i_e)?;
        Ok(self.line_dev(&m, line))
    }

    /// `∫ |p − center|² ds` over vertices `i_s..=i_e`.
    pub fn integral_sq_dist_to_point(&self, i_s: usize, i_e: usize, center: Point) -> Result<f64> {
        let m = self.interval(i_s, i_e)?;
        let c = center - self.origin;
        let v = m.sxx + m.syy - 2.0 * (c.x * m.sx + c.y * m.sy) + c.norm_sq() * m.length;
        Ok(v.max(0.0))
    }

    #[inline]
    pub(crate) fn line_dev(&self, m: &Moments, line: &Line) -> f64 {
        let n = line.normal;
        let c = line.offset - n.dot(self.origin);
        let v = n.x * n.x * m.sxx + 2.0 * n.x * n.y * m.sxy + n.y * n.y * m.syy
            - 2.0 * c * (n.x * m.sx + n.y * m.sy)
            + c * c * m.length;
        v.max(0.0)
    }
}

impl MomentPrefix {
    /// Smallest deviation integral over all lines through `b`: the lower
    /// eigenvalue of the second-moment matrix about `b`.
    pub(crate) fn min_dev_through(&self, m: &Moments, b: Point) -> f64 {
        let c = b - self.origin;
        let xx = m.sxx - 2.0 * c.x * m.sx + c.x * c.x * m.length;
        let yy = m.syy - 2.0 * c.y * m.sy + c.y * c.y * m.length;
        let xy = m.sxy - c.x * m.sy - c.y * m.sx + c.x * c.y * m.length;
        let tr = xx + yy;
        let lambda = 0.5 * (tr - (xx - yy).hypot(2.0 * xy));
        // keep it below any line deviation evaluated with rounding
        (lambda - 1e-9 * tr.abs()).max(0.0)
    }
}

/// Free-function form of [`MomentPrefix::integral_sq_dev`].
pub fn integral_sq_dev(mp: &MomentPrefix, i_s: usize, i_e: usize, line: &Line) -> Result<f64> {
    mp.integral_sq_dev(i_s, i_e, line)
}

pub fn build_moment_prefix(poly: &Polyline) -> MomentPrefix {
    MomentPrefix::new(&poly.ring())
}

pub(crate) fn bbox_center(points: &[Point]) -> Point {
    if points.is_empty() {
        return Point::ORIGIN;
    }
    let (mut lo, mut hi) = (points[0], points[0]);
    for p in points {
        lo = Point::new(lo.x.min(p.x), lo.y.min(p.y));
        hi = Point::new(hi.x.max(p.x), hi.y.max(p.y));
    }
    (lo + hi) * 0.5
}

/// Distance from `p` to the closed segment `a-b`.
pub fn point_segment_distance(p: Point, a: Point, b: Point) -> f64 {
    let d = b - a;
    let len_sq = d.norm_sq();
    if len_sq == 0.0 {
        return p.dist(a);
    }
    let t = ((p - a).dot(d) / len_sq).clamp(0.0, 1.0);
    p.dist(a + d * t)
}
