//! Independent reference computations shared by the integration tests.
#![allow(dead_code)]

use polymin::dp::Compressor;
use polymin::geom::{Point, Polyline};
use polymin::lattice::CandidateSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random open polyline with `n` vertices and steps of length 0.3..2.5.
pub fn random_walk(n: usize, seed: u64) -> Polyline {
    let mut r = rng(seed);
    let mut p = Point::new(0.0, 0.0);
    let mut heading: f64 = r.random_range(0.0..std::f64::consts::TAU);
    let mut pts = vec![p];
    for _ in 1..n {
        heading += r.random_range(-1.6..1.6);
        p = p + Point::unit(heading) * r.random_range(0.3..2.5);
        pts.push(p);
    }
    Polyline::open(pts).unwrap()
}

/// Simpson's rule over each source segment; exact for the quadratic
/// integrands used here.
pub fn integrate(points: &[Point], f: impl Fn(Point) -> f64) -> f64 {
    points
        .windows(2)
        .map(|w| {
            let l = w[0].dist(w[1]);
            l / 6.0 * (f(w[0]) + 4.0 * f((w[0] + w[1]) * 0.5) + f(w[1]))
        })
        .sum()
}

/// `∫ d²` of `points` to the infinite line through `a` and `b`, or to the
/// point `a` when they coincide.
pub fn sq_dev(points: &[Point], a: Point, b: Point) -> f64 {
    let d = b - a;
    let len = d.norm();
    if len == 0.0 {
        return integrate(points, |p| (p - a).norm_sq());
    }
    integrate(points, |p| (d.cross(p - a) / len).powi(2))
}

/// `∫ d²` of `points` to the line through `b` with direction angle `angle`.
pub fn sq_dev_dir(points: &[Point], b: Point, angle: f64) -> f64 {
    let u = Point::unit(angle);
    integrate(points, |p| u.cross(p - b).powi(2))
}

pub fn lex_less(a: (usize, f64), b: (usize, f64)) -> bool {
    a.0 < b.0 || (a.0 == b.0 && a.1 < b.1)
}

/// Every chain of breaks `0 = k0 < k1 < ... = N-1` with a location at each
/// break whose consecutive pairs pass the compressor's segment test.
/// Returns the lexicographically least (segments, deviation).
pub fn exhaustive_free(c: &Compressor) -> Option<(usize, f64)> {
    let pts = c.points();
    let n = pts.len();
    let cands = c.candidates();
    let mut best: Option<(usize, f64)> = None;
    fn walk(
        c: &Compressor,
        cands: &CandidateSet,
        pts: &[Point],
        at: (usize, usize),
        segs: usize,
        sse: f64,
        best: &mut Option<(usize, f64)>,
    ) {
        let n = pts.len();
        if at.0 == n - 1 {
            if best.is_none_or(|b| lex_less((segs, sse), b)) {
                *best = Some((segs, sse));
            }
            return;
        }
        let a = cands.at(at.0)[at.1].position;
        for k in at.0 + 1..n {
            for (j, loc) in cands.at(k).iter().enumerate() {
                if !c.check(at, (k, j)) {
                    continue;
                }
                let e = sq_dev(&pts[at.0..=k], a, loc.position);
                walk(c, cands, pts, (k, j), segs + 1, sse + e, best);
            }
        }
    }
    for j in 0..cands.at(0).len() {
        walk(c, cands, pts, (0, j), 0, 0.0, &mut best);
    }
    let _ = n;
    best
}

/// Direct definition of the reversal table entry: the smallest `s` such that
/// no `a < b` in `s..=i` has `proj(a) - proj(b) > 2T` along `angle`.
pub fn v_direct(points: &[Point], tolerance: f64, angle: f64, i: usize) -> usize {
    let (c, s) = (angle.cos(), angle.sin());
    let proj: Vec<f64> = points.iter().map(|p| p.x * c + p.y * s).collect();
    (0..=i)
        .find(|&start| {
            (start..=i).all(|a| (a + 1..=i).all(|b| proj[a] - proj[b] <= 2.0 * tolerance))
        })
        .unwrap()
}

/// Unit lattice steps of the `m` directions, counterclockwise from +x.
fn steps(m: usize) -> Vec<(i64, i64)> {
    let all = [(1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1), (0, -1), (1, -1)];
    all.iter().step_by(8 / m).copied().collect()
}

fn aligned(v: (i64, i64), s: (i64, i64)) -> bool {
    // v = t * s for some integer t > 0
    let t = if s.0 != 0 { v.0 / s.0 } else { v.1 / s.1 };
    t > 0 && v == (t * s.0, t * s.1)
}

/// Exhaustive search over every location and segment-direction sequence
/// of an open polyline in orthogonal mode. Returns (segments, deviation).
pub fn exhaustive_ortho(
    pts: &[Point],
    cands: &CandidateSet,
    m: usize,
    rotation: f64,
    forbid_sharp: bool,
) -> Option<(usize, f64)> {
    let st = steps(m);
    let turn_ok = |qp: usize, q: usize| {
        let d = (q + m - qp) % m;
        d != m / 2 && !(m == 8 && forbid_sharp && (d == 3 || d == 5))
    };
    let mut best = None;
    // state: vertex k, location j, direction of the segment entering k
    #[allow(clippy::too_many_arguments)]
    fn walk(
        k: usize,
        j: usize,
        q_in: Option<usize>,
        segs: usize,
        sse: f64,
        ctx: &(&[Point], &CandidateSet, usize, f64, &[(i64, i64)]),
        turn_ok: &dyn Fn(usize, usize) -> bool,
        best: &mut Option<(usize, f64)>,
    ) {
        let (pts, cands, m, rot, st) = *ctx;
        if k == pts.len() - 1 {
            let total = (segs.max(1), sse);
            if best.is_none_or(|b| lex_less(total, b)) {
                *best = Some(total);
            }
            return;
        }
        let a = cands.at(k)[j].lattice_coords;
        for (jn, loc) in cands.at(k + 1).iter().enumerate() {
            let v = (loc.lattice_coords.0 - a.0, loc.lattice_coords.1 - a.1);
            for q in 0..m {
                if v != (0, 0) && !aligned(v, st[q]) {
                    continue;
                }
                if q_in.is_some_and(|qp| !turn_ok(qp, q)) {
                    continue;
                }
                let changes = usize::from(q_in.is_some_and(|qp| qp != q));
                let angle = rot + std::f64::consts::TAU * q as f64 / m as f64;
                let e = sq_dev_dir(&pts[k..=k + 1], loc.position, angle);
                let segs = if q_in.is_none() { 1 } else { segs + changes };
                walk(k + 1, jn, Some(q), segs, sse + e, ctx, turn_ok, best);
            }
        }
    }
    let ctx = (pts, cands, m, rotation, st.as_slice());
    for j in 0..cands.at(0).len() {
        walk(0, j, None, 0, 0.0, &ctx, &turn_ok, &mut best);
    }
    best
}

pub fn cv(values: &[f64]) -> f64 {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n).sqrt() / mean
}

pub fn rel_close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs()).max(1e-300)
}
