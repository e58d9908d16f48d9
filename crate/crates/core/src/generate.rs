//! Seeded synthetic inputs.
//!
//! All randomness comes from `ChaCha8Rng` (rand_chacha 0.9) seeded with
//! `seed_from_u64`, so a seed gives the same polyline on every platform.

use std::f64::consts::{FRAC_PI_2, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::geom::{Point, Polyline};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn check_n(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("need n >= 2, got {n}")));
    }
    Ok(())
}

/// Random walk from the origin with normally distributed increments.
pub fn generate_brownian(n: usize, sigma: f64, seed: u64) -> Result<Polyline> {
    check_n(n)?;
    let mut rng = rng(seed);
    let mut p = Point::ORIGIN;
    let mut out = Vec::with_capacity(n);
    out.push(p);
    for _ in 1..n {
        let gx: f64 = rng.sample(StandardNormal);
        let gy: f64 = rng.sample(StandardNormal);
        p = p + Point::new(gx, gy) * sigma;
        out.push(p);
    }
    Polyline::open(out)
}

/// Uniform point in the disk of radius `r` around the origin.
pub fn disk_point(rng: &mut impl Rng, r: f64) -> Point {
    let rho = r * rng.random::<f64>().sqrt();
    Point::unit(rng.random::<f64>() * TAU) * rho
}

/// `n` evenly spaced points on an arc centred at the origin starting at
/// angle 0, each displaced uniformly within a disk of `noise_radius`.
pub fn generate_arc(
    radius: f64,
    sweep_deg: f64,
    n: usize,
    noise_radius: f64,
    seed: u64,
) -> Result<Polyline> {
    check_n(n)?;
    let mut rng = rng(seed);
    let sweep = sweep_deg.to_radians();
    let pts = (0..n)
        .map(|i| {
            let a = sweep * i as f64 / (n - 1) as f64;
            Point::unit(a) * radius + disk_point(&mut rng, noise_radius)
        })
        .collect();
    Polyline::open(pts)
}

/// A ground-truth polyline and a noisy dense sampling of it.
#[derive(Debug, Clone)]
pub struct NoisyFixture {
    pub truth: Polyline,
    pub noisy: Polyline,
}

/// Random piecewise-linear ground truth with `corners` vertices, sampled
/// every `spacing` (corners included) and displaced perpendicular to the
/// segment by `U(-noise, noise)`.
pub fn noisy_piecewise_linear(
    corners: usize,
    spacing: f64,
    noise: f64,
    seed: u64,
) -> Result<NoisyFixture> {
    check_n(corners)?;
    let mut rng = rng(seed);
    let mut heading = rng.random::<f64>() * TAU;
    let mut p = Point::ORIGIN;
    let mut truth = vec![p];
    for _ in 1..corners {
        let len = rng.random_range(2.0..6.0);
        p = p + Point::unit(heading) * len;
        truth.push(p);
        let turn = rng.random_range(30f64..150.0).to_radians();
        heading += if rng.random::<bool>() { turn } else { -turn };
    }
    let mut noisy = Vec::new();
    for (i, w) in truth.windows(2).enumerate() {
        let d = w[1] - w[0];
        let normal = Point::new(-d.y, d.x) * (1.0 / d.norm());
        let steps = (d.norm() / spacing).ceil() as usize;
        let last = if i + 2 == truth.len() { steps } else { steps - 1 };
        for s in 0..=last {
            let base = w[0] + d * (s as f64 / steps as f64);
            noisy.push(base + normal * rng.random_range(-noise..noise));
        }
    }
    Ok(NoisyFixture {
        truth: Polyline::open(truth)?,
        noisy: Polyline::open(noisy)?,
    })
}

/// Closed outline through `corners`, sampled every `spacing` with every
/// sample displaced uniformly within a disk of `noise`.
pub fn sampled_outline(corners: &[Point], spacing: f64, noise: f64, seed: u64) -> Result<Polyline> {
    let mut rng = rng(seed);
    let n = corners.len();
    let mut out = Vec::new();
    for i in 0..n {
        let (a, b) = (corners[i], corners[(i + 1) % n]);
        let steps = ((b - a).norm() / spacing).ceil().max(1.0) as usize;
        for s in 0..steps {
            out.push(a + (b - a) * (s as f64 / steps as f64) + disk_point(&mut rng, noise));
        }
    }
    Polyline::closed(out)
}

/// Corners of a `w × h` rectangle centred at `center`, rotated by
/// `rotation_deg` counterclockwise.
pub fn rectangle_corners(w: f64, h: f64, center: Point, rotation_deg: f64) -> Vec<Point> {
    let r = rotation_deg.to_radians();
    [(-w, -h), (w, -h), (w, h), (-w, h)]
        .iter()
        .map(|&(x, y)| center + Point::new(x / 2.0, y / 2.0).rotated(r))
        .collect()
}

/// Regular octagon with axis-aligned and diagonal edges.
pub fn octagon_corners(radius: f64, center: Point) -> Vec<Point> {
    (0..8)
        .map(|i| center + Point::unit(TAU / 16.0 + i as f64 * TAU / 8.0) * radius)
        .collect()
}

/// A straight run along x with a spike that doubles back `depth` units
/// before continuing upward: a single segment can only bridge it by
/// skipping the excursion.
pub fn zigzag_fixture(depth: f64, spacing: f64) -> Result<Polyline> {
    let corners = [
        Point::new(0.0, 0.0),
        Point::new(10.0, 0.0),
        Point::new(10.0 - depth, 0.0),
        Point::new(10.0 - depth, 10.0),
    ];
    let mut out = Vec::new();
    for w in corners.windows(2) {
        let steps = ((w[1] - w[0]).norm() / spacing).ceil().max(1.0) as usize;
        for s in 0..steps {
            out.push(w[0] + (w[1] - w[0]) * (s as f64 / steps as f64));
        }
    }
    out.push(corners[3]);
    Polyline::open(out)
}

/// `n` points on a quarter turn of a staircase with unit steps.
pub fn staircase(steps: usize) -> Result<Polyline> {
    let mut pts = vec![Point::ORIGIN];
    for i in 0..steps {
        let p = *pts.last().unwrap();
        let d = if i % 2 == 0 { Point::unit(0.0) } else { Point::unit(FRAC_PI_2) };
        pts.push(Point::new((p + d).x.round(), (p + d).y.round()));
    }
    Polyline::open(pts)
}
