//! Timing runs on Brownian inputs.

use std::fmt::Write;
use std::time::Instant;

use crate::dp::{solve, SolveConfig};
use crate::error::Result;
use crate::generate::generate_brownian;

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRecord {
    pub n: usize,
    pub seconds: f64,
    pub output_vertices: usize,
    pub mode: String,
    pub tolerance: f64,
    pub seed: u64,
}

pub const CSV_HEADER: &str = "n,seconds,output_vertices,mode,tolerance,seed";

impl BenchRecord {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{:.6},{},{},{},{}",
            self.n, self.seconds, self.output_vertices, self.mode, self.tolerance, self.seed
        )
    }
}

/// Solves one Brownian walk (increment std `sigma`) per size and seed, in
/// order, timing only the solve.
pub fn bench(sizes: &[usize], cfg: &SolveConfig, seeds: &[u64], sigma: f64) -> Result<Vec<BenchRecord>> {
    let mut out = Vec::with_capacity(sizes.len() * seeds.len());
    for &n in sizes {
        for &seed in seeds {
            let poly = generate_brownian(n, sigma, seed)?;
            let t0 = Instant::now();
            let r = solve(&poly, cfg)?;
            out.push(BenchRecord {
                n,
                seconds: t0.elapsed().as_secs_f64(),
                output_vertices: r.vertices.len(),
                mode: "free".into(),
                tolerance: cfg.tolerance,
                seed,
            });
        }
    }
    Ok(out)
}

pub fn to_csv(records: &[BenchRecord]) -> String {
    let mut s = String::from(CSV_HEADER);
    s.push('\n');
    for r in records {
        let _ = writeln!(s, "{}", r.csv_row());
    }
    s
}

/// Least-squares slope of ln(seconds) against ln(n), using the mean time
/// at each size.
pub fn loglog_slope(records: &[BenchRecord]) -> Option<f64> {
    let mut sizes: Vec<usize> = records.iter().map(|r| r.n).collect();
    sizes.sort_unstable();
    sizes.dedup();
    let pts: Vec<(f64, f64)> = sizes
        .iter()
        .map(|&n| {
            let t: Vec<f64> = records.iter().filter(|r| r.n == n).map(|r| r.seconds).collect();
            ((n as f64).ln(), (t.iter().sum::<f64>() / t.len() as f64).ln())
        })
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    Some(sxy / sxx)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_record_per_size_and_seed() {
        let cfg = SolveConfig::new(1.0);
        let r = bench(&[300], &cfg, &[1], 0.25).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].n, 300);
        let r = bench(&[200, 250], &cfg, &[1, 2], 0.25).unwrap();
        assert_eq!(r.iter().map(|x| x.n).collect::<Vec<_>>(), [200, 200, 250, 250]);
        let csv = to_csv(&r);
        assert_eq!(csv.lines().count(), 5);
        assert!(csv.lines().nth(1).unwrap().starts_with("200,"));
    }

    #[test]
    fn slope_of_power_law() {
        let rec = |n: usize, s: f64| BenchRecord {
            n,
            seconds: s,
            output_vertices: 0,
            mode: "free".into(),
            tolerance: 1.0,
            seed: 0,
        };
        let r: Vec<_> = [100, 1000, 10000].iter().map(|&n| rec(n, 1e-6 * (n as f64).powf(1.2))).collect();
        assert!((loglog_slope(&r).unwrap() - 1.2).abs() < 1e-9);
        assert_eq!(loglog_slope(&r[..1]), None);
    }
}
