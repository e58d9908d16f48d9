//! Noisy quarter circle: segment count and length spread as the tolerance
//! grows.
//!
//!     cargo run --release --example arc -- 200 1

use polymin::generate::generate_arc;
use polymin::{solve, SolveConfig};

fn main() -> polymin::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(200);
    let seed: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(1);
    let arc = generate_arc(1.0, 90.0, n, 0.01, seed)?;
    println!("{:>9} {:>9} {:>7}", "tolerance", "segments", "cv");
    for i in 0..=24 {
        let t = 0.006 + 0.00025 * i as f64;
        let r = solve(&arc, &SolveConfig::new(t))?;
        let len = r.segment_lengths();
        let mean = len.iter().sum::<f64>() / len.len() as f64;
        let sd = (len.iter().map(|l| (l - mean).powi(2)).sum::<f64>() / len.len() as f64).sqrt();
        println!("{t:>9.3} {:>9} {:>7.3}", r.segment_count(), sd / mean);
    }
    Ok(())
}
