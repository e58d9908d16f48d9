//! Compress random walks of growing length and report the reduction.
//!
//!     cargo run --release --example brownian -- 10000 5

use std::time::Instant;

use polymin::generate::generate_brownian;
use polymin::{solve, SolveConfig};

fn main() -> polymin::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(10_000);
    let seeds: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(3);
    let prune = args.next().map_or(true, |s| s != "noprune");
    let cfg = SolveConfig::new(1.0).with_prune(prune);
    println!("{:>6} {:>8} {:>9} {:>8} {:>10}", "seed", "n", "vertices", "ratio", "seconds");
    for seed in 0..seeds {
        let poly = generate_brownian(n, 0.25, seed)?;
        let t = Instant::now();
        let res = solve(&poly, &cfg)?;
        let secs = t.elapsed().as_secs_f64();
        let m = res.vertices.len();
        println!("{seed:>6} {n:>8} {m:>9} {:>8.1} {secs:>10.3}", n as f64 / m as f64);
    }
    Ok(())
}
