//! Vertex counts against Douglas-Peucker on noisy piecewise-linear shapes.
//!
//!     cargo run --release --example baseline -- 0.15

use polymin::baseline::douglas_peucker;
use polymin::generate::noisy_piecewise_linear;
use polymin::{solve, SolveConfig};

fn main() -> polymin::Result<()> {
    let t: f64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(0.15);
    println!("{:>4} {:>6} {:>7} {:>7} {:>6}", "seed", "truth", "source", "polymin", "dp");
    for seed in 0..10u64 {
        let f = noisy_piecewise_linear(5 + seed as usize % 6, 0.2, 0.1, seed)?;
        let ours = solve(&f.noisy, &SolveConfig::new(t))?;
        let dp = douglas_peucker(&f.noisy, t);
        println!(
            "{seed:>4} {:>6} {:>7} {:>7} {:>6}",
            f.truth.len(),
            f.noisy.len(),
            ours.vertices.len(),
            dp.len()
        );
    }
    Ok(())
}
