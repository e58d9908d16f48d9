//! Writes an SVG of a short random walk, its compression and the
//! considered locations.
//!
//!     cargo run --release --example plot -- walk.svg

use polymin::dp::Compressor;
use polymin::generate::generate_brownian;
use polymin::svg::render_svg;
use polymin::{solve, SolveConfig};

fn main() -> anyhow::Result<()> {
    let path = std::env::args().nth(1).unwrap_or_else(|| "walk.svg".into());
    let src = generate_brownian(60, 0.25, 5)?;
    let cfg = SolveConfig::new(0.5);
    let r = solve(&src, &cfg)?;
    let cands = Compressor::new(src.vertices().to_vec(), &cfg)?.candidates().clone();
    std::fs::write(&path, render_svg(&src, &r.polyline(), Some(&cands)))?;
    println!("{} -> {} vertices, wrote {path}", src.len(), r.vertices.len());
    Ok(())
}
