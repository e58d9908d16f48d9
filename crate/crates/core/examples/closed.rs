//! Closed outlines: the start vertex is chosen by the solver, not the input.
//!
//!     cargo run --release --example closed

use polymin::generate::{octagon_corners, rectangle_corners, sampled_outline};
use polymin::{compress, Point, SolveConfig};

fn main() -> polymin::Result<()> {
    let shapes = [
        ("rectangle", rectangle_corners(12.0, 6.0, Point::ORIGIN, 10.0)),
        ("octagon", octagon_corners(5.0, Point::new(20.0, 0.0))),
    ];
    let cfg = SolveConfig::new(0.2);
    for (name, corners) in shapes {
        let outline = sampled_outline(&corners, 0.3, 0.05, 9)?;
        let r = compress(&outline, &cfg)?;
        println!("{name}: {} samples -> {} segments", outline.len(), r.segment_count());
        for v in &r.vertices {
            println!("  {:8.3} {:8.3}", v.x, v.y);
        }
    }
    Ok(())
}
