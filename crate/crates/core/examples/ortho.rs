//! Building-style outlines: segments restricted to a rotated square grid,
//! optionally with diagonals.
//!
//!     cargo run --release --example ortho

use polymin::generate::{octagon_corners, rectangle_corners, sampled_outline};
use polymin::ortho::rotation_search;
use polymin::{OrthoConfig, Point};

fn main() -> polymin::Result<()> {
    let rect = sampled_outline(&rectangle_corners(20.0, 10.0, Point::ORIGIN, 20.0), 0.5, 0.05, 1)?;
    let (deg, r) = rotation_search(&rect, &OrthoConfig::new(4, 0.5))?;
    println!("rectangle: rotation {deg} deg, {} segments", r.segment_count());

    let oct = sampled_outline(&octagon_corners(10.0, Point::ORIGIN), 0.5, 0.05, 2)?;
    for forbid in [false, true] {
        let cfg = OrthoConfig::new(8, 0.5).with_forbid_sharp(forbid);
        let (deg, r) = rotation_search(&oct, &cfg)?;
        println!(
            "octagon (forbid sharp: {forbid}): rotation {deg} deg, {} segments",
            r.segment_count()
        );
    }
    Ok(())
}
