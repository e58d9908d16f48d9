//! A spike that folds back on itself. Without the endpoint and reversal
//! tests a single segment jumps over it.
//!
//!     cargo run --release --example zigzag

use polymin::generate::zigzag_fixture;
use polymin::verify::sweep;
use polymin::{solve, SolveConfig};

fn main() -> polymin::Result<()> {
    let t = 1.0;
    let src = zigzag_fixture(2.5 * t, 0.25)?;
    for checks in [true, false] {
        let cfg = SolveConfig::new(t).with_topology_checks(checks);
        let r = solve(&src, &cfg)?;
        let s = sweep(&src.ring(), &r.vertices, 16);
        println!(
            "checks {:<5} segments {}  max deviation {:.3}  {}",
            checks,
            r.segment_count(),
            s.source_to_result,
            if s.passes(t, cfg.q) { "ok" } else { "out of tolerance" }
        );
    }
    Ok(())
}
