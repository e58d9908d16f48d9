mod common;

use common::{exhaustive_ortho, random_walk, rel_close};
use polymin::lattice::{candidate_locations, make_lattice, LatticeKind};
use polymin::ortho::solve_ortho;
use polymin::OrthoConfig;

#[test]
fn ortho_matches_exhaustive_search() {
    let mut solved = 0;
    for seed in 0..40u64 {
        let m = if seed % 2 == 0 { 4 } else { 8 };
        let forbid = seed % 4 == 3;
        let n = 2 + (seed % 5) as usize;
        let poly = random_walk(n, 300 + seed);
        let rot = (seed as f64 * 7.0).to_radians();
        let cfg = OrthoConfig::new(m, 1.0).with_q(0.5).with_forbid_sharp(forbid);
        let spec = make_lattice(1.0, 0.5, LatticeKind::Square)
            .unwrap()
            .with_origin(poly.vertices()[0])
            .with_rotation(rot);
        let cands = candidate_locations(&poly, &spec, 1.0);
        let oracle = exhaustive_ortho(poly.vertices(), &cands, m, rot, forbid);
        match (solve_ortho(&poly, &cfg, rot), oracle) {
            (Ok(r), Some((segs, sse))) => {
                assert_eq!(r.segment_count(), segs, "seed {seed}");
                assert!(rel_close(r.cost.sse, sse, 1e-9), "seed {seed}: {} vs {sse}", r.cost.sse);
                solved += 1;
            }
            (Err(_), None) => {}
            (r, o) => panic!("seed {seed}: solver {:?} vs oracle {o:?}", r.map(|r| r.cost)),
        }
    }
    assert!(solved >= 10, "only {solved} instances had a solution");
}
