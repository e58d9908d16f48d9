mod common;

use common::{rel_close, sq_dev};
use polymin::generate::{generate_brownian, rectangle_corners, sampled_outline};
use polymin::verify::sweep;
use polymin::{compress, solve, Point, SolveConfig};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn result_is_within_tolerance(n in 5usize..120, seed in 0u64..10_000, t in 0.3f64..1.5, q in 0.2f64..0.6) {
        let src = generate_brownian(n, 0.25, seed).unwrap();
        let r = solve(&src, &SolveConfig::new(t).with_q(q)).unwrap();
        let s = sweep(src.vertices(), &r.vertices, 16);
        prop_assert!(s.passes(t, q), "{s:?}");
        for (v, &k) in r.vertices.iter().zip(&r.sources) {
            prop_assert!(v.dist(src.vertices()[k]) <= t);
        }
    }

    #[test]
    fn ranges_tile_the_source_and_cost_telescopes(n in 3usize..80, seed in 0u64..10_000, t in 0.3f64..1.5) {
        let src = generate_brownian(n, 0.25, seed).unwrap();
        let r = solve(&src, &SolveConfig::new(t)).unwrap();
        prop_assert_eq!(r.ranges.len(), r.segment_count());
        prop_assert_eq!(r.cost.segments, r.segment_count());
        prop_assert_eq!(r.ranges[0].0, 0);
        prop_assert_eq!(r.ranges.last().unwrap().1, n - 1);
        let mut sse = 0.0;
        for (i, &(s, e)) in r.ranges.iter().enumerate() {
            prop_assert!(s < e);
            prop_assert_eq!((s, e), (r.sources[i], r.sources[i + 1]));
            sse += sq_dev(&src.vertices()[s..=e], r.vertices[i], r.vertices[i + 1]);
        }
        prop_assert!(rel_close(r.cost.sse, sse, 1e-9), "{} vs {}", r.cost.sse, sse);
    }

    #[test]
    fn pruning_is_neutral(n in 5usize..150, seed in 0u64..10_000, t in 0.3f64..1.5) {
        let src = generate_brownian(n, 0.25, seed).unwrap();
        let a = solve(&src, &SolveConfig::new(t)).unwrap();
        let b = solve(&src, &SolveConfig::new(t).with_prune(false)).unwrap();
        prop_assert_eq!(a.cost.segments, b.cost.segments);
        prop_assert!(rel_close(a.cost.sse, b.cost.sse, 1e-6));
    }

    #[test]
    fn closed_outlines_close(seed in 0u64..1000, rot in 0f64..90.0, t in 0.15f64..0.5) {
        let src = sampled_outline(&rectangle_corners(6.0, 3.0, Point::ORIGIN, rot), 0.3, 0.05, seed).unwrap();
        let r = compress(&src, &SolveConfig::new(t)).unwrap();
        prop_assert!(r.closed);
        prop_assert_eq!(r.vertices.first(), r.vertices.last());
        prop_assert!(r.segment_count() >= 3);
        let s = sweep(&src.ring(), &r.vertices, 16);
        prop_assert!(s.passes(t, 0.3), "{s:?}");
    }
}

#[test]
fn reversed_input_needs_the_same_segment_count() {
    for seed in 0..10 {
        let src = generate_brownian(200, 0.25, seed).unwrap();
        let cfg = SolveConfig::new(1.0);
        let a = solve(&src, &cfg).unwrap();
        let b = solve(&src.reversed(), &cfg).unwrap();
        assert_eq!(a.segment_count(), b.segment_count(), "seed {seed}");
    }
}

#[test]
fn larger_tolerance_never_needs_more_segments() {
    for seed in 0..8 {
        let src = generate_brownian(400, 0.25, 40 + seed).unwrap();
        let counts: Vec<usize> = [0.5, 1.0, 2.0]
            .iter()
            .map(|&t| solve(&src, &SolveConfig::new(t)).unwrap().segment_count())
            .collect();
        assert!(counts.windows(2).all(|w| w[0] >= w[1]), "seed {seed}: {counts:?}");
    }
}
