use polymin::dp::Compressor;
use polymin::generate::generate_brownian;
use polymin::svg::render_svg;
use polymin::{solve, SolveConfig};

fn path_points(d: &str) -> Vec<(f64, f64)> {
    let nums: Vec<f64> = d
        .split(|c: char| c.is_whitespace() || c == 'M' || c == 'L' || c == 'Z')
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().unwrap())
        .collect();
    nums.chunks(2).map(|c| (c[0], c[1])).collect()
}

#[test]
fn result_path_parses_back_to_the_result() {
    let src = generate_brownian(80, 0.25, 12).unwrap();
    let cfg = SolveConfig::new(0.6);
    let r = solve(&src, &cfg).unwrap();
    let cands = Compressor::new(src.vertices().to_vec(), &cfg).unwrap().candidates().clone();
    let text = render_svg(&src, &r.polyline(), Some(&cands));
    let doc = roxmltree::Document::parse(&text).unwrap();
    let root = doc.root_element();
    assert_eq!(root.tag_name().name(), "svg");

    let vb: Vec<f64> = root.attribute("viewBox").unwrap().split(' ').map(|s| s.parse().unwrap()).collect();
    let path = |id| {
        doc.descendants()
            .find(|n| n.attribute("id") == Some(id))
            .unwrap()
    };
    let result = path("result");
    assert_eq!(result.attribute("stroke"), Some("red"));
    assert_eq!(path("source").attribute("stroke"), Some("blue"));
    // the viewBox maps data (x, y) to (x, -y)
    let got = path_points(result.attribute("d").unwrap());
    assert_eq!(got.len(), r.vertices.len());
    for ((x, y), v) in got.iter().zip(&r.vertices) {
        assert!((x - v.x).abs() <= 1e-6 && (-y - v.y).abs() <= 1e-6);
        assert!(*x > vb[0] && *x < vb[0] + vb[2] && *y > vb[1] && *y < vb[1] + vb[3]);
    }
    assert_eq!(doc.descendants().filter(|n| n.has_tag_name("circle")).count(), cands.total());

    // 5% margin on both axes
    let xs = src.vertices().iter().map(|p| p.x).chain(cands.iter().flatten().map(|c| c.position.x));
    let (lo, hi) = xs.fold((f64::MAX, f64::MIN), |(l, h), x| (l.min(x), h.max(x)));
    assert!(((lo - vb[0]) / (hi - lo) - 0.05).abs() < 1e-9);
    assert!((vb[2] / (hi - lo) - 1.1).abs() < 1e-9);
}

#[test]
fn without_candidates_there_are_two_paths() {
    let src = generate_brownian(30, 0.25, 1).unwrap();
    let r = solve(&src, &SolveConfig::new(0.5)).unwrap();
    let text = render_svg(&src, &r.polyline(), None);
    let doc = roxmltree::Document::parse(&text).unwrap();
    assert_eq!(doc.descendants().filter(|n| n.has_tag_name("path")).count(), 2);
    assert_eq!(doc.descendants().filter(|n| n.has_tag_name("circle")).count(), 0);
}
