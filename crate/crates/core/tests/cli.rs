use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use polymin::io::{parse, Format};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_polymin"))
}

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("polymin-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn stdout(o: &Output) -> String {
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn generate_and_compress_are_deterministic() {
    let gen = |seed: &str| stdout(&run(&["generate", "brownian", "-n", "400", "--seed", seed], ""));
    let a = gen("5");
    assert_eq!(a, gen("5"));
    assert_ne!(a, gen("6"));
    assert_eq!(parse(&a, Format::Csv).unwrap().entries[0].polyline.len(), 400);

    let compress = || stdout(&run(&["compress", "-t", "1", "--output-format", "wkt"], &a));
    let c = compress();
    assert_eq!(c, compress());
    assert!(c.starts_with("LINESTRING ("));

    let arc = stdout(&run(&["generate", "arc", "-n", "100", "--seed", "3", "--output-format", "geojson"], ""));
    assert_eq!(arc, stdout(&run(&["generate", "arc", "-n", "100", "--seed", "3", "--output-format", "geojson"], "")));
    assert_eq!(parse(&arc, Format::GeoJson).unwrap().len(), 1);
}

#[test]
fn exit_codes() {
    let o = run(&["compress", "-t", "1"], "0,0\n1,oops\n");
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));

    let o = run(&["compress", "-t", "0.1", "--mode", "ortho", "--rotation", "0"], "0,0\n10,10\n");
    assert_eq!(o.status.code(), Some(3));

    let o = run(&["compress", "--tolerance=-1"], "0,0\n1,1\n");
    assert_eq!(o.status.code(), Some(1));

    let o = run(&["compress", "--no-such-flag"], "");
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn modes_and_files() {
    let input = tmp("square.wkt");
    std::fs::write(&input, "POLYGON ((0 0, 4 0, 4 0.01, 4 3, 2 3.02, 0 3, 0 0))\n").unwrap();
    let svg = tmp("square.svg");
    let out = tmp("square.json");
    let o = run(
        &[
            "compress",
            input.to_str().unwrap(),
            "-t",
            "0.2",
            "--mode",
            "ortho",
            "--strip-zero-segments",
            "--svg",
            svg.to_str().unwrap(),
            "-o",
            out.to_str().unwrap(),
            "--output-format",
            "geojson",
        ],
        "",
    );
    stdout(&o);
    let doc = parse(&std::fs::read_to_string(&out).unwrap(), Format::GeoJson).unwrap();
    let p = &doc.entries[0].polyline;
    assert!(p.is_closed());
    assert_eq!(p.len(), 4);
    assert!(std::fs::read_to_string(&svg).unwrap().starts_with("<svg"));

    let o = run(&["compress", "-t", "0.2", "--mode", "diag45", "--forbid-sharp", "--closed"], "0,0\n4,0\n4,3\n0,3\n");
    assert_eq!(parse(&stdout(&o), Format::Csv).unwrap().entries[0].polyline.len(), 4);

    let o = run(&["baseline-dp", "-t", "1"], "0,0\n1,0.1\n2,0\n3,5\n4,0\n");
    assert_eq!(stdout(&o), "0,0\n2,0\n3,5\n4,0\n");
    let o = run(&["baseline-dp", "-t", "2"], "0,0\n1,0.1\n2,0\n3,5\n4,0\n");
    assert_eq!(stdout(&o), "0,0\n3,5\n4,0\n");
}

#[test]
fn bench_emits_one_record_per_run() {
    let text = stdout(&run(&["bench", "--sizes", "200,300", "--seeds", "1"], ""));
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,seconds,output_vertices,mode,tolerance,seed");
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("200,") && lines[2].starts_with("300,"));
}
