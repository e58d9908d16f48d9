//! Reads polylines in one format and writes them in the others.
//!
//!     cargo run --example formats -- input.wkt

use polymin::io::{parse, serialize};
use polymin::{Format, Polyline, PolylineDocument};

fn main() -> anyhow::Result<()> {
    let doc = match std::env::args().nth(1) {
        Some(path) => {
            let format = Format::from_path(path.as_ref()).unwrap_or(Format::Csv);
            parse(&std::fs::read_to_string(&path)?, format)?
        }
        None => {
            let mut d = PolylineDocument::new();
            d.push(Some("road".into()), Polyline::from_xy(&[(0.0, 0.0), (2.5, 1.0), (4.0, 0.5)], false)?);
            d.push(Some("lot".into()), Polyline::from_xy(&[(0.0, 0.0), (3.0, 0.0), (3.0, 2.0), (0.0, 2.0)], true)?);
            d
        }
    };
    for f in [Format::Csv, Format::Wkt, Format::GeoJson] {
        let text = serialize(&doc, f);
        assert_eq!(parse(&text, f)?, doc);
        println!("--- {f}\n{text}");
    }
    Ok(())
}
