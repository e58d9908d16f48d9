//! Reading and writing polylines as CSV, WKT and GeoJSON.
//!
//! CSV holds one `x,y` pair per line, a blank line between polylines and an
//! optional `closed` line after the vertices of a closed one. CSV and WKT
//! accept `#` comment lines; `# id=NAME` names the polyline that follows.
//! GeoJSON keeps the name in the feature's `id` property.

mod csv;
mod geojson;
mod wkt;

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::geom::Polyline;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Wkt,
    GeoJson,
}

impl Format {
    /// Guesses from a file extension.
    pub fn from_path(path: &Path) -> Option<Format> {
        match path.extension()?.to_str()?.to_ascii_lowercase().as_str() {
            "csv" | "txt" => Some(Format::Csv),
            "wkt" => Some(Format::Wkt),
            "json" | "geojson" => Some(Format::GeoJson),
            _ => None,
        }
    }
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "wkt" => Ok(Format::Wkt),
            "geojson" | "json" => Ok(Format::GeoJson),
            _ => Err(Error::InvalidParameter(format!("unknown format {s:?}"))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Csv => "csv",
            Format::Wkt => "wkt",
            Format::GeoJson => "geojson",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DocumentEntry {
    pub id: Option<String>,
    pub polyline: Polyline,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct PolylineDocument {
    pub entries: Vec<DocumentEntry>,
}

impl PolylineDocument {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(polyline: Polyline) -> Self {
        PolylineDocument {
            entries: vec![DocumentEntry { id: None, polyline }],
        }
    }

    pub fn push(&mut self, id: Option<String>, polyline: Polyline) {
        self.entries.push(DocumentEntry { id, polyline });
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn polylines(&self) -> impl Iterator<Item = &Polyline> {
        self.entries.iter().map(|e| &e.polyline)
    }
}

pub fn parse(text: &str, format: Format) -> Result<PolylineDocument> {
    match format {
        Format::Csv => csv::parse(text),
        Format::Wkt => wkt::parse(text),
        Format::GeoJson => geojson::parse(text),
    }
}

pub fn serialize(doc: &PolylineDocument, format: Format) -> String {
    match format {
        Format::Csv => csv::write(doc),
        Format::Wkt => wkt::write(doc),
        Format::GeoJson => geojson::write(doc),
    }
}

/// Builds a polyline, turning validation failures into parse errors at
/// `line`/`column`.
fn polyline_at(
    coords: Vec<(f64, f64)>,
    closed: bool,
    line: usize,
    column: usize,
) -> Result<Polyline> {
    Polyline::from_xy(&coords, closed).map_err(|e| Error::parse(line, column, e.to_string()))
}

/// Parses `# id=NAME` comments.
fn comment_id(comment: &str) -> Option<String> {
    comment
        .trim_start_matches('#')
        .trim()
        .strip_prefix("id=")
        .map(|s| s.trim().to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn doc() -> PolylineDocument {
        let mut d = PolylineDocument::new();
        d.push(
            Some("a".into()),
            Polyline::from_xy(&[(0.1, 0.2), (1.0 / 3.0, -5e-7), (1e10, 2.5)], false).unwrap(),
        );
        d.push(
            None,
            Polyline::from_xy(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0)], true).unwrap(),
        );
        d
    }

    #[test]
    fn round_trip_all_formats() {
        let d = doc();
        for f in [Format::Csv, Format::Wkt, Format::GeoJson] {
            let text = serialize(&d, f);
            assert_eq!(parse(&text, f).unwrap(), d, "{f}:\n{text}");
        }
    }

    #[test]
    fn format_names() {
        assert_eq!("WKT".parse::<Format>().unwrap(), Format::Wkt);
        assert!("shp".parse::<Format>().is_err());
        assert_eq!(Format::from_path(Path::new("x.geojson")), Some(Format::GeoJson));
        assert_eq!(Format::from_path(Path::new("x")), None);
    }
}
