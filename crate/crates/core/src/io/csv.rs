use std::fmt::Write;

use super::{comment_id, polyline_at, PolylineDocument};
use crate::error::{Error, Result};

#[derive(Default)]
struct Pending {
    id: Option<String>,
    coords: Vec<(f64, f64)>,
    closed: bool,
    start_line: usize,
}

impl Pending {
    fn flush(&mut self, doc: &mut PolylineDocument) -> Result<()> {
        let p = std::mem::take(self);
        if p.coords.is_empty() {
            if p.closed {
                return Err(Error::parse(p.start_line, 1, "'closed' marker without vertices"));
            }
            // an id comment alone carries over to the next polyline
            self.id = p.id;
            return Ok(());
        }
        doc.push(p.id, polyline_at(p.coords, p.closed, p.start_line, 1)?);
        Ok(())
    }
}

pub(super) fn parse(text: &str) -> Result<PolylineDocument> {
    let mut doc = PolylineDocument::new();
    let mut cur = Pending::default();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            cur.flush(&mut doc)?;
            continue;
        }
        if line.starts_with('#') {
            if let Some(id) = comment_id(line) {
                if !cur.coords.is_empty() {
                    cur.flush(&mut doc)?;
                }
                cur.id = Some(id);
            }
            continue;
        }
        if line.eq_ignore_ascii_case("closed") {
            if cur.coords.is_empty() {
                return Err(Error::parse(line_no, 1, "'closed' marker without vertices"));
            }
            cur.closed = true;
            continue;
        }
        if cur.closed {
            return Err(Error::parse(line_no, 1, "vertex after 'closed' marker"));
        }
        if cur.coords.is_empty() {
            cur.start_line = line_no;
        }
        cur.coords.push(parse_pair(raw, line_no)?);
    }
    cur.flush(&mut doc)?;
    Ok(doc)
}

fn parse_pair(raw: &str, line_no: usize) -> Result<(f64, f64)> {
    let fields: Vec<&str> = raw.split(',').collect();
    if fields.len() != 2 {
        return Err(Error::parse(
            line_no,
            1,
            format!("expected 'x,y', found {} fields", fields.len()),
        ));
    }
    let mut out = [0.0; 2];
    let mut col = 1;
    for (v, f) in out.iter_mut().zip(&fields) {
        let lead = f.len() - f.trim_start().len();
        *v = f.trim().parse::<f64>().map_err(|_| {
            Error::parse(line_no, col + lead, format!("invalid number {:?}", f.trim()))
        })?;
        if !v.is_finite() {
            return Err(Error::parse(line_no, col + lead, "coordinate is not finite"));
        }
        col += f.len() + 1;
    }
    Ok((out[0], out[1]))
}

pub(super) fn write(doc: &PolylineDocument) -> String {
    let mut out = String::new();
    for (i, e) in doc.entries.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        if let Some(id) = &e.id {
            let _ = writeln!(out, "# id={id}");
        }
        for p in e.polyline.vertices() {
            let _ = writeln!(out, "{},{}", p.x, p.y);
        }
        if e.polyline.is_closed() {
            out.push_str("closed\n");
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_polylines() {
        let d = parse("0,0\n1,0\n\n5,5\n6,5").unwrap();
        assert_eq!(d.len(), 2);
        assert!(!d.entries[0].polyline.is_closed());
    }

    #[test]
    fn closed_marker_and_ids() {
        let d = parse("# id=house\n0,0\n1,0\n1,1\n0,0\nclosed\n").unwrap();
        assert_eq!(d.entries[0].id.as_deref(), Some("house"));
        assert!(d.entries[0].polyline.is_closed());
        assert_eq!(d.entries[0].polyline.len(), 3);
    }

    #[test]
    fn errors_carry_position() {
        match parse("0,0\n1, x\n") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (2, 4)),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse("0,0,0\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse("0,0\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse("closed\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse("0,0\n1,1\nclosed\n2,2\n"), Err(Error::Parse { line: 4, .. })));
    }
}
