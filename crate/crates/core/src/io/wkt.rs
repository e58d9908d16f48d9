use std::fmt::Write;

use super::{comment_id, polyline_at, PolylineDocument};
use crate::error::{Error, Result};
use crate::geom::Polyline;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Word(String),
    Number(f64),
    Open,
    Close,
    Comma,
    Comment(String),
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    for (li, line) in text.lines().enumerate() {
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let (line, column) = (li + 1, i + 1);
            let push = |out: &mut Vec<Token>, tok| out.push(Token { tok, line, column });
            match c {
                c if c.is_whitespace() => i += 1,
                '#' => {
                    push(&mut out, Tok::Comment(chars[i..].iter().collect()));
                    break;
                }
                '(' => {
                    push(&mut out, Tok::Open);
                    i += 1;
                }
                ')' => {
                    push(&mut out, Tok::Close);
                    i += 1;
                }
                ',' => {
                    push(&mut out, Tok::Comma);
                    i += 1;
                }
                c if c.is_ascii_alphabetic() => {
                    let start = i;
                    while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                        i += 1;
                    }
                    let w: String = chars[start..i].iter().collect();
                    push(&mut out, Tok::Word(w.to_ascii_uppercase()));
                }
                c if c.is_ascii_digit() || matches!(c, '-' | '+' | '.') => {
                    let start = i;
                    while i < chars.len()
                        && (chars[i].is_ascii_alphanumeric() || matches!(chars[i], '-' | '+' | '.'))
                    {
                        i += 1;
                    }
                    let s: String = chars[start..i].iter().collect();
                    let v: f64 = s
                        .parse()
                        .map_err(|_| Error::parse(line, column, format!("invalid number {s:?}")))?;
                    if !v.is_finite() {
                        return Err(Error::parse(line, column, "coordinate is not finite"));
                    }
                    push(&mut out, Tok::Number(v));
                }
                other => {
                    return Err(Error::parse(line, column, format!("unexpected character {other:?}")))
                }
            }
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    end: (usize, usize),
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.toks.get(self.pos)
    }

    fn here(&self) -> (usize, usize) {
        self.peek().map_or(self.end, |t| (t.line, t.column))
    }

    fn error<T>(&self, msg: impl Into<String>) -> Result<T> {
        let (l, c) = self.here();
        Err(Error::parse(l, c, msg))
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<()> {
        match self.peek() {
            Some(t) if t.tok == want => {
                self.pos += 1;
                Ok(())
            }
            _ => self.error(format!("expected {what}")),
        }
    }

    fn eat(&mut self, want: &Tok) -> bool {
        if self.peek().is_some_and(|t| &t.tok == want) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Result<f64> {
        match self.peek() {
            Some(Token { tok: Tok::Number(v), .. }) => {
                let v = *v;
                self.pos += 1;
                Ok(v)
            }
            _ => self.error("expected a number"),
        }
    }

    /// `( x y, x y, ... )`
    fn coords(&mut self, closed: bool) -> Result<Polyline> {
        let (line, column) = self.here();
        self.expect(Tok::Open, "'('")?;
        let mut pts = Vec::new();
        loop {
            let x = self.number()?;
            let y = self.number()?;
            pts.push((x, y));
            if !self.eat(&Tok::Comma) {
                break;
            }
        }
        self.expect(Tok::Close, "')' or ','")?;
        if closed && pts.first() != pts.last() {
            return Err(Error::parse(line, column, "polygon ring is not closed"));
        }
        polyline_at(pts, closed, line, column)
    }

    fn geometry(&mut self, out: &mut Vec<Polyline>) -> Result<()> {
        let word = match self.peek() {
            Some(Token { tok: Tok::Word(w), .. }) => w.clone(),
            _ => return self.error("expected a geometry keyword"),
        };
        self.pos += 1;
        if self.eat(&Tok::Word("EMPTY".into())) {
            return Ok(());
        }
        match word.as_str() {
            "LINESTRING" => out.push(self.coords(false)?),
            "POLYGON" => self.list(out, |p, out| {
                out.push(p.coords(true)?);
                Ok(())
            })?,
            "MULTILINESTRING" => self.list(out, |p, out| {
                out.push(p.coords(false)?);
                Ok(())
            })?,
            "GEOMETRYCOLLECTION" => self.list(out, |p, out| p.geometry(out))?,
            other => {
                self.pos -= 1;
                return self.error(format!("unsupported geometry {other}"));
            }
        }
        Ok(())
    }

    fn list(
        &mut self,
        out: &mut Vec<Polyline>,
        mut item: impl FnMut(&mut Self, &mut Vec<Polyline>) -> Result<()>,
    ) -> Result<()> {
        self.expect(Tok::Open, "'('")?;
        loop {
            item(self, out)?;
            if !self.eat(&Tok::Comma) {
                break;
            }
        }
        self.expect(Tok::Close, "')' or ','")
    }
}

pub(super) fn parse(text: &str) -> Result<PolylineDocument> {
    let toks = tokenize(text)?;
    let lines = text.lines().count().max(1);
    let last_len = text.lines().last().map_or(0, |l| l.chars().count());
    let mut p = Parser {
        toks,
        pos: 0,
        end: (lines, last_len + 1),
    };
    let mut doc = PolylineDocument::new();
    let mut id = None;
    while let Some(t) = p.peek() {
        if let Tok::Comment(c) = &t.tok {
            if let Some(name) = comment_id(c) {
                id = Some(name);
            }
            p.pos += 1;
            continue;
        }
        let mut found = Vec::new();
        p.geometry(&mut found)?;
        for (i, poly) in found.into_iter().enumerate() {
            doc.push(if i == 0 { id.take() } else { None }, poly);
        }
        id = None;
    }
    Ok(doc)
}

fn write_ring(out: &mut String, poly: &Polyline) {
    out.push('(');
    for (i, p) in poly.ring().iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        let _ = write!(out, "{} {}", p.x, p.y);
    }
    out.push(')');
}

pub(super) fn write(doc: &PolylineDocument) -> String {
    let mut out = String::new();
    for e in &doc.entries {
        if let Some(id) = &e.id {
            let _ = writeln!(out, "# id={id}");
        }
        if e.polyline.is_closed() {
            out.push_str("POLYGON (");
            write_ring(&mut out, &e.polyline);
            out.push(')');
        } else {
            out.push_str("LINESTRING ");
            write_ring(&mut out, &e.polyline);
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linestring() {
        let d = parse("LINESTRING (0 0, 1 1)").unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d.entries[0].polyline.len(), 2);
    }

    #[test]
    fn polygon_collapses_closing_vertex() {
        let d = parse("POLYGON ((0 0, 4 0, 4 3, 0 0))").unwrap();
        let p = &d.entries[0].polyline;
        assert!(p.is_closed());
        assert_eq!(p.len(), 3);
    }

    #[test]
    fn collections_and_case() {
        let d = parse("geometrycollection (LineString (0 0, 1 0), MULTILINESTRING ((0 0, 1 1), (2 2, 3 3)))\nLINESTRING EMPTY").unwrap();
        assert_eq!(d.len(), 3);
    }

    #[test]
    fn errors_carry_position() {
        match parse("LINESTRING (0 0,\n 1 x)") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (2, 4)),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse("POINT (1 2)"), Err(Error::Parse { line: 1, column: 1, .. })));
        assert!(matches!(parse("POLYGON ((0 0, 1 0, 1 1))"), Err(Error::Parse { .. })));
        assert!(matches!(parse("LINESTRING (0 0, 1 1"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse("LINESTRING (0 0 0, 1 1)"), Err(Error::Parse { .. })));
    }
}
