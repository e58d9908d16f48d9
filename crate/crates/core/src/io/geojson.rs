use serde_json::{json, Map, Value};

use super::{polyline_at, PolylineDocument};
use crate::error::{Error, Result};
use crate::geom::Polyline;

fn invalid<T>(path: &str, msg: impl std::fmt::Display) -> Result<T> {
    // serde_json::Value carries no positions, so structural problems are
    // reported against the document start with a JSON path
    Err(Error::parse(1, 1, format!("{path}: {msg}")))
}

fn coords(v: &Value, path: &str) -> Result<Vec<(f64, f64)>> {
    let Some(arr) = v.as_array() else {
        return invalid(path, "expected an array of positions");
    };
    arr.iter()
        .enumerate()
        .map(|(i, p)| {
            let xy = p.as_array().filter(|a| a.len() >= 2);
            match xy.map(|a| (a[0].as_f64(), a[1].as_f64())) {
                Some((Some(x), Some(y))) => Ok((x, y)),
                _ => invalid(&format!("{path}[{i}]"), "expected [x, y]"),
            }
        })
        .collect()
}

fn line(v: &Value, path: &str) -> Result<Polyline> {
    polyline_at(coords(v, path)?, false, 1, 1)
}

fn ring(v: &Value, path: &str) -> Result<Polyline> {
    let pts = coords(v, path)?;
    if pts.first() != pts.last() {
        return invalid(path, "polygon ring is not closed");
    }
    polyline_at(pts, true, 1, 1)
}

fn each<'a>(v: &'a Value, path: &str) -> Result<impl Iterator<Item = (String, &'a Value)>> {
    let Some(arr) = v.as_array() else {
        return invalid(path, "expected an array");
    };
    let path = path.to_string();
    Ok(arr.iter().enumerate().map(move |(i, x)| (format!("{path}[{i}]"), x)))
}

fn geometry(g: &Value, path: &str, out: &mut Vec<Polyline>) -> Result<()> {
    if g.is_null() {
        return Ok(());
    }
    let kind = g.get("type").and_then(Value::as_str).unwrap_or("");
    let c = g.get("coordinates").unwrap_or(&Value::Null);
    let cpath = format!("{path}.coordinates");
    match kind {
        "LineString" => out.push(line(c, &cpath)?),
        "MultiLineString" => {
            for (p, l) in each(c, &cpath)? {
                out.push(line(l, &p)?);
            }
        }
        "Polygon" => {
            for (p, r) in each(c, &cpath)? {
                out.push(ring(r, &p)?);
            }
        }
        "MultiPolygon" => {
            for (p, poly) in each(c, &cpath)? {
                for (p, r) in each(poly, &p)? {
                    out.push(ring(r, &p)?);
                }
            }
        }
        "GeometryCollection" => {
            let gs = g.get("geometries").unwrap_or(&Value::Null);
            for (p, sub) in each(gs, &format!("{path}.geometries"))? {
                geometry(sub, &p, out)?;
            }
        }
        "" => return invalid(path, "missing \"type\""),
        other => return invalid(path, format!("unsupported geometry type {other:?}")),
    }
    Ok(())
}

fn feature(f: &Value, path: &str, doc: &mut PolylineDocument) -> Result<()> {
    let id = f
        .get("properties")
        .and_then(|p| p.get("id"))
        .or_else(|| f.get("id"))
        .and_then(|v| match v {
            Value::String(s) => Some(s.clone()),
            Value::Number(n) => Some(n.to_string()),
            _ => None,
        });
    let mut found = Vec::new();
    geometry(
        f.get("geometry").unwrap_or(&Value::Null),
        &format!("{path}.geometry"),
        &mut found,
    )?;
    let mut id = id;
    for poly in found {
        doc.push(id.take(), poly);
    }
    Ok(())
}

pub(super) fn parse(text: &str) -> Result<PolylineDocument> {
    let root: Value = serde_json::from_str(text)
        .map_err(|e| Error::parse(e.line().max(1), e.column().max(1), e.to_string()))?;
    let mut doc = PolylineDocument::new();
    match root.get("type").and_then(Value::as_str) {
        Some("FeatureCollection") => {
            let fs = root.get("features").unwrap_or(&Value::Null);
            for (p, f) in each(fs, "$.features")? {
                feature(f, &p, &mut doc)?;
            }
        }
        Some("Feature") => feature(&root, "$", &mut doc)?,
        _ => {
            let mut found = Vec::new();
            geometry(&root, "$", &mut found)?;
            for poly in found {
                doc.push(None, poly);
            }
        }
    }
    Ok(doc)
}

pub(super) fn write(doc: &PolylineDocument) -> String {
    let features: Vec<Value> = doc
        .entries
        .iter()
        .map(|e| {
            let pts: Vec<Value> = e.polyline.ring().iter().map(|p| json!([p.x, p.y])).collect();
            let geometry = if e.polyline.is_closed() {
                json!({ "type": "Polygon", "coordinates": [pts] })
            } else {
                json!({ "type": "LineString", "coordinates": pts })
            };
            let mut props = Map::new();
            if let Some(id) = &e.id {
                props.insert("id".into(), Value::String(id.clone()));
            }
            json!({ "type": "Feature", "properties": props, "geometry": geometry })
        })
        .collect();
    let mut s = serde_json::to_string_pretty(&json!({
        "type": "FeatureCollection",
        "features": features,
    }))
    .expect("a Value always serializes");
    s.push('\n');
    s
}
