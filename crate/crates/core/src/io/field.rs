use std::fmt::Display;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::euler::{GridFunction, GridSpec};
use crate::geometry::Point;
use crate::pipeline::SCHEMA_VERSION;
use crate::transforms::{FieldMeta, TransformField};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        location: format!("line {line}"),
        message: message.into(),
    }
}

/// Writes a grid as CSV: four header lines (`width,W`, `height,H`,
/// `origin,x,y`, `spacing,s`) and then one line per row, row 0 first.
/// Floats are written in shortest round-trip form, so parsing is exact.
pub fn grid_to_csv<T: Display>(spec: &GridSpec, values: &[T]) -> String {
    let mut out = String::with_capacity(values.len() * 8 + 64);
    out.push_str(&format!("width,{}\n", spec.width));
    out.push_str(&format!("height,{}\n", spec.height));
    out.push_str(&format!("origin,{},{}\n", spec.origin.x, spec.origin.y));
    out.push_str(&format!("spacing,{}\n", spec.spacing));
    for row in values.chunks(spec.width) {
        let mut first = true;
        for v in row {
            if !first {
                out.push(',');
            }
            first = false;
            out.push_str(&v.to_string());
        }
        out.push('\n');
    }
    out
}

fn header<'a>(lines: &mut impl Iterator<Item = (usize, &'a str)>, key: &str, n: usize) -> Result<Vec<&'a str>> {
    let (no, line) = lines
        .next()
        .ok_or_else(|| parse_err(0, format!("missing `{key}` header line")))?;
    let mut parts = line.trim().split(',');
    if parts.next() != Some(key) {
        return Err(parse_err(no, format!("expected `{key}` header")));
    }
    let rest: Vec<&str> = parts.map(str::trim).collect();
    if rest.len() != n {
        return Err(parse_err(no, format!("`{key}` needs {n} value(s), got {}", rest.len())));
    }
    Ok(rest)
}

fn num<T: FromStr>(s: &str, line: usize, what: &str) -> Result<T> {
    s.parse()
        .map_err(|_| parse_err(line, format!("cannot parse {what} `{s}`")))
}

/// Parses the CSV layout written by [`grid_to_csv`].
pub fn parse_grid_csv<T: FromStr>(text: &str) -> Result<(GridSpec, Vec<T>)> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty());
    let width: usize = num(header(&mut lines, "width", 1)?[0], 1, "width")?;
    let height: usize = num(header(&mut lines, "height", 1)?[0], 2, "height")?;
    let o = header(&mut lines, "origin", 2)?;
    let origin = Point::new(num(o[0], 3, "origin x")?, num(o[1], 3, "origin y")?);
    let spacing: f64 = num(header(&mut lines, "spacing", 1)?[0], 4, "spacing")?;
    let spec = GridSpec::new(width, height, origin, spacing)
        .map_err(|e| parse_err(4, e.to_string()))?;
    let mut values = Vec::with_capacity(spec.len());
    let mut rows = 0;
    for (no, line) in lines {
        if rows == height {
            return Err(parse_err(no, format!("more than {height} data rows")));
        }
        let before = values.len();
        for (k, cell) in line.split(',').enumerate() {
            values.push(num(cell.trim(), no, &format!("value in column {}", k + 1))?);
        }
        if values.len() - before != width {
            return Err(parse_err(
                no,
                format!("expected {width} values, got {}", values.len() - before),
            ));
        }
        rows += 1;
    }
    if rows != height {
        return Err(parse_err(text.lines().count(), format!("expected {height} data rows, got {rows}")));
    }
    Ok((spec, values))
}

pub fn field_to_csv(field: &TransformField) -> String {
    grid_to_csv(&field.spec, &field.values)
}

pub fn raster_to_csv(h: &GridFunction) -> String {
    grid_to_csv(h.spec(), h.values())
}

/// Parses a raster CSV and validates it as a constructible function.
pub fn parse_raster_csv(text: &str) -> Result<GridFunction> {
    let (spec, values) = parse_grid_csv::<i64>(text)?;
    GridFunction::new(spec, values)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FieldFile {
    pub schema_version: u32,
    pub spec: GridSpec,
    pub meta: FieldMeta,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RasterFile {
    pub schema_version: u32,
    pub spec: GridSpec,
    pub values: Vec<i64>,
}

fn json_err(e: serde_json::Error) -> Error {
    Error::Parse {
        location: format!("line {} column {}", e.line(), e.column()),
        message: e.to_string(),
    }
}

pub fn field_to_json(field: &TransformField) -> String {
    serde_json::to_string(&FieldFile {
        schema_version: SCHEMA_VERSION,
        spec: field.spec,
        meta: field.meta.clone(),
        values: field.values.clone(),
    })
    .expect("field serializes")
}

pub fn parse_field_json(text: &str) -> Result<TransformField> {
    let f: FieldFile = serde_json::from_str(text).map_err(json_err)?;
    let spec = GridSpec::new(f.spec.width, f.spec.height, f.spec.origin, f.spec.spacing)
        .map_err(|e| Error::Parse {
            location: "spec".into(),
            message: e.to_string(),
        })?;
    if f.values.len() != spec.len() {
        return Err(Error::Parse {
            location: "values".into(),
            message: format!("expected {} values, got {}", spec.len(), f.values.len()),
        });
    }
    Ok(TransformField {
        spec,
        values: f.values,
        meta: f.meta,
    })
}

pub fn raster_to_json(h: &GridFunction) -> String {
    serde_json::to_string(&RasterFile {
        schema_version: SCHEMA_VERSION,
        spec: *h.spec(),
        values: h.values().to_vec(),
    })
    .expect("raster serializes")
}

pub fn parse_raster_json(text: &str) -> Result<GridFunction> {
    let f: RasterFile = serde_json::from_str(text).map_err(json_err)?;
    let spec = GridSpec::new(f.spec.width, f.spec.height, f.spec.origin, f.spec.spacing)
        .map_err(|e| Error::Parse {
            location: "spec".into(),
            message: e.to_string(),
        })?;
    if f.values.len() != spec.len() {
        return Err(Error::Parse {
            location: "values".into(),
            message: format!("expected {} values, got {}", spec.len(), f.values.len()),
        });
    }
    GridFunction::new(spec, f.values)
}

/// Parses a raster in either JSON or CSV form, chosen by the first
/// non-blank character.
pub fn parse_raster(text: &str) -> Result<GridFunction> {
    if text.trim_start().starts_with('{') {
        parse_raster_json(text)
    } else {
        parse_raster_csv(text)
    }
}
