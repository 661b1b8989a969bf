//! TSPLIB `EUC_2D` reader/writer and file-format detection.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::instance::{EdgeMetric, Instance};

/// Parse a TSPLIB instance with `EDGE_WEIGHT_TYPE: EUC_2D`.
///
/// Nodes keep file order; their 1-based ids become indices `0..n`.
pub fn parse_tsplib(text: &str) -> Result<Instance> {
    let mut name = None;
    let mut dimension = None;
    let mut weight_type = None;
    let mut coords = Vec::new();
    let mut in_coords = false;

    for raw in text.lines() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if line == "EOF" {
            break;
        }
        // a keyword line ends the coordinate section
        if in_coords && !line.starts_with(|c: char| c.is_ascii_alphabetic()) {
            let mut it = line.split_whitespace();
            let (Some(_id), Some(x), Some(y)) = (it.next(), it.next(), it.next()) else {
                return Err(Error::MalformedInput(format!("bad coordinate line '{line}'")));
            };
            let parse = |s: &str| {
                s.parse::<f64>()
                    .map_err(|_| Error::MalformedInput(format!("bad coordinate '{s}'")))
            };
            coords.push([parse(x)?, parse(y)?]);
            continue;
        }
        in_coords = false;
        if line.starts_with("NODE_COORD_SECTION") {
            in_coords = true;
            continue;
        }
        let (key, value) = match line.split_once(':') {
            Some((k, v)) => (k.trim(), v.trim()),
            None => (line, ""),
        };
        match key {
            "NAME" => name = Some(value.to_string()),
            "DIMENSION" => {
                dimension = Some(value.parse::<usize>().map_err(|_| {
                    Error::MalformedInput(format!("bad DIMENSION '{value}'"))
                })?)
            }
            "EDGE_WEIGHT_TYPE" => weight_type = Some(value.to_string()),
            "TYPE" if value != "TSP" => {
                return Err(Error::UnsupportedFormat(format!("problem TYPE '{value}'")))
            }
            _ => {}
        }
    }

    match weight_type.as_deref() {
        Some("EUC_2D") => {}
        Some(other) => {
            return Err(Error::UnsupportedFormat(format!("EDGE_WEIGHT_TYPE '{other}'")))
        }
        None => return Err(Error::UnsupportedFormat("missing EDGE_WEIGHT_TYPE".into())),
    }
    if let Some(dim) = dimension {
        if dim != coords.len() {
            return Err(Error::MalformedInput(format!(
                "DIMENSION is {dim} but {} coordinates were read",
                coords.len()
            )));
        }
    }
    if coords.is_empty() {
        return Err(Error::MalformedInput("no NODE_COORD_SECTION entries".into()));
    }
    Instance::new(name.unwrap_or_default(), coords, EdgeMetric::EuclidRounded)
}

/// Render as TSPLIB `EUC_2D` with full-precision coordinates.
pub fn write_tsplib(instance: &Instance) -> String {
    let mut out = String::new();
    out.push_str(&format!("NAME : {}\n", instance.name()));
    out.push_str("TYPE : TSP\n");
    out.push_str(&format!("DIMENSION : {}\n", instance.len()));
    out.push_str("EDGE_WEIGHT_TYPE : EUC_2D\n");
    out.push_str("NODE_COORD_SECTION\n");
    for (i, [x, y]) in instance.coords().iter().enumerate() {
        out.push_str(&format!("{} {x:?} {y:?}\n", i + 1));
    }
    out.push_str("EOF\n");
    out
}

/// Load either the internal dump format or a TSPLIB file.
///
/// The instance is named after the TSPLIB `NAME` field when present,
/// otherwise after the file stem.
pub fn read_instance(path: &Path) -> Result<Instance> {
    let text = fs::read_to_string(path)?;
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let first = text.split_whitespace().next().unwrap_or_default();
    if first == "TSP" {
        Instance::parse_dump(&text, stem)
    } else {
        let mut inst = parse_tsplib(&text)?;
        if inst.name().is_empty() {
            inst.set_name(stem);
        }
        Ok(inst)
    }
}
