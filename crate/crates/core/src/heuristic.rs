//! Heuristic prior `H` over candidate edges.
//!
//! Values are stored row-major, aligned index-for-index with
//! [`NeighborModel::cand`]. Either the classical `1/d` rule or a learned
//! matrix read from a HEUR v1 file:
//!
//! ```text
//! HEUR 1 <n> <k>
//! <j>:<value> <j>:<value> ...   (n rows, k pairs each, 0-based neighbor ids)
//! ```
//!
//! File rows may list neighbors in any order; every candidate edge of the
//! solver's neighbor model must appear in the row.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::neighbors::NeighborModel;

/// Relative floor applied to loaded rows: `value >= FLOOR_RATIO * row_max`.
pub const FLOOR_RATIO: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub struct HeuristicMatrix {
    k: usize,
    values: Vec<f64>,
}

impl HeuristicMatrix {
    pub fn inverse_distance(instance: &Instance, nm: &NeighborModel) -> Result<Self> {
        let k = nm.k();
        let mut values = Vec::with_capacity(nm.n() * k);
        for i in 0..nm.n() {
            for &j in nm.cand(i) {
                let d = instance.distance(i, j);
                if !(d > 0.0) {
                    return Err(Error::DegenerateInstance(format!(
                        "nodes {i} and {j} are at distance {d}"
                    )));
                }
                values.push(1.0 / d);
            }
        }
        Ok(Self { k, values })
    }

    pub fn load(path: &Path, nm: &NeighborModel) -> Result<Self> {
        Self::parse(&fs::read_to_string(path)?, nm)
    }

    pub fn parse(text: &str, nm: &NeighborModel) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::CorruptFile("empty heuristic file".into()))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 4 || fields[0] != "HEUR" || fields[1] != "1" {
            return Err(Error::CorruptFile(format!("bad HEUR header '{header}'")));
        }
        let parse_dim = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| Error::CorruptFile(format!("bad dimension '{s}'")))
        };
        let (n, k) = (parse_dim(fields[2])?, parse_dim(fields[3])?);
        if n != nm.n() || k != nm.k() {
            return Err(Error::ShapeMismatch {
                expected: format!("n={} k={}", nm.n(), nm.k()),
                found: format!("n={n} k={k}"),
            });
        }

        let mut values = Vec::with_capacity(n * k);
        let mut row_map = HashMap::with_capacity(k);
        let mut rows = 0;
        for (i, line) in lines.enumerate() {
            if i >= n {
                return Err(Error::CorruptFile(format!("more than {n} rows")));
            }
            rows += 1;
            row_map.clear();
            for pair in line.split_whitespace() {
                let (j, v) = pair
                    .split_once(':')
                    .ok_or_else(|| Error::CorruptFile(format!("row {i}: bad pair '{pair}'")))?;
                let j: usize = j
                    .parse()
                    .map_err(|_| Error::CorruptFile(format!("row {i}: bad index '{j}'")))?;
                let v: f64 = v
                    .parse()
                    .map_err(|_| Error::CorruptFile(format!("row {i}: bad value '{v}'")))?;
                if !v.is_finite() || v < 0.0 {
                    return Err(Error::CorruptFile(format!("row {i}: invalid value {v} for {j}")));
                }
                row_map.insert(j, v);
            }
            if row_map.len() != k {
                return Err(Error::ShapeMismatch {
                    expected: format!("{k} entries in row {i}"),
                    found: format!("{}", row_map.len()),
                });
            }
            let start = values.len();
            for &j in nm.cand(i) {
                let v = *row_map.get(&j).ok_or_else(|| {
                    Error::CorruptFile(format!("row {i}: candidate edge to {j} missing"))
                })?;
                values.push(v);
            }
            let row = &mut values[start..];
            let max = row.iter().copied().fold(0.0, f64::max);
            if !(max > 0.0) {
                return Err(Error::CorruptFile(format!("row {i} has no positive value")));
            }
            let floor = FLOOR_RATIO * max;
            for v in row.iter_mut() {
                *v = v.max(floor);
            }
        }
        if rows != n {
            return Err(Error::ShapeMismatch {
                expected: format!("{n} rows"),
                found: format!("{rows}"),
            });
        }
        Ok(Self { k, values })
    }

    /// Serialize in HEUR v1 using the neighbor model's candidate order.
    pub fn to_heur_string(&self, nm: &NeighborModel) -> String {
        let mut out = format!("HEUR 1 {} {}\n", nm.n(), self.k);
        for i in 0..nm.n() {
            for (r, &j) in nm.cand(i).iter().enumerate() {
                if r > 0 {
                    out.push(' ');
                }
                write!(out, "{j}:{:?}", self.row(i)[r]).unwrap();
            }
            out.push('\n');
        }
        out
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i * self.k..(i + 1) * self.k]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn k(&self) -> usize {
        self.k
    }
}
