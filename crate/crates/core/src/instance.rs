use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// How the distance between two coordinates is measured.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeMetric {
    /// Plain Euclidean distance.
    EuclidReal,
    /// Euclidean distance rounded to the nearest integer (TSPLIB `EUC_2D`).
    EuclidRounded,
}

impl EdgeMetric {
    pub fn as_str(self) -> &'static str {
        match self {
            EdgeMetric::EuclidReal => "real",
            EdgeMetric::EuclidRounded => "rounded",
        }
    }
}

impl fmt::Display for EdgeMetric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for EdgeMetric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "real" | "euclid_real" => Ok(EdgeMetric::EuclidReal),
            "rounded" | "euclid_rounded" => Ok(EdgeMetric::EuclidRounded),
            other => Err(Error::InvalidArgument(format!("unknown edge metric '{other}'"))),
        }
    }
}

/// A symmetric 2D TSP instance. Distances are computed on demand.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    name: String,
    coords: Vec<[f64; 2]>,
    metric: EdgeMetric,
}

impl Instance {
    pub fn new(name: impl Into<String>, coords: Vec<[f64; 2]>, metric: EdgeMetric) -> Result<Self> {
        if coords.len() < 3 {
            return Err(Error::InvalidArgument(format!(
                "an instance needs at least 3 nodes, got {}",
                coords.len()
            )));
        }
        if let Some(i) = coords.iter().position(|c| !c[0].is_finite() || !c[1].is_finite()) {
            return Err(Error::InvalidArgument(format!("coordinate {i} is not finite")));
        }
        Ok(Self { name: name.into(), coords, metric })
    }

    /// `n` points drawn i.i.d. uniformly from the unit square.
    ///
    /// The stream is `ChaCha8Rng::seed_from_u64(seed)` and every point consumes
    /// two `f64` draws (x then y), each built as `(next_u64 >> 11) * 2^-53`.
    pub fn generate_random(n: usize, seed: u64) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidArgument(format!("n must be at least 3, got {n}")));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let coords = (0..n).map(|_| [rng.gen::<f64>(), rng.gen::<f64>()]).collect();
        Self::new(format!("rand{n}_s{seed}"), coords, EdgeMetric::EuclidReal)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.coords.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    pub fn coords(&self) -> &[[f64; 2]] {
        &self.coords
    }

    pub fn metric(&self) -> EdgeMetric {
        self.metric
    }

    pub fn with_metric(mut self, metric: EdgeMetric) -> Self {
        self.metric = metric;
        self
    }

    #[inline]
    pub fn distance(&self, i: usize, j: usize) -> f64 {
        let [xi, yi] = self.coords[i];
        let [xj, yj] = self.coords[j];
        let (dx, dy) = (xi - xj, yi - yj);
        let d = (dx * dx + dy * dy).sqrt();
        match self.metric {
            EdgeMetric::EuclidReal => d,
            // TSPLIB nint(): floor(d + 0.5)
            EdgeMetric::EuclidRounded => (d + 0.5).floor(),
        }
    }

    /// Length of the closed tour visiting `order` and returning to its start.
    pub fn tour_cost(&self, order: &[usize]) -> Result<f64> {
        check_permutation(order, self.len())?;
        Ok(self.cycle_length(order))
    }

    /// Closed-cycle length without validating `order`.
    pub(crate) fn cycle_length(&self, order: &[usize]) -> f64 {
        let n = order.len();
        (0..n).map(|t| self.distance(order[t], order[(t + 1) % n])).sum()
    }

    /// Render in the internal dump format: `TSP <n> <metric>` followed by one
    /// `<x> <y>` line per node. Floats use the shortest representation that
    /// parses back to the same value.
    pub fn to_dump_string(&self) -> String {
        let mut out = format!("TSP {} {}\n", self.len(), self.metric);
        for [x, y] in &self.coords {
            out.push_str(&format!("{x:?} {y:?}\n"));
        }
        out
    }

    pub fn parse_dump(text: &str, name: impl Into<String>) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::MalformedInput("empty instance dump".into()))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 3 || fields[0] != "TSP" {
            return Err(Error::MalformedInput(format!("bad dump header '{header}'")));
        }
        let n: usize = fields[1]
            .parse()
            .map_err(|_| Error::MalformedInput(format!("bad node count '{}'", fields[1])))?;
        let metric: EdgeMetric = fields[2]
            .parse()
            .map_err(|_| Error::UnsupportedFormat(format!("edge metric '{}'", fields[2])))?;
        let mut coords = Vec::with_capacity(n);
        for line in lines {
            let mut it = line.split_whitespace();
            let (Some(x), Some(y), None) = (it.next(), it.next(), it.next()) else {
                return Err(Error::MalformedInput(format!("bad coordinate line '{line}'")));
            };
            let parse = |s: &str| {
                s.parse::<f64>()
                    .map_err(|_| Error::MalformedInput(format!("bad number '{s}'")))
            };
            coords.push([parse(x)?, parse(y)?]);
        }
        if coords.len() != n {
            return Err(Error::MalformedInput(format!(
                "header declares {n} nodes but {} coordinate lines follow",
                coords.len()
            )));
        }
        Self::new(name, coords, metric)
    }
}

pub(crate) fn check_permutation(order: &[usize], n: usize) -> Result<()> {
    if order.len() != n {
        return Err(Error::InvalidTour(format!(
            "expected {n} nodes, got {}",
            order.len()
        )));
    }
    let mut seen = vec![false; n];
    for &v in order {
        if v >= n {
            return Err(Error::InvalidTour(format!("node {v} out of range 0..{n}")));
        }
        if std::mem::replace(&mut seen[v], true) {
            return Err(Error::InvalidTour(format!("node {v} visited twice")));
        }
    }
    Ok(())
}

/// Relative optimality gap in percent.
pub fn gap_percent(cost: f64, optimal: f64) -> Result<f64> {
    if !(optimal > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "optimal cost must be positive, got {optimal}"
        )));
    }
    Ok((cost - optimal) / optimal * 100.0)
}
