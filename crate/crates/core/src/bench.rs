//! Batch evaluation: repeated runs per instance, optional gaps against
//! externally supplied optima.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::instance::{gap_percent, Instance};
use crate::solver::{solve, SolverConfig};

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub name: String,
    pub n: usize,
    pub mean_cost: f64,
    pub optimal: Option<f64>,
    pub gap: Option<f64>,
    pub mean_time: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
    pub runs: usize,
    pub metric: String,
}

fn mean(values: impl Iterator<Item = f64>) -> Option<f64> {
    let (sum, count) = values.fold((0.0, 0usize), |(s, c), v| (s + v, c + 1));
    (count > 0).then(|| sum / count as f64)
}

impl BenchReport {
    pub fn mean_cost(&self) -> Option<f64> {
        mean(self.rows.iter().map(|r| r.mean_cost))
    }

    /// Mean over the rows that have a gap.
    pub fn mean_gap(&self) -> Option<f64> {
        mean(self.rows.iter().filter_map(|r| r.gap))
    }

    pub fn mean_time(&self) -> Option<f64> {
        mean(self.rows.iter().map(|r| r.mean_time))
    }

    pub fn render_table(&self) -> String {
        let width = self.rows.iter().map(|r| r.name.len()).max().unwrap_or(4).max(8);
        let mut out = String::new();
        writeln!(out, "metric: {}  runs: {}", self.metric, self.runs).unwrap();
        writeln!(
            out,
            "{:<width$} {:>6} {:>14} {:>14} {:>9} {:>10}",
            "instance", "n", "cost", "optimal", "gap(%)", "time(s)"
        )
        .unwrap();
        for r in &self.rows {
            let optimal = r.optimal.map_or_else(|| "-".to_string(), |o| format!("{o:.4}"));
            let gap = r.gap.map_or_else(|| "n/a".to_string(), |g| format!("{g:.4}"));
            writeln!(
                out,
                "{:<width$} {:>6} {:>14.4} {:>14} {:>9} {:>10.3}",
                r.name, r.n, r.mean_cost, optimal, gap, r.mean_time
            )
            .unwrap();
        }
        let cost = self.mean_cost().map_or_else(|| "-".into(), |c| format!("{c:.4}"));
        let gap = self.mean_gap().map_or_else(|| "n/a".into(), |g| format!("{g:.4}"));
        let time = self.mean_time().map_or_else(|| "-".into(), |t| format!("{t:.3}"));
        writeln!(out, "mean cost: {cost}  mean gap(%): {gap}  mean time(s): {time}").unwrap();
        out
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let mut w = csv::Writer::from_path(path).map_err(csv_err)?;
        w.write_record(["name", "n", "cost", "optimal", "gap", "time"]).map_err(csv_err)?;
        for r in &self.rows {
            w.write_record([
                r.name.clone(),
                r.n.to_string(),
                r.mean_cost.to_string(),
                r.optimal.map(|o| o.to_string()).unwrap_or_default(),
                r.gap.map(|g| g.to_string()).unwrap_or_default(),
                r.mean_time.to_string(),
            ])
            .map_err(csv_err)?;
        }
        w.flush()?;
        Ok(())
    }
}

fn csv_err(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        other => Error::MalformedInput(format!("{other:?}")),
    }
}

/// Read `name,optimal` rows. A header row is optional.
pub fn read_optima(path: &Path) -> Result<HashMap<String, f64>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(csv_err)?;
    let mut optima = HashMap::new();
    for (line, record) in reader.records().enumerate() {
        let record = record.map_err(csv_err)?;
        if record.len() < 2 {
            return Err(Error::MalformedInput(format!("optima line {}: expected name,optimal", line + 1)));
        }
        match record[1].parse::<f64>() {
            Ok(v) => {
                optima.insert(record[0].to_string(), v);
            }
            Err(_) if line == 0 => {} // header
            Err(_) => {
                return Err(Error::MalformedInput(format!(
                    "optima line {}: bad value '{}'",
                    line + 1,
                    &record[1]
                )))
            }
        }
    }
    Ok(optima)
}

/// Solve every instance `runs` times with seeds `0..runs` and average.
pub fn run_bench(
    instances: &[Instance],
    optima: &HashMap<String, f64>,
    runs: usize,
    config: &SolverConfig,
) -> Result<BenchReport> {
    if runs == 0 {
        return Err(Error::InvalidArgument("runs must be at least 1".into()));
    }
    let mut rows = Vec::with_capacity(instances.len());
    for inst in instances {
        let mut costs = Vec::with_capacity(runs);
        let mut times = Vec::with_capacity(runs);
        for seed in 0..runs as u64 {
            let res = solve(inst, &SolverConfig { seed, ..config.clone() })?;
            costs.push(res.best_cost);
            times.push(res.wall_time);
        }
        let mean_cost = mean(costs.into_iter()).unwrap();
        let optimal = optima.get(inst.name()).copied();
        let gap = optimal.and_then(|o| gap_percent(mean_cost, o).ok());
        rows.push(BenchRow {
            name: inst.name().to_string(),
            n: inst.len(),
            mean_cost,
            optimal,
            gap,
            mean_time: mean(times.into_iter()).unwrap(),
        });
    }
    let metric = {
        let mut metrics: Vec<&str> = instances.iter().map(|i| i.metric().as_str()).collect();
        metrics.sort_unstable();
        metrics.dedup();
        metrics.join("+")
    };
    Ok(BenchReport { rows, runs, metric })
}
