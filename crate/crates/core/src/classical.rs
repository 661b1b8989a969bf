//! Classical Ant System used as a reference point in tests: every ant builds
//! a tour from scratch over all unvisited nodes with `p ∝ tau^a * (1/d)^b`,
//! then every ant deposits `1/C` on its edges after evaporation. Dense
//! trails, no bounds, no local search.

use std::time::Instant;

use rand::Rng;

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::solver::{ant_rng, RunResult, SolverConfig, TraceRow};
use crate::tour::Tour;

#[derive(Debug, Clone)]
pub struct ClassicalColony<'a> {
    instance: &'a Instance,
    n: usize,
    tau: Vec<f64>,
    eta: Vec<f64>,
    alpha: f64,
    beta: f64,
    rho: f64,
}

impl<'a> ClassicalColony<'a> {
    /// Trails start at `ants / C_nn`, with `C_nn` the nearest-neighbor tour cost.
    pub fn new(instance: &'a Instance, config: &SolverConfig) -> Result<Self> {
        config.validate()?;
        let n = instance.len();
        let mut eta = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    let d = instance.distance(i, j);
                    if !(d > 0.0) {
                        return Err(Error::DegenerateInstance(format!(
                            "nodes {i} and {j} coincide"
                        )));
                    }
                    eta[i * n + j] = 1.0 / d;
                }
            }
        }
        let nn = Tour::nearest_neighbor(instance, 0)?;
        let tau0 = config.ants as f64 / nn.cost();
        Ok(Self {
            instance,
            n,
            tau: vec![tau0; n * n],
            eta,
            alpha: config.alpha,
            beta: config.beta,
            rho: config.rho,
        })
    }

    pub fn tau(&self, i: usize, j: usize) -> f64 {
        self.tau[i * self.n + j]
    }

    fn weight(&self, i: usize, j: usize) -> f64 {
        self.tau[i * self.n + j].powf(self.alpha) * self.eta[i * self.n + j].powf(self.beta)
    }

    pub fn construct<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Tour> {
        let n = self.n;
        let mut visited = vec![false; n];
        let mut order = Vec::with_capacity(n);
        let mut cur = rng.gen_range(0..n);
        visited[cur] = true;
        order.push(cur);
        let mut weights = vec![0.0; n];
        for _ in 1..n {
            let mut total = 0.0;
            for j in 0..n {
                weights[j] = if visited[j] { 0.0 } else { self.weight(cur, j) };
                total += weights[j];
            }
            let mut target = rng.gen::<f64>() * total;
            let mut next = usize::MAX;
            for j in 0..n {
                if !visited[j] {
                    next = j;
                    target -= weights[j];
                    if target < 0.0 {
                        break;
                    }
                }
            }
            visited[next] = true;
            order.push(next);
            cur = next;
        }
        Tour::new(self.instance, order)
    }

    /// Evaporate, then let every tour deposit `1/C` on both directions of its edges.
    pub fn deposit_all(&mut self, tours: &[Tour]) {
        let keep = 1.0 - self.rho;
        for t in &mut self.tau {
            *t *= keep;
        }
        for tour in tours {
            let amount = 1.0 / tour.cost();
            for (a, b) in tour.edges() {
                self.tau[a * self.n + b] += amount;
                self.tau[b * self.n + a] += amount;
            }
        }
    }
}

pub fn classical_as_reference(instance: &Instance, config: &SolverConfig) -> Result<RunResult> {
    let clock = Instant::now();
    let mut colony = ClassicalColony::new(instance, config)?;
    let mut best: Option<Tour> = None;
    let mut trace = Vec::with_capacity(config.iterations);
    for iteration in 0..config.iterations {
        let tours: Vec<Tour> = (0..config.ants)
            .map(|ant| colony.construct(&mut ant_rng(config.seed, iteration, ant)))
            .collect::<Result<_>>()?;
        let iter_best = tours
            .iter()
            .min_by(|a, b| a.cost().total_cmp(&b.cost()))
            .expect("at least one ant")
            .clone();
        if best.as_ref().is_none_or(|b| iter_best.cost() < b.cost()) {
            best = Some(iter_best.clone());
        }
        colony.deposit_all(&tours);
        trace.push(TraceRow {
            iteration: iteration + 1,
            iteration_best: iter_best.cost(),
            global_best: best.as_ref().unwrap().cost(),
        });
    }
    let best = match best {
        Some(t) => t,
        None => Tour::nearest_neighbor(instance, 0)?,
    };
    Ok(RunResult {
        best_cost: best.cost(),
        initial_cost: best.cost(),
        best_tour: best,
        trace,
        wall_time: clock.elapsed().as_secs_f64(),
        iterations_run: config.iterations,
    })
}
