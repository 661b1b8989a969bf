//! The colony loop: every iteration each ant copies a reference tour,
//! relocates a few nodes, repairs with restricted 2-opt; then the iteration
//! best is selected and the MMAS trails are updated.

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::construction::{choose_reference, construct, ChoiceTable, SamplerParams};
use crate::error::{Error, Result};
use crate::heuristic::HeuristicMatrix;
use crate::instance::Instance;
use crate::local_search::{two_opt_full, two_opt_restricted};
use crate::neighbors::NeighborModel;
use crate::pheromone::PheromoneState;
use crate::tour::Tour;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HeuristicSource {
    InverseDistance,
    File(PathBuf),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    pub ants: usize,
    pub iterations: usize,
    pub alpha: f64,
    pub beta: f64,
    pub rho: f64,
    pub p_g: f64,
    pub mne: usize,
    pub k: usize,
    pub bkp: usize,
    pub p_best: f64,
    pub seed: u64,
    pub heuristic_source: HeuristicSource,
    /// Deposit the global-best tour instead of the iteration-best every this
    /// many iterations. Zero means always iteration-best.
    pub gb_deposit_period: usize,
    /// Run the ants of an iteration on the rayon pool.
    pub parallel: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            ants: 100,
            iterations: 100,
            alpha: 1.0,
            beta: 1.0,
            rho: 0.1,
            p_g: 0.01,
            mne: 8,
            k: 20,
            bkp: 64,
            p_best: 0.1,
            seed: 0,
            heuristic_source: HeuristicSource::InverseDistance,
            gb_deposit_period: 10,
            parallel: true,
        }
    }
}

impl SolverConfig {
    pub fn sampler(&self) -> SamplerParams {
        SamplerParams {
            alpha: self.alpha,
            beta: self.beta,
            p_g: self.p_g,
            mne: self.mne,
            ants: self.ants,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.sampler().validate()?;
        if self.k < 1 {
            return Err(Error::InvalidArgument("candidate list size must be at least 1".into()));
        }
        if !(self.rho > 0.0 && self.rho <= 1.0) {
            return Err(Error::InvalidArgument(format!("rho must lie in (0, 1], got {}", self.rho)));
        }
        if !(self.p_best > 0.0 && self.p_best < 1.0) {
            return Err(Error::InvalidArgument(format!(
                "p_best must lie in (0, 1), got {}",
                self.p_best
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceRow {
    pub iteration: usize,
    pub iteration_best: f64,
    pub global_best: f64,
}

#[derive(Debug, Clone)]
pub struct RunResult {
    pub best_tour: Tour,
    pub best_cost: f64,
    /// Cost of the nearest-neighbor + 2-opt tour the run started from.
    pub initial_cost: f64,
    pub trace: Vec<TraceRow>,
    pub wall_time: f64,
    pub iterations_run: usize,
}

impl RunResult {
    /// Everything except the wall time matches.
    pub fn same_outcome(&self, other: &RunResult) -> bool {
        self.best_tour == other.best_tour
            && self.best_cost.to_bits() == other.best_cost.to_bits()
            && self.initial_cost.to_bits() == other.initial_cost.to_bits()
            && self.iterations_run == other.iterations_run
            && self.trace.len() == other.trace.len()
            && self.trace.iter().zip(&other.trace).all(|(a, b)| {
                a.iteration == b.iteration
                    && a.iteration_best.to_bits() == b.iteration_best.to_bits()
                    && a.global_best.to_bits() == b.global_best.to_bits()
            })
    }

    /// `iter,iter_best,global_best`, one row per iteration.
    pub fn write_trace_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "iter,iter_best,global_best")?;
        for row in &self.trace {
            writeln!(out, "{},{},{}", row.iteration, row.iteration_best, row.global_best)?;
        }
        Ok(())
    }
}

/// Stream for ant `ant` in iteration `iteration`: the base seed selects the
/// ChaCha key, the (iteration, ant) pair selects the stream.
pub fn ant_rng(seed: u64, iteration: usize, ant: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((iteration as u64) << 32) | ant as u64);
    rng
}

/// Nearest-neighbor tour from node 0 followed by a fully seeded 2-opt.
pub fn seed_tour(instance: &Instance, nm: &NeighborModel) -> Result<Tour> {
    let mut tour = Tour::nearest_neighbor(instance, 0)?;
    two_opt_full(instance, &mut tour, nm);
    tour.recompute_cost(instance);
    Ok(tour)
}

pub fn solve(instance: &Instance, config: &SolverConfig) -> Result<RunResult> {
    config.validate()?;
    let nm = NeighborModel::build(instance, config.k, config.bkp)?;
    let heuristic = match &config.heuristic_source {
        HeuristicSource::InverseDistance => HeuristicMatrix::inverse_distance(instance, &nm)?,
        HeuristicSource::File(path) => HeuristicMatrix::load(path, &nm)?,
    };
    solve_with(instance, &nm, &heuristic, config)
}

/// Run the colony with a prebuilt neighbor model and heuristic prior.
pub fn solve_with(
    instance: &Instance,
    nm: &NeighborModel,
    heuristic: &HeuristicMatrix,
    config: &SolverConfig,
) -> Result<RunResult> {
    config.validate()?;
    if nm.n() != instance.len() || heuristic.k() != nm.k() || heuristic.values().len() != nm.n() * nm.k() {
        return Err(Error::ShapeMismatch {
            expected: format!("n={} k={}", instance.len(), nm.k()),
            found: format!("n={} k={}", nm.n(), heuristic.k()),
        });
    }
    let clock = Instant::now();
    let params = config.sampler();

    let initial = seed_tour(instance, nm)?;
    let initial_cost = initial.cost();
    let mut global_best = initial.clone();
    let mut iteration_best = initial;
    let mut pheromone = PheromoneState::for_global_best(nm, global_best.cost(), config.rho, config.p_best)?;
    let mut trace = Vec::with_capacity(config.iterations);

    for iteration in 0..config.iterations {
        let table = ChoiceTable::new(&pheromone, heuristic, params.alpha, params.beta);
        let (gb, ib) = (&global_best, &iteration_best);
        let run_ant = |ant: usize| -> Result<Tour> {
            let mut rng = ant_rng(config.seed, iteration, ant);
            let reference = choose_reference(gb, ib, params.p_g, &mut rng);
            let (mut tour, new_edges) = construct(instance, reference, &table, nm, &params, &mut rng)?;
            two_opt_restricted(instance, &mut tour, &new_edges, nm)?;
            Ok(tour)
        };
        let tours: Vec<Tour> = if config.parallel {
            (0..params.ants).into_par_iter().map(run_ant).collect::<Result<_>>()?
        } else {
            (0..params.ants).map(run_ant).collect::<Result<_>>()?
        };

        // lowest cost, first ant on ties
        let mut best = tours
            .into_iter()
            .reduce(|a, b| if b.cost() < a.cost() { b } else { a })
            .expect("at least one ant");
        best.recompute_cost(instance);
        debug_assert!(best.validate(instance).is_ok());

        if best.cost() < global_best.cost() {
            global_best = best.clone();
            pheromone.refresh_bounds(global_best.cost())?;
        }
        iteration_best = best;

        let period = config.gb_deposit_period;
        let deposit_tour = if period > 0 && (iteration + 1) % period == 0 {
            &global_best
        } else {
            &iteration_best
        };
        pheromone.update_best(nm, deposit_tour, 1.0 / deposit_tour.cost())?;

        trace.push(TraceRow {
            iteration: iteration + 1,
            iteration_best: iteration_best.cost(),
            global_best: global_best.cost(),
        });
    }

    Ok(RunResult {
        best_cost: global_best.cost(),
        best_tour: global_best,
        initial_cost,
        trace,
        wall_time: clock.elapsed().as_secs_f64(),
        iterations_run: config.iterations,
    })
}
