//! Focused tour construction.
//!
//! An ant copies a reference tour, walks it from a random start and, at each
//! step, samples the next node with the pheromone/heuristic transition rule.
//! If the sampled node is not already the successor, it is relocated to follow
//! the current node. Once the tour differs from the reference in `mne` edges
//! the rest of the reference is kept as is.

use rand::Rng;

use crate::error::{Error, Result};
use crate::heuristic::HeuristicMatrix;
use crate::instance::Instance;
use crate::neighbors::NeighborModel;
use crate::pheromone::PheromoneState;
use crate::tour::Tour;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SamplerParams {
    pub alpha: f64,
    pub beta: f64,
    /// Probability of copying the global-best tour instead of the iteration-best.
    pub p_g: f64,
    /// Stop modifying once this many edges differ from the reference.
    pub mne: usize,
    pub ants: usize,
}

impl Default for SamplerParams {
    fn default() -> Self {
        Self { alpha: 1.0, beta: 1.0, p_g: 0.01, mne: 8, ants: 100 }
    }
}

impl SamplerParams {
    pub fn validate(&self) -> Result<()> {
        let bad = |what: String| Err(Error::InvalidArgument(what));
        if !(self.alpha >= 0.0) || !self.alpha.is_finite() {
            return bad(format!("alpha must be >= 0, got {}", self.alpha));
        }
        if !(self.beta >= 0.0) || !self.beta.is_finite() {
            return bad(format!("beta must be >= 0, got {}", self.beta));
        }
        if !(0.0..=1.0).contains(&self.p_g) {
            return bad(format!("p_g must lie in [0, 1], got {}", self.p_g));
        }
        if self.mne < 1 {
            return bad("mne must be at least 1".into());
        }
        if self.ants < 1 {
            return bad("at least one ant is required".into());
        }
        Ok(())
    }
}

/// Frozen `tau^alpha * H^beta` for every candidate entry. Built once per
/// iteration and shared read-only by all ants.
#[derive(Debug, Clone)]
pub struct ChoiceTable {
    k: usize,
    weights: Vec<f64>,
}

impl ChoiceTable {
    pub fn new(tau: &PheromoneState, heuristic: &HeuristicMatrix, alpha: f64, beta: f64) -> Self {
        let pow = |x: f64, e: f64| {
            if e == 1.0 {
                x
            } else if e == 0.0 {
                1.0
            } else {
                x.powf(e)
            }
        };
        let weights = tau
            .values()
            .iter()
            .zip(heuristic.values())
            .map(|(&t, &h)| pow(t, alpha) * pow(h, beta))
            .collect();
        Self { k: heuristic.k(), weights }
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.weights[i * self.k..(i + 1) * self.k]
    }
}

/// `global_best` with probability `p_g`, else `iteration_best`. The ant
/// copies whichever is returned before modifying it.
pub fn choose_reference<'a, R: Rng + ?Sized>(
    global_best: &'a Tour,
    iteration_best: &'a Tour,
    p_g: f64,
    rng: &mut R,
) -> &'a Tour {
    if rng.gen::<f64>() < p_g {
        global_best
    } else {
        iteration_best
    }
}

/// Next node after `i`.
///
/// Unvisited candidates are drawn by roulette on the choice table. When all
/// candidates are visited, the first unvisited backup neighbor is taken, and
/// failing that the nearest unvisited node overall.
pub fn select_next<R: Rng + ?Sized>(
    instance: &Instance,
    i: usize,
    visited: &[bool],
    table: &ChoiceTable,
    nm: &NeighborModel,
    rng: &mut R,
) -> Result<usize> {
    let cand = nm.cand(i);
    let weights = table.row(i);
    let mut total = 0.0;
    let mut open = 0usize;
    let mut last_open = usize::MAX;
    for (&j, &w) in cand.iter().zip(weights) {
        if !visited[j] {
            total += w;
            open += 1;
            last_open = j;
        }
    }
    if open == 1 {
        return Ok(last_open);
    }
    if open > 1 {
        if !(total > 0.0) || !total.is_finite() {
            // no usable weights: uniform over open candidates
            let pick = rng.gen_range(0..open);
            return Ok(cand.iter().copied().filter(|&j| !visited[j]).nth(pick).unwrap());
        }
        let mut target = rng.gen::<f64>() * total;
        for (&j, &w) in cand.iter().zip(weights) {
            if !visited[j] {
                target -= w;
                if target < 0.0 {
                    return Ok(j);
                }
            }
        }
        return Ok(last_open);
    }
    if let Some(&j) = nm.backup(i).iter().find(|&&j| !visited[j]) {
        return Ok(j);
    }
    let mut best = None;
    let mut best_d = f64::INFINITY;
    for (j, &seen) in visited.iter().enumerate() {
        if !seen && j != i {
            let d = instance.distance(i, j);
            if d < best_d {
                best_d = d;
                best = Some(j);
            }
        }
    }
    best.ok_or(Error::NoFeasibleNode(i))
}

/// A relocation of `v` to directly after `u`, with its cost change.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RelocationMove {
    pub u: usize,
    pub v: usize,
    pub delta: f64,
}

fn check_relocation(tour: &Tour, u: usize, v: usize) -> Result<()> {
    let n = tour.len();
    if u >= n || v >= n {
        return Err(Error::DegenerateMove(format!("node out of range ({u}, {v})")));
    }
    if u == v {
        return Err(Error::DegenerateMove(format!("cannot relocate {v} after itself")));
    }
    if tour.succ(u) == v {
        return Err(Error::DegenerateMove(format!("{v} already follows {u}")));
    }
    Ok(())
}

/// Cost change of moving `v` to directly after `u`.
///
/// With `p = pred(v)`, `s = succ(v)` and `s_u = succ(u)` the move removes
/// `(p,v) (v,s) (u,s_u)` and adds `(p,s) (u,v) (v,s_u)`.
pub fn relocation_delta(instance: &Instance, tour: &Tour, u: usize, v: usize) -> Result<f64> {
    check_relocation(tour, u, v)?;
    let p = tour.pred(v);
    let s = tour.succ(v);
    let su = tour.succ(u);
    let d = |a, b| instance.distance(a, b);
    Ok(-d(p, v) - d(v, s) - d(u, su) + d(p, s) + d(u, v) + d(v, su))
}

/// Move `v` to directly after `u`, keeping the cached cost in sync.
pub fn apply_relocation(
    instance: &Instance,
    tour: &mut Tour,
    u: usize,
    v: usize,
) -> Result<RelocationMove> {
    let delta = relocation_delta(instance, tour, u, v)?;
    tour.move_after(u, v);
    tour.add_cost(delta);
    Ok(RelocationMove { u, v, delta })
}

/// Edges of `tour` that are not edges of `reference` (undirected).
pub fn edges_not_in(tour: &Tour, reference: &Tour) -> Vec<(usize, usize)> {
    tour.edges().filter(|&(a, b)| !reference.has_edge(a, b)).collect()
}

/// Build one ant's tour from `reference`. Returns the tour and the edges it
/// has that the reference lacks.
pub fn construct<R: Rng + ?Sized>(
    instance: &Instance,
    reference: &Tour,
    table: &ChoiceTable,
    nm: &NeighborModel,
    params: &SamplerParams,
    rng: &mut R,
) -> Result<(Tour, Vec<(usize, usize)>)> {
    let n = reference.len();
    let mut tour = reference.clone();
    let mut visited = vec![false; n];
    let start = rng.gen_range(0..n);
    visited[start] = true;

    let mut cur = start;
    let mut new_edges = 0usize;
    let mut skips = 0usize;
    let mut walked = 1usize;
    let fresh = |a: usize, b: usize| usize::from(!reference.has_edge(a, b));

    while walked < n && new_edges < params.mne {
        let next = select_next(instance, cur, &visited, table, nm, rng)?;
        if next != tour.succ(cur) {
            let p = tour.pred(next);
            let s = tour.succ(next);
            let su = tour.succ(cur);
            let removed = fresh(p, next) + fresh(next, s) + fresh(cur, su);
            if apply_relocation(instance, &mut tour, cur, next).is_err() {
                skips += 1;
                if skips >= n {
                    break;
                }
                continue;
            }
            let added = fresh(p, s) + fresh(cur, next) + fresh(next, su);
            new_edges = new_edges + added - removed;
        }
        skips = 0;
        cur = tour.succ(cur);
        visited[cur] = true;
        walked += 1;
    }

    let diff = edges_not_in(&tour, reference);
    Ok((tour, diff))
}
