//! Min-Max Ant System pheromone trails over candidate edges.

use crate::error::{Error, Result};
use crate::neighbors::NeighborModel;
use crate::tour::Tour;

/// Trail limits for a global-best cost `global_best_cost`:
///
/// `tau_max = 1 / ((1 - rho) * g_b)` and
/// `tau_min = min(tau_max, tau_max * (1 - p^(1/k)) / ((k - 1) * p^(1/k)))`
/// where `p = p_best` and `k` is the candidate list size.
pub fn compute_bounds(global_best_cost: f64, rho: f64, k: usize, p_best: f64) -> Result<(f64, f64)> {
    if !(global_best_cost > 0.0) || !global_best_cost.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "global best cost must be positive, got {global_best_cost}"
        )));
    }
    check_rates(rho, p_best)?;
    if k < 2 {
        return Err(Error::InvalidArgument(format!("bound formula needs k >= 2, got {k}")));
    }
    let tau_max = if rho < 1.0 {
        1.0 / ((1.0 - rho) * global_best_cost)
    } else {
        // full evaporation keeps nothing from the previous iteration
        1.0 / global_best_cost
    };
    let root = p_best.powf(1.0 / k as f64);
    let tau_min = (tau_max * (1.0 - root) / ((k - 1) as f64 * root)).min(tau_max);
    Ok((tau_min, tau_max))
}

fn check_rates(rho: f64, p_best: f64) -> Result<()> {
    if !(rho > 0.0 && rho <= 1.0) {
        return Err(Error::InvalidArgument(format!("rho must lie in (0, 1], got {rho}")));
    }
    if !(p_best > 0.0 && p_best < 1.0) {
        return Err(Error::InvalidArgument(format!("p_best must lie in (0, 1), got {p_best}")));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct PheromoneState {
    n: usize,
    k: usize,
    tau: Vec<f64>,
    tau_min: f64,
    tau_max: f64,
    rho: f64,
    p_best: f64,
}

impl PheromoneState {
    /// Every trail starts at `tau_max`; `tau_min` starts at zero until
    /// [`set_bounds`](Self::set_bounds) or [`refresh_bounds`](Self::refresh_bounds).
    pub fn init(nm: &NeighborModel, tau_max: f64, rho: f64, p_best: f64) -> Result<Self> {
        if !(tau_max > 0.0) || !tau_max.is_finite() {
            return Err(Error::InvalidArgument(format!("tau_max must be positive, got {tau_max}")));
        }
        check_rates(rho, p_best)?;
        Ok(Self {
            n: nm.n(),
            k: nm.k(),
            tau: vec![tau_max; nm.n() * nm.k()],
            tau_min: 0.0,
            tau_max,
            rho,
            p_best,
        })
    }

    /// Initialise from the current global-best cost with both bounds set.
    pub fn for_global_best(nm: &NeighborModel, global_best_cost: f64, rho: f64, p_best: f64) -> Result<Self> {
        let (tau_min, tau_max) = compute_bounds(global_best_cost, rho, nm.k().max(2), p_best)?;
        let mut state = Self::init(nm, tau_max, rho, p_best)?;
        state.set_bounds(tau_min, tau_max)?;
        Ok(state)
    }

    pub fn set_bounds(&mut self, tau_min: f64, tau_max: f64) -> Result<()> {
        if !(tau_min <= tau_max) || tau_min < 0.0 {
            return Err(Error::BoundViolation { tau_min, tau_max });
        }
        self.tau_min = tau_min;
        self.tau_max = tau_max;
        self.clip();
        Ok(())
    }

    /// Recompute both bounds for a new global-best cost and re-clip.
    pub fn refresh_bounds(&mut self, global_best_cost: f64) -> Result<()> {
        let (tau_min, tau_max) =
            compute_bounds(global_best_cost, self.rho, self.k.max(2), self.p_best)?;
        self.set_bounds(tau_min, tau_max)
    }

    /// Evaporate every trail, deposit `deposit` on the candidate entries of
    /// each edge of `best` (both directions where stored), then clip.
    pub fn update_best(&mut self, nm: &NeighborModel, best: &Tour, deposit: f64) -> Result<()> {
        if best.len() != self.n {
            return Err(Error::InvalidTour(format!(
                "tour has {} nodes, pheromone matrix has {}",
                best.len(),
                self.n
            )));
        }
        if !(deposit >= 0.0) || !deposit.is_finite() {
            return Err(Error::InvalidArgument(format!("deposit must be >= 0, got {deposit}")));
        }
        let keep = 1.0 - self.rho;
        for t in &mut self.tau {
            *t *= keep;
        }
        if deposit > 0.0 {
            for (a, b) in best.edges() {
                if let Some(r) = nm.cand_pos(a, b) {
                    self.tau[a * self.k + r] += deposit;
                }
                if let Some(r) = nm.cand_pos(b, a) {
                    self.tau[b * self.k + r] += deposit;
                }
            }
        }
        self.clip();
        Ok(())
    }

    fn clip(&mut self) {
        let (lo, hi) = (self.tau_min, self.tau_max);
        for t in &mut self.tau {
            *t = t.clamp(lo, hi);
        }
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.tau[i * self.k..(i + 1) * self.k]
    }

    /// Trail on the stored entry for `i -> j`, if `j` is a candidate of `i`.
    pub fn get(&self, nm: &NeighborModel, i: usize, j: usize) -> Option<f64> {
        nm.cand_pos(i, j).map(|r| self.tau[i * self.k + r])
    }

    pub fn values(&self) -> &[f64] {
        &self.tau
    }

    pub fn tau_min(&self) -> f64 {
        self.tau_min
    }

    pub fn tau_max(&self) -> f64 {
        self.tau_max
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }
}
