//! 2-opt restricted to candidate-list neighbors and seeded by the edges that
//! changed since the tour was last optimized.
//!
//! Pivot rule: pop the front of a FIFO of pending nodes, scan its candidates
//! in ascending distance, and for each candidate try the successor-side then
//! the predecessor-side exchange. The first improving exchange is applied and
//! its four endpoints are re-queued. A node leaves the queue for good (its
//! don't-look bit stays set) once a full scan finds nothing.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::neighbors::NeighborModel;
use crate::tour::Tour;

/// Minimum gain for a move to count as improving.
pub const IMPROVEMENT_EPS: f64 = 1e-10;

/// Pending nodes with an in-queue marker so each appears at most once.
#[derive(Debug, Clone, Default)]
pub struct TwoOptQueue {
    pending: VecDeque<usize>,
    queued: Vec<bool>,
}

impl TwoOptQueue {
    pub fn new(n: usize) -> Self {
        Self { pending: VecDeque::new(), queued: vec![false; n] }
    }

    pub fn push(&mut self, v: usize) {
        if !std::mem::replace(&mut self.queued[v], true) {
            self.pending.push_back(v);
        }
    }

    pub fn pop(&mut self) -> Option<usize> {
        let v = self.pending.pop_front()?;
        self.queued[v] = false;
        Some(v)
    }

    pub fn len(&self) -> usize {
        self.pending.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pending.is_empty()
    }
}

/// Cost change of the exchange that replaces `(a, succ a)` and `(b, succ b)`
/// with `(a, b)` and `(succ a, succ b)`.
pub fn delta_2opt(instance: &Instance, tour: &Tour, a: usize, b: usize) -> Result<f64> {
    if a == b {
        return Err(Error::DegenerateMove(format!("2-opt on identical nodes {a}")));
    }
    let a1 = tour.succ(a);
    let b1 = tour.succ(b);
    if a1 == b || b1 == a {
        return Err(Error::DegenerateMove(format!("2-opt on adjacent nodes {a}, {b}")));
    }
    let d = |x, y| instance.distance(x, y);
    Ok(d(a, b) + d(a1, b1) - d(a, a1) - d(b, b1))
}

/// Improve `tour` in place. Returns the number of exchanges applied.
pub fn two_opt_restricted(
    instance: &Instance,
    tour: &mut Tour,
    seeds: &[(usize, usize)],
    nm: &NeighborModel,
) -> Result<usize> {
    let n = tour.len();
    let mut queue = TwoOptQueue::new(n);
    for &(a, b) in seeds {
        if a >= n || b >= n || !tour.has_edge(a, b) {
            return Err(Error::InvalidArgument(format!("seed edge ({a}, {b}) is not on the tour")));
        }
        queue.push(a);
        queue.push(b);
    }
    Ok(descend(instance, tour, &mut queue, nm))
}

/// Seed every node, i.e. a plain candidate-restricted 2-opt descent.
pub fn two_opt_full(instance: &Instance, tour: &mut Tour, nm: &NeighborModel) -> usize {
    let mut queue = TwoOptQueue::new(tour.len());
    for (a, _) in tour.edges().collect::<Vec<_>>() {
        queue.push(a);
    }
    descend(instance, tour, &mut queue, nm)
}

fn descend(instance: &Instance, tour: &mut Tour, queue: &mut TwoOptQueue, nm: &NeighborModel) -> usize {
    let mut applied = 0;
    while let Some(a) = queue.pop() {
        if let Some((x, y, gain)) = first_improvement(instance, tour, a, nm) {
            let (x1, y1) = (tour.succ(x), tour.succ(y));
            tour.two_opt_move(x, y);
            tour.add_cost(-gain);
            applied += 1;
            for v in [x, x1, y, y1] {
                queue.push(v);
            }
        }
    }
    applied
}

/// First improving exchange around `a`, as `(x, y, gain)` meaning the
/// exchange on `(x, succ x)` and `(y, succ y)`.
fn first_improvement(
    instance: &Instance,
    tour: &Tour,
    a: usize,
    nm: &NeighborModel,
) -> Option<(usize, usize, f64)> {
    let d = |x, y| instance.distance(x, y);
    let a_succ = tour.succ(a);
    let a_pred = tour.pred(a);
    let d_succ = d(a, a_succ);
    let d_pred = d(a_pred, a);
    for &b in nm.cand(a) {
        let d_ab = d(a, b);
        // successor side: drop (a, a+) (b, b+), add (a, b) (a+, b+)
        let b_succ = tour.succ(b);
        if b != a_succ && b_succ != a {
            let gain = d_succ + d(b, b_succ) - d_ab - d(a_succ, b_succ);
            if gain > IMPROVEMENT_EPS {
                return Some((a, b, gain));
            }
        }
        // predecessor side: drop (a-, a) (b-, b), add (a, b) (a-, b-)
        let b_pred = tour.pred(b);
        if b != a_pred && b_pred != a {
            let gain = d_pred + d(b_pred, b) - d_ab - d(a_pred, b_pred);
            if gain > IMPROVEMENT_EPS {
                return Some((a_pred, b_pred, gain));
            }
        }
    }
    None
}
