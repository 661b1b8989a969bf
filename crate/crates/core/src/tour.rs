use crate::error::{Error, Result};
use crate::instance::{check_permutation, Instance};

/// A Hamiltonian cycle stored as an order array plus its inverse, so that
/// position, successor and predecessor queries are O(1).
#[derive(Debug, Clone, PartialEq)]
pub struct Tour {
    order: Vec<usize>,
    position: Vec<usize>,
    cost: f64,
}

impl Tour {
    pub fn new(instance: &Instance, order: Vec<usize>) -> Result<Self> {
        check_permutation(&order, instance.len())?;
        let cost = instance.cycle_length(&order);
        let mut position = vec![0; order.len()];
        for (t, &v) in order.iter().enumerate() {
            position[v] = t;
        }
        Ok(Self { order, position, cost })
    }

    /// Greedy nearest-neighbor tour from `start`; ties go to the lower index.
    pub fn nearest_neighbor(instance: &Instance, start: usize) -> Result<Self> {
        let n = instance.len();
        if start >= n {
            return Err(Error::InvalidArgument(format!("start node {start} out of range")));
        }
        let mut visited = vec![false; n];
        let mut order = Vec::with_capacity(n);
        let mut cur = start;
        visited[cur] = true;
        order.push(cur);
        for _ in 1..n {
            let mut best = usize::MAX;
            let mut best_d = f64::INFINITY;
            for (j, &seen) in visited.iter().enumerate() {
                if !seen {
                    let d = instance.distance(cur, j);
                    if d < best_d {
                        best_d = d;
                        best = j;
                    }
                }
            }
            visited[best] = true;
            order.push(best);
            cur = best;
        }
        Self::new(instance, order)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.order.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    #[inline]
    pub fn cost(&self) -> f64 {
        self.cost
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn into_order(self) -> Vec<usize> {
        self.order
    }

    #[inline]
    pub fn position(&self, v: usize) -> usize {
        self.position[v]
    }

    #[inline]
    pub fn at(&self, t: usize) -> usize {
        self.order[t % self.order.len()]
    }

    #[inline]
    pub fn succ(&self, v: usize) -> usize {
        let t = self.position[v] + 1;
        if t == self.order.len() {
            self.order[0]
        } else {
            self.order[t]
        }
    }

    #[inline]
    pub fn pred(&self, v: usize) -> usize {
        let t = self.position[v];
        if t == 0 {
            self.order[self.order.len() - 1]
        } else {
            self.order[t - 1]
        }
    }

    /// Whether the undirected edge `{a, b}` lies on the tour.
    #[inline]
    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.succ(a) == b || self.pred(a) == b
    }

    /// Directed edges `(order[t], order[t+1])`, closing the cycle.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.order.len();
        (0..n).map(move |t| (self.order[t], self.order[(t + 1) % n]))
    }

    /// Check the order/position bijection and the cached cost.
    pub fn validate(&self, instance: &Instance) -> Result<()> {
        check_permutation(&self.order, instance.len())?;
        if let Some(t) = (0..self.order.len()).find(|&t| self.position[self.order[t]] != t) {
            return Err(Error::InvalidTour(format!("position map broken at slot {t}")));
        }
        let fresh = instance.cycle_length(&self.order);
        if (fresh - self.cost).abs() > 1e-9 * fresh.max(1.0) {
            return Err(Error::InvalidTour(format!(
                "cached cost {} differs from recomputed {fresh}",
                self.cost
            )));
        }
        Ok(())
    }

    pub fn recompute_cost(&mut self, instance: &Instance) -> f64 {
        self.cost = instance.cycle_length(&self.order);
        self.cost
    }

    #[inline]
    pub(crate) fn add_cost(&mut self, delta: f64) {
        self.cost += delta;
    }

    /// Move `v` so that it directly follows `u`, shifting whichever cyclic
    /// arc is shorter. Caller guarantees `u != v` and `succ(u) != v`.
    pub(crate) fn move_after(&mut self, u: usize, v: usize) {
        let n = self.order.len();
        let pv = self.position[v];
        let pu = self.position[u];
        // elements strictly after v up to and including u
        let fwd = (pu + n - pv) % n;
        let back = n - fwd;
        if fwd <= back {
            let mut p = pv;
            for _ in 0..fwd {
                let q = if p + 1 == n { 0 } else { p + 1 };
                let w = self.order[q];
                self.order[p] = w;
                self.position[w] = p;
                p = q;
            }
            self.order[p] = v;
            self.position[v] = p;
        } else {
            let mut p = pv;
            for _ in 0..back - 1 {
                let q = if p == 0 { n - 1 } else { p - 1 };
                let w = self.order[q];
                self.order[p] = w;
                self.position[w] = p;
                p = q;
            }
            self.order[p] = v;
            self.position[v] = p;
        }
    }

    /// Reverse the cyclic slot range `from..=to` (walking forward from `from`).
    fn reverse_slots(&mut self, from: usize, to: usize) {
        let n = self.order.len();
        let len = (to + n - from) % n + 1;
        let (mut i, mut j) = (from, to);
        for _ in 0..len / 2 {
            self.order.swap(i, j);
            self.position[self.order[i]] = i;
            self.position[self.order[j]] = j;
            i = if i + 1 == n { 0 } else { i + 1 };
            j = if j == 0 { n - 1 } else { j - 1 };
        }
    }

    /// 2-opt exchange replacing `(a, succ a)` and `(b, succ b)` by `(a, b)` and
    /// `(succ a, succ b)`. Reverses the shorter of the two arcs.
    pub(crate) fn two_opt_move(&mut self, a: usize, b: usize) {
        let n = self.order.len();
        let a_next = self.position[a] + 1;
        let a_next = if a_next == n { 0 } else { a_next };
        let b_slot = self.position[b];
        let inner = (b_slot + n - a_next) % n + 1;
        if 2 * inner <= n {
            self.reverse_slots(a_next, b_slot);
        } else {
            let b_next = if b_slot + 1 == n { 0 } else { b_slot + 1 };
            self.reverse_slots(b_next, self.position[a]);
        }
    }
}
