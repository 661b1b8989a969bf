//! Independent reference implementations used by the integration tests.
//! They work on plain `Vec<usize>` orders and recompute costs from
//! coordinates, never through the library's incremental bookkeeping.

#![allow(dead_code)]

use std::collections::VecDeque;

use focused_aco::Instance;
use rand::seq::SliceRandom;
use rand::Rng;

pub fn dist(inst: &Instance, a: usize, b: usize) -> f64 {
    let p = inst.coords()[a];
    let q = inst.coords()[b];
    ((p[0] - q[0]).powi(2) + (p[1] - q[1]).powi(2)).sqrt()
}

pub fn cycle_cost(inst: &Instance, order: &[usize]) -> f64 {
    let n = order.len();
    (0..n).map(|t| dist(inst, order[t], order[(t + 1) % n])).sum()
}

pub fn random_order<R: Rng>(n: usize, rng: &mut R) -> Vec<usize> {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    order
}

/// Optimal tour cost by enumerating every tour that starts at node 0,
/// skipping mirror images.
pub fn brute_force_optimum(inst: &Instance) -> f64 {
    let n = inst.len();
    let mut rest: Vec<usize> = (1..n).collect();
    let mut best = f64::INFINITY;
    permute(inst, &mut rest, 0, &mut best);
    best
}

fn permute(inst: &Instance, rest: &mut Vec<usize>, k: usize, best: &mut f64) {
    if k == rest.len() {
        if rest[0] < rest[rest.len() - 1] {
            let mut order = vec![0];
            order.extend_from_slice(rest);
            let c = cycle_cost(inst, &order);
            if c < *best {
                *best = c;
            }
        }
        return;
    }
    for i in k..rest.len() {
        rest.swap(k, i);
        permute(inst, rest, k + 1, best);
        rest.swap(k, i);
    }
}

/// Edges of `tour` absent from `reference`, as sorted pairs.
pub fn symmetric_new_edges(tour: &[usize], reference: &[usize]) -> Vec<(usize, usize)> {
    let norm = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
    let edges = |o: &[usize]| -> Vec<(usize, usize)> {
        (0..o.len()).map(|t| norm(o[t], o[(t + 1) % o.len()])).collect()
    };
    let ref_edges = edges(reference);
    let mut out: Vec<_> = edges(tour).into_iter().filter(|e| !ref_edges.contains(e)).collect();
    out.sort();
    out
}

/// First-improvement 2-opt over all node pairs with the library's scan
/// order: FIFO of pending nodes, neighbors by ascending distance (ties by
/// index), successor-side exchange before predecessor-side, shorter arc
/// reversed. Plain vector, linear lookups, costs recomputed from scratch.
pub fn naive_two_opt(inst: &Instance, start: &[usize]) -> Vec<usize> {
    let n = start.len();
    let mut order = start.to_vec();
    let pos = |o: &[usize], v: usize| o.iter().position(|&x| x == v).unwrap();
    let succ = |o: &[usize], v: usize| o[(pos(o, v) + 1) % n];
    let pred = |o: &[usize], v: usize| o[(pos(o, v) + n - 1) % n];

    let mut queue: VecDeque<usize> = VecDeque::new();
    for &v in start {
        queue.push_back(v);
    }
    while let Some(a) = queue.pop_front() {
        let mut others: Vec<usize> = (0..n).filter(|&b| b != a).collect();
        others.sort_by(|&x, &y| {
            inst.distance(a, x).total_cmp(&inst.distance(a, y)).then(x.cmp(&y))
        });
        let mut chosen = None;
        'scan: for &b in &others {
            let candidates = [(a, b), (pred(&order, a), pred(&order, b))];
            for &(x, y) in &candidates {
                let (x1, y1) = (succ(&order, x), succ(&order, y));
                if x == y || x1 == y || y1 == x {
                    continue;
                }
                let mut trial = order.clone();
                reverse_arc(&mut trial, x, y);
                let gain = cycle_cost(inst, &order) - cycle_cost(inst, &trial);
                if gain > 1e-10 {
                    chosen = Some((x, y, trial));
                    break 'scan;
                }
            }
        }
        if let Some((x, y, trial)) = chosen {
            let (x1, y1) = (succ(&order, x), succ(&order, y));
            order = trial;
            for v in [x, x1, y, y1] {
                if !queue.contains(&v) {
                    queue.push_back(v);
                }
            }
        }
    }
    order
}

/// Exchange on `(x, succ x)` and `(y, succ y)`, reversing the shorter arc.
fn reverse_arc(order: &mut [usize], x: usize, y: usize) {
    let n = order.len();
    let px = order.iter().position(|&v| v == x).unwrap();
    let py = order.iter().position(|&v| v == y).unwrap();
    let inner = (py + n - (px + 1) % n) % n + 1;
    let (from, len) = if 2 * inner <= n { ((px + 1) % n, inner) } else { ((py + 1) % n, n - inner) };
    let slots: Vec<usize> = (0..len).map(|k| (from + k) % n).collect();
    let values: Vec<usize> = slots.iter().map(|&s| order[s]).collect();
    for (s, v) in slots.iter().zip(values.into_iter().rev()) {
        order[*s] = v;
    }
}
