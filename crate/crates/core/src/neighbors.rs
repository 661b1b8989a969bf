use std::cmp::Ordering;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::instance::Instance;

/// Per-node candidate lists (the `k` nearest nodes) and backup lists (the
/// next `bkp` nearest). Both are sorted by ascending distance, ties broken by
/// the lower node index. Sizes are truncated so that `k + bkp <= n - 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct NeighborModel {
    n: usize,
    k: usize,
    bkp: usize,
    cand: Vec<usize>,
    backup: Vec<usize>,
}

fn by_distance(a: &(f64, usize), b: &(f64, usize)) -> Ordering {
    a.0.total_cmp(&b.0).then(a.1.cmp(&b.1))
}

impl NeighborModel {
    pub fn build(instance: &Instance, k: usize, bkp: usize) -> Result<Self> {
        if k < 1 {
            return Err(Error::InvalidArgument("candidate list size must be at least 1".into()));
        }
        let n = instance.len();
        let k = k.min(n - 1);
        let bkp = bkp.min(n - 1 - k);
        let width = k + bkp;

        let rows: Vec<Vec<usize>> = (0..n)
            .into_par_iter()
            .map(|i| {
                let mut row: Vec<(f64, usize)> = (0..n)
                    .filter(|&j| j != i)
                    .map(|j| (instance.distance(i, j), j))
                    .collect();
                if width < row.len() {
                    row.select_nth_unstable_by(width, by_distance);
                    row.truncate(width);
                }
                row.sort_unstable_by(by_distance);
                row.into_iter().map(|(_, j)| j).collect()
            })
            .collect();

        let mut cand = Vec::with_capacity(n * k);
        let mut backup = Vec::with_capacity(n * bkp);
        for row in rows {
            cand.extend_from_slice(&row[..k]);
            backup.extend_from_slice(&row[k..]);
        }
        Ok(Self { n, k, bkp, cand, backup })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Effective candidate list length (after truncation).
    pub fn k(&self) -> usize {
        self.k
    }

    /// Effective backup list length (after truncation).
    pub fn bkp(&self) -> usize {
        self.bkp
    }

    #[inline]
    pub fn cand(&self, i: usize) -> &[usize] {
        &self.cand[i * self.k..(i + 1) * self.k]
    }

    #[inline]
    pub fn backup(&self, i: usize) -> &[usize] {
        &self.backup[i * self.bkp..(i + 1) * self.bkp]
    }

    /// Rank of `j` in the candidate list of `i`, if present.
    #[inline]
    pub fn cand_pos(&self, i: usize, j: usize) -> Option<usize> {
        self.cand(i).iter().position(|&c| c == j)
    }
}
