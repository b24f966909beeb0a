//! Exact maximum independent set by branch and bound.
//!
//! Works on the complement view: an independent set of the conflict graph is
//! a clique of its complement. Each node greedily partitions the remaining
//! candidates into conflict cliques (colour classes); the number of classes
//! bounds how many more candidates can be chosen. Candidates are branched on
//! in reverse colouring order, so the most constrained ones are tried first.

use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::par::Execution;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("search timed out after {0:?}")]
    Timeout(Duration),
}

struct Shared {
    best_len: AtomicUsize,
    best: Mutex<Vec<usize>>,
    deadline: Option<(Instant, Duration)>,
    expired: AtomicBool,
}

impl Shared {
    fn offer(&self, set: &[usize]) {
        let mut best = self.best.lock().unwrap();
        if set.len() > best.len() {
            *best = set.to_vec();
            self.best_len.store(set.len(), Ordering::Relaxed);
        }
    }
}

struct Search<'a> {
    /// `conflict[i]` in reordered indices.
    conflict: &'a [FixedBitSet],
    /// `compatible[i]`: candidates that may coexist with `i`.
    compatible: &'a [FixedBitSet],
    shared: &'a Shared,
    nodes: u64,
}

impl Search<'_> {
    fn timed_out(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes % 1024 == 1 {
            if let Some((deadline, _)) = self.shared.deadline {
                if Instant::now() >= deadline {
                    self.shared.expired.store(true, Ordering::Relaxed);
                }
            }
        }
        self.shared.expired.load(Ordering::Relaxed)
    }

    /// Greedy clique partition of `pool`, in index order. Returns the
    /// candidates in class order and, for each, the number of classes so far.
    fn colour(&self, pool: &FixedBitSet) -> (Vec<usize>, Vec<usize>) {
        let mut order = Vec::with_capacity(pool.count_ones(..));
        let mut bounds = Vec::with_capacity(order.capacity());
        let mut uncoloured = pool.clone();
        let mut class = 0;
        while let Some(first) = uncoloured.ones().next() {
            class += 1;
            let mut q = uncoloured.clone();
            let mut v = Some(first);
            while let Some(x) = v {
                uncoloured.set(x, false);
                q.set(x, false);
                q.intersect_with(&self.conflict[x]);
                order.push(x);
                bounds.push(class);
                v = q.ones().next();
            }
        }
        (order, bounds)
    }

    fn expand(&mut self, mut pool: FixedBitSet, current: &mut Vec<usize>) {
        if self.timed_out() {
            return;
        }
        let (order, bounds) = self.colour(&pool);
        for k in (0..order.len()).rev() {
            if current.len() + bounds[k] <= self.shared.best_len.load(Ordering::Relaxed) {
                return;
            }
            let v = order[k];
            current.push(v);
            let mut next = pool.clone();
            next.intersect_with(&self.compatible[v]);
            if next.is_clear() {
                if current.len() > self.shared.best_len.load(Ordering::Relaxed) {
                    self.shared.offer(current);
                }
            } else {
                self.expand(next, current);
            }
            current.pop();
            pool.set(v, false);
        }
    }
}

/// Largest set of vertices, no two joined in `conflicts`.
///
/// Candidates are renumbered by ascending conflict degree (ties by index),
/// so the greedy partition starts from the least constrained candidates.
/// With `Execution::Parallel` the root subtrees are searched concurrently.
pub fn maximum_independent_set(
    conflicts: &[Vec<usize>],
    timeout: Option<Duration>,
    exec: Execution,
) -> Result<Vec<usize>, SearchError> {
    let n = conflicts.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.sort_by_key(|&v| (conflicts[v].len(), v));
    let mut rank = vec![0; n];
    for (r, &v) in perm.iter().enumerate() {
        rank[v] = r;
    }
    let mut conflict = vec![FixedBitSet::with_capacity(n); n];
    for (v, list) in conflicts.iter().enumerate() {
        for &w in list {
            conflict[rank[v]].insert(rank[w]);
            conflict[rank[w]].insert(rank[v]);
        }
    }
    let compatible: Vec<FixedBitSet> = (0..n)
        .map(|v| {
            let mut c = conflict[v].clone();
            c.toggle_range(..);
            c.set(v, false);
            c
        })
        .collect();

    let shared = Shared {
        best_len: AtomicUsize::new(0),
        best: Mutex::new(Vec::new()),
        deadline: timeout.map(|d| (Instant::now() + d, d)),
        expired: AtomicBool::new(false),
    };
    // Greedy seed: scan in renumbered order.
    let mut seed = Vec::new();
    let mut free = FixedBitSet::with_capacity(n);
    free.insert_range(..);
    while let Some(v) = free.ones().next() {
        seed.push(v);
        free.set(v, false);
        free.intersect_with(&compatible[v]);
    }
    shared.offer(&seed);

    let mut all = FixedBitSet::with_capacity(n);
    all.insert_range(..);
    if exec.is_parallel() {
        search_roots_parallel(&conflict, &compatible, &shared, all);
    } else {
        let mut s = Search { conflict: &conflict, compatible: &compatible, shared: &shared, nodes: 0 };
        s.expand(all, &mut Vec::new());
    }

    if shared.expired.load(Ordering::Relaxed) {
        let limit = shared.deadline.map(|(_, d)| d).unwrap_or_default();
        return Err(SearchError::Timeout(limit));
    }
    let mut best: Vec<usize> = shared.best.into_inner().unwrap().into_iter().map(|r| perm[r]).collect();
    best.sort_unstable();
    Ok(best)
}

#[cfg(feature = "parallel")]
fn search_roots_parallel(
    conflict: &[FixedBitSet],
    compatible: &[FixedBitSet],
    shared: &Shared,
    all: FixedBitSet,
) {
    use rayon::prelude::*;
    let root = Search { conflict, compatible, shared, nodes: 0 };
    let (order, bounds) = root.colour(&all);
    // Subtree k: candidate order[k] plus only candidates later in the order.
    let tasks: Vec<(usize, FixedBitSet, usize)> = (0..order.len())
        .rev()
        .map(|k| {
            let mut pool = FixedBitSet::with_capacity(all.len());
            order[..k].iter().for_each(|&w| pool.insert(w));
            pool.intersect_with(&compatible[order[k]]);
            (order[k], pool, bounds[k])
        })
        .collect();
    tasks.into_par_iter().for_each(|(v, pool, bound)| {
        if bound <= shared.best_len.load(Ordering::Relaxed) {
            return;
        }
        let mut s = Search { conflict, compatible, shared, nodes: 0 };
        let mut current = vec![v];
        if pool.is_clear() {
            shared.offer(&current);
        } else {
            s.expand(pool, &mut current);
        }
    });
}

#[cfg(not(feature = "parallel"))]
fn search_roots_parallel(
    conflict: &[FixedBitSet],
    compatible: &[FixedBitSet],
    shared: &Shared,
    all: FixedBitSet,
) {
    let mut s = Search { conflict, compatible, shared, nodes: 0 };
    s.expand(all, &mut Vec::new());
}
