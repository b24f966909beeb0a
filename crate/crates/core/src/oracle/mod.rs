//! Brute-force dispersion for arbitrary rational `δ = a/b`.
//!
//! Some optimal `δ`-dispersed set uses only offsets that are multiples of
//! `1/(2b)`, so the problem reduces to a maximum independent set in the
//! conflict graph on those grid points. Distances on the grid are measured in
//! integer units of `1/(2b)`; the threshold becomes `2a` units.

mod search;

use std::time::Duration;

use thiserror::Error;

use crate::graph::Graph;
use crate::par::Execution;
use crate::point::{Point, WitnessSet};
use crate::rational::Rational;

pub use search::{maximum_independent_set, SearchError};

pub const DEFAULT_CANDIDATE_CAP: usize = 2000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{candidates} candidate points exceed the cap of {cap}")]
    SizeGuard { candidates: usize, cap: usize },
    #[error("search timed out after {0:?}")]
    Timeout(Duration),
    #[error("delta must be positive, got {0}")]
    NonPositiveDelta(Rational),
    #[error("brute-force witness failed verification")]
    InvalidWitness,
}

impl From<SearchError> for OracleError {
    fn from(e: SearchError) -> Self {
        match e {
            SearchError::Timeout(d) => OracleError::Timeout(d),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    pub candidate_cap: usize,
    pub timeout: Option<Duration>,
    /// Row construction of the conflict graph.
    pub build: Execution,
    /// Splitting the search over root subtrees. Sequential search is fully
    /// deterministic; parallel search returns the same value but may pick a
    /// different optimum.
    pub search: Execution,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            candidate_cap: DEFAULT_CANDIDATE_CAP,
            timeout: None,
            build: Execution::default(),
            search: Execution::Sequential,
        }
    }
}

/// Grid points and the pairs of them closer than `δ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConflictGraph {
    pub delta: Rational,
    pub candidates: Vec<Point>,
    /// Sorted conflict lists, symmetric and irreflexive.
    pub conflicts: Vec<Vec<usize>>,
}

impl ConflictGraph {
    pub fn len(&self) -> usize {
        self.candidates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.candidates.is_empty()
    }

    pub fn conflict_count(&self) -> usize {
        self.conflicts.iter().map(Vec::len).sum::<usize>() / 2
    }
}

/// Number of grid candidates for `δ` with denominator `b`.
pub fn candidate_count(g: &Graph, denom: i64) -> Option<usize> {
    let per_edge = (2 * denom as u64).checked_sub(1)?;
    (g.edge_count() as u64)
        .checked_mul(per_edge)?
        .checked_add(g.vertex_count() as u64)
        .and_then(|c| usize::try_from(c).ok())
}

/// A grid candidate: a vertex, or `(edge, k)` meaning offset `k/(2b)`.
#[derive(Clone, Copy)]
enum Slot {
    Vertex(usize),
    Edge(usize, u64),
}

pub fn build_conflict_graph(
    g: &Graph,
    delta: Rational,
    config: &OracleConfig,
) -> Result<ConflictGraph, OracleError> {
    if !delta.is_positive() {
        return Err(OracleError::NonPositiveDelta(delta));
    }
    let (a, b) = (delta.numer() as u64, delta.denom() as u64);
    let count = candidate_count(g, b as i64).unwrap_or(usize::MAX);
    if count > config.candidate_cap {
        return Err(OracleError::SizeGuard { candidates: count, cap: config.candidate_cap });
    }
    let units = 2 * b;
    let threshold = 2 * a;

    let mut slots: Vec<Slot> = (0..g.vertex_count()).map(Slot::Vertex).collect();
    for e in 0..g.edge_count() {
        slots.extend((1..units).map(|k| Slot::Edge(e, k)));
    }
    let hops = g.hop_distances();
    let legs = |s: Slot| -> [(usize, u64); 2] {
        match s {
            Slot::Vertex(v) => [(v, 0), (v, 0)],
            Slot::Edge(e, k) => {
                let (u, v) = g.edge(e);
                [(u, k), (v, units - k)]
            }
        }
    };
    let distance = |p: Slot, q: Slot| -> u64 {
        let mut best = u64::MAX;
        for (x, dx) in legs(p) {
            for (y, dy) in legs(q) {
                best = best.min(dx + hops.get(x, y) as u64 * units + dy);
            }
        }
        if let (Slot::Edge(e, k), Slot::Edge(f, l)) = (p, q) {
            if e == f {
                best = best.min(k.abs_diff(l));
            }
        }
        best
    };

    let conflicts = config.build.map_range(slots.len(), |i| {
        (0..slots.len())
            .filter(|&j| j != i && distance(slots[i], slots[j]) < threshold)
            .collect::<Vec<_>>()
    });
    let candidates = slots
        .iter()
        .map(|&s| match s {
            Slot::Vertex(v) => Point::Vertex(v),
            Slot::Edge(edge, k) => Point::Interior {
                edge,
                offset: Rational::new(k as i64, units as i64).expect("nonzero grid"),
            },
        })
        .collect();
    Ok(ConflictGraph { delta, candidates, conflicts })
}

#[derive(Debug, Clone)]
pub struct OracleResult {
    pub value: usize,
    pub witness: WitnessSet,
}

pub fn brute_disp(g: &Graph, delta: Rational) -> Result<OracleResult, OracleError> {
    brute_disp_with(g, delta, &OracleConfig::default())
}

/// Exact dispersion number by maximum independent set over the grid.
pub fn brute_disp_with(
    g: &Graph,
    delta: Rational,
    config: &OracleConfig,
) -> Result<OracleResult, OracleError> {
    let cg = build_conflict_graph(g, delta, config)?;
    let chosen = maximum_independent_set(&cg.conflicts, config.timeout, config.search)?;
    let witness = WitnessSet::new(chosen.iter().map(|&i| cg.candidates[i]), delta);
    if witness.len() != chosen.len() || !crate::point::is_dispersed(g, &witness.points, delta) {
        return Err(OracleError::InvalidWitness);
    }
    Ok(OracleResult { value: witness.len(), witness })
}
