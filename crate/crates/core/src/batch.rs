//! Many independent solves at once.

use crate::dispatch::{disp, DispError, DispOptions, DispResult};
use crate::graph::Graph;
use crate::par::Execution;
use crate::rational::Rational;

/// Solves every `(graph, δ)` job; results come back in job order.
pub fn solve_all(
    jobs: &[(Graph, Rational)],
    opts: &DispOptions,
    exec: Execution,
) -> Vec<Result<DispResult, DispError>> {
    exec.map(jobs, |(g, delta)| disp(g, *delta, opts))
}

/// `disp(g, δ)` for one graph over several `δ`.
pub fn sweep(g: &Graph, deltas: &[Rational], opts: &DispOptions, exec: Execution) -> Vec<Result<DispResult, DispError>> {
    exec.map(deltas, |&delta| disp(g, delta, opts))
}
