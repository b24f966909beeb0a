//! Front-end solver: picks the algorithm by the numerator of `δ = a/b`.
//!
//! * `a = 1`: closed form, `b|E| + 1` on trees and `b|E|` otherwise.
//! * `a = 2`: `b` is odd after reduction, `b = 2z + 1`, and the value is
//!   `disp₂(G) + z|E|`, with the witness spread out from an optimal canonical
//!   2-dispersed set.
//! * `a ≥ 3`: NP-hard; only the brute-force oracle, and only when allowed.
//!
//! Every witness is verified before it is returned.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::graph::Graph;
use crate::matching::MatchingError;
use crate::oracle::{brute_disp_with, OracleConfig, OracleError};
use crate::point::{Metric, Point, WitnessSet};
use crate::rational::Rational;
use crate::solve2::{disp2, CanonicalWitness};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DispError {
    #[error("delta must be positive, got {0}")]
    NonPositiveDelta(Rational),
    #[error(
        "delta = {0} has numerator >= 3: computing this dispersion number is NP-hard \
         (cubic independent-set reduction); pass --brute-force to run the exact oracle"
    )]
    NpHardRegime(Rational),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Matching(#[from] MatchingError),
    #[error("internal error: constructed witness of size {size} failed verification at delta = {delta}")]
    InvalidWitness { size: usize, delta: Rational },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    ClosedForm,
    Matching,
    BruteForce,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct DispOptions {
    pub allow_bruteforce: bool,
    pub oracle: OracleConfig,
}

impl DispOptions {
    pub fn with_bruteforce() -> Self {
        DispOptions { allow_bruteforce: true, ..Default::default() }
    }
}

#[derive(Debug, Clone)]
pub struct DispResult {
    pub value: usize,
    pub witness: WitnessSet,
    pub method: Method,
}

pub fn disp(g: &Graph, delta: Rational, opts: &DispOptions) -> Result<DispResult, DispError> {
    if !delta.is_positive() {
        return Err(DispError::NonPositiveDelta(delta));
    }
    let (a, b) = (delta.numer(), delta.denom());
    let (witness, method) = match a {
        1 => (unit_numerator_witness(g, b), Method::ClosedForm),
        2 => {
            let base = disp2(g)?;
            let witness = if b == 1 {
                base.witness.to_witness_set()
            } else {
                spread_canonical(g, &base.witness, (b - 1) / 2, delta)
            };
            (witness, Method::Matching)
        }
        _ if opts.allow_bruteforce => {
            (brute_disp_with(g, delta, &opts.oracle)?.witness, Method::BruteForce)
        }
        _ => return Err(DispError::NpHardRegime(delta)),
    };
    if !witness.is_valid(&Metric::new(g)) {
        return Err(DispError::InvalidWitness { size: witness.len(), delta });
    }
    Ok(DispResult { value: witness.len(), witness, method })
}

/// The closed-form value for `δ = 1/b`.
pub fn unit_numerator_value(g: &Graph, b: i64) -> usize {
    let m = g.edge_count() * b as usize;
    if g.is_tree() {
        m + 1
    } else {
        m
    }
}

/// Trees: every vertex plus `p(u, v, i/b)`, `i = 1..b-1`, on every edge.
/// Otherwise: `p(u, v, (2i-1)/(2b))`, `i = 1..b`, on every edge.
fn unit_numerator_witness(g: &Graph, b: i64) -> WitnessSet {
    let delta = Rational::frac(1, b);
    let mut points = Vec::new();
    if g.is_tree() {
        points.extend((0..g.vertex_count()).map(Point::Vertex));
        for e in 0..g.edge_count() {
            points.extend((1..b).map(|i| interior(g, e, Rational::frac(i, b))));
        }
    } else {
        for e in 0..g.edge_count() {
            points.extend((1..=b).map(|i| interior(g, e, Rational::frac(2 * i - 1, 2 * b))));
        }
    }
    WitnessSet::new(points, delta)
}

fn interior(g: &Graph, e: usize, offset: Rational) -> Point {
    Point::on_edge(g, e, offset).expect("offset within the edge")
}

/// Turns a canonical 2-dispersed set `S` into a `2/(2z+1)`-dispersed set of
/// size `|S| + z|E|`. Edges touching a chosen vertex get the vertex plus `z`
/// points at spacing `δ` away from it; midpoint edges get `z + 1` points at
/// `(4i-3)δ/4`; all other edges get `z` points at `(4i-1)δ/4`.
fn spread_canonical(g: &Graph, s: &CanonicalWitness, z: i64, delta: Rational) -> WitnessSet {
    let quarter = delta * Rational::frac(1, 4);
    let mut points: BTreeSet<Point> = s.vertex_points.iter().map(|&v| Point::Vertex(v)).collect();
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let from_u = |lambda: Rational| Point::between(g, u, v, lambda).expect("edge exists");
        let anchored = [u, v].into_iter().find(|w| s.vertex_points.contains(w));
        if let Some(start) = anchored {
            let end = if start == u { v } else { u };
            points.extend((1..=z).map(|i| {
                Point::between(g, start, end, delta * Rational::integer(i)).expect("edge exists")
            }));
        } else if s.edge_midpoints.contains(&e) {
            points.extend((1..=z + 1).map(|i| from_u(quarter * Rational::integer(4 * i - 3))));
        } else {
            points.extend((1..=z).map(|i| from_u(quarter * Rational::integer(4 * i - 1))));
        }
    }
    WitnessSet::new(points, delta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;
    use crate::oracle::brute_disp;

    fn solve(g: &Graph, delta: Rational) -> DispResult {
        disp(g, delta, &DispOptions::default()).unwrap()
    }

    #[test]
    fn unit_numerator_examples() {
        let k2 = named::path(2);
        let r = solve(&k2, Rational::frac(1, 2));
        assert_eq!(r.value, 3);
        assert_eq!(r.method, Method::ClosedForm);
        assert_eq!(
            r.witness.points,
            vec![Point::Vertex(0), Point::Vertex(1), Point::midpoint(0)]
        );
        assert_eq!(solve(&named::cycle(3), Rational::ONE).value, 3);
    }

    #[test]
    fn two_over_odd_examples() {
        let k2 = named::path(2);
        let r = solve(&k2, Rational::frac(2, 3));
        assert_eq!(r.value, 2);
        assert_eq!(brute_disp(&k2, Rational::frac(2, 3)).unwrap().value, 2);
        for g in [named::star(3), named::cycle(5), named::cube()] {
            let d2 = disp2(&g).unwrap().value;
            assert_eq!(solve(&g, Rational::integer(2)).value, d2);
            assert_eq!(solve(&g, Rational::frac(2, 5)).value, d2 + 2 * g.edge_count());
        }
    }

    #[test]
    fn np_hard_regime_is_gated() {
        let g = named::cycle(4);
        let err = disp(&g, Rational::integer(3), &DispOptions::default()).unwrap_err();
        assert!(matches!(err, DispError::NpHardRegime(_)));
        assert!(err.to_string().contains("NP-hard"));
        let r = disp(&g, Rational::integer(3), &DispOptions::with_bruteforce()).unwrap();
        assert_eq!(r.method, Method::BruteForce);
        assert_eq!(r.value, 1);
    }

    #[test]
    fn delta_is_reduced_first() {
        let g = named::cycle(3);
        assert_eq!(solve(&g, Rational::frac(2, 4)).value, 6);
        assert_eq!(solve(&g, Rational::frac(4, 2)).method, Method::Matching);
        assert!(disp(&g, Rational::ZERO, &DispOptions::default()).is_err());
    }

    #[test]
    fn single_vertex_graph() {
        let g = Graph::new(1, vec![]).unwrap();
        for d in [Rational::ONE, Rational::frac(1, 3), Rational::integer(2), Rational::frac(2, 7)] {
            assert_eq!(solve(&g, d).value, 1);
        }
    }
}
