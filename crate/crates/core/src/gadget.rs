//! Hard instances for `δ = a/b` with `a ≥ 3`, built from cubic graphs.
//!
//! Every vertex `v` of the cubic graph `H` becomes a gadget vertex `v*`, and
//! every edge `e = {u, v}` becomes a vertex `e*` joined to `u*` and `v*` by
//! paths of `x₁` unit edges, plus a cycle of `x₂` edges through `e*`. The
//! coefficients are the smallest positive solutions of
//!
//! ```text
//!   odd a:   2b·x₁ - 2a·y₁ = a - 1,   b·x₂ - a·y₂ = 1
//!   even a:  2b·x₁ - 2a·y₁ = a - 2,   b·x₂ - a·y₂ = 2
//! ```
//!
//! with `x₂ ≥ 3` so the gadget stays a simple graph. `H` has an independent
//! set of size `k` iff the gadget has a `δ`-dispersed set of size
//! `k + (2y₁ + y₂)|E_H|`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use num_integer::Integer;
use thiserror::Error;

use crate::graph::{Graph, GraphError};
use crate::point::{Point, WitnessSet};
use crate::rational::Rational;

/// Source id to gadget vertex id.
pub type IdMap = BTreeMap<usize, usize>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GadgetError {
    #[error("vertex {vertex} has degree {degree}; the source graph must be cubic")]
    NotCubic { vertex: usize, degree: usize },
    #[error("numerator must be at least 3 and coprime to the denominator, got {0}")]
    BadDelta(Rational),
    #[error("vertices {0} and {1} of the set are adjacent")]
    NotIndependent(usize, usize),
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("the point-placement construction is only available for odd numerators")]
    EvenNumerator,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Odd,
    Even,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BezoutCoefficients {
    pub x1: i64,
    pub y1: i64,
    pub x2: i64,
    pub y2: i64,
    pub parity: Parity,
}

impl BezoutCoefficients {
    /// Whether the defining equations hold for `δ = a/b`.
    pub fn satisfies(&self, a: i64, b: i64) -> bool {
        let (r1, r2) = match self.parity {
            Parity::Odd => (a - 1, 1),
            Parity::Even => (a - 2, 2),
        };
        2 * b * self.x1 - 2 * a * self.y1 == r1
            && b * self.x2 - a * self.y2 == r2
            && self.x1 >= 1
            && self.y1 >= 1
            && self.x2 >= 3
            && self.y2 >= 1
    }
}

/// Smallest `x ≥ min_x` with `y ≥ 1` solving `b·x - a·y = r` (`gcd(a, b) = 1`).
fn smallest_solution(a: i64, b: i64, r: i64, min_x: i64) -> (i64, i64) {
    // x ≡ r·b⁻¹ (mod a)
    let inv = b.extended_gcd(&a).x.mod_floor(&a);
    let mut x = (r.mod_floor(&a) * inv).mod_floor(&a);
    if x == 0 {
        x = a;
    }
    loop {
        let y = (b * x - r) / a;
        if x >= min_x && y >= 1 {
            return (x, y);
        }
        x += a;
    }
}

pub fn bezout_coeffs(a: i64, b: i64) -> Result<BezoutCoefficients, GadgetError> {
    if a < 3 || b < 1 || a.gcd(&b) != 1 {
        return Err(GadgetError::BadDelta(Rational::new(a, b.max(1)).unwrap_or(Rational::ZERO)));
    }
    let parity = if a % 2 == 1 { Parity::Odd } else { Parity::Even };
    let (r1, r2) = match parity {
        Parity::Odd => ((a - 1) / 2, 1),
        Parity::Even => ((a - 2) / 2, 2),
    };
    let (x1, y1) = smallest_solution(a, b, r1, 1);
    let (x2, y2) = smallest_solution(a, b, r2, 3);
    Ok(BezoutCoefficients { x1, y1, x2, y2, parity })
}

/// Which edge of `H` a chain belongs to and where it runs.
#[derive(Debug, Clone, PartialEq, Eq)]
struct EdgeGadget {
    /// `u*, .., e*`, `x₁ + 1` vertices.
    path_u: Vec<usize>,
    /// `v*, .., e*`.
    path_v: Vec<usize>,
    /// `e*, c₁, .., c_{x₂-1}, e*`.
    cycle: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct GadgetInstance {
    pub graph: Graph,
    pub delta: Rational,
    /// `H`-vertex to `v*`.
    pub vmap: Vec<usize>,
    /// `H`-edge index to `e*`.
    pub emap: Vec<usize>,
    pub coeffs: BezoutCoefficients,
    pub h_edge_count: usize,
    h_edges: Vec<(usize, usize)>,
    chains: Vec<EdgeGadget>,
}

pub fn build_gadget(h: &Graph, delta: Rational) -> Result<GadgetInstance, GadgetError> {
    if let Some(v) = (0..h.vertex_count()).find(|&v| h.degree(v) != 3) {
        return Err(GadgetError::NotCubic { vertex: v, degree: h.degree(v) });
    }
    let coeffs = bezout_coeffs(delta.numer(), delta.denom()).map_err(|_| GadgetError::BadDelta(delta))?;
    let (nh, mh) = (h.vertex_count(), h.edge_count());
    let vmap: Vec<usize> = (0..nh).collect();
    let emap: Vec<usize> = (nh..nh + mh).collect();
    let mut next = nh + mh;
    let mut fresh = |count: i64| -> Vec<usize> {
        let ids = (next..next + count as usize).collect();
        next += count as usize;
        ids
    };

    let mut edges = Vec::new();
    let mut chains = Vec::with_capacity(mh);
    for (e, &(u, v)) in h.edges().iter().enumerate() {
        let estar = emap[e];
        let mut chain = |from: usize, inner: Vec<usize>, to: usize| -> Vec<usize> {
            let mut seq = vec![from];
            seq.extend(inner);
            seq.push(to);
            edges.extend(seq.windows(2).map(|w| (w[0], w[1])));
            seq
        };
        let path_u = chain(vmap[u], fresh(coeffs.x1 - 1), estar);
        let path_v = chain(vmap[v], fresh(coeffs.x1 - 1), estar);
        let cycle = chain(estar, fresh(coeffs.x2 - 1), estar);
        chains.push(EdgeGadget { path_u, path_v, cycle });
    }
    let graph = Graph::new(next, edges)?;
    Ok(GadgetInstance {
        graph,
        delta,
        vmap,
        emap,
        coeffs,
        h_edge_count: mh,
        h_edges: h.edges().to_vec(),
        chains,
    })
}

/// `k + (2y₁ + y₂)|E_H|`.
pub fn predicted_bound(inst: &GadgetInstance, k: usize) -> usize {
    k + (2 * inst.coeffs.y1 + inst.coeffs.y2) as usize * inst.h_edge_count
}

/// The point at distance `s` from `seq[0]` along a chain of unit edges.
fn along(g: &Graph, seq: &[usize], s: Rational) -> Point {
    let k = s.floor() as usize;
    let frac = s - Rational::integer(k as i64);
    if frac.is_zero() {
        Point::Vertex(seq[k])
    } else {
        Point::between(g, seq[k], seq[k + 1], frac).expect("consecutive chain vertices are adjacent")
    }
}

/// Places `|I| + (2y₁ + y₂)|E_H|` points from an independent set `I` of `H`
/// (odd numerators only).
pub fn witness_from_independent_set(
    inst: &GadgetInstance,
    independent: &BTreeSet<usize>,
) -> Result<WitnessSet, GadgetError> {
    if inst.coeffs.parity == Parity::Even {
        return Err(GadgetError::EvenNumerator);
    }
    if let Some(&v) = independent.iter().find(|&&v| v >= inst.vmap.len()) {
        return Err(GadgetError::VertexOutOfRange(v));
    }
    if let Some(&(u, v)) =
        inst.h_edges.iter().find(|(u, v)| independent.contains(u) && independent.contains(v))
    {
        return Err(GadgetError::NotIndependent(u, v));
    }
    let g = &inst.graph;
    let delta = inst.delta;
    let (a, b) = (delta.numer(), delta.denom());
    let half = delta * Rational::frac(1, 2);
    let mut points: Vec<Point> = independent.iter().map(|&v| Point::Vertex(inst.vmap[v])).collect();

    for (e, chain) in inst.chains.iter().enumerate() {
        let (u, v) = inst.h_edges[e];
        for (end, path) in [(u, &chain.path_u), (v, &chain.path_v)] {
            let first = if independent.contains(&end) { delta } else { half };
            points.extend(
                (0..inst.coeffs.y1).map(|i| along(g, path, first + delta * Rational::integer(i))),
            );
        }
        let first = Rational::frac(a + 1, 2 * b);
        points.extend(
            (0..inst.coeffs.y2).map(|i| along(g, &chain.cycle, first + delta * Rational::integer(i))),
        );
    }
    Ok(WitnessSet::new(points, delta))
}

impl GadgetInstance {
    /// Sidecar lines `v <H-vertex> <gadget-id>` and `e <H-edge> <gadget-id>`.
    pub fn map_text(&self) -> String {
        let mut out = String::new();
        for (v, id) in self.vmap.iter().enumerate() {
            writeln!(out, "v {v} {id}").unwrap();
        }
        for (e, id) in self.emap.iter().enumerate() {
            writeln!(out, "e {e} {id}").unwrap();
        }
        out
    }

    /// Parses the sidecar map into `(vertex map, edge map)`.
    pub fn parse_map(text: &str) -> Result<(IdMap, IdMap), String> {
        let (mut vm, mut em) = (BTreeMap::new(), BTreeMap::new());
        for (i, l) in text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
            let f: Vec<&str> = l.split_whitespace().collect();
            let parse = |s: &str| s.parse::<usize>().map_err(|_| format!("line {}: bad id '{s}'", i + 1));
            match f.as_slice() {
                ["v", h, id] => vm.insert(parse(h)?, parse(id)?),
                ["e", h, id] => em.insert(parse(h)?, parse(id)?),
                _ => return Err(format!("line {}: expected 'v|e <H-id> <gadget-id>'", i + 1)),
            };
        }
        Ok((vm, em))
    }
}

/// Independent sets of a small graph, by exhaustive enumeration.
pub fn independent_sets(h: &Graph) -> Vec<BTreeSet<usize>> {
    let n = h.vertex_count();
    assert!(n <= 20, "exhaustive enumeration is for small graphs");
    (0u32..1 << n)
        .filter(|&m| h.edges().iter().all(|&(u, v)| m >> u & 1 == 0 || m >> v & 1 == 0))
        .map(|m| (0..n).filter(|&v| m >> v & 1 == 1).collect())
        .collect()
}
