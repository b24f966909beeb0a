//! Points of the continuous graph, the shortest-path metric on them, and
//! witness sets.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{Graph, HopTable};
use crate::rational::{Rational, RationalError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PointError {
    #[error("edge index {edge} out of range ({count} edges)")]
    EdgeOutOfRange { edge: usize, count: usize },
    #[error("vertex {vertex} out of range ({count} vertices)")]
    VertexOutOfRange { vertex: usize, count: usize },
    #[error("offset {offset} outside [0, 1]")]
    OffsetOutOfRange { offset: Rational },
    #[error("vertices {u} and {v} are not adjacent")]
    NotAnEdge { u: usize, v: usize },
    #[error("line {line}: {reason}")]
    WitnessFormat { line: usize, reason: String },
    #[error(transparent)]
    Rational(#[from] RationalError),
}

/// A point of the continuous graph in canonical form.
///
/// Vertices are always `Vertex`; `Interior` offsets lie strictly between 0
/// and 1 and are measured from the edge's stored first endpoint. Equality of
/// canonical points is equality of locations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Point {
    Vertex(usize),
    Interior { edge: usize, offset: Rational },
}

impl Point {
    /// The point on edge `edge` at distance `offset` from its stored first endpoint.
    pub fn on_edge(g: &Graph, edge: usize, offset: Rational) -> Result<Point, PointError> {
        if edge >= g.edge_count() {
            return Err(PointError::EdgeOutOfRange { edge, count: g.edge_count() });
        }
        if offset.is_negative() || offset > 1 {
            return Err(PointError::OffsetOutOfRange { offset });
        }
        let (u, v) = g.edge(edge);
        Ok(if offset.is_zero() {
            Point::Vertex(u)
        } else if offset == 1 {
            Point::Vertex(v)
        } else {
            Point::Interior { edge, offset }
        })
    }

    /// `p(u, v, λ)`: the point at distance `λ` from `u` on the edge `{u, v}`.
    pub fn between(g: &Graph, u: usize, v: usize, lambda: Rational) -> Result<Point, PointError> {
        for w in [u, v] {
            if w >= g.vertex_count() {
                return Err(PointError::VertexOutOfRange { vertex: w, count: g.vertex_count() });
            }
        }
        let e = g.edge_between(u, v).ok_or(PointError::NotAnEdge { u, v })?;
        if g.edge(e).0 == u {
            Point::on_edge(g, e, lambda)
        } else {
            Point::on_edge(g, e, Rational::ONE - lambda)
        }
    }

    pub fn midpoint(edge: usize) -> Point {
        Point::Interior { edge, offset: Rational::frac(1, 2) }
    }

    pub fn is_vertex(&self) -> bool {
        matches!(self, Point::Vertex(_))
    }

    /// Checks that the point refers to an existing vertex or edge.
    pub fn validate(&self, g: &Graph) -> Result<(), PointError> {
        match *self {
            Point::Vertex(v) if v >= g.vertex_count() => {
                Err(PointError::VertexOutOfRange { vertex: v, count: g.vertex_count() })
            }
            Point::Interior { edge, offset } => {
                if edge >= g.edge_count() {
                    Err(PointError::EdgeOutOfRange { edge, count: g.edge_count() })
                } else if !offset.is_positive() || offset >= 1 {
                    Err(PointError::OffsetOutOfRange { offset })
                } else {
                    Ok(())
                }
            }
            _ => Ok(()),
        }
    }

    /// Routes to the nearest vertices: `(vertex, distance to it)`.
    fn legs(&self, g: &Graph) -> ([(usize, Rational); 2], usize) {
        match *self {
            Point::Vertex(v) => ([(v, Rational::ZERO), (v, Rational::ZERO)], 1),
            Point::Interior { edge, offset } => {
                let (u, v) = g.edge(edge);
                ([(u, offset), (v, Rational::ONE - offset)], 2)
            }
        }
    }
}

/// Shortest-path metric on the points of a graph, with hop distances cached.
#[derive(Debug, Clone)]
pub struct Metric<'g> {
    graph: &'g Graph,
    hops: HopTable,
}

impl<'g> Metric<'g> {
    pub fn new(graph: &'g Graph) -> Self {
        Metric { graph, hops: graph.hop_distances() }
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn hops(&self) -> &HopTable {
        &self.hops
    }

    /// Exact distance between two valid points.
    pub fn distance(&self, p: &Point, q: &Point) -> Rational {
        if p == q {
            return Rational::ZERO;
        }
        let (pl, pn) = p.legs(self.graph);
        let (ql, qn) = q.legs(self.graph);
        let mut best: Option<Rational> = None;
        for &(a, da) in &pl[..pn] {
            for &(b, db) in &ql[..qn] {
                let c = da + Rational::integer(self.hops.get(a, b) as i64) + db;
                best = Some(best.map_or(c, |x| x.min(c)));
            }
        }
        let mut best = best.expect("at least one route");
        if let (Point::Interior { edge: e1, offset: t1 }, Point::Interior { edge: e2, offset: t2 }) =
            (p, q)
        {
            if e1 == e2 {
                best = best.min((*t1 - *t2).abs());
            }
        }
        best
    }

    /// True iff every pair of distinct points is at distance at least `delta`.
    pub fn is_dispersed(&self, points: &[Point], delta: Rational) -> bool {
        let distinct: Vec<&Point> = points.iter().collect::<BTreeSet<_>>().into_iter().collect();
        distinct.iter().enumerate().all(|(i, p)| {
            distinct[i + 1..].iter().all(|q| self.distance(p, q) >= delta)
        })
    }
}

/// One-shot distance; prefer [`Metric`] when measuring many pairs.
pub fn point_distance(g: &Graph, p: &Point, q: &Point) -> Result<Rational, PointError> {
    p.validate(g)?;
    q.validate(g)?;
    Ok(Metric::new(g).distance(p, q))
}

pub fn is_dispersed(g: &Graph, points: &[Point], delta: Rational) -> bool {
    Metric::new(g).is_dispersed(points, delta)
}

/// The vertex `v` together with the midpoints of its incident edges.
pub fn vicinity(g: &Graph, v: usize) -> Vec<Point> {
    std::iter::once(Point::Vertex(v))
        .chain(g.incident(v).iter().map(|&(_, e)| Point::midpoint(e)))
        .collect()
}

/// A set of points claimed to be `delta`-dispersed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessSet {
    pub points: Vec<Point>,
    pub delta: Rational,
}

impl WitnessSet {
    /// Sorts and deduplicates the points.
    pub fn new(points: impl IntoIterator<Item = Point>, delta: Rational) -> Self {
        let points: Vec<Point> = points.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        WitnessSet { points, delta }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn is_valid(&self, metric: &Metric<'_>) -> bool {
        self.points.iter().all(|p| p.validate(metric.graph()).is_ok())
            && self.points.windows(2).all(|w| w[0] != w[1])
            && metric.is_dispersed(&self.points, self.delta)
    }

    /// One line per point: `e u v num/den`. A vertex is written on its
    /// lowest-indexed incident edge with offset `0/1` or `1/1`; the lone
    /// vertex of an edgeless graph is written as `- v v 0/1`.
    pub fn to_text(&self, g: &Graph) -> String {
        let mut out = String::new();
        for p in &self.points {
            match *p {
                Point::Vertex(v) => match g.incident(v).first() {
                    Some(&(_, e)) => {
                        let (a, b) = g.edge(e);
                        let off = if a == v { "0/1" } else { "1/1" };
                        writeln!(out, "{e} {a} {b} {off}").unwrap();
                    }
                    None => writeln!(out, "- {v} {v} 0/1").unwrap(),
                },
                Point::Interior { edge, offset } => {
                    let (a, b) = g.edge(edge);
                    writeln!(out, "{edge} {a} {b} {}", offset.to_fraction_string()).unwrap();
                }
            }
        }
        out
    }

    /// Parses the witness file format against `g`.
    pub fn parse(g: &Graph, text: &str, delta: Rational) -> Result<WitnessSet, PointError> {
        let mut points = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let l = raw.split('#').next().unwrap_or("").trim();
            if l.is_empty() {
                continue;
            }
            let bad = |reason: String| PointError::WitnessFormat { line, reason };
            let fields: Vec<&str> = l.split_whitespace().collect();
            if fields.len() != 4 {
                return Err(bad(format!("expected 'e u v num/den', got '{l}'")));
            }
            let u: usize = fields[1].parse().map_err(|_| bad(format!("bad vertex '{}'", fields[1])))?;
            let v: usize = fields[2].parse().map_err(|_| bad(format!("bad vertex '{}'", fields[2])))?;
            if !fields[3].contains('/') {
                return Err(bad(format!("offset '{}' must be written num/den", fields[3])));
            }
            let offset: Rational = fields[3].parse().map_err(|e| bad(format!("{e}")))?;
            let p = if fields[0] == "-" {
                if u != v || u >= g.vertex_count() || g.degree(u) != 0 || !offset.is_zero() {
                    return Err(bad("'-' is only valid for an isolated vertex".into()));
                }
                Point::Vertex(u)
            } else {
                let e: usize =
                    fields[0].parse().map_err(|_| bad(format!("bad edge index '{}'", fields[0])))?;
                if e >= g.edge_count() {
                    return Err(bad(format!("edge index {e} out of range")));
                }
                if g.edge(e) != (u, v) {
                    return Err(bad(format!("edge {e} is stored as {:?}, not ({u}, {v})", g.edge(e))));
                }
                Point::on_edge(g, e, offset).map_err(|err| bad(err.to_string()))?
            };
            points.push(p);
        }
        Ok(WitnessSet::new(points, delta))
    }
}
