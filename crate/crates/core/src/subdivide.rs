//! `c`-subdivision of a graph and the point correspondence it induces.

use crate::graph::Graph;
use crate::point::Point;
use crate::rational::Rational;

/// The subdivided graph together with the map between point spaces.
///
/// Edge `e = (u, v)` of the original graph becomes the chain
/// `u, w_0, .., w_{c-2}, v` with new vertices `w_j = n + e(c-1) + j` and
/// new edges `ec .. ec+c-1`, each stored in chain direction.
#[derive(Debug, Clone)]
pub struct Subdivision {
    pub graph: Graph,
    factor: usize,
    original_vertices: usize,
    original_edges: Vec<(usize, usize)>,
}

pub fn subdivide(g: &Graph, factor: usize) -> Subdivision {
    assert!(factor >= 1, "subdivision factor must be positive");
    let n = g.vertex_count();
    let extra = factor - 1;
    let mut edges = Vec::with_capacity(g.edge_count() * factor);
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let mut prev = u;
        for j in 0..extra {
            let w = n + e * extra + j;
            edges.push((prev, w));
            prev = w;
        }
        edges.push((prev, v));
    }
    let graph = Graph::new(n + extra * g.edge_count(), edges)
        .expect("subdivision of a connected simple graph is connected and simple");
    Subdivision {
        graph,
        factor,
        original_vertices: n,
        original_edges: g.edges().to_vec(),
    }
}

impl Subdivision {
    pub fn factor(&self) -> usize {
        self.factor
    }

    fn chain_vertex(&self, e: usize, k: usize) -> usize {
        let (u, v) = self.original_edges[e];
        if k == 0 {
            u
        } else if k == self.factor {
            v
        } else {
            self.original_vertices + e * (self.factor - 1) + k - 1
        }
    }

    /// Sends `p(u, v, λ)` to the point at distance `cλ` from `u` along the chain.
    pub fn forward(&self, p: &Point) -> Point {
        match *p {
            Point::Vertex(v) => Point::Vertex(v),
            Point::Interior { edge, offset } => {
                let scaled = offset * Rational::integer(self.factor as i64);
                let k = scaled.floor();
                let frac = scaled - Rational::integer(k);
                let k = k as usize;
                if frac.is_zero() {
                    Point::Vertex(self.chain_vertex(edge, k))
                } else {
                    Point::Interior { edge: edge * self.factor + k, offset: frac }
                }
            }
        }
    }

    /// Inverse of [`Subdivision::forward`].
    pub fn backward(&self, p: &Point) -> Point {
        let c = Rational::integer(self.factor as i64);
        match *p {
            Point::Vertex(v) if v < self.original_vertices => Point::Vertex(v),
            Point::Vertex(v) => {
                let idx = v - self.original_vertices;
                let extra = self.factor - 1;
                let (e, j) = (idx / extra, idx % extra);
                let offset = Rational::integer(j as i64 + 1)
                    .checked_div(&c)
                    .expect("nonzero factor");
                Point::Interior { edge: e, offset }
            }
            Point::Interior { edge, offset } => {
                let (e, k) = (edge / self.factor, edge % self.factor);
                let offset = (Rational::integer(k as i64) + offset)
                    .checked_div(&c)
                    .expect("nonzero factor");
                Point::Interior { edge: e, offset }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;
    use crate::point::Metric;

    #[test]
    fn triangle_doubles_to_hexagon() {
        let s = subdivide(&named::cycle(3), 2);
        assert_eq!(s.graph.vertex_count(), 6);
        assert_eq!(s.graph.edge_count(), 6);
        assert!((0..6).all(|v| s.graph.degree(v) == 2));
    }

    #[test]
    fn k2_by_three_is_a_path() {
        let s = subdivide(&named::path(2), 3);
        assert_eq!(s.graph.vertex_count(), 4);
        assert_eq!(s.graph.hop_distances().diameter(), 3);
        assert_eq!(s.graph.hop_distances().get(0, 1), 3);
    }

    #[test]
    fn midpoint_becomes_new_vertex() {
        let g = named::path(2);
        let s = subdivide(&g, 2);
        assert_eq!(s.forward(&Point::midpoint(0)), Point::Vertex(2));
        assert_eq!(s.backward(&Point::Vertex(2)), Point::midpoint(0));
    }

    #[test]
    fn factor_one_is_identity() {
        let g = named::cycle(4);
        let s = subdivide(&g, 1);
        assert_eq!(s.graph, g);
        let p = Point::on_edge(&g, 2, Rational::frac(1, 3)).unwrap();
        assert_eq!(s.forward(&p), p);
        assert_eq!(s.backward(&p), p);
    }

    #[test]
    fn distances_scale_by_factor() {
        let g = named::complete(4);
        let m = Metric::new(&g);
        let s = subdivide(&g, 3);
        let ms = Metric::new(&s.graph);
        let mut pts = vec![Point::Vertex(0), Point::Vertex(3)];
        for e in 0..g.edge_count() {
            for k in 1..6 {
                pts.push(Point::on_edge(&g, e, Rational::frac(k, 6)).unwrap());
            }
        }
        for p in &pts {
            assert_eq!(s.backward(&s.forward(p)), *p);
            for q in &pts {
                let d = m.distance(p, q) * Rational::integer(3);
                assert_eq!(ms.distance(&s.forward(p), &s.forward(q)), d);
            }
        }
    }
}
