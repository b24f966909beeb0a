//! Connected, simple, unit-edge graphs and their text format.

use std::collections::{HashSet, VecDeque};
use std::fmt::Write as _;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("line {line}: malformed input: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("line {line}: vertex id {vertex} out of range (vertex count {count})")]
    VertexOutOfRange { line: usize, vertex: usize, count: usize },
    #[error("line {line}: self-loop at vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("line {line}: duplicate edge {{{u}, {v}}}")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("graph is disconnected (vertex {unreached} unreachable from vertex 0)")]
    Disconnected { unreached: usize },
    #[error("graph has no vertices")]
    Empty,
}

/// A connected simple graph whose edges all have unit length.
///
/// Edge `i` is stored as the ordered pair `edges()[i] = (u, v)`; offsets of
/// interior points are measured from `u`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    // (neighbor, edge index), sorted by edge index
    adj: Vec<Vec<(usize, usize)>>,
}

impl Graph {
    /// Validates and builds a graph. Edges are numbered in the order given;
    /// error line numbers refer to `edge index + 2` as in the file format.
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        let mut seen = HashSet::with_capacity(edges.len());
        for (i, &(u, v)) in edges.iter().enumerate() {
            let line = i + 2;
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { line, vertex: w, count: n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop { line, vertex: u });
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(GraphError::DuplicateEdge { line, u, v });
            }
        }
        let g = Self::build(n, edges);
        if let Some(unreached) = g.first_unreachable() {
            return Err(GraphError::Disconnected { unreached });
        }
        Ok(g)
    }

    fn build(n: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for (i, &(u, v)) in edges.iter().enumerate() {
            adj[u].push((v, i));
            adj[v].push((u, i));
        }
        Graph { n, edges, adj }
    }

    fn first_unreachable(&self) -> Option<usize> {
        let dist = self.bfs(0);
        dist.iter().position(|d| d.is_none())
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    /// `(neighbor, edge index)` pairs, ordered by edge index.
    pub fn incident(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[v]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().map(|&(w, _)| w)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn edge_between(&self, u: usize, v: usize) -> Option<usize> {
        self.adj[u].iter().find(|&&(w, _)| w == v).map(|&(_, e)| e)
    }

    pub fn is_tree(&self) -> bool {
        self.edges.len() + 1 == self.n
    }

    /// Adjacency lists without edge indices.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        self.adj.iter().map(|l| l.iter().map(|&(w, _)| w).collect()).collect()
    }

    fn bfs(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        let mut queue = VecDeque::new();
        dist[source] = Some(0);
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &(w, _) in &self.adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// All-pairs hop distances, one BFS per vertex.
    pub fn hop_distances(&self) -> HopTable {
        let mut table = vec![0u32; self.n * self.n];
        for s in 0..self.n {
            for (t, d) in self.bfs(s).into_iter().enumerate() {
                table[s * self.n + t] = d.expect("graph is connected") as u32;
            }
        }
        HopTable { n: self.n, table }
    }

    /// Text form: `n m` followed by one `u v` line per edge.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.edges.len());
        for &(u, v) in &self.edges {
            writeln!(out, "{u} {v}").unwrap();
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HopTable {
    n: usize,
    table: Vec<u32>,
}

impl HopTable {
    #[inline]
    pub fn get(&self, u: usize, v: usize) -> u32 {
        self.table[u * self.n + v]
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn diameter(&self) -> u32 {
        self.table.iter().copied().max().unwrap_or(0)
    }
}

/// Parses the `n m` / `u v` graph format. Blank lines and `#` comments are skipped.
pub fn parse_graph(text: &str) -> Result<Graph, GraphError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (header_line, header) = lines.next().ok_or(GraphError::Malformed {
        line: 1,
        reason: "missing header 'n m'".into(),
    })?;
    let (n, m) = parse_pair(header_line, header)?;

    let mut edges = Vec::with_capacity(m);
    let mut lines_of = Vec::with_capacity(m);
    for (line, l) in lines.by_ref() {
        if edges.len() == m {
            return Err(GraphError::Malformed {
                line,
                reason: format!("more than the declared {m} edges"),
            });
        }
        let (u, v) = parse_pair(line, l)?;
        edges.push((u, v));
        lines_of.push(line);
    }
    if edges.len() != m {
        return Err(GraphError::Malformed {
            line: header_line,
            reason: format!("declared {m} edges but found {}", edges.len()),
        });
    }
    // Re-map edge-relative line numbers to the physical line in the input.
    Graph::new(n, edges).map_err(|e| match e {
        GraphError::VertexOutOfRange { line, vertex, count } => {
            GraphError::VertexOutOfRange { line: lines_of[line - 2], vertex, count }
        }
        GraphError::SelfLoop { line, vertex } => {
            GraphError::SelfLoop { line: lines_of[line - 2], vertex }
        }
        GraphError::DuplicateEdge { line, u, v } => {
            GraphError::DuplicateEdge { line: lines_of[line - 2], u, v }
        }
        other => other,
    })
}

fn parse_pair(line: usize, l: &str) -> Result<(usize, usize), GraphError> {
    let mut it = l.split_whitespace();
    let mut next = |what: &str| -> Result<usize, GraphError> {
        let tok = it.next().ok_or_else(|| GraphError::Malformed {
            line,
            reason: format!("missing {what}"),
        })?;
        tok.parse().map_err(|_| GraphError::Malformed {
            line,
            reason: format!("'{tok}' is not a non-negative integer"),
        })
    };
    let a = next("first field")?;
    let b = next("second field")?;
    if let Some(extra) = it.next() {
        return Err(GraphError::Malformed { line, reason: format!("unexpected token '{extra}'") });
    }
    Ok((a, b))
}

/// Small named graphs used throughout the tests and the gadget catalogue.
pub mod named {
    use super::Graph;

    pub fn path(n: usize) -> Graph {
        Graph::new(n, (1..n).map(|i| (i - 1, i)).collect()).unwrap()
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3);
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)).collect()).unwrap()
    }

    pub fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::new(n, edges).unwrap()
    }

    pub fn star(leaves: usize) -> Graph {
        Graph::new(leaves + 1, (1..=leaves).map(|l| (0, l)).collect()).unwrap()
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..a {
            for v in 0..b {
                edges.push((u, a + v));
            }
        }
        Graph::new(a + b, edges).unwrap()
    }

    pub fn cube() -> Graph {
        let mut edges = Vec::new();
        for u in 0..8usize {
            for bit in 0..3 {
                let v = u ^ (1 << bit);
                if u < v {
                    edges.push((u, v));
                }
            }
        }
        Graph::new(8, edges).unwrap()
    }
}
