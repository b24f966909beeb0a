//! Maximum cardinality matching in general graphs and the Edmonds-Gallai
//! decomposition.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use thiserror::Error;

use crate::graph::Graph;
use crate::par::Execution;

const NONE: usize = usize::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatchingError {
    #[error("Edmonds-Gallai consistency check failed: {0}")]
    Inconsistent(String),
    #[error("no matching covers component {component:?} except vertex {missed}")]
    Infeasible { component: Vec<usize>, missed: usize },
}

/// A set of pairwise disjoint edges, by edge index.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Matching {
    pub edges: BTreeSet<usize>,
}

impl Matching {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Partner of every vertex, or `None` if unmatched.
    pub fn mates(&self, g: &Graph) -> Vec<Option<usize>> {
        let mut mate = vec![None; g.vertex_count()];
        for &e in &self.edges {
            let (u, v) = g.edge(e);
            mate[u] = Some(v);
            mate[v] = Some(u);
        }
        mate
    }

    pub fn is_valid(&self, g: &Graph) -> bool {
        let mut covered = vec![false; g.vertex_count()];
        for &e in &self.edges {
            if e >= g.edge_count() {
                return false;
            }
            let (u, v) = g.edge(e);
            if covered[u] || covered[v] {
                return false;
            }
            covered[u] = true;
            covered[v] = true;
        }
        true
    }

    fn from_mates(g: &Graph, mate: &[usize]) -> Matching {
        let edges = g
            .edges()
            .iter()
            .enumerate()
            .filter(|&(_, &(u, v))| mate[u] == v)
            .map(|(e, _)| e)
            .collect();
        Matching { edges }
    }
}

/// Edmonds' blossom search restricted to the `alive` vertices.
struct Blossom<'a> {
    adj: &'a [Vec<usize>],
    alive: &'a [bool],
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
}

impl<'a> Blossom<'a> {
    fn new(adj: &'a [Vec<usize>], alive: &'a [bool]) -> Self {
        let n = adj.len();
        Blossom {
            adj,
            alive,
            mate: vec![NONE; n],
            parent: vec![NONE; n],
            base: (0..n).collect(),
            used: vec![false; n],
            in_blossom: vec![false; n],
        }
    }

    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; self.adj.len()];
        loop {
            a = self.base[a];
            seen[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    /// BFS for an augmenting path from `root`; returns its free endpoint.
    fn find_path(&mut self, root: usize) -> usize {
        let n = self.adj.len();
        self.used.iter_mut().for_each(|x| *x = false);
        self.parent.iter_mut().for_each(|x| *x = NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.used[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &to in &self.adj[v] {
                if !self.alive[to] || self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    let cur = self.lca(v, to);
                    self.in_blossom.iter_mut().for_each(|x| *x = false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return to;
                    }
                    let next = self.mate[to];
                    self.used[next] = true;
                    queue.push_back(next);
                }
            }
        }
        NONE
    }

    fn run(mut self) -> Vec<usize> {
        let n = self.adj.len();
        // greedy start
        for v in 0..n {
            if !self.alive[v] || self.mate[v] != NONE {
                continue;
            }
            if let Some(&w) = self.adj[v].iter().find(|&&w| self.alive[w] && self.mate[w] == NONE) {
                self.mate[v] = w;
                self.mate[w] = v;
            }
        }
        for root in 0..n {
            if !self.alive[root] || self.mate[root] != NONE {
                continue;
            }
            let mut v = self.find_path(root);
            while v != NONE {
                let pv = self.parent[v];
                let ppv = self.mate[pv];
                self.mate[v] = pv;
                self.mate[pv] = v;
                v = ppv;
            }
        }
        self.mate
    }
}

fn mates_on(adj: &[Vec<usize>], alive: &[bool]) -> Vec<usize> {
    Blossom::new(adj, alive).run()
}

fn matched_count(mate: &[usize]) -> usize {
    mate.iter().filter(|&&m| m != NONE).count() / 2
}

pub fn maximum_matching(g: &Graph) -> Matching {
    let adj = g.adjacency();
    let alive = vec![true; g.vertex_count()];
    Matching::from_mates(g, &mates_on(&adj, &alive))
}

/// Size of a maximum matching.
pub fn nu(g: &Graph) -> usize {
    maximum_matching(g).len()
}

/// A matching of the subgraph induced by `component` that covers every
/// vertex except `missed`.
pub fn near_perfect_matching(
    g: &Graph,
    component: &[usize],
    missed: usize,
) -> Result<Matching, MatchingError> {
    let mut alive = vec![false; g.vertex_count()];
    for &v in component {
        alive[v] = true;
    }
    let infeasible = || MatchingError::Infeasible { component: component.to_vec(), missed };
    if !alive[missed] {
        return Err(infeasible());
    }
    alive[missed] = false;
    let mate = mates_on(&g.adjacency(), &alive);
    if matched_count(&mate) * 2 + 1 != component.len() {
        return Err(infeasible());
    }
    Ok(Matching::from_mates(g, &mate))
}

/// Perfect matching of the subgraph induced by `component`, if one exists.
pub fn perfect_matching(g: &Graph, component: &[usize]) -> Option<Matching> {
    let mut alive = vec![false; g.vertex_count()];
    for &v in component {
        alive[v] = true;
    }
    let mate = mates_on(&g.adjacency(), &alive);
    (matched_count(&mate) * 2 == component.len()).then(|| Matching::from_mates(g, &mate))
}

/// The Edmonds-Gallai partition `V = X ∪ Y ∪ Z` with its component structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EgDecomposition {
    /// Vertices missed by some maximum matching.
    pub x: BTreeSet<usize>,
    /// Neighbours of `x` outside `x`.
    pub y: BTreeSet<usize>,
    pub z: BTreeSet<usize>,
    /// Vertices forming singleton components of `G - Y` inside `x`.
    pub x1: BTreeSet<usize>,
    /// Components of `x` with at least three vertices, each sorted.
    pub x_big: Vec<Vec<usize>>,
    /// Components of `z`, each sorted.
    pub z_components: Vec<Vec<usize>>,
    /// Matched partner in `x` of every `y` vertex under `base_matching`.
    pub y_partner: BTreeMap<usize, usize>,
    pub base_matching: Matching,
}

impl EgDecomposition {
    /// Index into `x_big` of the component containing `v`, if any.
    pub fn x_big_component_of(&self, v: usize) -> Option<usize> {
        self.x_big.iter().position(|c| c.binary_search(&v).is_ok())
    }
}

fn components(g: &Graph, members: &BTreeSet<usize>) -> Vec<Vec<usize>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for &s in members {
        if !seen.insert(s) {
            continue;
        }
        let mut comp = vec![s];
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for w in g.neighbors(u) {
                if members.contains(&w) && seen.insert(w) {
                    comp.push(w);
                    stack.push(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

pub fn edmonds_gallai(g: &Graph) -> Result<EgDecomposition, MatchingError> {
    edmonds_gallai_with(g, Execution::default())
}

/// `X` is found by the definition: `v ∈ X` iff `ν(G - v) = ν(G)`.
pub fn edmonds_gallai_with(g: &Graph, exec: Execution) -> Result<EgDecomposition, MatchingError> {
    let n = g.vertex_count();
    let adj = g.adjacency();
    let all = vec![true; n];
    let base = mates_on(&adj, &all);
    let size = matched_count(&base);

    let in_x = exec.map_range(n, |v| {
        let mut alive = all.clone();
        alive[v] = false;
        matched_count(&mates_on(&adj, &alive)) == size
    });
    let x: BTreeSet<usize> = (0..n).filter(|&v| in_x[v]).collect();
    let y: BTreeSet<usize> = (0..n)
        .filter(|&v| !in_x[v] && g.neighbors(v).any(|w| in_x[w]))
        .collect();
    let z: BTreeSet<usize> = (0..n).filter(|v| !x.contains(v) && !y.contains(v)).collect();

    let fail = |msg: String| Err(MatchingError::Inconsistent(msg));
    for &(u, v) in g.edges() {
        if (x.contains(&u) && z.contains(&v)) || (z.contains(&u) && x.contains(&v)) {
            return fail(format!("edge {{{u}, {v}}} joins X and Z"));
        }
    }

    let x_components = components(g, &x);
    let z_components = components(g, &z);
    let mut comp_of = vec![NONE; n];
    for (i, c) in x_components.iter().enumerate() {
        if c.len() % 2 == 0 {
            return fail(format!("X component {c:?} has even size"));
        }
        c.iter().for_each(|&v| comp_of[v] = i);
    }
    for c in &z_components {
        if c.len() % 2 == 1 {
            return fail(format!("Z component {c:?} has odd size"));
        }
        for &v in c {
            if base[v] == NONE || !c.contains(&base[v]) {
                return fail(format!("Z vertex {v} not matched inside its component"));
            }
        }
    }
    for c in &x_components {
        let outside = c.iter().filter(|&&v| base[v] == NONE || comp_of[base[v]] != comp_of[v]).count();
        if outside != 1 {
            return fail(format!("matching is not near-perfect on X component {c:?}"));
        }
    }
    let mut y_partner = BTreeMap::new();
    let mut hit = BTreeSet::new();
    for &v in &y {
        let m = base[v];
        if m == NONE || !x.contains(&m) {
            return fail(format!("Y vertex {v} is not matched into X"));
        }
        if !hit.insert(comp_of[m]) {
            return fail(format!("two Y vertices matched into the component of {m}"));
        }
        y_partner.insert(v, m);
    }

    let (small, big): (Vec<_>, Vec<_>) = x_components.into_iter().partition(|c| c.len() == 1);
    Ok(EgDecomposition {
        x1: small.into_iter().map(|c| c[0]).collect(),
        x_big: big,
        z_components,
        x,
        y,
        z,
        y_partner,
        base_matching: Matching::from_mates(g, &base),
    })
}
