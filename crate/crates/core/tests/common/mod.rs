//! Reference implementations used only by the tests. Everything here is
//! deliberately naive and shares no code with the library beyond `Graph`.
#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use dispersion::graph::Graph;
use rand::seq::SliceRandom;
use rand::Rng;

/// All labeled connected graphs on `n` vertices.
pub fn labeled_connected(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    (0u64..1 << pairs.len())
        .filter_map(|mask| {
            let edges = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p).collect();
            Graph::new(n, edges).ok()
        })
        .collect()
}

/// All labeled connected graphs with at most `m` edges.
pub fn labeled_connected_up_to_edges(m: usize) -> Vec<Graph> {
    (1..=m + 1)
        .flat_map(|n| {
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
            subsets_of_size_at_most(pairs.len(), m)
                .into_iter()
                .filter_map(move |idx| Graph::new(n, idx.iter().map(|&i| pairs[i]).collect()).ok())
                .collect::<Vec<_>>()
        })
        .collect()
}

fn subsets_of_size_at_most(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..k {
        let mut next = Vec::new();
        for s in &frontier {
            let start = s.last().map_or(0, |&l: &usize| l + 1);
            for i in start..n {
                let mut t = s.clone();
                t.push(i);
                next.push(t);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Random labeled tree on `n` vertices.
pub fn random_tree<R: Rng>(rng: &mut R, n: usize) -> Graph {
    let mut label: Vec<usize> = (0..n).collect();
    label.shuffle(rng);
    let edges = (1..n).map(|i| (label[i], label[rng.gen_range(0..i)])).collect();
    Graph::new(n, edges).unwrap()
}

/// Random connected graph: a random tree plus each other pair with probability `p`.
pub fn random_connected<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let tree = random_tree(rng, n);
    let mut edges: BTreeSet<(usize, usize)> = tree.edges().iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.insert((u, v));
            }
        }
    }
    Graph::new(n, edges.into_iter().collect()).unwrap()
}

/// Random connected graph with `n` vertices and exactly `m` edges (`n-1 ≤ m ≤ n(n-1)/2`).
pub fn random_with_edges<R: Rng>(rng: &mut R, n: usize, m: usize) -> Graph {
    let tree = random_tree(rng, n);
    let mut edges: BTreeSet<(usize, usize)> = tree.edges().iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
    let mut rest: Vec<(usize, usize)> =
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|p| !edges.contains(p)).collect();
    rest.shuffle(rng);
    edges.extend(rest.into_iter().take(m + 1 - n));
    Graph::new(n, edges.into_iter().collect()).unwrap()
}

/// Maximum matching size by trying every edge subset recursively.
pub fn nu_brute(n: usize, edges: &[(usize, usize)]) -> usize {
    fn go(edges: &[(usize, usize)], used: &mut Vec<bool>) -> usize {
        let Some((&(u, v), rest)) = edges.split_first() else { return 0 };
        let skip = go(rest, used);
        if used[u] || used[v] {
            return skip;
        }
        used[u] = true;
        used[v] = true;
        let take = 1 + go(rest, used);
        used[u] = false;
        used[v] = false;
        skip.max(take)
    }
    go(edges, &mut vec![false; n])
}

pub fn nu_of(g: &Graph) -> usize {
    nu_brute(g.vertex_count(), g.edges())
}

/// Edges of `g` with both ends in `keep`.
pub fn induced_edges(g: &Graph, keep: &[bool]) -> Vec<(usize, usize)> {
    g.edges().iter().copied().filter(|&(u, v)| keep[u] && keep[v]).collect()
}

/// `(X, Y, Z)` straight from the definition.
pub fn eg_brute(g: &Graph) -> (BTreeSet<usize>, BTreeSet<usize>, BTreeSet<usize>) {
    let n = g.vertex_count();
    let full = nu_of(g);
    let x: BTreeSet<usize> = (0..n)
        .filter(|&v| {
            let mut keep = vec![true; n];
            keep[v] = false;
            nu_brute(n, &induced_edges(g, &keep)) == full
        })
        .collect();
    let y: BTreeSet<usize> = (0..n).filter(|v| !x.contains(v) && g.neighbors(*v).any(|w| x.contains(&w))).collect();
    let z = (0..n).filter(|v| !x.contains(v) && !y.contains(v)).collect();
    (x, y, z)
}

/// Connected components of `g` restricted to `within`.
pub fn components(g: &Graph, within: &BTreeSet<usize>) -> Vec<Vec<usize>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for &s in within {
        if !seen.insert(s) {
            continue;
        }
        let mut comp = vec![s];
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for w in g.neighbors(u) {
                if within.contains(&w) && seen.insert(w) {
                    comp.push(w);
                    queue.push_back(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Whether `G[comp]` has a perfect matching, by exhaustive search.
pub fn has_perfect_matching(g: &Graph, comp: &[usize]) -> bool {
    let mut keep = vec![false; g.vertex_count()];
    comp.iter().for_each(|&v| keep[v] = true);
    comp.len().is_multiple_of(2) && 2 * nu_brute(g.vertex_count(), &induced_edges(g, &keep)) == comp.len()
}

/// Whether `G[comp] - v` has a perfect matching for every `v` in `comp`.
pub fn is_factor_critical(g: &Graph, comp: &[usize]) -> bool {
    comp.iter().all(|&v| {
        let rest: Vec<usize> = comp.iter().copied().filter(|&w| w != v).collect();
        has_perfect_matching(g, &rest)
    })
}

/// Dispersion number on the grid of step `1/q`, computed on an explicitly
/// subdivided copy of `g` with BFS distances. `delta_units = δ·q` must be an
/// integer.
pub fn grid_disp(g: &Graph, q: usize, delta_units: usize) -> usize {
    let n = g.vertex_count();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(u, v) in g.edges() {
        let mut prev = u;
        for _ in 1..q {
            adj.push(Vec::new());
            let id = adj.len() - 1;
            adj[prev].push(id);
            adj[id].push(prev);
            prev = id;
        }
        adj[prev].push(v);
        adj[v].push(prev);
    }
    let total = adj.len();
    assert!(total <= 128, "grid too large for the reference search");
    let mut conflict = vec![0u128; total];
    for s in 0..total {
        let mut dist = vec![usize::MAX; total];
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &w in &adj[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        for (t, &d) in dist.iter().enumerate() {
            if t != s && d < delta_units {
                conflict[s] |= 1 << t;
            }
        }
    }
    let all = if total == 128 { u128::MAX } else { (1u128 << total) - 1 };
    let mut best = 0;
    mis(&conflict, all, 0, &mut best);
    best
}

fn mis(conflict: &[u128], cand: u128, size: usize, best: &mut usize) {
    if cand == 0 {
        *best = (*best).max(size);
        return;
    }
    if size + cand.count_ones() as usize <= *best {
        return;
    }
    // free vertices are always taken; otherwise branch on the busiest one
    let mut v = cand.trailing_zeros() as usize;
    let mut deg = (conflict[v] & cand).count_ones();
    let mut rest = cand;
    while rest != 0 {
        let w = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let d = (conflict[w] & cand).count_ones();
        if d == 0 {
            return mis(conflict, cand & !(1 << w), size + 1, best);
        }
        if d > deg {
            v = w;
            deg = d;
        }
    }
    mis(conflict, cand & !conflict[v] & !(1 << v), size + 1, best);
    mis(conflict, cand & !(1 << v), size, best);
}

/// `grid_disp` at `δ = a/b` on the grid of step `1/(2b·refine)`.
pub fn grid_disp_at(g: &Graph, a: usize, b: usize, refine: usize) -> usize {
    let q = 2 * b * refine;
    grid_disp(g, q, a * 2 * refine)
}
