//! Exact 2-dispersion via the Edmonds-Gallai decomposition.
//!
//! An optimal 2-dispersed set can be taken to consist of vertices and edge
//! midpoints only, with a perfect matching on every `Z` component, a
//! near-perfect matching on every `X` component of size at least three, and
//! at most one `X`-`Y` midpoint in the vicinity of every `y ∈ Y`. What is left
//! is a choice of `T ⊆ X₁` minimising `|Γ(T)| - |T|`, solved here as a
//! minimum `s`-`t` cut.

use std::collections::BTreeSet;

use crate::flow::FlowNetwork;
use crate::graph::Graph;
use crate::matching::{edmonds_gallai, near_perfect_matching, EgDecomposition, MatchingError};
use crate::point::{Point, WitnessSet};
use crate::rational::Rational;

/// A 2-dispersed set made of vertices and edge midpoints.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CanonicalWitness {
    pub vertex_points: BTreeSet<usize>,
    pub edge_midpoints: BTreeSet<usize>,
}

impl CanonicalWitness {
    pub fn len(&self) -> usize {
        self.vertex_points.len() + self.edge_midpoints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn points(&self) -> impl Iterator<Item = Point> + '_ {
        self.vertex_points
            .iter()
            .map(|&v| Point::Vertex(v))
            .chain(self.edge_midpoints.iter().map(|&e| Point::midpoint(e)))
    }

    pub fn to_witness_set(&self) -> WitnessSet {
        WitnessSet::new(self.points(), Rational::integer(2))
    }

    /// Independent vertex set, matching of midpoints, and no midpoint edge
    /// touching a neighbour of a chosen vertex.
    pub fn is_well_formed(&self, g: &Graph) -> bool {
        let mut blocked = vec![false; g.vertex_count()];
        for &v in &self.vertex_points {
            blocked[v] = true;
            for w in g.neighbors(v) {
                if self.vertex_points.contains(&w) {
                    return false;
                }
                blocked[w] = true;
            }
        }
        let mut covered = vec![false; g.vertex_count()];
        self.edge_midpoints.iter().all(|&e| {
            let (u, v) = g.edge(e);
            let ok = !covered[u] && !covered[v] && !blocked[u] && !blocked[v];
            covered[u] = true;
            covered[v] = true;
            ok
        })
    }
}

/// Bipartite data of the cut problem: `left = X₁`, `right = Y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutInstance {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    /// For each left vertex, indices into `right` of its neighbours.
    pub adjacency: Vec<Vec<usize>>,
}

impl CutInstance {
    pub fn from_decomposition(g: &Graph, eg: &EgDecomposition) -> Self {
        let left: Vec<usize> = eg.x1.iter().copied().collect();
        let right: Vec<usize> = eg.y.iter().copied().collect();
        let adjacency = left
            .iter()
            .map(|&x| {
                let mut nbrs: Vec<usize> =
                    g.neighbors(x).filter_map(|w| right.binary_search(&w).ok()).collect();
                nbrs.sort_unstable();
                nbrs
            })
            .collect();
        CutInstance { left, right, adjacency }
    }

    /// `g(T) = |Γ(T)| - |T|` for `T` given as indices into `left`.
    pub fn objective(&self, subset: &[usize]) -> i64 {
        let gamma: BTreeSet<usize> =
            subset.iter().flat_map(|&i| self.adjacency[i].iter().copied()).collect();
        gamma.len() as i64 - subset.len() as i64
    }
}

/// Minimum of the objective and one minimiser, as vertex ids of `left`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinG {
    pub value: i64,
    pub subset: BTreeSet<usize>,
}

/// Minimises `|Γ(T)| - |T|` over `T ⊆ X₁` by one max-flow computation.
pub fn min_g(inst: &CutInstance) -> MinG {
    let (l, r) = (inst.left.len(), inst.right.len());
    let (s, t) = (0, l + r + 1);
    let infinite = (l + r + 1) as u64;
    let mut net = FlowNetwork::new(l + r + 2);
    for i in 0..l {
        net.add_arc(s, 1 + i, 1);
        for &j in &inst.adjacency[i] {
            net.add_arc(1 + i, 1 + l + j, infinite);
        }
    }
    for j in 0..r {
        net.add_arc(1 + l + j, t, 1);
    }
    let cut = net.max_flow(s, t) as i64;
    let side = net.residual_reachable(s);
    let subset = (0..l).filter(|&i| side[1 + i]).map(|i| inst.left[i]).collect();
    MinG { value: cut - l as i64, subset }
}

#[derive(Debug, Clone)]
pub struct Disp2 {
    pub value: usize,
    pub witness: CanonicalWitness,
    pub decomposition: EgDecomposition,
}

/// The 2-dispersion number together with an optimal canonical witness.
pub fn disp2(g: &Graph) -> Result<Disp2, MatchingError> {
    let eg = edmonds_gallai(g)?;
    if g.vertex_count() == 1 {
        let witness = CanonicalWitness { vertex_points: BTreeSet::from([0]), ..Default::default() };
        return Ok(Disp2 { value: 1, witness, decomposition: eg });
    }

    let inst = CutInstance::from_decomposition(g, &eg);
    let best = min_g(&inst);
    let mut w = CanonicalWitness { vertex_points: best.subset.clone(), ..Default::default() };

    let gamma: BTreeSet<usize> = best
        .subset
        .iter()
        .flat_map(|&x| g.neighbors(x))
        .filter(|v| eg.y.contains(v))
        .collect();
    for (&y, &x) in &eg.y_partner {
        if !gamma.contains(&y) {
            w.edge_midpoints.insert(g.edge_between(y, x).expect("matched pair is an edge"));
        }
    }
    for comp in &eg.x_big {
        let missed = eg
            .y_partner
            .values()
            .copied()
            .find(|x| comp.binary_search(x).is_ok())
            .unwrap_or(comp[0]);
        w.edge_midpoints.extend(near_perfect_matching(g, comp, missed)?.edges);
    }
    for comp in &eg.z_components {
        w.edge_midpoints.extend(
            eg.base_matching.edges.iter().copied().filter(|&e| comp.binary_search(&g.edge(e).0).is_ok()),
        );
    }

    let value = eg.z.len() / 2
        + eg.x_big.iter().map(|c| (c.len() - 1) / 2).sum::<usize>()
        + eg.y.len();
    let value = (value as i64 - best.value) as usize;
    if w.len() != value {
        return Err(MatchingError::Inconsistent(format!(
            "assembled witness has {} points but the value is {value}",
            w.len()
        )));
    }
    Ok(Disp2 { value, witness: w, decomposition: eg })
}

fn induces_matching_of_size(g: &Graph, edges: &BTreeSet<usize>, comp: &[usize], size: usize) -> bool {
    let inside: Vec<usize> = edges
        .iter()
        .copied()
        .filter(|&e| {
            let (u, v) = g.edge(e);
            comp.binary_search(&u).is_ok() && comp.binary_search(&v).is_ok()
        })
        .collect();
    let covered: BTreeSet<usize> = inside.iter().flat_map(|&e| [g.edge(e).0, g.edge(e).1]).collect();
    inside.len() == size && covered.len() == 2 * size
}

/// Checks the three structural properties of a canonical optimum: near-perfect
/// matchings on large `X` components, clean `Y` vicinities, perfect matchings
/// on `Z` components.
pub fn validate_canonical(g: &Graph, w: &CanonicalWitness, eg: &EgDecomposition) -> bool {
    let near_perfect = eg
        .x_big
        .iter()
        .all(|c| induces_matching_of_size(g, &w.edge_midpoints, c, (c.len() - 1) / 2));
    let vicinities = eg.y.iter().all(|&y| {
        if w.vertex_points.contains(&y) {
            return false;
        }
        let hits: Vec<usize> = g
            .incident(y)
            .iter()
            .filter(|&&(_, e)| w.edge_midpoints.contains(&e))
            .map(|&(other, _)| other)
            .collect();
        match hits.as_slice() {
            [] => true,
            [other] => eg.x.contains(other),
            _ => false,
        }
    });
    let perfect = eg
        .z_components
        .iter()
        .all(|c| induces_matching_of_size(g, &w.edge_midpoints, c, c.len() / 2));
    near_perfect && vicinities && perfect
}
