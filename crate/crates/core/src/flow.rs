//! Dinic max-flow on small integer-capacity networks.

use std::collections::VecDeque;

#[derive(Debug, Clone)]
struct Arc {
    to: usize,
    cap: u64,
}

#[derive(Debug, Clone)]
pub struct FlowNetwork {
    arcs: Vec<Arc>,
    out: Vec<Vec<usize>>,
}

impl FlowNetwork {
    pub fn new(nodes: usize) -> Self {
        FlowNetwork { arcs: Vec::new(), out: vec![Vec::new(); nodes] }
    }

    pub fn add_arc(&mut self, from: usize, to: usize, cap: u64) {
        self.out[from].push(self.arcs.len());
        self.arcs.push(Arc { to, cap });
        self.out[to].push(self.arcs.len());
        self.arcs.push(Arc { to: from, cap: 0 });
    }

    fn levels(&self, s: usize) -> Vec<Option<usize>> {
        let mut level = vec![None; self.out.len()];
        level[s] = Some(0);
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &a in &self.out[u] {
                let arc = &self.arcs[a];
                if arc.cap > 0 && level[arc.to].is_none() {
                    level[arc.to] = Some(level[u].unwrap() + 1);
                    queue.push_back(arc.to);
                }
            }
        }
        level
    }

    fn push(&mut self, u: usize, t: usize, limit: u64, level: &[Option<usize>], it: &mut [usize]) -> u64 {
        if u == t {
            return limit;
        }
        while it[u] < self.out[u].len() {
            let a = self.out[u][it[u]];
            let (to, cap) = (self.arcs[a].to, self.arcs[a].cap);
            if cap > 0 && level[to] == level[u].map(|l| l + 1) {
                let pushed = self.push(to, t, limit.min(cap), level, it);
                if pushed > 0 {
                    self.arcs[a].cap -= pushed;
                    self.arcs[a ^ 1].cap += pushed;
                    return pushed;
                }
            }
            it[u] += 1;
        }
        0
    }

    /// Saturates the network and returns the max-flow value.
    pub fn max_flow(&mut self, s: usize, t: usize) -> u64 {
        let mut total = 0;
        loop {
            let level = self.levels(s);
            if level[t].is_none() {
                return total;
            }
            let mut it = vec![0; self.out.len()];
            loop {
                let f = self.push(s, t, u64::MAX, &level, &mut it);
                if f == 0 {
                    break;
                }
                total += f;
            }
        }
    }

    /// Nodes reachable from `s` in the residual network; after
    /// [`FlowNetwork::max_flow`] this is the source side of a minimum cut.
    pub fn residual_reachable(&self, s: usize) -> Vec<bool> {
        self.levels(s).into_iter().map(|l| l.is_some()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classic_network() {
        let mut net = FlowNetwork::new(6);
        for &(u, v, c) in &[(0, 1, 16), (0, 2, 13), (1, 2, 10), (2, 1, 4), (1, 3, 12), (3, 2, 9), (2, 4, 14), (4, 3, 7), (3, 5, 20), (4, 5, 4)] {
            net.add_arc(u, v, c);
        }
        assert_eq!(net.max_flow(0, 5), 23);
        let side = net.residual_reachable(0);
        assert!(side[0] && !side[5]);
    }

    #[test]
    fn disconnected_sink() {
        let mut net = FlowNetwork::new(3);
        net.add_arc(0, 1, 5);
        assert_eq!(net.max_flow(0, 2), 0);
    }
}
