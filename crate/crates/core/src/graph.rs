//! Explicit edge-labelled graphs and the cycle searches shared by value
//! computation, emptiness checks and monitor evaluation.

use std::collections::VecDeque;

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};

use crate::Weight;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    /// Caller-defined payload (letter, transition id, ...).
    pub label: usize,
    pub weight: Weight,
}

#[derive(Clone, Debug, Default)]
pub struct Graph {
    pub n: usize,
    pub edges: Vec<Edge>,
    out: Vec<Vec<usize>>,
}

/// A lasso in a graph: edge ids of the path to the cycle and of the cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeLasso {
    pub stem: Vec<usize>,
    pub cycle: Vec<usize>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph { n, edges: Vec::new(), out: vec![Vec::new(); n] }
    }

    pub fn add_node(&mut self) -> usize {
        self.out.push(Vec::new());
        self.n += 1;
        self.n - 1
    }

    pub fn add_edge(&mut self, from: usize, to: usize, label: usize, weight: Weight) -> usize {
        self.edges.push(Edge { from, to, label, weight });
        self.out[from].push(self.edges.len() - 1);
        self.edges.len() - 1
    }

    pub fn out_edges(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    pub fn reachable_from(&self, start: usize, keep: &dyn Fn(usize) -> bool) -> Vec<bool> {
        let mut seen = vec![false; self.n];
        if start >= self.n {
            return seen;
        }
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &e in &self.out[v] {
                if keep(e) && !seen[self.edges[e].to] {
                    seen[self.edges[e].to] = true;
                    stack.push(self.edges[e].to);
                }
            }
        }
        seen
    }

    /// SCC id per node over the kept edges.
    pub fn scc_ids(&self, keep: &dyn Fn(usize) -> bool) -> Vec<usize> {
        let mut g: DiGraph<(), ()> = DiGraph::with_capacity(self.n, self.edges.len());
        for _ in 0..self.n {
            g.add_node(());
        }
        for (i, e) in self.edges.iter().enumerate() {
            if keep(i) {
                g.add_edge(NodeIndex::new(e.from), NodeIndex::new(e.to), ());
            }
        }
        let mut ids = vec![0; self.n];
        for (c, comp) in tarjan_scc(&g).into_iter().enumerate() {
            for v in comp {
                ids[v.index()] = c;
            }
        }
        ids
    }

    /// Kept edges lying on some cycle of kept edges.
    pub fn cyclic_edges(&self, keep: &dyn Fn(usize) -> bool) -> Vec<bool> {
        let ids = self.scc_ids(keep);
        self.edges
            .iter()
            .enumerate()
            .map(|(i, e)| keep(i) && ids[e.from] == ids[e.to])
            .collect()
    }

    /// Shortest path (by edge count) from `from` to any node in `targets`,
    /// using kept edges; ties broken by edge insertion order.
    pub fn shortest_path(
        &self,
        from: usize,
        targets: &dyn Fn(usize) -> bool,
        keep: &dyn Fn(usize) -> bool,
    ) -> Option<Vec<usize>> {
        if targets(from) {
            return Some(Vec::new());
        }
        let mut pred: Vec<Option<usize>> = vec![None; self.n];
        let mut seen = vec![false; self.n];
        seen[from] = true;
        let mut q = VecDeque::from([from]);
        while let Some(v) = q.pop_front() {
            for &e in &self.out[v] {
                if !keep(e) {
                    continue;
                }
                let w = self.edges[e].to;
                if seen[w] {
                    continue;
                }
                seen[w] = true;
                pred[w] = Some(e);
                if targets(w) {
                    let mut path = vec![e];
                    let mut cur = v;
                    while cur != from {
                        let pe = pred[cur].unwrap();
                        path.push(pe);
                        cur = self.edges[pe].from;
                    }
                    path.reverse();
                    return Some(path);
                }
                q.push_back(w);
            }
        }
        None
    }

    /// A closed walk through every edge in `required` (all within one SCC of
    /// kept edges), starting and ending at the source of `required[0]`.
    pub fn closed_walk(&self, required: &[usize], keep: &dyn Fn(usize) -> bool) -> Option<Vec<usize>> {
        let start = self.edges[*required.first()?].from;
        let mut walk = Vec::new();
        let mut cur = start;
        for &e in required {
            let src = self.edges[e].from;
            walk.extend(self.shortest_path(cur, &|v| v == src, keep)?);
            walk.push(e);
            cur = self.edges[e].to;
        }
        walk.extend(self.shortest_path(cur, &|v| v == start, keep)?);
        Some(walk)
    }

    /// Lasso from `init` whose cycle passes through all `required` edges.
    /// The stem may use any edge; the cycle only kept edges.
    pub fn lasso_through(
        &self,
        init: usize,
        required: &[usize],
        keep: &dyn Fn(usize) -> bool,
    ) -> Option<EdgeLasso> {
        let cycle = self.closed_walk(required, keep)?;
        let entry = self.edges[cycle[0]].from;
        let stem = self.shortest_path(init, &|v| v == entry, &|_| true)?;
        Some(EdgeLasso { stem, cycle })
    }

    /// A lasso from `init` whose cycle uses only kept edges and contains at
    /// least one edge of every class (generalized Büchi condition).
    pub fn generalized_lasso(
        &self,
        init: usize,
        keep: &dyn Fn(usize) -> bool,
        classes: &[&dyn Fn(usize) -> bool],
    ) -> Option<EdgeLasso> {
        let reach = self.reachable_from(init, &|_| true);
        let ids = self.scc_ids(keep);
        let mut order: Vec<usize> = Vec::new();
        let mut by_scc: std::collections::HashMap<usize, Vec<usize>> = std::collections::HashMap::new();
        for (i, e) in self.edges.iter().enumerate() {
            if keep(i) && reach[e.from] && ids[e.from] == ids[e.to] {
                let v = by_scc.entry(ids[e.from]).or_default();
                if v.is_empty() {
                    order.push(ids[e.from]);
                }
                v.push(i);
            }
        }
        for c in order {
            let edges = &by_scc[&c];
            let req: Option<Vec<usize>> = if classes.is_empty() {
                Some(vec![edges[0]])
            } else {
                classes.iter().map(|cl| edges.iter().copied().find(|&e| cl(e))).collect()
            };
            if let Some(r) = req {
                return self.lasso_through(init, &r, keep);
            }
        }
        None
    }

    /// Maximum over reachable cycles of the maximal edge weight, with a lasso.
    pub fn best_limsup(&self, init: usize) -> Option<(Weight, EdgeLasso)> {
        let reach = self.reachable_from(init, &|_| true);
        let cyc = self.cyclic_edges(&|_| true);
        let best = (0..self.edges.len())
            .filter(|&e| cyc[e] && reach[self.edges[e].from])
            .max_by_key(|&e| (self.edges[e].weight, std::cmp::Reverse(e)))?;
        let w = self.edges[best].weight;
        let lasso = self.lasso_through(init, &[best], &|_| true)?;
        Some((w, lasso))
    }

    /// Maximum over reachable cycles of the minimal edge weight, with a lasso.
    pub fn best_liminf(&self, init: usize) -> Option<(Weight, EdgeLasso)> {
        let reach = self.reachable_from(init, &|_| true);
        let mut ws: Vec<Weight> = self.edges.iter().map(|e| e.weight).collect();
        ws.sort_unstable();
        ws.dedup();
        for &v in ws.iter().rev() {
            let keep = |e: usize| self.edges[e].weight >= v;
            let cyc = self.cyclic_edges(&keep);
            if let Some(e) =
                (0..self.edges.len()).find(|&e| cyc[e] && reach[self.edges[e].from] && self.edges[e].weight == v)
            {
                let lasso = self.lasso_through(init, &[e], &keep)?;
                return Some((v, lasso));
            }
        }
        None
    }

    /// A reachable cycle whose maximal edge weight (read as a priority) is
    /// odd, if any: the cycle search behind one-player parity checks.
    pub fn odd_max_cycle(&self, init: usize) -> Option<EdgeLasso> {
        self.max_cycle_with_parity(init, 1)
    }

    pub fn even_max_cycle(&self, init: usize) -> Option<EdgeLasso> {
        self.max_cycle_with_parity(init, 0)
    }

    fn max_cycle_with_parity(&self, init: usize, parity: Weight) -> Option<EdgeLasso> {
        let reach = self.reachable_from(init, &|_| true);
        let mut ps: Vec<Weight> =
            self.edges.iter().map(|e| e.weight).filter(|p| p % 2 == parity).collect();
        ps.sort_unstable();
        ps.dedup();
        for &p in ps.iter().rev() {
            let keep = |e: usize| self.edges[e].weight <= p;
            let cyc = self.cyclic_edges(&keep);
            if let Some(e) =
                (0..self.edges.len()).find(|&e| cyc[e] && reach[self.edges[e].from] && self.edges[e].weight == p)
            {
                return self.lasso_through(init, &[e], &keep);
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn limsup_and_liminf_on_small_graph() {
        let mut g = Graph::new(3);
        g.add_edge(0, 1, 0, 5);
        g.add_edge(1, 1, 0, 1);
        g.add_edge(1, 2, 0, 0);
        g.add_edge(2, 2, 0, 3);
        g.add_edge(2, 1, 0, 2);
        let (sup, l) = g.best_limsup(0).unwrap();
        assert_eq!(sup, 3);
        assert_eq!(l.stem.len(), 2);
        let (inf, _) = g.best_liminf(0).unwrap();
        assert_eq!(inf, 3);
    }

    #[test]
    fn parity_cycles() {
        let mut g = Graph::new(2);
        g.add_edge(0, 1, 0, 2);
        g.add_edge(1, 0, 0, 1);
        g.add_edge(1, 1, 0, 3);
        assert!(g.odd_max_cycle(0).is_some());
        assert!(g.even_max_cycle(0).is_some());
        let mut h = Graph::new(1);
        h.add_edge(0, 0, 0, 4);
        assert!(h.odd_max_cycle(0).is_none());
    }
}
