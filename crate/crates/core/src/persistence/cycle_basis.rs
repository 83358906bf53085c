//! Minimum-weight cycle basis over GF(2) from Horton's candidate set: for
//! each vertex `v` and edge `xy`, the cycle `P(v,x) + xy + P(y,v)` built
//! from one shortest-path tree per vertex, kept when the two tree paths only
//! meet at `v`. Candidates are taken greedily in increasing length.

use std::collections::HashSet;

use crate::metric_graph::{EdgeId, MetricGraph, VertexId};

#[derive(Clone, Debug, PartialEq)]
pub struct Cycle {
    pub length: f64,
    /// Sorted edge ids.
    pub edges: Vec<EdgeId>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct BitSet(Vec<u64>);

impl BitSet {
    fn new(n: usize) -> Self {
        Self(vec![0; n.div_ceil(64)])
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn xor(&mut self, other: &BitSet) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a ^= b;
        }
    }
    fn highest(&self) -> Option<usize> {
        self.0
            .iter()
            .enumerate()
            .rev()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + 63 - w.leading_zeros() as usize)
    }
}

fn tree_path(parent: &[Option<EdgeId>], g: &MetricGraph, mut x: VertexId) -> (Vec<EdgeId>, Vec<VertexId>) {
    let mut edges = Vec::new();
    let mut verts = vec![x];
    while let Some(e) = parent[x.0] {
        edges.push(e);
        x = g.edge(e).other(x);
        verts.push(x);
    }
    (edges, verts)
}

fn horton_candidates(g: &MetricGraph) -> Vec<Cycle> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for v in g.vertices() {
        let (dist, parent) = g.sssp_with_parents(v);
        for e in g.edge_ids() {
            let edge = g.edge(e);
            if parent[edge.u.0] == Some(e) || parent[edge.v.0] == Some(e) {
                continue;
            }
            let (px, vx) = tree_path(&parent, g, edge.u);
            let (py, vy) = tree_path(&parent, g, edge.v);
            let shared = vx.iter().filter(|w| vy.contains(w)).count();
            if shared != 1 {
                continue;
            }
            let mut bits = BitSet::new(g.edge_count());
            let mut edges: Vec<EdgeId> = px.into_iter().chain(py).chain([e]).collect();
            edges.sort();
            for x in &edges {
                bits.set(x.0);
            }
            if seen.insert(bits) {
                out.push(Cycle { length: dist[edge.u.0] + dist[edge.v.0] + edge.length, edges });
            }
        }
    }
    out.sort_by(|a, b| a.length.total_cmp(&b.length).then_with(|| a.edges.cmp(&b.edges)));
    out
}

/// Cycles of a minimum-weight cycle basis, by nondecreasing length.
pub fn minimal_cycles(g: &MetricGraph) -> Vec<Cycle> {
    let beta = g.betti1();
    let mut basis: Vec<(usize, BitSet)> = Vec::with_capacity(beta);
    let mut chosen = Vec::with_capacity(beta);
    if beta == 0 {
        return chosen;
    }
    for cand in horton_candidates(g) {
        let mut bits = BitSet::new(g.edge_count());
        for e in &cand.edges {
            bits.set(e.0);
        }
        // reduce against basis vectors, kept sorted by pivot descending
        for (pivot, vec) in &basis {
            if bits.0[pivot / 64] >> (pivot % 64) & 1 == 1 {
                bits.xor(vec);
            }
        }
        if let Some(pivot) = bits.highest() {
            let pos = basis.partition_point(|(p, _)| *p > pivot);
            basis.insert(pos, (pivot, bits));
            chosen.push(cand);
            if chosen.len() == beta {
                break;
            }
        }
    }
    debug_assert_eq!(chosen.len(), beta);
    chosen
}

/// Lengths `l_1 ≤ ... ≤ l_β` of a minimum-weight cycle basis.
pub fn minimal_cycle_basis(g: &MetricGraph) -> Vec<f64> {
    minimal_cycles(g).into_iter().map(|c| c.length).collect()
}
