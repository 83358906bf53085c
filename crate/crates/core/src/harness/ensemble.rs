use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metric_graph::{EdgeId, GraphPoint, MetricGraph};

/// A seeded family of random connected metric graphs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnsembleSpec {
    pub seed: u64,
    pub count: usize,
    /// Inclusive vertex-count range.
    pub vertices: (usize, usize),
    /// Inclusive range for the first Betti number.
    pub betti: (usize, usize),
    /// Edge lengths are drawn uniformly from this interval.
    pub lengths: (f64, f64),
}

impl Default for EnsembleSpec {
    fn default() -> Self {
        Self { seed: 0, count: 100, vertices: (2, 8), betti: (0, 4), lengths: (0.5, 2.0) }
    }
}

impl EnsembleSpec {
    pub fn validate(&self) -> Result<()> {
        let (v0, v1) = self.vertices;
        let (b0, b1) = self.betti;
        let (l0, l1) = self.lengths;
        if v0 == 0 || v0 > v1 {
            return Err(Error::InvalidParameter(format!("vertex range {v0}..={v1}")));
        }
        if b0 > b1 {
            return Err(Error::InvalidParameter(format!("betti range {b0}..={b1}")));
        }
        if !(l0 > 0.0 && l0 <= l1 && l1.is_finite()) {
            return Err(Error::InvalidParameter(format!("length range [{l0}, {l1}]")));
        }
        if v1 == 1 && b0 > 0 {
            return Err(Error::InvalidParameter("a single vertex cannot carry cycles without self-loops".into()));
        }
        Ok(())
    }

    /// Independent random stream for instance `index`; stream 0 builds the
    /// graph, 1 the basepoint, 2 is free for callers.
    pub(crate) fn rng(&self, index: usize, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(index as u64 * 4 + stream);
        rng
    }
}

/// Tree from a Prüfer sequence, uniform over labelled trees.
fn prufer_tree(n: usize, rng: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
    if n < 2 {
        return Vec::new();
    }
    let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &s in &seq {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &s in &seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).expect("a leaf exists");
        edges.push((leaf, s));
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

/// Graph `index` of the ensemble: a uniform spanning tree plus `β1` chords
/// between distinct vertices.
pub fn random_graph(spec: &EnsembleSpec, index: usize) -> Result<MetricGraph> {
    spec.validate()?;
    let mut rng = spec.rng(index, 0);
    let n = rng.gen_range(spec.vertices.0..=spec.vertices.1);
    let lo_beta = if n == 1 { 0 } else { spec.betti.0 };
    let hi_beta = if n == 1 { 0 } else { spec.betti.1 };
    if lo_beta > hi_beta {
        return Err(Error::InvalidParameter(format!("betti {} infeasible on {n} vertex", spec.betti.0)));
    }
    let beta = rng.gen_range(lo_beta..=hi_beta);
    let mut pairs = prufer_tree(n, &mut rng);
    for _ in 0..beta {
        let u = rng.gen_range(0..n);
        let mut v = rng.gen_range(0..n - 1);
        if v >= u {
            v += 1;
        }
        pairs.push((u, v));
    }
    let (l0, l1) = spec.lengths;
    let edges = pairs
        .into_iter()
        .enumerate()
        .map(|(i, (u, v))| {
            let len = if l1 > l0 { rng.gen_range(l0..l1) } else { l0 };
            (format!("e{i}"), format!("v{u}"), format!("v{v}"), len)
        })
        .collect();
    MetricGraph::new((0..n).map(|i| format!("v{i}")).collect(), edges)
}

/// Deterministic basepoint for instance `index`: a vertex half of the time,
/// otherwise an interior point of a random edge.
pub fn random_basepoint(spec: &EnsembleSpec, index: usize, g: &MetricGraph) -> GraphPoint {
    let mut rng = spec.rng(index, 1);
    if g.edge_count() == 0 || rng.gen_bool(0.5) {
        return GraphPoint::Vertex(crate::metric_graph::VertexId(rng.gen_range(0..g.vertex_count())));
    }
    let e = EdgeId(rng.gen_range(0..g.edge_count()));
    let len = g.edge(e).length;
    g.point_on_edge(e, rng.gen_range(0.1..0.9) * len).expect("interior offset")
}
