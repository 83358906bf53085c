use super::{cut_list, GraphPoint, MetricGraph, TOL};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::matrix::DistanceMatrix;

/// Deterministic ε-net: every vertex, then on each edge of length `l` the
/// `ceil(l/ε) - 1` equally spaced interior points. Consecutive net points on
/// an edge are at most `ε` apart, so every point of the graph lies within
/// `ε/2` of the net.
pub fn epsilon_net(g: &MetricGraph, eps: f64) -> Result<Vec<GraphPoint>> {
    if !(eps.is_finite() && eps > 0.0) {
        return Err(Error::InvalidParameter(format!("net spacing must be > 0, got {eps}")));
    }
    let mut pts: Vec<GraphPoint> = g.vertices().map(GraphPoint::Vertex).collect();
    for e in g.edge_ids() {
        let len = g.edge(e).length;
        let k = (len / eps - TOL).ceil().max(1.0) as usize;
        for i in 1..k {
            pts.push(GraphPoint::Edge { edge: e, offset: len * i as f64 / k as f64 });
        }
    }
    Ok(pts)
}

/// Pairwise geodesic distances between points (duplicates allowed).
pub fn finite_metric(g: &MetricGraph, pts: &[GraphPoint]) -> Result<DistanceMatrix> {
    finite_metric_with(g, pts, Execution::default())
}

pub fn finite_metric_with(
    g: &MetricGraph,
    pts: &[GraphPoint],
    exec: Execution,
) -> Result<DistanceMatrix> {
    let pts = pts.iter().map(|&p| g.canonical(p)).collect::<Result<Vec<_>>>()?;
    let r = g.subdivide(&cut_list(&pts));
    let verts: Vec<usize> = pts.iter().map(|&p| r.vertex_of(p).0).collect();
    let n = verts.len();
    let rows = exec.map(n, |i| {
        let dist = r.graph.sssp(super::VertexId(verts[i]));
        verts.iter().map(|&v| dist[v]).collect::<Vec<_>>()
    });
    let mut data = rows.concat();
    // enforce exact symmetry and zero diagonal
    for i in 0..n {
        data[i * n + i] = 0.0;
        for j in i + 1..n {
            let d = data[i * n + j].min(data[j * n + i]);
            data[i * n + j] = d;
            data[j * n + i] = d;
        }
    }
    Ok(DistanceMatrix::from_raw(n, data))
}
