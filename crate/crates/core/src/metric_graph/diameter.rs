use super::MetricGraph;
use crate::exec::Execution;

/// `a*s + b*t + c`
type Affine = (f64, f64, f64);

/// Maximum over the box `[0, w] x [0, h]` of the lower envelope of affine
/// functions, by enumerating arrangement vertices (box sides and pairwise
/// equality lines). The envelope is concave, so an optimum sits on one.
fn max_min_affine(funcs: &[Affine], w: f64, h: f64) -> f64 {
    // lines as (a, b, c) meaning a*s + b*t = c
    let mut lines = vec![(1.0, 0.0, 0.0), (1.0, 0.0, w), (0.0, 1.0, 0.0), (0.0, 1.0, h)];
    for i in 0..funcs.len() {
        for j in i + 1..funcs.len() {
            let (a, b) = (funcs[i].0 - funcs[j].0, funcs[i].1 - funcs[j].1);
            if a != 0.0 || b != 0.0 {
                lines.push((a, b, funcs[j].2 - funcs[i].2));
            }
        }
    }
    let eval = |s: f64, t: f64| {
        funcs
            .iter()
            .map(|&(a, b, c)| a * s + b * t + c)
            .fold(f64::INFINITY, f64::min)
    };
    let mut best = f64::NEG_INFINITY;
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            let (a1, b1, c1) = lines[i];
            let (a2, b2, c2) = lines[j];
            let det = a1 * b2 - a2 * b1;
            if det.abs() < 1e-14 {
                continue;
            }
            let s = (c1 * b2 - c2 * b1) / det;
            let t = (a1 * c2 - a2 * c1) / det;
            let slack = 1e-12 * (1.0 + w + h);
            if s < -slack || s > w + slack || t < -slack || t > h + slack {
                continue;
            }
            best = best.max(eval(s.clamp(0.0, w), t.clamp(0.0, h)));
        }
    }
    best
}

pub(super) fn graph_diameter(g: &MetricGraph) -> f64 {
    if g.edge_count() == 0 {
        return 0.0;
    }
    let d = g.vertex_distances(Execution::Parallel);
    let edges = g.raw_edges();
    let m = edges.len();
    Execution::Parallel.max_f64(m, 0.0, |i| {
        let e = &edges[i];
        // farthest pair on one edge: (d(u,v) + l) / 2
        let mut best = (d.get(e.u.0, e.v.0) + e.length) / 2.0;
        for f in &edges[i + 1..] {
            let funcs = [
                (1.0, 1.0, d.get(e.u.0, f.u.0)),
                (1.0, -1.0, f.length + d.get(e.u.0, f.v.0)),
                (-1.0, 1.0, e.length + d.get(e.v.0, f.u.0)),
                (-1.0, -1.0, e.length + f.length + d.get(e.v.0, f.v.0)),
            ];
            best = best.max(max_min_affine(&funcs, e.length, f.length));
        }
        best
    })
}
