use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::matrix::DistanceMatrix;
use crate::metric_graph::{epsilon_net, finite_metric_with, MetricGraph};

/// Largest net accepted by [`hyp_graph`].
pub const HYP_MAX_POINTS: usize = 400;

pub fn hyperbolicity(d: &DistanceMatrix) -> f64 {
    hyperbolicity_with(d, Execution::default())
}

/// Four-point Gromov hyperbolicity: over all quadruples, half the gap
/// between the largest and the middle of the three pair-sums.
pub fn hyperbolicity_with(d: &DistanceMatrix, exec: Execution) -> f64 {
    let n = d.len();
    if n < 4 {
        return 0.0;
    }
    exec.max_f64(n, 0.0, |i| {
        let ri = d.row(i);
        let mut best: f64 = 0.0;
        for j in i + 1..n {
            let rj = d.row(j);
            let dij = ri[j];
            for k in j + 1..n {
                let rk = d.row(k);
                let (dik, djk) = (ri[k], rj[k]);
                for l in k + 1..n {
                    let s1 = dij + rk[l];
                    let s2 = dik + rj[l];
                    let s3 = djk + ri[l];
                    let hi = s1.max(s2).max(s3);
                    let lo = s1.min(s2).min(s3);
                    let mid = s1 + s2 + s3 - hi - lo;
                    best = best.max(hi - mid);
                }
            }
        }
        best / 2.0
    })
}

/// Hyperbolicity of a `mesh` net of `g`, with the two-sided error `4 * mesh`.
pub fn hyp_graph(g: &MetricGraph, mesh: f64) -> Result<(f64, f64)> {
    hyp_graph_with(g, mesh, Execution::default())
}

pub fn hyp_graph_with(g: &MetricGraph, mesh: f64, exec: Execution) -> Result<(f64, f64)> {
    if !(mesh > 0.0) {
        return Err(Error::InvalidParameter(format!("mesh = {mesh} must be > 0")));
    }
    let net = epsilon_net(g, mesh)?;
    if net.len() > HYP_MAX_POINTS {
        return Err(Error::TooLarge {
            what: "hyperbolicity net",
            size: net.len(),
            cap: HYP_MAX_POINTS,
            hint: "; use a coarser mesh",
        });
    }
    let d = finite_metric_with(g, &net, exec)?;
    Ok((hyperbolicity_with(&d, exec), 4.0 * mesh))
}
