use super::{cut_list, EdgeId, GraphPoint, MetricGraph, Refinement, VertexId, TOL};
use crate::error::Result;

/// Distance `f = d(p, ·)` evaluated at every vertex of `g`.
pub fn f_values(g: &MetricGraph, p: GraphPoint) -> Result<Vec<f64>> {
    let p = g.canonical(p)?;
    let r = g.subdivide(&cut_list(&[p]));
    let mut f = r.graph.sssp(r.vertex_of(p));
    f.truncate(g.vertex_count());
    Ok(f)
}

/// `f = d(p, ·)` restricted to one edge, as a piecewise-linear function of
/// the offset with slopes ±1.
#[derive(Clone, Debug, PartialEq)]
pub struct EdgeProfile {
    /// `(offset, f)` breakpoints, starting at offset 0 and ending at the edge length.
    pub breaks: Vec<(f64, f64)>,
}

impl EdgeProfile {
    pub(crate) fn build(len: f64, fu: f64, fv: f64, base_offset: Option<f64>) -> Self {
        let eval = |s: f64| {
            let mut x = (fu + s).min(fv + len - s);
            if let Some(sp) = base_offset {
                x = x.min((s - sp).abs());
            }
            x
        };
        let mut cands = vec![0.0, len, (len + fv - fu) / 2.0];
        if let Some(sp) = base_offset {
            // crossings of |s - sp| with the two exit routes
            cands.extend([sp, (sp - fu) / 2.0, (fv + len + sp) / 2.0]);
        }
        let mut cands: Vec<f64> = cands.into_iter().filter(|s| *s >= 0.0 && *s <= len).collect();
        cands.sort_by(f64::total_cmp);
        cands.dedup_by(|b, a| (*b - *a).abs() <= TOL);
        let last = cands.len() - 1;
        if last == 0 {
            cands.push(len);
        } else {
            cands[last] = len;
        }
        let pts: Vec<(f64, f64)> = cands.iter().map(|&s| (s, eval(s))).collect();
        // drop collinear interior points
        let mut breaks: Vec<(f64, f64)> = Vec::with_capacity(pts.len());
        for &pt in &pts {
            while breaks.len() >= 2 {
                let (s0, f0) = breaks[breaks.len() - 2];
                let (s1, f1) = breaks[breaks.len() - 1];
                let slope_a = (f1 - f0) / (s1 - s0);
                let slope_b = (pt.1 - f1) / (pt.0 - s1);
                if (slope_a - slope_b).abs() <= 1e-7 {
                    breaks.pop();
                } else {
                    break;
                }
            }
            breaks.push(pt);
        }
        Self { breaks }
    }

    pub fn eval(&self, s: f64) -> f64 {
        let b = &self.breaks;
        let i = b.partition_point(|&(x, _)| x < s).clamp(1, b.len() - 1);
        let (s0, f0) = b[i - 1];
        let (s1, f1) = b[i];
        if s1 - s0 <= 0.0 {
            return f0;
        }
        f0 + (f1 - f0) * (s - s0) / (s1 - s0)
    }

    /// Breakpoint offsets strictly inside the edge.
    pub fn interior_breaks(&self) -> impl Iterator<Item = f64> + '_ {
        self.breaks[1..self.breaks.len() - 1].iter().map(|&(s, _)| s)
    }
}

/// Vertex values and per-edge profiles of `d(p, ·)` on the original graph.
pub(crate) fn profiles(g: &MetricGraph, p: GraphPoint) -> Result<(Vec<f64>, Vec<EdgeProfile>)> {
    let p = g.canonical(p)?;
    let f = f_values(g, p)?;
    let profs = g
        .edge_ids()
        .map(|e| {
            let edge = g.edge(e);
            let base = match p {
                GraphPoint::Edge { edge: pe, offset } if pe == e => Some(offset),
                _ => None,
            };
            EdgeProfile::build(edge.length, f[edge.u.0], f[edge.v.0], base)
        })
        .collect();
    Ok((f, profs))
}

/// A refinement of a graph on which `f = d(p, ·)` is affine with slope ±1
/// along every edge, `p` is a vertex, and optionally a set of extra points
/// are vertices too.
#[derive(Clone, Debug)]
pub struct LevelGraph {
    pub refinement: Refinement,
    /// `f` on refined vertices.
    pub level: Vec<f64>,
    /// Refined vertex at `p`.
    pub base: VertexId,
}

impl LevelGraph {
    pub fn new(g: &MetricGraph, p: GraphPoint, extra: &[GraphPoint]) -> Result<Self> {
        let p = g.canonical(p)?;
        let extra = extra.iter().map(|&x| g.canonical(x)).collect::<Result<Vec<_>>>()?;
        let (_, profs) = profiles(g, p)?;
        let mut cuts = cut_list(&[p]);
        cuts.extend(cut_list(&extra));
        for (i, prof) in profs.iter().enumerate() {
            cuts.extend(prof.interior_breaks().map(|s| (EdgeId(i), s)));
        }
        let refinement = g.subdivide(&cuts);
        let base = refinement.vertex_of(p);
        let level = refinement.graph.sssp(base);
        Ok(Self { refinement, level, base })
    }

    pub fn graph(&self) -> &MetricGraph {
        &self.refinement.graph
    }

    /// Refined vertex at an original vertex or at one of the extra points.
    pub fn vertex_of(&self, p: GraphPoint) -> VertexId {
        self.refinement.vertex_of(p)
    }

    /// `f` at any refined point.
    pub fn level_at(&self, p: GraphPoint) -> f64 {
        match p {
            GraphPoint::Vertex(v) => self.level[v.0],
            GraphPoint::Edge { edge, offset } => {
                let e = self.graph().edge(edge);
                let (fu, fv) = (self.level[e.u.0], self.level[e.v.0]);
                if fu <= fv {
                    fu + offset
                } else {
                    fu - offset
                }
            }
        }
    }

    /// Largest deviation from `|f(u) - f(v)| = length` over refined edges.
    pub fn monotonicity_defect(&self) -> f64 {
        self.graph()
            .edges()
            .iter()
            .map(|e| ((self.level[e.u.0] - self.level[e.v.0]).abs() - e.length).abs())
            .fold(0.0, f64::max)
    }
}

/// Splits every edge where `d(p, ·)` turns around, and at `p` itself.
pub fn monotone_subdivision(g: &MetricGraph, p: GraphPoint) -> Result<LevelGraph> {
    LevelGraph::new(g, p, &[])
}
