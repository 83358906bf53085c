//! ε-smoothing: the Reeb graph of `F(x, s) = d(p, x) + s` on `G × [0, ε]`.
//!
//! The level-`t` fibre of `F` projects homeomorphically onto the band
//! `f⁻¹([t − ε, t])` of `G`, and `F⁻¹([a, b])` onto `f⁻¹([a − ε, b])`, so
//! everything is computed from union-finds over bands of a monotone
//! subdivision of `G`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::gh::Correspondence;
use crate::metric_graph::json::GraphRecord;
use crate::metric_graph::{
    epsilon_net, finite_metric, DisjointSet, EdgeId, GraphPoint, LevelGraph, MetricGraph, VertexId, TOL,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Raw {
    Node(usize),
    Edge(usize),
}

#[derive(Clone, Copy, Debug)]
enum Place {
    Vertex(VertexId),
    Edge(EdgeId, f64),
}

#[derive(Clone, Debug)]
struct RawNode {
    level: usize,
    rep: usize,
    down: Vec<usize>,
    up: Vec<usize>,
}

#[derive(Clone, Debug)]
struct RawEdge {
    interval: usize,
    rep: usize,
    upper: usize,
}

/// Raw Reeb structure plus its map onto the final (suppressed) graph.
#[derive(Clone, Debug)]
struct Sweep {
    lg: LevelGraph,
    eps: f64,
    levels: Vec<f64>,
    range: Vec<(f64, f64)>,
    nodes: Vec<RawNode>,
    nodes_at: Vec<Vec<usize>>,
    edges: Vec<RawEdge>,
    edges_at: Vec<Vec<usize>>,
    node_place: Vec<Place>,
    edge_place: Vec<(EdgeId, f64)>,
    chains: Vec<Vec<usize>>,
    kept: Vec<usize>,
}

struct Band {
    uf: DisjointSet,
    member: Vec<bool>,
}

impl Band {
    fn root(&mut self, el: usize) -> Option<usize> {
        self.member[el].then(|| self.uf.find(el))
    }
}

fn critical_levels(values: &[f64], eps: f64) -> Vec<f64> {
    let mut all: Vec<f64> = values.iter().flat_map(|&f| [f, f + eps]).collect();
    all.sort_by(f64::total_cmp);
    let mut out: Vec<f64> = Vec::with_capacity(all.len());
    for v in all {
        if out.last().is_none_or(|&l| v - l > TOL) {
            out.push(v);
        }
    }
    out
}

impl Sweep {
    fn nv(&self) -> usize {
        self.lg.graph().vertex_count()
    }

    fn band(&self, a: f64, b: f64) -> Band {
        let (lo, hi) = (a - TOL, b + TOL);
        let member: Vec<bool> = self.range.iter().map(|&(x, y)| x <= hi && y >= lo).collect();
        let mut uf = DisjointSet::new(member.len());
        let nv = self.nv();
        for (i, e) in self.lg.graph().edges().iter().enumerate() {
            if member[nv + i] {
                for w in [e.u.0, e.v.0] {
                    if member[w] {
                        uf.union(nv + i, w);
                    }
                }
            }
        }
        Band { uf, member }
    }

    /// Smallest element of each component.
    fn reps(band: &mut Band) -> Vec<usize> {
        let mut seen = std::collections::HashSet::new();
        (0..band.member.len()).filter(|&el| band.member[el] && seen.insert(band.uf.find(el))).collect()
    }

    fn build(lg: LevelGraph, eps: f64, exec: Execution) -> Result<Self> {
        let g = lg.graph();
        let mut range: Vec<(f64, f64)> = lg.level.iter().map(|&f| (f, f)).collect();
        for e in g.edges() {
            let (a, b) = (lg.level[e.u.0], lg.level[e.v.0]);
            range.push((a.min(b), a.max(b)));
        }
        let levels = critical_levels(&lg.level, eps);
        let mut sweep = Self {
            lg,
            eps,
            levels,
            range,
            nodes: Vec::new(),
            nodes_at: Vec::new(),
            edges: Vec::new(),
            edges_at: Vec::new(),
            node_place: Vec::new(),
            edge_place: Vec::new(),
            chains: Vec::new(),
            kept: Vec::new(),
        };
        let l = sweep.levels.len();

        let node_reps = exec.map(l, |i| {
            let c = sweep.levels[i];
            Self::reps(&mut sweep.band(c - eps, c))
        });
        for (i, reps) in node_reps.into_iter().enumerate() {
            let mut ids = Vec::with_capacity(reps.len());
            for rep in reps {
                ids.push(sweep.nodes.len());
                sweep.nodes.push(RawNode { level: i, rep, down: Vec::new(), up: Vec::new() });
            }
            sweep.nodes_at.push(ids);
        }

        let edge_specs = exec.map(l.saturating_sub(1), |i| -> Result<Vec<(usize, usize, usize)>> {
            let (c0, c1) = (sweep.levels[i], sweep.levels[i + 1]);
            let m = 0.5 * (c0 + c1);
            let reps = Self::reps(&mut sweep.band(m - eps, m));
            let attach = |slab_lo: f64, slab_hi: f64, at: usize| -> Result<Vec<usize>> {
                let mut slab = sweep.band(slab_lo, slab_hi);
                let roots: Vec<Option<usize>> = sweep.nodes_at[at].iter().map(|&n| slab.root(sweep.nodes[n].rep)).collect();
                reps.iter()
                    .map(|&r| {
                        let root = slab.root(r);
                        roots
                            .iter()
                            .position(|&x| x.is_some() && x == root)
                            .map(|k| sweep.nodes_at[at][k])
                            .ok_or_else(|| Error::Internal(format!("band component at level {m} has no end at level {}", sweep.levels[at])))
                    })
                    .collect()
            };
            let lower = attach(c0 - eps, m, i)?;
            let upper = attach(m - eps, c1, i + 1)?;
            Ok(reps.iter().zip(lower).zip(upper).map(|((&r, lo), up)| (r, lo, up)).collect())
        });
        for (i, specs) in edge_specs.into_iter().enumerate() {
            let mut ids = Vec::new();
            for (rep, lower, upper) in specs? {
                let id = sweep.edges.len();
                sweep.nodes[lower].up.push(id);
                sweep.nodes[upper].down.push(id);
                sweep.edges.push(RawEdge { interval: i, rep, upper });
                ids.push(id);
            }
            sweep.edges_at.push(ids);
        }
        Ok(sweep)
    }

    fn base_node(&self) -> Result<usize> {
        match self.raw_at(self.lg.base.0, 0.0)? {
            Raw::Node(n) => Ok(n),
            Raw::Edge(_) => Err(Error::Internal("basepoint not on a critical level".into())),
        }
    }

    fn level_of(&self, n: usize) -> f64 {
        self.levels[self.nodes[n].level]
    }

    /// Suppresses pass-through nodes and builds the final graph.
    fn finish(&mut self, base: usize) -> Result<MetricGraph> {
        let pass: Vec<bool> = self
            .nodes
            .iter()
            .enumerate()
            .map(|(i, n)| i != base && n.down.len() == 1 && n.up.len() == 1)
            .collect();
        self.kept = (0..self.nodes.len()).filter(|&i| !pass[i]).collect();
        self.node_place = vec![Place::Vertex(VertexId(0)); self.nodes.len()];
        self.edge_place = vec![(EdgeId(0), 0.0); self.edges.len()];
        let mut names = Vec::with_capacity(self.kept.len());
        for (j, &n) in self.kept.iter().enumerate() {
            self.node_place[n] = Place::Vertex(VertexId(j));
            names.push(format!("n{j}"));
        }
        let mut edge_list = Vec::new();
        for (j, &n) in self.kept.iter().enumerate() {
            let bottom = self.level_of(n);
            for &first in &self.nodes[n].up {
                let fid = EdgeId(self.chains.len());
                let mut chain = vec![first];
                let mut cur = self.edges[first].upper;
                while pass[cur] {
                    self.node_place[cur] = Place::Edge(fid, self.level_of(cur) - bottom);
                    let next = self.nodes[cur].up[0];
                    chain.push(next);
                    cur = self.edges[next].upper;
                }
                for &r in &chain {
                    let lo = self.levels[self.edges[r].interval];
                    self.edge_place[r] = (fid, lo - bottom);
                }
                let target = match self.node_place[cur] {
                    Place::Vertex(v) => v.0,
                    Place::Edge(..) => unreachable!(),
                };
                edge_list.push((format!("s{}", fid.0), names[j].clone(), names[target].clone(), self.level_of(cur) - bottom));
                self.chains.push(chain);
            }
        }
        MetricGraph::new(names, edge_list)
    }

    fn raw_at(&self, el: usize, t: f64) -> Result<Raw> {
        let idx = self.levels.partition_point(|&c| c < t - TOL);
        if idx < self.levels.len() && (self.levels[idx] - t).abs() <= TOL {
            let c = self.levels[idx];
            let mut band = self.band(c - self.eps, c);
            let root = band.root(el);
            return self.nodes_at[idx]
                .iter()
                .find(|&&n| root.is_some() && band.root(self.nodes[n].rep) == root)
                .map(|&n| Raw::Node(n))
                .ok_or_else(|| Error::Internal(format!("no class at level {t}")));
        }
        if idx == 0 || idx == self.levels.len() {
            return Err(Error::Internal(format!("level {t} outside the sweep")));
        }
        let i = idx - 1;
        let m = 0.5 * (self.levels[i] + self.levels[i + 1]);
        let mut slab = self.band(t.min(m) - self.eps, t.max(m));
        let root = slab.root(el);
        self.edges_at[i]
            .iter()
            .find(|&&e| root.is_some() && slab.root(self.edges[e].rep) == root)
            .map(|&e| Raw::Edge(e))
            .ok_or_else(|| Error::Internal(format!("no class at level {t}")))
    }

    fn place(&self, raw: Raw, t: f64, out: &MetricGraph) -> Result<GraphPoint> {
        match raw {
            Raw::Node(n) => match self.node_place[n] {
                Place::Vertex(v) => Ok(GraphPoint::Vertex(v)),
                Place::Edge(e, off) => out.point_on_edge(e, off),
            },
            Raw::Edge(r) => {
                let (e, start) = self.edge_place[r];
                let lo = self.levels[self.edges[r].interval];
                out.point_on_edge(e, start + (t - lo))
            }
        }
    }

    fn unplace(&self, y: GraphPoint, out: &MetricGraph, level: &[f64]) -> Result<(Raw, f64)> {
        match out.canonical(y)? {
            GraphPoint::Vertex(v) => Ok((Raw::Node(self.kept[v.0]), level[v.0])),
            GraphPoint::Edge { edge, offset } => {
                let t = level[out.edge(edge).u.0] + offset;
                let chain = &self.chains[edge.0];
                for (k, &r) in chain.iter().enumerate() {
                    let hi = self.levels[self.edges[r].interval + 1];
                    if k + 1 < chain.len() && (t - hi).abs() <= TOL {
                        return Ok((Raw::Node(self.edges[r].upper), t));
                    }
                    if t < hi - TOL || k + 1 == chain.len() {
                        return Ok((Raw::Edge(r), t));
                    }
                }
                unreachable!("chains are nonempty")
            }
        }
    }

    /// Refined point of the class `(raw, t)` where `f` is largest, i.e. with
    /// the smallest product coordinate `s = t - f`.
    fn lift(&self, raw: Raw, t: f64) -> Result<GraphPoint> {
        let mut band = self.band(t - self.eps, t);
        let (mut cls, root) = match raw {
            Raw::Node(n) => {
                let r = band.root(self.nodes[n].rep);
                (None, r)
            }
            Raw::Edge(e) => {
                let i = self.edges[e].interval;
                let m = 0.5 * (self.levels[i] + self.levels[i + 1]);
                let mut slab = self.band(t.min(m) - self.eps, t.max(m));
                let r = slab.root(self.edges[e].rep);
                (Some(slab), r)
            }
        };
        let root = root.ok_or_else(|| Error::Internal("class representative outside band".into()))?;
        let g = self.lg.graph();
        let nv = self.nv();
        let mut best: Option<(f64, GraphPoint)> = None;
        for el in 0..self.range.len() {
            if !band.member[el] {
                continue;
            }
            let r = match cls.as_mut() {
                Some(slab) => slab.root(el),
                None => band.root(el),
            };
            if r != Some(root) {
                continue;
            }
            let (top, pt) = if el < nv {
                (self.range[el].1.min(t), GraphPoint::Vertex(VertexId(el)))
            } else {
                let e = EdgeId(el - nv);
                let top = self.range[el].1.min(t);
                let edge = g.edge(e);
                let fu = self.lg.level[edge.u.0];
                let off = if fu <= self.lg.level[edge.v.0] { top - fu } else { fu - top };
                (top, g.point_on_edge(e, off.clamp(0.0, edge.length))?)
            };
            if best.is_none_or(|(b, _)| top > b + TOL) {
                best = Some((top, pt));
            }
        }
        best.map(|(_, p)| p).ok_or_else(|| Error::Internal("empty class".into()))
    }

    fn locate(&self, x: GraphPoint) -> (usize, f64) {
        let xr = self.lg.refinement.map_point(x);
        let el = match xr {
            GraphPoint::Vertex(v) => v.0,
            GraphPoint::Edge { edge, .. } => self.nv() + edge.0,
        };
        (el, self.lg.level_at(xr))
    }
}

/// `G^ε_p` with its level function and the bookkeeping needed to move points.
#[derive(Clone, Debug)]
pub struct SmoothedGraph {
    pub graph: MetricGraph,
    /// `d_p(base, ·)` on vertices.
    pub level: Vec<f64>,
    pub base: VertexId,
    /// Images of a `0.05 · diam` net of the source graph: `(x, [(x, 0)])`.
    pub sample_quotient: Vec<(GraphPoint, GraphPoint)>,
    pub epsilon: f64,
    pub basepoint: GraphPoint,
    source: MetricGraph,
    sweep: Sweep,
}

pub fn epsilon_smoothing(g: &MetricGraph, p: GraphPoint, eps: f64) -> Result<SmoothedGraph> {
    epsilon_smoothing_with(g, p, eps, Execution::default())
}

pub fn epsilon_smoothing_with(g: &MetricGraph, p: GraphPoint, eps: f64, exec: Execution) -> Result<SmoothedGraph> {
    if !(eps >= 0.0 && eps.is_finite()) {
        return Err(Error::InvalidParameter(format!("epsilon = {eps} must be >= 0")));
    }
    let p = g.canonical(p)?;
    let lg = LevelGraph::new(g, p, &[])?;
    let mut sweep = Sweep::build(lg, eps, exec)?;
    let base_raw = sweep.base_node()?;
    let graph = sweep.finish(base_raw)?;
    let base = match sweep.node_place[base_raw] {
        Place::Vertex(v) => v,
        Place::Edge(..) => unreachable!("base is never suppressed"),
    };
    let level: Vec<f64> = sweep.kept.iter().map(|&n| sweep.level_of(n)).collect();
    let mut s = SmoothedGraph {
        graph,
        level,
        base,
        sample_quotient: Vec::new(),
        epsilon: eps,
        basepoint: p,
        source: g.clone(),
        sweep,
    };
    let diam = g.diameter();
    let net = if diam > TOL { epsilon_net(g, 0.05 * diam)? } else { g.vertices().map(GraphPoint::Vertex).collect() };
    s.sample_quotient = net.into_iter().map(|x| Ok((x, s.quotient(x)?))).collect::<Result<_>>()?;
    Ok(s)
}

impl SmoothedGraph {
    pub fn source(&self) -> &MetricGraph {
        &self.source
    }

    pub fn betti1(&self) -> usize {
        self.graph.betti1()
    }

    /// Class of `(x, 0)` for a point `x` of the source graph.
    pub fn quotient(&self, x: GraphPoint) -> Result<GraphPoint> {
        let x = self.source.canonical(x)?;
        let (el, t) = self.sweep.locate(x);
        let raw = self.sweep.raw_at(el, t)?;
        self.sweep.place(raw, t, &self.graph)
    }

    /// A point `x` of the source graph with `y = [(x, s)]` for some `s ∈ [0, ε]`,
    /// chosen with `s` minimal.
    pub fn lift(&self, y: GraphPoint) -> Result<GraphPoint> {
        let (raw, t) = self.sweep.unplace(y, &self.graph, &self.level)?;
        let xr = self.sweep.lift(raw, t)?;
        self.source.canonical(self.sweep.lg.refinement.original_point(xr))
    }

    /// `d_p(base, y)`.
    pub fn level_at(&self, y: GraphPoint) -> Result<f64> {
        Ok(match self.graph.canonical(y)? {
            GraphPoint::Vertex(v) => self.level[v.0],
            GraphPoint::Edge { edge, offset } => self.level[self.graph.edge(edge).u.0] + offset,
        })
    }

    /// Largest `| |level(u) − level(v)| − length |` over edges.
    pub fn monotonicity_defect(&self) -> f64 {
        self.graph
            .edges()
            .iter()
            .map(|e| ((self.level[e.u.0] - self.level[e.v.0]).abs() - e.length).abs())
            .fold(0.0, f64::max)
    }

    pub fn to_record(&self) -> SmoothedRecord {
        let names = self.graph.vertex_names();
        SmoothedRecord {
            graph: self.graph.to_record(),
            level: names.iter().cloned().zip(self.level.iter().copied()).collect(),
            base: names[self.base.0].clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_record()).expect("smoothed graph serialises")
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SmoothedRecord {
    #[serde(flatten)]
    pub graph: GraphRecord,
    pub level: BTreeMap<String, f64>,
    pub base: String,
}

pub fn smoothed_distance(s: &SmoothedGraph, x: GraphPoint, y: GraphPoint) -> Result<f64> {
    s.graph.distance(x, y)
}

/// Relates a `mesh` net of `g` to its quotient images, and a `mesh` net of the
/// smoothed graph to lifts of its points.
pub fn quotient_correspondence(g: &MetricGraph, s: &SmoothedGraph, mesh: f64) -> Result<Correspondence> {
    if *g != s.source {
        return Err(Error::ProvenanceMismatch);
    }
    let xs = epsilon_net(g, mesh)?;
    let ys = epsilon_net(&s.graph, mesh)?;
    let mut left = xs.clone();
    let mut right = xs.iter().map(|&x| s.quotient(x)).collect::<Result<Vec<_>>>()?;
    for &y in &ys {
        left.push(s.lift(y)?);
        right.push(y);
    }
    let pairs = (0..left.len()).map(|i| (i, i)).collect();
    Correspondence::new(finite_metric(g, &left)?, finite_metric(&s.graph, &right)?, pairs)
}

pub fn betti_after_smoothing(g: &MetricGraph, p: GraphPoint, eps: f64) -> Result<usize> {
    Ok(epsilon_smoothing(g, p, eps)?.betti1())
}
