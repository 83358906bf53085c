//! Edge paths, their simplification, and decomposition into pieces along
//! which the distance to a basepoint is strictly monotone.

use super::level::profiles;
use super::{cut_list, EdgeId, GraphPoint, MetricGraph, VertexId, TOL};
use crate::error::{Error, Result};

/// Traversal of part of one edge, from offset `from` to offset `to`
/// (offsets measured from the edge's `u` endpoint).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Piece {
    pub edge: EdgeId,
    pub from: f64,
    pub to: f64,
}

impl Piece {
    pub fn length(&self) -> f64 {
        (self.to - self.from).abs()
    }

    fn dir(&self) -> f64 {
        if self.to >= self.from {
            1.0
        } else {
            -1.0
        }
    }

    fn at(&self, t: f64) -> f64 {
        self.from + self.dir() * t
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EdgePath {
    start: GraphPoint,
    pieces: Vec<Piece>,
}

impl EdgePath {
    pub fn constant(p: GraphPoint) -> Self {
        Self { start: p, pieces: Vec::new() }
    }

    /// Checks that every piece stays on its edge and that consecutive pieces
    /// meet.
    pub fn new(g: &MetricGraph, start: GraphPoint, pieces: Vec<Piece>) -> Result<Self> {
        let start = g.canonical(start)?;
        let mut cur = start;
        for (i, pc) in pieces.iter().enumerate() {
            if pc.length() <= TOL {
                return Err(Error::InvalidPath(format!("piece {i} has zero length")));
            }
            let head = g.point_on_edge(pc.edge, pc.from)?;
            if !g.same_point(head, cur) {
                return Err(Error::InvalidPath(format!("piece {i} does not start where the path is")));
            }
            cur = g.point_on_edge(pc.edge, pc.to)?;
        }
        Ok(Self { start, pieces })
    }

    /// Path through whole edges starting at a vertex; each edge is oriented
    /// away from the current vertex.
    pub fn walk(g: &MetricGraph, start: VertexId, edges: &[EdgeId]) -> Result<Self> {
        let mut cur = start;
        let mut pieces = Vec::with_capacity(edges.len());
        for &e in edges {
            let edge = g.edge(e);
            if edge.u == cur {
                pieces.push(Piece { edge: e, from: 0.0, to: edge.length });
            } else if edge.v == cur {
                pieces.push(Piece { edge: e, from: edge.length, to: 0.0 });
            } else {
                return Err(Error::InvalidPath(format!(
                    "edge {} is not incident to {}",
                    edge.name,
                    g.vertex_name(cur)
                )));
            }
            cur = edge.other(cur);
        }
        Self::new(g, GraphPoint::Vertex(start), pieces)
    }

    pub fn start(&self) -> GraphPoint {
        self.start
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn end(&self, g: &MetricGraph) -> GraphPoint {
        match self.pieces.last() {
            None => self.start,
            Some(pc) => g.point_on_edge(pc.edge, pc.to).expect("validated path"),
        }
    }

    /// Geometric length `L_G`.
    pub fn length(&self) -> f64 {
        self.pieces.iter().map(Piece::length).sum()
    }

    pub fn is_constant(&self) -> bool {
        self.pieces.is_empty()
    }

    /// No point of the graph is visited at two different times.
    pub fn is_simple(&self, g: &MetricGraph) -> bool {
        self.first_repeat(g).is_none()
    }

    /// Concatenation; `None` if the paths do not meet.
    pub fn concat(g: &MetricGraph, parts: &[EdgePath]) -> Option<EdgePath> {
        let first = parts.first()?;
        let mut pieces = Vec::new();
        for w in parts.windows(2) {
            if !g.same_point(w[0].end(g), w[1].start) {
                return None;
            }
        }
        for p in parts {
            pieces.extend_from_slice(&p.pieces);
        }
        Some(EdgePath { start: first.start, pieces }.normalized(g))
    }

    fn breakpoints(&self, g: &MetricGraph) -> Vec<GraphPoint> {
        let mut out = Vec::with_capacity(self.pieces.len() + 1);
        out.push(self.start);
        for pc in &self.pieces {
            out.push(g.point_on_edge(pc.edge, pc.to).expect("validated path"));
        }
        out
    }

    /// Distinct times (arc-length parameters) at which the path passes through `q`.
    fn visits(&self, g: &MetricGraph, q: GraphPoint) -> Vec<f64> {
        let mut times = Vec::new();
        if self.pieces.is_empty() {
            if g.same_point(q, self.start) {
                times.push(0.0);
            }
            return times;
        }
        let mut t = 0.0;
        for pc in &self.pieces {
            let len = pc.length();
            match q {
                GraphPoint::Vertex(_) => {
                    if g.same_point(g.point_on_edge(pc.edge, pc.from).unwrap(), q) {
                        times.push(t);
                    }
                    if g.same_point(g.point_on_edge(pc.edge, pc.to).unwrap(), q) {
                        times.push(t + len);
                    }
                }
                GraphPoint::Edge { edge, offset } if edge == pc.edge => {
                    let (lo, hi) = (pc.from.min(pc.to), pc.from.max(pc.to));
                    if offset >= lo - TOL && offset <= hi + TOL {
                        times.push(t + (offset - pc.from).abs());
                    }
                }
                GraphPoint::Edge { .. } => {}
            }
            t += len;
        }
        times.sort_by(f64::total_cmp);
        times.dedup_by(|b, a| (*b - *a).abs() <= TOL);
        times
    }

    /// Earliest repeated point as `(first visit, last visit)`. Any repeated
    /// point forces some breakpoint to repeat, and the earliest repeated
    /// time is attained at one.
    fn first_repeat(&self, g: &MetricGraph) -> Option<(f64, f64)> {
        let mut best: Option<(f64, f64)> = None;
        for q in self.breakpoints(g) {
            let times = self.visits(g, q);
            if times.len() >= 2 {
                let cand = (times[0], times[times.len() - 1]);
                if best.is_none_or(|b| cand.0 < b.0 - TOL) {
                    best = Some(cand);
                }
            }
        }
        best
    }

    /// Portion of the path between two times.
    fn slice(&self, g: &MetricGraph, a: f64, b: f64) -> Vec<Piece> {
        let mut out = Vec::new();
        let mut t = 0.0;
        for pc in &self.pieces {
            let len = pc.length();
            let (lo, hi) = (a.max(t), b.min(t + len));
            if hi - lo > TOL {
                let elen = g.edge(pc.edge).length;
                let snap = |x: f64| {
                    if x <= TOL {
                        0.0
                    } else if x >= elen - TOL {
                        elen
                    } else {
                        x
                    }
                };
                out.push(Piece { edge: pc.edge, from: snap(pc.at(lo - t)), to: snap(pc.at(hi - t)) });
            }
            t += len;
        }
        out
    }

    /// Merges consecutive same-direction pieces of one edge.
    fn normalized(mut self, g: &MetricGraph) -> Self {
        let mut out: Vec<Piece> = Vec::with_capacity(self.pieces.len());
        for pc in self.pieces.drain(..) {
            if pc.length() <= TOL {
                continue;
            }
            if let Some(last) = out.last_mut() {
                if last.edge == pc.edge && last.dir() == pc.dir() && (last.to - pc.from).abs() <= TOL {
                    last.to = pc.to;
                    continue;
                }
            }
            out.push(pc);
        }
        let _ = g;
        Self { start: self.start, pieces: out }
    }
}

/// Removes loops from a path, earliest repeated point first, until the path
/// is simple. A closed path becomes the constant path at its start.
pub fn simplify_path(g: &MetricGraph, path: &EdgePath) -> EdgePath {
    let mut cur = path.clone().normalized(g);
    // each pass removes every re-visit of one original breakpoint
    for _ in 0..=path.pieces.len() + 1 {
        let Some((t0, t1)) = cur.first_repeat(g) else {
            return cur;
        };
        let total = cur.length();
        let mut pieces = cur.slice(g, 0.0, t0);
        pieces.extend(cur.slice(g, t1, total));
        cur = EdgePath { start: cur.start, pieces }.normalized(g);
    }
    debug_assert!(cur.is_simple(g));
    cur
}

/// Pieces of `path` split at the turning points of `d(p, ·)`, paired with the
/// sign of the change of `d(p, ·)` along each.
fn monotone_pieces(g: &MetricGraph, p: GraphPoint, path: &EdgePath) -> Result<Vec<(Piece, f64, f64)>> {
    let (_, profs) = profiles(g, p)?;
    let mut out = Vec::new();
    for pc in &path.pieces {
        let prof = &profs[pc.edge.0];
        let (lo, hi) = (pc.from.min(pc.to), pc.from.max(pc.to));
        let mut cuts: Vec<f64> = prof.interior_breaks().filter(|&s| s > lo + TOL && s < hi - TOL).collect();
        if pc.to < pc.from {
            cuts.reverse();
        }
        let mut prev = pc.from;
        for s in cuts.into_iter().chain(std::iter::once(pc.to)) {
            let (fa, fb) = (prof.eval(prev), prof.eval(s));
            out.push((Piece { edge: pc.edge, from: prev, to: s }, fa, fb));
            prev = s;
        }
    }
    Ok(out)
}

/// Splits a simple path into maximal segments along which `d(p, ·)` is
/// strictly monotone. A constant path has no segments.
pub fn monotone_decomposition(g: &MetricGraph, p: GraphPoint, path: &EdgePath) -> Result<Vec<EdgePath>> {
    if !path.is_simple(g) {
        return Err(Error::NonSimplePath);
    }
    let mut segments: Vec<(f64, Vec<Piece>)> = Vec::new();
    for (pc, fa, fb) in monotone_pieces(g, p, path)? {
        let sign = if fb >= fa { 1.0 } else { -1.0 };
        match segments.last_mut() {
            Some((s, pieces)) if *s == sign => pieces.push(pc),
            _ => segments.push((sign, vec![pc])),
        }
    }
    segments
        .into_iter()
        .map(|(_, pieces)| {
            let start = g.point_on_edge(pieces[0].edge, pieces[0].from)?;
            Ok(EdgePath { start, pieces }.normalized(g))
        })
        .collect()
}

/// Total variation of `d(p, ·)` along the path.
pub fn f_variation(g: &MetricGraph, p: GraphPoint, path: &EdgePath) -> Result<f64> {
    Ok(monotone_pieces(g, p, path)?
        .into_iter()
        .map(|(_, fa, fb)| (fb - fa).abs())
        .sum())
}

/// A shortest path between two points, built from a Dijkstra tree on the
/// graph subdivided at both points.
pub fn shortest_path(g: &MetricGraph, a: GraphPoint, b: GraphPoint) -> Result<EdgePath> {
    let (a, b) = (g.canonical(a)?, g.canonical(b)?);
    let r = g.subdivide(&cut_list(&[a, b]));
    let (va, vb) = (r.vertex_of(a), r.vertex_of(b));
    let (_, parent) = r.graph.sssp_with_parents(va);
    let mut rev = Vec::new();
    let mut cur = vb;
    while cur != va {
        let e = parent[cur.0].ok_or_else(|| Error::Internal("unreachable vertex".into()))?;
        let edge = r.graph.edge(e);
        let (orig, start) = r.host_of_edge(e);
        let (s0, s1) = (start, start + edge.length);
        // traversed towards `cur`
        if edge.v == cur {
            rev.push(Piece { edge: orig, from: s0, to: s1 });
        } else {
            rev.push(Piece { edge: orig, from: s1, to: s0 });
        }
        cur = edge.other(cur);
    }
    rev.reverse();
    let snapped = rev
        .into_iter()
        .map(|pc| {
            let len = g.edge(pc.edge).length;
            let snap = |x: f64| if (x - len).abs() <= TOL { len } else { x };
            Piece { edge: pc.edge, from: snap(pc.from), to: snap(pc.to) }
        })
        .collect();
    Ok(EdgePath::new(g, a, snapped)?.normalized(g))
}
