//! Finite connected metric multigraphs.
//!
//! Vertices and edges are addressed by dense indices ([`VertexId`],
//! [`EdgeId`]) and carry string names for I/O. Adjacency is by edge id, so
//! parallel edges are first-class. Self-loops are split at their midpoint on
//! construction; points given on the original loop edge are resolved onto the
//! halves by [`MetricGraph::point_by_name`].

mod diameter;
pub mod families;
pub mod json;
mod level;
mod net;
mod paths;

use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashMap};

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::matrix::DistanceMatrix;

pub use level::{f_values, monotone_subdivision, EdgeProfile, LevelGraph};
pub use net::{epsilon_net, finite_metric, finite_metric_with};
pub use paths::{
    f_variation, monotone_decomposition, shortest_path, simplify_path, EdgePath, Piece,
};

/// Absolute tolerance for every metric comparison.
pub const TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeId(pub usize);

#[derive(Clone, Debug, PartialEq)]
pub struct Edge {
    pub name: String,
    pub u: VertexId,
    pub v: VertexId,
    pub length: f64,
}

impl Edge {
    /// The endpoint opposite `w`.
    pub fn other(&self, w: VertexId) -> VertexId {
        if w == self.u {
            self.v
        } else {
            self.u
        }
    }
}

/// A point of a metric graph: a vertex, or a position strictly inside an edge
/// measured from the edge's `u` endpoint.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GraphPoint {
    Vertex(VertexId),
    Edge { edge: EdgeId, offset: f64 },
}

#[derive(Clone, Debug)]
pub struct MetricGraph {
    vertex_names: Vec<String>,
    vertex_index: HashMap<String, VertexId>,
    edges: Vec<Edge>,
    edge_index: HashMap<String, EdgeId>,
    loops: HashMap<String, (EdgeId, EdgeId, f64)>,
    adjacency: Vec<Vec<(EdgeId, VertexId)>>,
}

impl PartialEq for MetricGraph {
    fn eq(&self, other: &Self) -> bool {
        self.vertex_names == other.vertex_names && self.edges == other.edges
    }
}

/// Incremental construction by name.
#[derive(Clone, Debug, Default)]
pub struct GraphBuilder {
    vertices: Vec<String>,
    edges: Vec<(String, String, String, f64)>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vertex(mut self, name: impl Into<String>) -> Self {
        self.vertices.push(name.into());
        self
    }

    pub fn edge(
        mut self,
        name: impl Into<String>,
        u: impl Into<String>,
        v: impl Into<String>,
        length: f64,
    ) -> Self {
        self.edges.push((name.into(), u.into(), v.into(), length));
        self
    }

    pub fn build(self) -> Result<MetricGraph> {
        MetricGraph::new(self.vertices, self.edges)
    }
}

impl MetricGraph {
    /// Validates and builds a graph from named vertices and `(name, u, v, length)` edges.
    pub fn new(vertices: Vec<String>, edges: Vec<(String, String, String, f64)>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::InvalidGraph("graph has no vertices".into()));
        }
        let mut vertex_index = HashMap::new();
        for (i, name) in vertices.iter().enumerate() {
            if vertex_index.insert(name.clone(), VertexId(i)).is_some() {
                return Err(Error::InvalidGraph(format!("duplicate vertex {name}")));
            }
        }
        let mut seen = std::collections::HashSet::new();
        for (name, u, v, length) in &edges {
            if !seen.insert(name.clone()) {
                return Err(Error::InvalidGraph(format!("duplicate edge {name}")));
            }
            if !(length.is_finite() && *length > 0.0) {
                return Err(Error::NonPositiveLength(name.clone()));
            }
            for w in [u, v] {
                if !vertex_index.contains_key(w) {
                    return Err(Error::InvalidGraph(format!(
                        "edge {name}: unknown vertex {w}"
                    )));
                }
            }
        }

        let mut vertex_names = vertices;
        let mut raw = Vec::with_capacity(edges.len());
        let mut loops = HashMap::new();
        for (name, u, v, length) in edges {
            let (u, v) = (vertex_index[&u], vertex_index[&v]);
            if u != v {
                raw.push(Edge { name, u, v, length });
                continue;
            }
            let mut mid = format!("{name}#mid");
            while vertex_index.contains_key(&mid) {
                mid.push('#');
            }
            let m = VertexId(vertex_names.len());
            vertex_index.insert(mid.clone(), m);
            vertex_names.push(mid);
            let half = length / 2.0;
            let first = EdgeId(raw.len());
            raw.push(Edge { name: format!("{name}#0"), u, v: m, length: half });
            raw.push(Edge { name: format!("{name}#1"), u: m, v: u, length: half });
            loops.insert(name, (first, EdgeId(first.0 + 1), half));
        }
        let graph = Self::from_parts(vertex_names, raw, loops)?;
        if !graph.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(graph)
    }

    fn from_parts(
        vertex_names: Vec<String>,
        edges: Vec<Edge>,
        loops: HashMap<String, (EdgeId, EdgeId, f64)>,
    ) -> Result<Self> {
        let mut vertex_index = HashMap::with_capacity(vertex_names.len());
        for (i, name) in vertex_names.iter().enumerate() {
            if vertex_index.insert(name.clone(), VertexId(i)).is_some() {
                return Err(Error::InvalidGraph(format!("duplicate vertex {name}")));
            }
        }
        let mut edge_index = HashMap::with_capacity(edges.len());
        let mut adjacency = vec![Vec::new(); vertex_names.len()];
        for (i, e) in edges.iter().enumerate() {
            if edge_index.insert(e.name.clone(), EdgeId(i)).is_some() {
                return Err(Error::InvalidGraph(format!("duplicate edge {}", e.name)));
            }
            adjacency[e.u.0].push((EdgeId(i), e.v));
            adjacency[e.v.0].push((EdgeId(i), e.u));
        }
        Ok(Self { vertex_names, vertex_index, edges, edge_index, loops, adjacency })
    }

    fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.vertex_count()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            for &(_, y) in &self.adjacency[x] {
                if !seen[y.0] {
                    seen[y.0] = true;
                    stack.push(y.0);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.vertex_count()).map(VertexId)
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> {
        (0..self.edge_count()).map(EdgeId)
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e.0]
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertex_names[v.0]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertex_names
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<VertexId> {
        self.vertex_index.get(name).copied()
    }

    pub fn edge_by_name(&self, name: &str) -> Option<EdgeId> {
        self.edge_index.get(name).copied()
    }

    /// Incident `(edge, neighbour)` pairs of `v`.
    pub fn neighbors(&self, v: VertexId) -> &[(EdgeId, VertexId)] {
        &self.adjacency[v.0]
    }

    /// First Betti number `#edges - #vertices + 1`.
    pub fn betti1(&self) -> usize {
        self.edge_count() + 1 - self.vertex_count()
    }

    pub fn total_length(&self) -> f64 {
        self.edges.iter().map(|e| e.length).sum()
    }

    /// Canonical point at `offset` along `edge`; offsets within [`TOL`] of an
    /// endpoint collapse to that vertex.
    pub fn point_on_edge(&self, edge: EdgeId, offset: f64) -> Result<GraphPoint> {
        let e = self
            .edges
            .get(edge.0)
            .ok_or_else(|| Error::InvalidPoint(format!("no edge with index {}", edge.0)))?;
        if !offset.is_finite() || offset < -TOL || offset > e.length + TOL {
            return Err(Error::InvalidPoint(format!(
                "offset {offset} outside edge {} of length {}",
                e.name, e.length
            )));
        }
        Ok(if offset <= TOL {
            GraphPoint::Vertex(e.u)
        } else if offset >= e.length - TOL {
            GraphPoint::Vertex(e.v)
        } else {
            GraphPoint::Edge { edge, offset }
        })
    }

    /// Validates a point and returns its canonical form.
    pub fn canonical(&self, p: GraphPoint) -> Result<GraphPoint> {
        match p {
            GraphPoint::Vertex(v) if v.0 < self.vertex_count() => Ok(p),
            GraphPoint::Vertex(v) => Err(Error::InvalidPoint(format!("no vertex {}", v.0))),
            GraphPoint::Edge { edge, offset } => self.point_on_edge(edge, offset),
        }
    }

    /// Resolves a named point; offsets on an original self-loop are mapped
    /// onto its two halves.
    pub fn point_by_name(&self, edge: &str, offset: f64) -> Result<GraphPoint> {
        if let Some(&(first, second, half)) = self.loops.get(edge) {
            if !offset.is_finite() || offset < -TOL || offset > 2.0 * half + TOL {
                return Err(Error::InvalidPoint(format!("offset {offset} outside loop {edge}")));
            }
            return if offset < half {
                self.point_on_edge(first, offset)
            } else {
                self.point_on_edge(second, offset - half)
            };
        }
        let e = self
            .edge_by_name(edge)
            .ok_or_else(|| Error::InvalidPoint(format!("unknown edge {edge}")))?;
        self.point_on_edge(e, offset)
    }

    pub fn vertex_point(&self, name: &str) -> Result<GraphPoint> {
        self.vertex_by_name(name)
            .map(GraphPoint::Vertex)
            .ok_or_else(|| Error::InvalidPoint(format!("unknown vertex {name}")))
    }

    /// Equality of canonical forms, offsets compared within [`TOL`].
    pub fn same_point(&self, a: GraphPoint, b: GraphPoint) -> bool {
        match (a, b) {
            (GraphPoint::Vertex(x), GraphPoint::Vertex(y)) => x == y,
            (
                GraphPoint::Edge { edge: e1, offset: s1 },
                GraphPoint::Edge { edge: e2, offset: s2 },
            ) => e1 == e2 && (s1 - s2).abs() <= TOL,
            _ => false,
        }
    }

    /// Single-source shortest path lengths from a vertex (Dijkstra).
    pub fn sssp(&self, source: VertexId) -> Vec<f64> {
        self.sssp_with_parents(source).0
    }

    /// Dijkstra that also records the edge through which each vertex was
    /// reached. Ties are broken by vertex index so trees are deterministic.
    pub(crate) fn sssp_with_parents(&self, source: VertexId) -> (Vec<f64>, Vec<Option<EdgeId>>) {
        let n = self.vertex_count();
        let mut dist = vec![f64::INFINITY; n];
        let mut parent = vec![None; n];
        let mut done = vec![false; n];
        let mut heap = BinaryHeap::new();
        dist[source.0] = 0.0;
        heap.push(HeapItem { dist: 0.0, node: source.0 });
        while let Some(HeapItem { dist: d, node }) = heap.pop() {
            if done[node] {
                continue;
            }
            done[node] = true;
            for &(e, w) in &self.adjacency[node] {
                let nd = d + self.edges[e.0].length;
                if nd < dist[w.0] {
                    dist[w.0] = nd;
                    parent[w.0] = Some(e);
                    heap.push(HeapItem { dist: nd, node: w.0 });
                }
            }
        }
        (dist, parent)
    }

    /// All-pairs vertex distances.
    pub fn vertex_distances(&self, exec: Execution) -> DistanceMatrix {
        let n = self.vertex_count();
        let rows = exec.map(n, |i| self.sssp(VertexId(i)));
        DistanceMatrix::from_raw(n, rows.concat())
    }

    /// Splits edges at the given interior positions. Positions at (or within
    /// tolerance of) endpoints and duplicates are ignored.
    pub fn subdivide(&self, cuts: &[(EdgeId, f64)]) -> Refinement {
        let mut per_edge: Vec<Vec<f64>> = vec![Vec::new(); self.edge_count()];
        for &(e, s) in cuts {
            let len = self.edges[e.0].length;
            if s > TOL && s < len - TOL {
                per_edge[e.0].push(s);
            }
        }
        let mut names = self.vertex_names.clone();
        let mut taken: std::collections::HashSet<String> = names.iter().cloned().collect();
        let mut hosts = vec![None; names.len()];
        let mut edges = Vec::with_capacity(self.edge_count() + cuts.len());
        let mut pieces = Vec::with_capacity(self.edge_count());
        for (i, e) in self.edges.iter().enumerate() {
            let list = &mut per_edge[i];
            list.sort_by(f64::total_cmp);
            list.dedup_by(|b, a| (*b - *a).abs() <= TOL);
            if list.is_empty() {
                pieces.push(vec![(0.0, EdgeId(edges.len()))]);
                edges.push(e.clone());
                continue;
            }
            let mut prev_v = e.u;
            let mut prev_s = 0.0;
            let mut mine = Vec::with_capacity(list.len() + 1);
            for (k, &s) in list.iter().enumerate() {
                let mut name = format!("{}@{}", e.name, k);
                while !taken.insert(name.clone()) {
                    name.push('\'');
                }
                let v = VertexId(names.len());
                names.push(name);
                hosts.push(Some((EdgeId(i), s)));
                mine.push((prev_s, EdgeId(edges.len())));
                edges.push(Edge {
                    name: format!("{}/{}", e.name, k),
                    u: prev_v,
                    v,
                    length: s - prev_s,
                });
                prev_v = v;
                prev_s = s;
            }
            mine.push((prev_s, EdgeId(edges.len())));
            edges.push(Edge {
                name: format!("{}/{}", e.name, list.len()),
                u: prev_v,
                v: e.v,
                length: e.length - prev_s,
            });
            pieces.push(mine);
        }
        let graph = Self::from_parts(names, edges, HashMap::new())
            .expect("subdivision keeps names unique");
        Refinement { graph, hosts, pieces }
    }

    /// Geodesic distance between two points.
    pub fn distance(&self, a: GraphPoint, b: GraphPoint) -> Result<f64> {
        let (a, b) = (self.canonical(a)?, self.canonical(b)?);
        let r = self.subdivide(&cut_list(&[a, b]));
        let (va, vb) = (r.vertex_of(a), r.vertex_of(b));
        Ok(r.graph.sssp(va)[vb.0])
    }

    /// Exact diameter of the graph as a metric space (interior points included).
    pub fn diameter(&self) -> f64 {
        diameter::graph_diameter(self)
    }

    pub(crate) fn raw_edges(&self) -> &[Edge] {
        &self.edges
    }
}

pub(crate) fn cut_list(points: &[GraphPoint]) -> Vec<(EdgeId, f64)> {
    points
        .iter()
        .filter_map(|p| match *p {
            GraphPoint::Edge { edge, offset } => Some((edge, offset)),
            GraphPoint::Vertex(_) => None,
        })
        .collect()
}

/// A subdivided copy of a graph, with the bookkeeping to move points between
/// the original and the refined graph. Original vertices keep their ids.
#[derive(Clone, Debug)]
pub struct Refinement {
    pub graph: MetricGraph,
    /// For each refined vertex: `None` for an original vertex, otherwise the
    /// host edge of the original graph and the offset along it.
    pub hosts: Vec<Option<(EdgeId, f64)>>,
    pieces: Vec<Vec<(f64, EdgeId)>>,
}

impl Refinement {
    /// Image of a (canonical) original point in the refined graph.
    pub fn map_point(&self, p: GraphPoint) -> GraphPoint {
        match p {
            GraphPoint::Vertex(_) => p,
            GraphPoint::Edge { edge, offset } => {
                let list = &self.pieces[edge.0];
                let idx = list.partition_point(|&(start, _)| start <= offset + TOL) - 1;
                let (start, e) = list[idx];
                let local = offset - start;
                if local <= TOL {
                    return GraphPoint::Vertex(self.graph.edge(e).u);
                }
                let len = self.graph.edge(e).length;
                if local >= len - TOL {
                    GraphPoint::Vertex(self.graph.edge(e).v)
                } else {
                    GraphPoint::Edge { edge: e, offset: local }
                }
            }
        }
    }

    /// Refined vertex at an original point that was one of the cuts.
    pub fn vertex_of(&self, p: GraphPoint) -> VertexId {
        match self.map_point(p) {
            GraphPoint::Vertex(v) => v,
            GraphPoint::Edge { .. } => panic!("point was not cut during subdivision"),
        }
    }

    /// Original edge hosting a refined edge, with the offset of the refined
    /// edge's `u` endpoint along it.
    pub fn host_of_edge(&self, e: EdgeId) -> (EdgeId, f64) {
        for (orig, list) in self.pieces.iter().enumerate() {
            if let Some(&(start, _)) = list.iter().find(|&&(_, id)| id == e) {
                return (EdgeId(orig), start);
            }
        }
        panic!("refined edge {} has no host", e.0)
    }

    /// Refined edges of an original edge, as `(start offset, refined edge)`.
    pub fn pieces_of(&self, e: EdgeId) -> &[(f64, EdgeId)] {
        &self.pieces[e.0]
    }

    /// Image of a refined point in the original graph.
    pub fn original_point(&self, p: GraphPoint) -> GraphPoint {
        match p {
            GraphPoint::Vertex(v) => match self.hosts[v.0] {
                None => p,
                Some((edge, offset)) => GraphPoint::Edge { edge, offset },
            },
            GraphPoint::Edge { edge, offset } => {
                let (orig, start) = self.host_of_edge(edge);
                GraphPoint::Edge { edge: orig, offset: start + offset }
            }
        }
    }
}

#[derive(Clone, Copy, Debug)]
struct HeapItem {
    dist: f64,
    node: usize,
}

impl PartialEq for HeapItem {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for HeapItem {}
impl PartialOrd for HeapItem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for HeapItem {
    // min-heap on (dist, node)
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .dist
            .total_cmp(&self.dist)
            .then_with(|| other.node.cmp(&self.node))
    }
}

/// Disjoint-set forest with path compression and union by rank.
#[derive(Clone, Debug)]
pub(crate) struct DisjointSet {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl DisjointSet {
    pub(crate) fn new(n: usize) -> Self {
        Self { parent: (0..n).collect(), rank: vec![0; n] }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[x] != root {
            let next = self.parent[x];
            self.parent[x] = root;
            x = next;
        }
        root
    }

    /// Returns `false` if already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.rank[a] < self.rank[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        if self.rank[a] == self.rank[b] {
            self.rank[a] += 1;
        }
        true
    }
}
