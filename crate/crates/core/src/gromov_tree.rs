//! The bottleneck function `m_p`, the tree pseudometric
//! `t_p(x, y) = f(x) + f(y) − 2 m_p(x, y)` and its merge-tree realization.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::matrix::DistanceMatrix;
use crate::metric_graph::{epsilon_net, finite_metric_with, DisjointSet, GraphPoint, LevelGraph, MetricGraph, VertexId, TOL};

/// `(d(p,x) + d(p,y) − d(x,y)) / 2` on a finite space.
pub fn gromov_product(d: &DistanceMatrix, p: usize, x: usize, y: usize) -> f64 {
    0.5 * (d.get(p, x) + d.get(p, y) - d.get(x, y))
}

pub fn gromov_product_graph(g: &MetricGraph, p: GraphPoint, x: GraphPoint, y: GraphPoint) -> Result<f64> {
    Ok(0.5 * (g.distance(p, x)? + g.distance(p, y)? - g.distance(x, y)?))
}

/// Edges of the level graph ordered by decreasing weight `min(f(u), f(v))`.
fn descending_edges(lg: &LevelGraph) -> Vec<(f64, usize, usize)> {
    let mut edges: Vec<(f64, usize, usize)> = lg
        .graph()
        .edges()
        .iter()
        .map(|e| (lg.level[e.u.0].min(lg.level[e.v.0]), e.u.0, e.v.0))
        .collect();
    edges.sort_by(|a, b| b.0.total_cmp(&a.0));
    edges
}

/// `sup` over paths from `x` to `y` of `min f` along the path.
pub fn bottleneck_m(g: &MetricGraph, p: GraphPoint, x: GraphPoint, y: GraphPoint) -> Result<f64> {
    let (x, y) = (g.canonical(x)?, g.canonical(y)?);
    let lg = LevelGraph::new(g, p, &[x, y])?;
    let (vx, vy) = (lg.vertex_of(x).0, lg.vertex_of(y).0);
    let cap = lg.level[vx].min(lg.level[vy]);
    if vx == vy {
        return Ok(cap);
    }
    let mut uf = DisjointSet::new(lg.graph().vertex_count());
    for (w, u, v) in descending_edges(&lg) {
        uf.union(u, v);
        if uf.find(vx) == uf.find(vy) {
            return Ok(w.min(cap));
        }
    }
    Err(Error::Disconnected)
}

pub fn t_p(g: &MetricGraph, p: GraphPoint, x: GraphPoint, y: GraphPoint) -> Result<f64> {
    let m = bottleneck_m(g, p, x, y)?;
    Ok((g.distance(p, x)? + g.distance(p, y)? - 2.0 * m).max(0.0))
}

pub fn t_p_matrix(g: &MetricGraph, p: GraphPoint, pts: &[GraphPoint]) -> Result<DistanceMatrix> {
    t_p_matrix_with(g, p, pts, Execution::default())
}

/// `t_p` between all pairs of points, from one maximum-bottleneck spanning
/// tree of the level graph.
pub fn t_p_matrix_with(g: &MetricGraph, p: GraphPoint, pts: &[GraphPoint], exec: Execution) -> Result<DistanceMatrix> {
    let pts = pts.iter().map(|&x| g.canonical(x)).collect::<Result<Vec<_>>>()?;
    let lg = LevelGraph::new(g, p, &pts)?;
    let nv = lg.graph().vertex_count();
    let mut uf = DisjointSet::new(nv);
    let mut adj: Vec<Vec<(usize, f64)>> = vec![Vec::new(); nv];
    for (w, u, v) in descending_edges(&lg) {
        if uf.union(u, v) {
            adj[u].push((v, w));
            adj[v].push((u, w));
        }
    }
    let verts: Vec<usize> = pts.iter().map(|&x| lg.vertex_of(x).0).collect();
    let n = verts.len();
    let rows = exec.map(n, |i| {
        // minimum edge weight on the tree path from verts[i]
        let mut low = vec![f64::NAN; nv];
        let src = verts[i];
        low[src] = f64::INFINITY;
        let mut stack = vec![src];
        while let Some(u) = stack.pop() {
            for &(v, w) in &adj[u] {
                if low[v].is_nan() {
                    low[v] = low[u].min(w);
                    stack.push(v);
                }
            }
        }
        let fi = lg.level[src];
        verts
            .iter()
            .map(|&t| {
                let ft = lg.level[t];
                let m = fi.min(ft).min(low[t]);
                (fi + ft - 2.0 * m).max(0.0)
            })
            .collect::<Vec<f64>>()
    });
    let mut data = rows.concat();
    for i in 0..n {
        data[i * n + i] = 0.0;
        for j in i + 1..n {
            let v = 0.5 * (data[i * n + j] + data[j * n + i]);
            data[i * n + j] = v;
            data[j * n + i] = v;
        }
    }
    Ok(DistanceMatrix::from_raw(n, data))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TreeNode {
    pub id: usize,
    pub level: f64,
    pub parent: Option<usize>,
    /// Level-graph vertices on the segment just below this node.
    #[serde(skip)]
    pub members: Vec<VertexId>,
}

/// The metric tree `T_p G` as a rooted tree graded by level.
#[derive(Clone, Debug)]
pub struct MergeTree {
    nodes: Vec<TreeNode>,
    /// For each level-graph vertex: the node heading its component and its level.
    position: Vec<(usize, f64)>,
    depth: Vec<usize>,
    lg: LevelGraph,
}

pub fn build_merge_tree(g: &MetricGraph, p: GraphPoint) -> Result<MergeTree> {
    build_merge_tree_with(g, p, &[])
}

/// Merge tree of the superlevel filtration, with `extra` points made
/// addressable as tree positions.
pub fn build_merge_tree_with(g: &MetricGraph, p: GraphPoint, extra: &[GraphPoint]) -> Result<MergeTree> {
    let extra = extra.iter().map(|&x| g.canonical(x)).collect::<Result<Vec<_>>>()?;
    let lg = LevelGraph::new(g, p, &extra)?;
    let sg = lg.graph();
    let nv = sg.vertex_count();
    let mut order: Vec<usize> = (0..nv).collect();
    order.sort_by(|&a, &b| lg.level[b].total_cmp(&lg.level[a]).then(a.cmp(&b)));

    let mut level: Vec<f64> = Vec::new();
    let mut parent: Vec<Option<usize>> = Vec::new();
    let mut alias: Vec<usize> = Vec::new();
    let mut uf = DisjointSet::new(nv);
    let mut head = vec![usize::MAX; nv];
    let mut active = vec![false; nv];
    let mut owner = vec![usize::MAX; nv];

    fn resolve(alias: &[usize], mut n: usize) -> usize {
        while alias[n] != n {
            n = alias[n];
        }
        n
    }

    for &v in &order {
        let f = lg.level[v];
        let mut heads: Vec<usize> = Vec::new();
        for &(_, w) in sg.neighbors(VertexId(v)) {
            if active[w.0] {
                let h = resolve(&alias, head[uf.find(w.0)]);
                if !heads.contains(&h) {
                    heads.push(h);
                }
            }
        }
        heads.sort_unstable();
        let node = match heads.len() {
            0 => {
                level.push(f);
                parent.push(None);
                alias.push(level.len() - 1);
                level.len() - 1
            }
            1 => heads[0],
            _ => {
                // heads already at this level are the same point of the tree
                let same: Vec<usize> = heads.iter().copied().filter(|&h| (level[h] - f).abs() <= TOL).collect();
                let target = match same.first() {
                    Some(&s) => s,
                    None => {
                        level.push(f);
                        parent.push(None);
                        alias.push(level.len() - 1);
                        level.len() - 1
                    }
                };
                for &h in &heads {
                    if h == target {
                        continue;
                    }
                    if same.contains(&h) {
                        alias[h] = target;
                    } else {
                        parent[h] = Some(target);
                    }
                }
                target
            }
        };
        active[v] = true;
        for &(_, w) in sg.neighbors(VertexId(v)) {
            if active[w.0] {
                uf.union(v, w.0);
            }
        }
        head[uf.find(v)] = node;
        owner[v] = node;
    }
    // children of merged aliases follow them
    for slot in parent.iter_mut() {
        if let Some(q) = *slot {
            *slot = Some(resolve(&alias, q));
        }
    }
    let mut roots: Vec<usize> = (0..level.len()).filter(|&n| alias[n] == n && parent[n].is_none()).collect();
    if roots.len() != 1 {
        return Err(Error::Internal(format!("merge sweep ended with {} roots", roots.len())));
    }
    if level[roots[0]] > TOL {
        level.push(0.0);
        parent.push(None);
        alias.push(level.len() - 1);
        parent[roots[0]] = Some(level.len() - 1);
        roots[0] = level.len() - 1;
    }

    // renumber live nodes by (level, creation order)
    let mut live: Vec<usize> = (0..level.len()).filter(|&n| alias[n] == n).collect();
    live.sort_by(|&a, &b| level[a].total_cmp(&level[b]).then(a.cmp(&b)));
    let mut new_id = vec![usize::MAX; level.len()];
    for (i, &n) in live.iter().enumerate() {
        new_id[n] = i;
    }
    let mut nodes: Vec<TreeNode> = live
        .iter()
        .enumerate()
        .map(|(i, &n)| TreeNode { id: i, level: level[n], parent: parent[n].map(|q| new_id[q]), members: Vec::new() })
        .collect();
    let mut position = vec![(0, 0.0); nv];
    for v in 0..nv {
        let n = new_id[resolve(&alias, owner[v])];
        position[v] = (n, lg.level[v]);
        nodes[n].members.push(VertexId(v));
    }
    let mut depth = vec![0; nodes.len()];
    for i in 0..nodes.len() {
        if let Some(q) = nodes[i].parent {
            depth[i] = depth[q] + 1;
        }
    }
    Ok(MergeTree { nodes, position, depth, lg })
}

impl MergeTree {
    pub fn nodes(&self) -> &[TreeNode] {
        &self.nodes
    }

    pub fn root(&self) -> usize {
        0
    }

    pub fn level_graph(&self) -> &LevelGraph {
        &self.lg
    }

    pub fn is_leaf(&self, n: usize) -> bool {
        !self.nodes.iter().any(|c| c.parent == Some(n))
    }

    pub fn leaves(&self) -> Vec<usize> {
        (0..self.nodes.len()).filter(|&n| self.is_leaf(n)).collect()
    }

    /// Sum of segment lengths.
    pub fn total_length(&self) -> f64 {
        self.nodes.iter().filter_map(|n| n.parent.map(|q| n.level - self.nodes[q].level)).sum()
    }

    pub fn lca(&self, mut a: usize, mut b: usize) -> usize {
        while self.depth[a] > self.depth[b] {
            a = self.nodes[a].parent.expect("depth > 0");
        }
        while self.depth[b] > self.depth[a] {
            b = self.nodes[b].parent.expect("depth > 0");
        }
        while a != b {
            a = self.nodes[a].parent.expect("distinct roots");
            b = self.nodes[b].parent.expect("distinct roots");
        }
        a
    }

    /// Head node and level of a level-graph vertex.
    pub fn position(&self, v: VertexId) -> (usize, f64) {
        self.position[v.0]
    }

    /// Tree distance between two level-graph vertices.
    pub fn distance_vertices(&self, a: VertexId, b: VertexId) -> f64 {
        let ((na, la), (nb, lb)) = (self.position[a.0], self.position[b.0]);
        let m = la.min(lb).min(self.nodes[self.lca(na, nb)].level);
        (la + lb - 2.0 * m).max(0.0)
    }

    /// Tree distance between two points of the graph; each must be a vertex
    /// or one of the extra points the tree was built with.
    pub fn distance(&self, x: GraphPoint, y: GraphPoint) -> f64 {
        self.distance_vertices(self.lg.vertex_of(x), self.lg.vertex_of(y))
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Doc<'a> {
            nodes: &'a [TreeNode],
        }
        serde_json::to_string(&Doc { nodes: &self.nodes }).expect("merge tree serialises")
    }

    /// Indented text rendering, children by id.
    pub fn dendrogram(&self) -> String {
        let mut children = vec![Vec::new(); self.nodes.len()];
        for n in &self.nodes {
            if let Some(q) = n.parent {
                children[q].push(n.id);
            }
        }
        let mut out = String::new();
        let mut stack = vec![(0usize, 0usize)];
        while let Some((n, d)) = stack.pop() {
            let kind = if children[n].is_empty() { "leaf" } else { "node" };
            out.push_str(&format!("{}{kind} {n} @ {:.6}\n", "  ".repeat(d), self.nodes[n].level));
            for &c in children[n].iter().rev() {
                stack.push((c, d + 1));
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TreeDistortion {
    /// `max (d − t_p)` over net pairs.
    pub value: f64,
    /// `value / 2`, through the identity correspondence.
    pub tau_upper: f64,
    pub points: usize,
}

pub fn tree_distortion(g: &MetricGraph, p: GraphPoint, mesh: f64) -> Result<TreeDistortion> {
    tree_distortion_with(g, p, mesh, Execution::default())
}

pub fn tree_distortion_with(g: &MetricGraph, p: GraphPoint, mesh: f64, exec: Execution) -> Result<TreeDistortion> {
    let net = epsilon_net(g, mesh)?;
    let d = finite_metric_with(g, &net, exec)?;
    let t = t_p_matrix_with(g, p, &net, exec)?;
    let n = net.len();
    let value = exec.max_f64(n, 0.0, |i| (0..n).map(|j| d.get(i, j) - t.get(i, j)).fold(0.0, f64::max));
    Ok(TreeDistortion { value, tau_upper: value / 2.0, points: n })
}
