use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::ensemble::{random_basepoint, random_graph, EnsembleSpec};
use super::report::{Row, VerificationReport};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::gh::{delta_n_bounds_with, hyp_graph, hyperbolicity, Correspondence};
use crate::gromov_tree::{build_merge_tree_with, t_p_matrix};
use crate::metric_graph::{
    epsilon_net, finite_metric, monotone_decomposition, f_variation, shortest_path, EdgeId, EdgePath, GraphPoint,
    MetricGraph, VertexId, TOL,
};
use crate::persistence::{
    bottleneck_distance, minimal_cycle_basis, persistence_sequence, vr_h1_barcode, Bar, Barcode, PersistenceSequence,
};
use crate::reeb::{epsilon_smoothing, quotient_correspondence, SmoothedGraph};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VerifyOptions {
    /// Net spacing as a fraction of the diameter.
    pub mesh_factor: f64,
    /// Replaces the smoothing threshold `3 a_k / 2` by `a_k / 2`.
    pub corrupt: bool,
    pub exec: Execution,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { mesh_factor: 0.05, corrupt: false, exec: Execution::default() }
    }
}

const WALKS: usize = 6;
const COARSE_POINTS: f64 = 20.0;
const HYP_POINTS: f64 = 100.0;
const VR_POINTS: usize = 40;
const FOUR_POINT_SAMPLE: usize = 60;

const A_DECOMP: &str = "monotone segments <= 2 beta1 + 2";
const A_GEODESIC: &str = "sum over segments |f(end) - f(start)| = d(x, x') on shortest paths";
const A_LENGTH: &str = "f-variation of a path = its length";
const A_THRESHOLD: &str = "beta1(G^eps) < k whenever eps >= 3 a_k / 2";
const A_BETTI: &str = "beta1(G^eps) non-increasing in eps and <= beta1(G)";
const A_SEQ: &str = "a_n(G^eps) <= a_n(G)";
const A_QUOT: &str = "dis(quotient correspondence) <= 2 (4 beta1 + 3) eps + 4 mesh";
const A_VANISH: &str = "a_1 <= 4 (hyp + net error)";
const A_TP: &str = "t_p <= d";
const A_LCA: &str = "merge-tree distance = t_p";
const A_FOUR: &str = "hyp(T_p) = 0";
const A_EXT: &str = "dis(R_r) <= dis(R) + 2 r";
const A_DELTA: &str = "lower(delta_n) <= upper(delta_n)";
const A_CHAIN: &str = "lower(delta_{n+1}) <= upper(delta_n)";
const A_VR: &str = "d_b(VR barcode of net, {(0, a_i)}) <= net spacing";

/// `{0, 3 a_k / 2 ± 0.1, diameter}`, sorted, nonnegative, deduplicated.
pub fn epsilon_grid(seq: &PersistenceSequence, diameter: f64) -> Vec<f64> {
    let mut grid = vec![0.0, diameter];
    for &a in &seq.a {
        grid.extend([1.5 * a - 0.1, 1.5 * a + 0.1]);
    }
    grid.retain(|e| *e >= 0.0);
    grid.sort_by(f64::total_cmp);
    grid.dedup_by(|b, a| (*b - *a).abs() <= TOL);
    grid
}

/// Runs every check on every instance of the ensemble.
pub fn verify(spec: &EnsembleSpec, opts: &VerifyOptions) -> Result<VerificationReport> {
    spec.validate()?;
    if !(opts.mesh_factor > 0.0) {
        return Err(Error::InvalidParameter(format!("mesh factor {} must be > 0", opts.mesh_factor)));
    }
    let per = opts.exec.map(spec.count, |i| match verify_instance(spec, i, opts) {
        Ok(rows) => rows,
        Err(e) => vec![Row::failed("instance_error", "instance completes", i, e.to_string())],
    });
    Ok(VerificationReport::new(per.into_iter().flatten().collect()))
}

/// Rows for instance `index` alone.
pub fn verify_instance(spec: &EnsembleSpec, index: usize, opts: &VerifyOptions) -> Result<Vec<Row>> {
    let g = random_graph(spec, index)?;
    let p = random_basepoint(spec, index, &g);
    let mut rng = spec.rng(index, 2);
    let diam = g.diameter();
    let mesh = if diam > 0.0 { opts.mesh_factor * diam } else { opts.mesh_factor };
    let mut ctx = Ctx { g: &g, p, index, rows: Vec::new() };
    ctx.paths(&mut rng)?;
    ctx.smoothing(mesh, diam, opts.corrupt)?;
    ctx.vanishing()?;
    ctx.trees()?;
    ctx.extension(mesh, diam)?;
    ctx.delta(mesh)?;
    ctx.vr_vs_basis()?;
    Ok(ctx.rows)
}

struct Ctx<'a> {
    g: &'a MetricGraph,
    p: GraphPoint,
    index: usize,
    rows: Vec<Row>,
}

impl Ctx<'_> {
    fn push(&mut self, check: &str, anchor: &str, left: f64, right: f64) {
        self.rows.push(Row::compare(check, anchor, self.index, left, right));
    }

    fn paths(&mut self, rng: &mut ChaCha8Rng) -> Result<()> {
        let g = self.g;
        let bound = (2 * g.betti1() + 2) as f64;
        let mut worst_count = 0usize;
        let mut worst_sum = 0.0f64;
        for a in g.vertices() {
            for b in g.vertices() {
                let path = shortest_path(g, GraphPoint::Vertex(a), GraphPoint::Vertex(b))?;
                let segs = monotone_decomposition(g, self.p, &path)?;
                worst_count = worst_count.max(segs.len());
                let mut sum = 0.0;
                for s in &segs {
                    sum += (g.distance(self.p, s.end(g))? - g.distance(self.p, s.start())?).abs();
                }
                let d = g.distance(GraphPoint::Vertex(a), GraphPoint::Vertex(b))?;
                worst_sum = worst_sum.max((sum - d).abs());
            }
        }
        self.push("geodesic_sum", A_GEODESIC, worst_sum, 0.0);

        let mut worst_len = f64::NEG_INFINITY;
        for _ in 0..WALKS {
            let path = random_simple_walk(g, rng)?;
            worst_count = worst_count.max(monotone_decomposition(g, self.p, &path)?.len());
            let len = path.length();
            worst_len = worst_len.max((f_variation(g, self.p, &path)? - len).abs() - TOL * len);
        }
        self.push("decomposition_count", A_DECOMP, worst_count as f64, bound);
        self.push("length_identity", A_LENGTH, worst_len.max(0.0), 0.0);
        Ok(())
    }

    fn smoothing(&mut self, mesh: f64, diam: f64, corrupt: bool) -> Result<()> {
        let g = self.g;
        let beta = g.betti1();
        let seq = persistence_sequence(g);
        let factor = if corrupt { 0.5 } else { 1.5 };
        // ε values with their Betti bound: the number of k with factor·a_k > ε
        let bound = |eps: f64| seq.a.iter().filter(|&&a| factor * a > eps + TOL).count();
        for &a in &seq.a {
            let eps = factor * a + 1e-6;
            let s = epsilon_smoothing(g, self.p, eps)?;
            self.push("smoothing_threshold", A_THRESHOLD, s.betti1() as f64, bound(eps) as f64);
        }

        let grid = epsilon_grid(&seq, diam);
        let mut prev = beta;
        for &eps in &grid {
            let s = epsilon_smoothing(g, self.p, eps)?;
            let b = s.betti1();
            self.push("smoothing_threshold", A_THRESHOLD, b as f64, bound(eps) as f64);
            self.push("betti_monotone", A_BETTI, b as f64, prev as f64);
            prev = b;
            let sseq = persistence_sequence(&s.graph);
            let excess = sseq.a.iter().enumerate().map(|(i, &x)| x - seq.get(i + 1)).fold(0.0, f64::max);
            self.push("sequence_monotone", A_SEQ, excess, 0.0);
            self.quotient(&s, eps, mesh)?;
        }
        Ok(())
    }

    fn quotient(&mut self, s: &SmoothedGraph, eps: f64, mesh: f64) -> Result<()> {
        let dis = quotient_correspondence(self.g, s, mesh)?.distortion();
        let bound = 2.0 * (4.0 * self.g.betti1() as f64 + 3.0) * eps + 4.0 * mesh;
        self.push("quotient_distortion", A_QUOT, dis, bound);
        Ok(())
    }

    fn vanishing(&mut self) -> Result<()> {
        let a1 = persistence_sequence(self.g).get(1);
        let step = self.g.total_length() / HYP_POINTS;
        match hyp_graph(self.g, step) {
            Ok((h, err)) => self.push("vr_vanishing", A_VANISH, a1, 4.0 * (h + err)),
            Err(e @ Error::TooLarge { .. }) => {
                self.rows.push(Row::skipped("vr_vanishing", A_VANISH, self.index, e.to_string()))
            }
            Err(e) => return Err(e),
        }
        Ok(())
    }

    fn coarse_net(&self) -> Result<Vec<GraphPoint>> {
        epsilon_net(self.g, self.g.total_length() / COARSE_POINTS)
    }

    fn trees(&mut self) -> Result<()> {
        let g = self.g;
        let net = self.coarse_net()?;
        let d = finite_metric(g, &net)?;
        let t = t_p_matrix(g, self.p, &net)?;
        let tree = build_merge_tree_with(g, self.p, &net)?;
        let n = net.len();
        let mut excess = 0.0f64;
        let mut lca = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                excess = excess.max(t.get(i, j) - d.get(i, j));
                lca = lca.max((tree.distance(net[i], net[j]) - t.get(i, j)).abs());
            }
        }
        self.push("tp_le_d", A_TP, excess, 0.0);
        self.push("merge_tree_lca", A_LCA, lca, 0.0);
        let step = n.div_ceil(FOUR_POINT_SAMPLE).max(1);
        let sample: Vec<usize> = (0..n).step_by(step).collect();
        self.push("tree_four_point", A_FOUR, hyperbolicity(&t.submatrix(&sample)), 0.0);
        Ok(())
    }

    fn extension(&mut self, mesh: f64, diam: f64) -> Result<()> {
        let seq = persistence_sequence(self.g);
        let eps = if seq.a.is_empty() { 0.5 * diam } else { 1.5 * seq.get(1) };
        let s = epsilon_smoothing(self.g, self.p, eps)?;
        let r = quotient_correspondence(self.g, &s, self.g.total_length() / COARSE_POINTS)?;
        let base = r.distortion();
        for radius in [mesh, diam / 4.0] {
            let ext: Correspondence = r.r_extension(radius)?;
            self.push("extension_distortion", A_EXT, ext.distortion(), base + 2.0 * radius);
        }
        Ok(())
    }

    fn delta(&mut self, mesh: f64) -> Result<()> {
        let beta = self.g.betti1();
        let reports = (0..=beta + 1)
            .map(|n| delta_n_bounds_with(self.g, n, self.p, mesh))
            .collect::<Result<Vec<_>>>()?;
        for r in &reports {
            self.push("delta_n_sandwich", A_DELTA, r.lower, r.upper);
        }
        for w in reports.windows(2) {
            self.push("delta_n_chain", A_CHAIN, w[1].lower, w[0].upper);
        }
        Ok(())
    }

    fn vr_vs_basis(&mut self) -> Result<()> {
        let g = self.g;
        let mut spacing = g.total_length() / VR_POINTS as f64;
        let mut net = epsilon_net(g, spacing)?;
        while net.len() > VR_POINTS {
            spacing *= 1.25;
            net = epsilon_net(g, spacing)?;
        }
        let sampled = vr_h1_barcode(&finite_metric(g, &net)?)?;
        let bars = minimal_cycle_basis(g)
            .into_iter()
            .map(|l| Bar { birth: 0.0, death: l / 3.0 })
            .collect();
        let exact = Barcode::new(1, bars)?;
        self.push("vr_vs_basis", A_VR, bottleneck_distance(&sampled, &exact)?, spacing);
        Ok(())
    }
}

/// A random simple edge walk starting at a random vertex, at least one edge
/// long when the graph has edges without self-loops.
fn random_simple_walk(g: &MetricGraph, rng: &mut ChaCha8Rng) -> Result<EdgePath> {
    let start = VertexId(rng.gen_range(0..g.vertex_count()));
    let mut visited = vec![false; g.vertex_count()];
    visited[start.0] = true;
    let mut at = start;
    let mut edges: Vec<EdgeId> = Vec::new();
    loop {
        let options: Vec<(EdgeId, VertexId)> =
            g.neighbors(at).iter().copied().filter(|&(_, w)| !visited[w.0]).collect();
        if options.is_empty() || (!edges.is_empty() && rng.gen_bool(0.2)) {
            break;
        }
        let (e, w) = options[rng.gen_range(0..options.len())];
        edges.push(e);
        visited[w.0] = true;
        at = w;
    }
    EdgePath::walk(g, start, &edges)
}
