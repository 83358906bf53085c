//! Small worked instances for every module, with hand-derived or oracle values.

use approx::assert_abs_diff_eq;
use graphapx::gh::{
    brute_force_dgh, delta_n_bounds_with, dgh_lower, dghl_bounds, distortion, hyp_graph, hyperbolicity,
    Correspondence,
};
use graphapx::gromov_tree::{
    bottleneck_m, build_merge_tree, gromov_product_graph, t_p, tree_distortion,
};
use graphapx::metric_graph::families::{cycle, path, star, theta};
use graphapx::metric_graph::{
    epsilon_net, f_values, f_variation, finite_metric, monotone_decomposition, monotone_subdivision, simplify_path,
    EdgePath, GraphBuilder, Piece,
};
use graphapx::persistence::{
    bottleneck_distance, minimal_cycle_basis, persistence_sequence, seq_distance, vr_h1_barcode, Bar, Barcode,
    PersistenceSequence,
};
use graphapx::reeb::{betti_after_smoothing, epsilon_smoothing, quotient_correspondence, smoothed_distance};
use graphapx::{DistanceMatrix, EdgeId, GraphPoint, MetricGraph, VertexId};

const TOL: f64 = 1e-9;

fn v(g: &MetricGraph, name: &str) -> GraphPoint {
    g.vertex_point(name).unwrap()
}

fn c12() -> MetricGraph {
    cycle(12, 12.0)
}

fn bars(v: &[(f64, f64)]) -> Barcode {
    Barcode::new(1, v.iter().map(|&(birth, death)| Bar { birth, death }).collect()).unwrap()
}

mod metric_graph {
    use super::*;

    #[test]
    fn distances() {
        let g = path(&[3.0]);
        let mid = g.point_by_name("e1", 1.5).unwrap();
        assert_abs_diff_eq!(g.distance(v(&g, "v0"), mid).unwrap(), 1.5, epsilon = TOL);
        assert_eq!(g.distance(mid, mid).unwrap(), 0.0);
        let t = theta(&[1.0, 2.0, 3.0]);
        assert_abs_diff_eq!(t.distance(v(&t, "u"), v(&t, "v")).unwrap(), 1.0, epsilon = TOL);
    }

    #[test]
    fn basepoint_distances() {
        let t = theta(&[1.0, 2.0, 3.0]);
        assert_eq!(f_values(&t, v(&t, "u")).unwrap(), vec![0.0, 1.0]);
        let p = path(&[5.0]);
        assert_eq!(f_values(&p, v(&p, "v0")).unwrap(), vec![0.0, 5.0]);
        let c = c12();
        assert_abs_diff_eq!(c.distance(v(&c, "c0"), v(&c, "c6")).unwrap(), 6.0, epsilon = TOL);
    }

    #[test]
    fn subdivision_at_turning_points() {
        // f(u) = 2, f(v) = 3 on an edge of length 5: the peak sits 3 from u at level 5
        let g = GraphBuilder::new()
            .vertex("p")
            .vertex("u")
            .vertex("v")
            .edge("a", "p", "u", 2.0)
            .edge("b", "p", "v", 3.0)
            .edge("uv", "u", "v", 5.0)
            .build()
            .unwrap();
        let lg = monotone_subdivision(&g, v(&g, "p")).unwrap();
        let new: Vec<_> = lg.refinement.hosts.iter().enumerate().filter_map(|(i, h)| h.map(|h| (h, lg.level[i]))).collect();
        assert_eq!(new.len(), 1);
        let ((e, off), level) = new[0];
        assert_eq!(g.edge(e).name, "uv");
        assert_abs_diff_eq!(off, 3.0, epsilon = TOL);
        assert_abs_diff_eq!(level, 5.0, epsilon = TOL);

        let mono = path(&[5.0]);
        assert!(monotone_subdivision(&mono, v(&mono, "v0")).unwrap().refinement.hosts.iter().all(Option::is_none));

        let t = theta(&[1.0, 2.0, 3.0]);
        let lg = monotone_subdivision(&t, v(&t, "u")).unwrap();
        let mut cuts: Vec<(String, f64, f64)> = lg
            .refinement
            .hosts
            .iter()
            .enumerate()
            .filter_map(|(i, h)| h.map(|(e, off)| (t.edge(e).name.clone(), off, lg.level[i])))
            .collect();
        cuts.sort_by(|a, b| a.0.cmp(&b.0));
        assert_eq!(cuts, vec![("e2".into(), 1.5, 1.5), ("e3".into(), 2.0, 2.0)]);
        assert!(lg.monotonicity_defect() <= TOL);
    }

    #[test]
    fn simplification() {
        let g = path(&[1.0]);
        let back = EdgePath::walk(&g, VertexId(0), &[EdgeId(0), EdgeId(0), EdgeId(0)]).unwrap();
        let s = simplify_path(&g, &back);
        assert_eq!(s, EdgePath::walk(&g, VertexId(0), &[EdgeId(0)]).unwrap());
        assert_eq!(simplify_path(&g, &s), s);

        let c = cycle(3, 3.0);
        let lp = EdgePath::walk(&c, VertexId(0), &[EdgeId(0), EdgeId(1), EdgeId(2)]).unwrap();
        assert!(simplify_path(&c, &lp).is_constant());
    }

    #[test]
    fn decompositions_and_variation() {
        let g = path(&[5.0]);
        let p = v(&g, "v0");
        let full = EdgePath::walk(&g, VertexId(0), &[EdgeId(0)]).unwrap();
        assert_eq!(monotone_decomposition(&g, p, &full).unwrap().len(), 1);
        assert_abs_diff_eq!(f_variation(&g, p, &full).unwrap(), 5.0, epsilon = TOL);
        assert_eq!(f_variation(&g, p, &EdgePath::constant(p)).unwrap(), 0.0);

        // over the top of a circle: up to the antipode, then down
        let c = c12();
        let arc = EdgePath::walk(&c, VertexId(3), &[EdgeId(3), EdgeId(4), EdgeId(5), EdgeId(6), EdgeId(7), EdgeId(8)]).unwrap();
        assert_eq!(monotone_decomposition(&c, v(&c, "c0"), &arc).unwrap().len(), 2);

        let t = theta(&[1.0, 2.0, 3.0]);
        let open = EdgePath::new(
            &t,
            v(&t, "v"),
            vec![Piece { edge: EdgeId(1), from: 2.0, to: 0.0 }, Piece { edge: EdgeId(2), from: 0.0, to: 2.5 }],
        )
        .unwrap();
        let segs = monotone_decomposition(&t, v(&t, "u"), &open).unwrap();
        assert_eq!(segs.len(), 4);
        assert!(segs.len() <= 2 * t.betti1() + 2);
        assert_abs_diff_eq!(f_variation(&t, v(&t, "u"), &open).unwrap(), 4.5, epsilon = TOL);
        assert_abs_diff_eq!(open.length(), 4.5, epsilon = TOL);
    }

    #[test]
    fn nets() {
        let g = path(&[1.0]);
        assert_eq!(epsilon_net(&g, 1.0).unwrap().len(), 2);
        let net = epsilon_net(&g, 0.4).unwrap();
        let mut offs: Vec<f64> = net.iter().map(|&p| g.distance(v(&g, "v0"), p).unwrap()).collect();
        offs.sort_by(f64::total_cmp);
        assert_eq!(offs.len(), 4);
        assert_abs_diff_eq!(offs[1], 1.0 / 3.0, epsilon = TOL);
        assert_abs_diff_eq!(offs[2], 2.0 / 3.0, epsilon = TOL);

        let c = c12();
        let net = epsilon_net(&c, 0.5).unwrap();
        assert!(net.len() >= 24);
        for k in 0..1200 {
            let x = c.point_on_edge(EdgeId(k / 100), (k % 100) as f64 / 100.0).unwrap();
            let near = net.iter().map(|&y| c.distance(x, y).unwrap()).fold(f64::INFINITY, f64::min);
            assert!(near <= 0.5 + TOL);
        }
    }

    #[test]
    fn finite_metrics() {
        let g = path(&[3.0]);
        let d = finite_metric(&g, &[v(&g, "v0"), v(&g, "v1")]).unwrap();
        assert_eq!(d.to_rows(), vec![vec![0.0, 3.0], vec![3.0, 0.0]]);

        let c = c12();
        let pts: Vec<GraphPoint> = [0, 3, 6, 9].iter().map(|i| v(&c, &format!("c{i}"))).collect();
        let d = finite_metric(&c, &pts).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                if i != j {
                    assert!([3.0, 6.0].contains(&d.get(i, j)));
                }
            }
        }
        let dup = finite_metric(&c, &[pts[0], pts[1], pts[1]]).unwrap();
        assert_eq!(dup.get(1, 2), 0.0);
        assert_eq!(dup.row(1), dup.row(2));
    }
}

mod persistence {
    use super::*;

    #[test]
    fn vr_barcodes() {
        let tri = DistanceMatrix::from_fn(3, |_, _| 1.0);
        assert!(vr_h1_barcode(&tri).unwrap().is_empty());
        let c4 = DistanceMatrix::from_fn(4, |i, j| if (j - i) % 2 == 1 { 1.0 } else { 2.0 });
        assert_eq!(vr_h1_barcode(&c4).unwrap(), bars(&[(1.0, 2.0)]));
    }

    #[test]
    fn cycle_bases_and_sequences() {
        assert!(minimal_cycle_basis(&star(&[1.0, 2.0, 3.0])).is_empty());
        assert_eq!(minimal_cycle_basis(&theta(&[1.0, 2.0, 3.0])), vec![3.0, 4.0]);
        assert_eq!(minimal_cycle_basis(&c12()), vec![12.0]);
        assert_eq!(persistence_sequence(&star(&[1.0, 2.0])), PersistenceSequence::zero());
        assert_eq!(persistence_sequence(&c12()).a, vec![4.0]);
        assert_eq!(persistence_sequence(&theta(&[1.0, 2.0, 3.0])).a, vec![4.0 / 3.0, 1.0]);
    }

    #[test]
    fn bottleneck_values() {
        let b = bars(&[(0.0, 4.0), (1.0, 1.5)]);
        assert_eq!(bottleneck_distance(&b, &b).unwrap(), 0.0);
        assert_eq!(bottleneck_distance(&bars(&[(0.0, 4.0)]), &Barcode::empty(1)).unwrap(), 2.0);
        assert_eq!(bottleneck_distance(&bars(&[(0.0, 4.0)]), &bars(&[(0.0, 3.0)])).unwrap(), 1.0);
    }

    #[test]
    fn sequence_distances() {
        let four = PersistenceSequence::new(vec![4.0]);
        assert_eq!(seq_distance(&four, &four), 0.0);
        assert_eq!(seq_distance(&four, &PersistenceSequence::zero()), 4.0);
        let th = PersistenceSequence::new(vec![4.0 / 3.0, 1.0]);
        assert_abs_diff_eq!(seq_distance(&th, &four), 8.0 / 3.0, epsilon = TOL);
    }
}

mod reeb {
    use super::*;

    #[test]
    fn zero_smoothing_is_isometric() {
        for g in [theta(&[1.0, 2.0, 3.0]), c12(), star(&[1.0, 0.5]), path(&[2.0, 1.0])] {
            let p = GraphPoint::Vertex(VertexId(0));
            let s = epsilon_smoothing(&g, p, 0.0).unwrap();
            assert_eq!(s.betti1(), g.betti1());
            let q: Vec<_> = g.vertices().map(|x| s.quotient(GraphPoint::Vertex(x)).unwrap()).collect();
            for a in g.vertices() {
                for b in g.vertices() {
                    let dg = g.distance(GraphPoint::Vertex(a), GraphPoint::Vertex(b)).unwrap();
                    assert_abs_diff_eq!(smoothed_distance(&s, q[a.0], q[b.0]).unwrap(), dg, epsilon = TOL);
                }
            }
        }
    }

    #[test]
    fn circle_smoothings() {
        let g = c12();
        let p = v(&g, "c0");
        for eps in [0.5, 1.0, 2.0, 3.0, 5.0] {
            let s = epsilon_smoothing(&g, p, eps).unwrap();
            assert_eq!(s.betti1(), 1);
            let cyc = minimal_cycle_basis(&s.graph);
            assert_abs_diff_eq!(cyc[0], 2.0 * (6.0 - eps), epsilon = 1e-6);
            assert!(s.monotonicity_defect() <= TOL);
        }
        for eps in [6.0, 7.5] {
            assert_eq!(betti_after_smoothing(&g, p, eps).unwrap(), 0);
        }
        assert_eq!(betti_after_smoothing(&g, p, 5.9).unwrap(), 1);
        let t = theta(&[1.0, 2.0, 3.0]);
        assert_eq!(betti_after_smoothing(&t, v(&t, "u"), 2.0).unwrap(), 0);
    }

    #[test]
    fn levels_are_distances_from_the_base() {
        let g = theta(&[1.0, 2.0, 3.0]);
        let s = epsilon_smoothing(&g, v(&g, "u"), 0.7).unwrap();
        let base = GraphPoint::Vertex(s.base);
        for x in s.graph.vertices() {
            assert_abs_diff_eq!(s.graph.distance(base, GraphPoint::Vertex(x)).unwrap(), s.level[x.0], epsilon = TOL);
        }
    }

    #[test]
    fn trees_at_zero() {
        let g = star(&[1.0, 2.0, 0.5]);
        let s = epsilon_smoothing(&g, v(&g, "l2"), 0.0).unwrap();
        let d = finite_metric(&g, &g.vertices().map(GraphPoint::Vertex).collect::<Vec<_>>()).unwrap();
        let q: Vec<_> = g.vertices().map(|x| s.quotient(GraphPoint::Vertex(x)).unwrap()).collect();
        assert!(finite_metric(&s.graph, &q).unwrap().sup_distance(&d) <= TOL);
    }

    #[test]
    fn opposite_branches_at_level_five() {
        let g = c12();
        let s = epsilon_smoothing(&g, v(&g, "c0"), 2.0).unwrap();
        let (a, b) = (s.quotient(v(&g, "c5")).unwrap(), s.quotient(v(&g, "c7")).unwrap());
        assert_abs_diff_eq!(smoothed_distance(&s, a, b).unwrap(), 2.0, epsilon = TOL);
    }

    #[test]
    fn quotient_correspondences() {
        let g = c12();
        let p = v(&g, "c0");
        let s0 = epsilon_smoothing(&g, p, 0.0).unwrap();
        assert!(quotient_correspondence(&g, &s0, 0.25).unwrap().distortion() <= 2.0 * 0.25 + TOL);
        let s1 = epsilon_smoothing(&g, p, 1.0).unwrap();
        let dis = quotient_correspondence(&g, &s1, 0.25).unwrap().distortion();
        assert!(dis <= 2.0 * 7.0 * 1.0 + 4.0 * 0.25);

        let e = path(&[2.0]);
        for eps in [0.3, 1.0, 4.0] {
            let s = epsilon_smoothing(&e, v(&e, "v0"), eps).unwrap();
            assert!(quotient_correspondence(&e, &s, 0.1).unwrap().distortion() <= 2.0 * eps + 0.4 + TOL);
        }
    }
}

mod gromov_tree {
    use super::*;

    #[test]
    fn products_and_bottlenecks() {
        let t = theta(&[1.0, 2.0, 3.0]);
        let (u, vv) = (v(&t, "u"), v(&t, "v"));
        let w = t.point_by_name("e3", 2.0).unwrap();
        assert_abs_diff_eq!(gromov_product_graph(&t, u, vv, w).unwrap(), 1.0, epsilon = TOL);
        assert_abs_diff_eq!(gromov_product_graph(&t, u, w, w).unwrap(), 2.0, epsilon = TOL);
        assert_eq!(gromov_product_graph(&t, u, w, u).unwrap(), 0.0);
        assert_abs_diff_eq!(bottleneck_m(&t, u, w, w).unwrap(), 2.0, epsilon = TOL);

        let c = c12();
        let p = v(&c, "c0");
        let (x, y) = (v(&c, "c3"), v(&c, "c9"));
        assert_abs_diff_eq!(bottleneck_m(&c, p, x, y).unwrap(), 3.0, epsilon = TOL);
        assert_abs_diff_eq!(t_p(&c, p, x, y).unwrap(), 0.0, epsilon = TOL);
        assert_abs_diff_eq!(t_p(&c, p, x, p).unwrap(), 3.0, epsilon = TOL);

        let s = star(&[1.0, 2.0, 3.0]);
        let q = s.point_by_name("e2", 1.0).unwrap();
        let (a, b) = (v(&s, "l1"), v(&s, "l3"));
        assert_abs_diff_eq!(bottleneck_m(&s, q, a, b).unwrap(), 1.0, epsilon = TOL);
        assert_abs_diff_eq!(t_p(&s, q, a, b).unwrap(), s.distance(a, b).unwrap(), epsilon = TOL);
    }

    #[test]
    fn merge_trees() {
        let pg = path(&[1.0, 2.0, 0.5]);
        let t = build_merge_tree(&pg, v(&pg, "v0")).unwrap();
        assert_eq!(t.leaves().len(), 1);
        assert_abs_diff_eq!(t.total_length(), 3.5, epsilon = TOL);

        let c = build_merge_tree(&c12(), GraphPoint::Vertex(VertexId(0))).unwrap();
        assert_eq!(c.nodes().len(), 2);
        assert_eq!(c.nodes()[c.root()].level, 0.0);
        assert_abs_diff_eq!(c.total_length(), 6.0, epsilon = TOL);

        let th = theta(&[1.0, 2.0, 3.0]);
        let t = build_merge_tree(&th, v(&th, "u")).unwrap();
        let mut levels: Vec<f64> = t.nodes().iter().map(|n| n.level).collect();
        levels.sort_by(f64::total_cmp);
        assert_eq!(levels, vec![0.0, 1.0, 1.5, 2.0]);
        assert_eq!(t.leaves().len(), 2);
    }

    #[test]
    fn distortions() {
        let s = star(&[1.0, 2.0]);
        assert!(tree_distortion(&s, v(&s, "o"), 0.1).unwrap().value <= TOL);
        let c = c12();
        let mesh = 0.1;
        let d = tree_distortion(&c, v(&c, "c0"), mesh).unwrap();
        assert!((d.value - 6.0).abs() <= 2.0 * mesh);
        let t = theta(&[1.0, 2.0, 3.0]);
        let dt = tree_distortion(&t, v(&t, "u"), 0.05).unwrap();
        let (h, _) = hyp_graph(&t, 0.05).unwrap();
        assert!(dt.value > 0.0);
        assert!(dt.value <= 2.0 * 12f64.log2() * h);
    }
}

mod gh_bounds {
    use super::*;

    fn two(d: f64) -> DistanceMatrix {
        DistanceMatrix::from_fn(2, |_, _| d)
    }

    fn pt() -> DistanceMatrix {
        DistanceMatrix::from_fn(1, |_, _| 0.0)
    }

    #[test]
    fn correspondence_distortions() {
        assert_eq!(distortion(&Correspondence::identity(two(4.0))), 0.0);
        assert_eq!(Correspondence::complete(pt(), two(3.0)).distortion(), 3.0);
        let bij = Correspondence::new(two(1.0), two(2.0), vec![(0, 0), (1, 1)]).unwrap();
        assert_eq!(bij.distortion(), 1.0);
    }

    #[test]
    fn extensions() {
        let x = DistanceMatrix::from_fn(4, |i, j| (j - i) as f64);
        let y = DistanceMatrix::from_fn(4, |i, j| 1.5 * (j - i) as f64);
        let r = Correspondence::new(x.clone(), y.clone(), vec![(0, 0), (1, 2), (2, 1), (3, 3)]).unwrap();
        assert_eq!(r.r_extension(0.0).unwrap(), r);
        let all = r.r_extension(x.diameter() + y.diameter()).unwrap();
        assert_eq!(all, Correspondence::complete(x, y));
        let ext = r.r_extension(0.5).unwrap();
        assert!(ext.distortion() - r.distortion() <= 1.0 + TOL);
    }

    #[test]
    fn exact_small_gh() {
        let x = DistanceMatrix::from_fn(3, |i, j| [[0.0, 1.0, 2.0], [0.0, 0.0, 1.5], [0.0; 3]][i][j]);
        assert_eq!(brute_force_dgh(&x, &x).unwrap(), 0.0);
        assert_eq!(brute_force_dgh(&pt(), &x).unwrap(), 1.0);
        assert_eq!(brute_force_dgh(&two(1.0), &two(2.0)).unwrap(), 0.5);
    }

    #[test]
    fn hyperbolicity_values() {
        assert_eq!(hyperbolicity(&DistanceMatrix::from_fn(3, |_, _| 1.0)), 0.0);
        let c = c12();
        let pts: Vec<_> = [0, 3, 6, 9].iter().map(|i| v(&c, &format!("c{i}"))).collect();
        assert_abs_diff_eq!(hyperbolicity(&finite_metric(&c, &pts).unwrap()), 3.0, epsilon = TOL);
        let s = star(&[1.0, 2.0, 3.0]);
        let (h, err) = hyp_graph(&s, 0.25).unwrap();
        assert!(h.abs() <= TOL);
        assert_eq!(err, 1.0);
        let (h, err) = hyp_graph(&c, 0.1).unwrap();
        assert!((2.9..=3.1).contains(&h));
        assert_abs_diff_eq!(err, 0.4, epsilon = TOL);
    }

    #[test]
    fn gh_lower_bounds() {
        let c = c12();
        assert_eq!(dgh_lower(&c, &c, 0.5).unwrap(), 0.0);
        assert!(dgh_lower(&c, &path(&[2.0, 1.0]), 0.5).unwrap() >= 1.0 - TOL);
        assert!(dgh_lower(&c, &cycle(6, 6.0), 0.25).unwrap() >= 1.5 - TOL);
    }

    #[test]
    fn delta_n() {
        let t = theta(&[1.0, 2.0, 3.0]);
        let r = delta_n_bounds_with(&t, 2, v(&t, "u"), 0.1).unwrap();
        assert_eq!((r.lower, r.upper), (0.0, 0.0));

        let c = c12();
        let r = delta_n_bounds_with(&c, 0, v(&c, "c0"), 0.1).unwrap();
        assert_abs_diff_eq!(r.lower, 1.0, epsilon = TOL);
        assert!(r.certificate("formula").unwrap().value <= 48.0);
        assert!(r.certificate("tree").unwrap().value <= 3.0 + TOL);

        let r = delta_n_bounds_with(&t, 1, v(&t, "u"), 0.05).unwrap();
        assert_abs_diff_eq!(r.lower, 0.25, epsilon = TOL);
        assert!(r.upper <= 18.0);
        assert!(r.certificate("smoothing").unwrap().bound() < 18.0);
        assert!(r.is_consistent());
    }

    /// Position along a cycle built by `families::cycle`.
    fn arc(g: &MetricGraph, p: GraphPoint) -> f64 {
        let len = g.edge(EdgeId(0)).length;
        match p {
            GraphPoint::Vertex(x) => x.0 as f64 * len,
            GraphPoint::Edge { edge, offset } => edge.0 as f64 * len + offset,
        }
    }

    #[test]
    fn path_gh_sandwich() {
        let c = c12();
        let r = Correspondence::identity(finite_metric(&c, &epsilon_net(&c, 0.5).unwrap()).unwrap());
        let rep = dghl_bounds(&c, &c, &r, 0.5).unwrap();
        assert_eq!(rep.lower, 0.0);
        assert_abs_diff_eq!(rep.upper, 1.0, epsilon = TOL);

        // radial matching of C12 and C6: equal angles paired
        let h = cycle(6, 6.0);
        let xs = epsilon_net(&c, 0.5).unwrap();
        let ys = epsilon_net(&h, 0.25).unwrap();
        let mut pairs = Vec::new();
        for (i, &x) in xs.iter().enumerate() {
            for (j, &y) in ys.iter().enumerate() {
                if (arc(&c, x) / 12.0 - arc(&h, y) / 6.0).abs() <= TOL {
                    pairs.push((i, j));
                }
            }
        }
        let r = Correspondence::new(finite_metric(&c, &xs).unwrap(), finite_metric(&h, &ys).unwrap(), pairs).unwrap();
        assert_abs_diff_eq!(r.distortion(), 3.0, epsilon = TOL);
        let rep = dghl_bounds(&c, &h, &r, 0.5).unwrap();
        assert!(rep.upper <= 3.0 + 1.0 + TOL);
        assert!(rep.is_consistent());
    }
}
