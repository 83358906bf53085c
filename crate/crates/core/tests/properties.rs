use graphapx::gh::{brute_force_dgh, hyperbolicity, hyperbolicity_with, Correspondence};
use graphapx::gromov_tree::{bottleneck_m, t_p_matrix};
use graphapx::harness::{format_sig, random_basepoint, random_graph, EnsembleSpec};
use graphapx::metric_graph::{epsilon_net, finite_metric, finite_metric_with};
use graphapx::persistence::{bottleneck_distance, persistence_sequence, vr_h1_barcode, vr_h1_barcode_with, Bar, Barcode};
use graphapx::reeb::epsilon_smoothing;
use graphapx::{DistanceMatrix, EdgeId, Execution, GraphPoint, MetricGraph};
use proptest::prelude::*;

const TOL: f64 = 1e-9;

fn graph(seed: u64, index: usize, betti: (usize, usize)) -> (MetricGraph, GraphPoint) {
    let spec = EnsembleSpec { seed, betti, vertices: (2, 7), ..Default::default() };
    let g = random_graph(&spec, index).unwrap();
    let p = random_basepoint(&spec, index, &g);
    (g, p)
}

fn point_on(g: &MetricGraph, e: usize, t: f64) -> GraphPoint {
    let e = EdgeId(e % g.edge_count());
    g.point_on_edge(e, t * g.edge(e).length).unwrap()
}

fn space() -> impl Strategy<Value = DistanceMatrix> {
    (1usize..=5)
        .prop_flat_map(|n| prop::collection::vec((0.0f64..1.0, 0.0f64..1.0), n))
        .prop_map(|pts| {
            DistanceMatrix::from_fn(pts.len(), |i, j| {
                ((pts[i].0 - pts[j].0).powi(2) + (pts[i].1 - pts[j].1).powi(2)).sqrt()
            })
        })
}

fn barcode() -> impl Strategy<Value = Barcode> {
    prop::collection::vec((0.0f64..3.0, 0.01f64..2.0), 0..5)
        .prop_map(|v| Barcode::new(1, v.into_iter().map(|(b, l)| Bar { birth: b, death: b + l }).collect()).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn graph_distance_is_a_metric(seed in 0u64..1000, i in 0usize..50, e in 0usize..20,
                                  t in prop::array::uniform3(0.0f64..1.0)) {
        let (g, _) = graph(seed, i, (0, 4));
        let [x, y, z] = [0, 1, 2].map(|k| point_on(&g, e + 3 * k, t[k]));
        let (dxy, dyz, dxz) = (g.distance(x, y).unwrap(), g.distance(y, z).unwrap(), g.distance(x, z).unwrap());
        prop_assert!(dxz <= dxy + dyz + TOL);
        prop_assert!((dxy - g.distance(y, x).unwrap()).abs() <= TOL);
        prop_assert!(g.distance(x, x).unwrap() <= TOL);
        prop_assert!(dxy <= g.diameter() + TOL);
    }

    #[test]
    fn graph_json_round_trip(seed in 0u64..1000, i in 0usize..50) {
        let (g, _) = graph(seed, i, (0, 4));
        prop_assert_eq!(MetricGraph::from_json(&g.to_json()).unwrap(), g);
    }

    #[test]
    fn bottleneck_is_a_pseudometric(a in barcode(), b in barcode(), c in barcode()) {
        let ab = bottleneck_distance(&a, &b).unwrap();
        prop_assert!(bottleneck_distance(&a, &a).unwrap() <= TOL);
        prop_assert!((ab - bottleneck_distance(&b, &a).unwrap()).abs() <= TOL);
        let ac = bottleneck_distance(&a, &c).unwrap();
        let bc = bottleneck_distance(&b, &c).unwrap();
        prop_assert!(ac <= ab + bc + TOL);
    }

    #[test]
    fn extension_distortion(x in space(), y in space(), raw in prop::collection::vec((0usize..5, 0usize..5), 0..8),
                            r in 0.0f64..0.6) {
        let (n, m) = (x.len(), y.len());
        let mut pairs: Vec<(usize, usize)> = raw.into_iter().map(|(i, j)| (i % n, j % m)).collect();
        pairs.extend((0..n).map(|i| (i, i % m)));
        pairs.extend((0..m).map(|j| (j % n, j)));
        let rel = Correspondence::new(x, y, pairs).unwrap();
        let ext = rel.r_extension(r).unwrap();
        prop_assert!(ext.distortion() <= rel.distortion() + 2.0 * r + TOL);
        prop_assert!(rel.pairs().iter().all(|&(i, j)| ext.contains(i, j)));
        prop_assert!(brute_force_dgh(rel.left(), rel.right()).unwrap() <= rel.distortion() / 2.0 + TOL);
    }

    #[test]
    fn gh_pseudometric_and_stability(x in space(), y in space(), z in space()) {
        let dxy = brute_force_dgh(&x, &y).unwrap();
        prop_assert!((dxy - brute_force_dgh(&y, &x).unwrap()).abs() <= TOL);
        prop_assert!(brute_force_dgh(&x, &z).unwrap() <= dxy + brute_force_dgh(&y, &z).unwrap() + TOL);
        prop_assert!((x.diameter() - y.diameter()).abs() / 2.0 <= dxy + TOL);
        prop_assert!((hyperbolicity(&x) - hyperbolicity(&y)).abs() <= 4.0 * dxy + TOL);
        let db = bottleneck_distance(&vr_h1_barcode(&x).unwrap(), &vr_h1_barcode(&y).unwrap()).unwrap();
        prop_assert!(db <= 2.0 * dxy + TOL);
    }

    #[test]
    fn bottleneck_value_chains(seed in 0u64..1000, i in 0usize..50, e in 0usize..20,
                               t in prop::array::uniform3(0.0f64..1.0)) {
        let (g, p) = graph(seed, i, (0, 4));
        let [x, y, z] = [0, 1, 2].map(|k| point_on(&g, e + 5 * k, t[k]));
        let m = |a, b| bottleneck_m(&g, p, a, b).unwrap();
        // max-min paths concatenate
        prop_assert!(m(x, z) + TOL >= m(x, y).min(m(y, z)));
        prop_assert!(m(x, y) <= g.distance(p, x).unwrap().min(g.distance(p, y).unwrap()) + TOL);
    }

    #[test]
    fn tp_is_an_ultrametric_free_tree_metric(seed in 0u64..1000, i in 0usize..50) {
        let (g, p) = graph(seed, i, (0, 4));
        let net = epsilon_net(&g, g.total_length() / 15.0).unwrap();
        let t = t_p_matrix(&g, p, &net).unwrap();
        let d = finite_metric(&g, &net).unwrap();
        prop_assert!(hyperbolicity(&t) <= TOL);
        prop_assert!(t.max_triangle_violation() <= TOL);
        let n = net.len();
        for a in 0..n {
            for b in 0..n {
                prop_assert!(t.get(a, b) <= d.get(a, b) + TOL);
            }
        }
    }

    #[test]
    fn trees_have_tp_equal_d(seed in 0u64..1000, i in 0usize..50) {
        let (g, p) = graph(seed, i, (0, 0));
        let net = epsilon_net(&g, g.total_length() / 15.0).unwrap();
        let t = t_p_matrix(&g, p, &net).unwrap();
        prop_assert!(t.sup_distance(&finite_metric(&g, &net).unwrap()) <= TOL);
    }

    #[test]
    fn smoothing_lowers_betti_and_sequence(seed in 0u64..1000, i in 0usize..50, e1 in 0.0f64..3.0, de in 0.0f64..3.0) {
        let (g, p) = graph(seed, i, (0, 4));
        let s1 = epsilon_smoothing(&g, p, e1).unwrap();
        let s2 = epsilon_smoothing(&g, p, e1 + de).unwrap();
        prop_assert!(s1.betti1() <= g.betti1());
        prop_assert!(s2.betti1() <= s1.betti1());
        prop_assert!(s1.monotonicity_defect() <= TOL);
        let (a, b) = (persistence_sequence(&g), persistence_sequence(&s1.graph));
        for n in 1..=b.support() {
            prop_assert!(b.get(n) <= a.get(n) + TOL);
        }
    }

    #[test]
    fn execution_modes_agree(seed in 0u64..1000, i in 0usize..50) {
        let (g, _) = graph(seed, i, (0, 4));
        let net = epsilon_net(&g, g.total_length() / 25.0).unwrap();
        let d = finite_metric_with(&g, &net, Execution::Parallel).unwrap();
        prop_assert_eq!(&d, &finite_metric_with(&g, &net, Execution::Sequential).unwrap());
        prop_assert_eq!(hyperbolicity_with(&d, Execution::Parallel), hyperbolicity_with(&d, Execution::Sequential));
        prop_assert_eq!(
            vr_h1_barcode_with(&d, Execution::Parallel).unwrap(),
            vr_h1_barcode_with(&d, Execution::Sequential).unwrap()
        );
    }

    #[test]
    fn sig_format_round_trips(x in prop::num::f64::NORMAL) {
        let y: f64 = format_sig(x).parse().unwrap();
        prop_assert!((x - y).abs() <= 1e-11 * x.abs());
        prop_assert_eq!(format_sig(x), format_sig(y));
    }
}
