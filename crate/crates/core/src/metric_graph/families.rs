//! Small named graph families used in tests, benches and the CLI.

use super::{GraphBuilder, MetricGraph};

/// Path `v0 - v1 - ... - vk` with edges `e1..ek` of the given lengths.
pub fn path(lengths: &[f64]) -> MetricGraph {
    let mut b = GraphBuilder::new().vertex("v0");
    for (i, &len) in lengths.iter().enumerate() {
        b = b
            .vertex(format!("v{}", i + 1))
            .edge(format!("e{}", i + 1), format!("v{i}"), format!("v{}", i + 1), len);
    }
    b.build().expect("path graph is valid")
}

/// Cycle on `n ≥ 2` vertices `c0..c{n-1}` with equal edges summing to `circumference`.
pub fn cycle(n: usize, circumference: f64) -> MetricGraph {
    assert!(n >= 2, "cycle needs at least two vertices");
    let len = circumference / n as f64;
    let mut b = GraphBuilder::new();
    for i in 0..n {
        b = b.vertex(format!("c{i}"));
    }
    for i in 0..n {
        b = b.edge(format!("e{i}"), format!("c{i}"), format!("c{}", (i + 1) % n), len);
    }
    b.build().expect("cycle graph is valid")
}

/// Two vertices `u`, `v` joined by parallel edges `e1, e2, ...`.
pub fn theta(lengths: &[f64]) -> MetricGraph {
    let mut b = GraphBuilder::new().vertex("u").vertex("v");
    for (i, &len) in lengths.iter().enumerate() {
        b = b.edge(format!("e{}", i + 1), "u", "v", len);
    }
    b.build().expect("theta graph is valid")
}

/// Star with centre `o` and leaves `l1..lk`.
pub fn star(lengths: &[f64]) -> MetricGraph {
    let mut b = GraphBuilder::new().vertex("o");
    for (i, &len) in lengths.iter().enumerate() {
        b = b
            .vertex(format!("l{}", i + 1))
            .edge(format!("e{}", i + 1), "o", format!("l{}", i + 1), len);
    }
    b.build().expect("star graph is valid")
}

/// Single vertex, no edges.
pub fn point() -> MetricGraph {
    GraphBuilder::new().vertex("o").build().expect("point graph is valid")
}
