use std::fs;
use std::path::Path;

use crate::error::Result;
use crate::metric_graph::MetricGraph;

pub fn load_graph(path: impl AsRef<Path>) -> Result<MetricGraph> {
    MetricGraph::from_json(&fs::read_to_string(path)?)
}

pub fn save_graph(g: &MetricGraph, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, g.to_json() + "\n")?;
    Ok(())
}
