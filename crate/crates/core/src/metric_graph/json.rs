//! Graph and point JSON:
//! `{"vertices":["a",...],"edges":[{"id":"e1","u":"a","v":"b","length":1.0},...]}`,
//! points as `{"vertex":"a"}` or `{"edge":"e1","offset":0.5}`.

use serde::{Deserialize, Serialize};

use super::{GraphPoint, MetricGraph};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub id: String,
    pub u: String,
    pub v: String,
    pub length: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphRecord {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeRecord>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PointRecord {
    Vertex { vertex: String },
    Edge { edge: String, offset: f64 },
}

impl GraphRecord {
    pub fn into_graph(self) -> Result<MetricGraph> {
        MetricGraph::new(
            self.vertices,
            self.edges.into_iter().map(|e| (e.id, e.u, e.v, e.length)).collect(),
        )
    }
}

impl MetricGraph {
    /// Serialisable form. Self-loops appear as their two halves.
    pub fn to_record(&self) -> GraphRecord {
        GraphRecord {
            vertices: self.vertex_names.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeRecord {
                    id: e.name.clone(),
                    u: self.vertex_names[e.u.0].clone(),
                    v: self.vertex_names[e.v.0].clone(),
                    length: e.length,
                })
                .collect(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str::<GraphRecord>(text)?.into_graph()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_record()).expect("graph serialises")
    }

    pub fn point_record(&self, p: GraphPoint) -> PointRecord {
        match p {
            GraphPoint::Vertex(v) => PointRecord::Vertex { vertex: self.vertex_name(v).to_owned() },
            GraphPoint::Edge { edge, offset } => {
                PointRecord::Edge { edge: self.edge(edge).name.clone(), offset }
            }
        }
    }

    pub fn resolve_point(&self, rec: &PointRecord) -> Result<GraphPoint> {
        match rec {
            PointRecord::Vertex { vertex } => self.vertex_point(vertex),
            PointRecord::Edge { edge, offset } => self.point_by_name(edge, *offset),
        }
    }

    pub fn parse_point(&self, text: &str) -> Result<GraphPoint> {
        let rec: PointRecord = serde_json::from_str(text)
            .map_err(|e| Error::InvalidPoint(format!("{text}: {e}")))?;
        self.resolve_point(&rec)
    }
}
