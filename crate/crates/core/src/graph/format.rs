use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{Graph, GraphError};

/// Wire form of a graph: `{"n": .., "edges": [[u, v], ..], "names": [..]}`
/// with every edge stored once as `u < v`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
}

impl TryFrom<GraphJson> for Graph {
    type Error = GraphError;

    fn try_from(raw: GraphJson) -> Result<Self, Self::Error> {
        for (index, &[u, v]) in raw.edges.iter().enumerate() {
            if u == v {
                return Err(GraphError::SelfLoop { index, u, v });
            }
            if u > v && u < raw.n {
                return Err(GraphError::NonCanonicalEdge { index, u, v });
            }
        }
        let g = Graph::from_edges(raw.n, raw.edges.iter().map(|&[u, v]| (u, v)))?;
        match raw.names {
            Some(names) => g.with_names(names),
            None => Ok(g),
        }
    }
}

impl From<Graph> for GraphJson {
    fn from(g: Graph) -> Self {
        GraphJson {
            n: g.order(),
            edges: g.edges().map(|(u, v)| [u, v]).collect(),
            names: g.names,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFormat {
    Json,
    Dot,
}

pub fn parse_graph(bytes: &[u8]) -> Result<Graph, GraphError> {
    let raw: GraphJson =
        serde_json::from_slice(bytes).map_err(|e| GraphError::Malformed(e.to_string()))?;
    Graph::try_from(raw)
}

pub fn emit_graph(g: &Graph, format: GraphFormat) -> String {
    match format {
        GraphFormat::Json => {
            serde_json::to_string(&GraphJson::from(g.clone())).expect("graph JSON is serializable")
        }
        GraphFormat::Dot => emit_dot(g),
    }
}

fn emit_dot(g: &Graph) -> String {
    let mut out = String::from("graph G {\n");
    for v in g.vertices() {
        match g.names() {
            Some(names) => writeln!(out, "  {v} [label={:?}];", names[v]).unwrap(),
            None => writeln!(out, "  {v};").unwrap(),
        }
    }
    for (u, v) in g.edges() {
        writeln!(out, "  {u} -- {v};").unwrap();
    }
    out.push_str("}\n");
    out
}
