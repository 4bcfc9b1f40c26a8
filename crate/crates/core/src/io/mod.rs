//! Graph file formats: graph6 (interchange), DOT (rendering), JSON (keeps labels).

mod dot;
mod graph6;
mod json;

use std::path::Path;

pub use dot::{from_dot, to_dot};
pub use graph6::{from_graph6, to_graph6};
pub use json::{graph_from_json, graph_to_json, parse_json, GraphJson};

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    Graph6,
    Dot,
    Json,
}

impl GraphFormat {
    /// Picks a format from a file extension (`g6`, `graph6`, `dot`, `gv`, `json`).
    pub fn from_path(path: &Path) -> Option<GraphFormat> {
        match path.extension()?.to_str()? {
            "g6" | "graph6" => Some(GraphFormat::Graph6),
            "dot" | "gv" => Some(GraphFormat::Dot),
            "json" => Some(GraphFormat::Json),
            _ => None,
        }
    }

    pub fn extension(self) -> &'static str {
        match self {
            GraphFormat::Graph6 => "g6",
            GraphFormat::Dot => "dot",
            GraphFormat::Json => "json",
        }
    }
}

pub fn write_graph(g: &Graph, format: GraphFormat) -> String {
    match format {
        GraphFormat::Graph6 => to_graph6(g) + "\n",
        GraphFormat::Dot => to_dot(g, "G"),
        GraphFormat::Json => graph_to_json(g) + "\n",
    }
}

pub fn read_graph(text: &str, format: GraphFormat) -> Result<Graph> {
    match format {
        GraphFormat::Graph6 => from_graph6(text),
        GraphFormat::Dot => from_dot(text),
        GraphFormat::Json => graph_from_json(text),
    }
}

pub fn read_graph_file(path: &Path) -> Result<Graph> {
    let format = GraphFormat::from_path(path).ok_or_else(|| Error::Parse {
        format: "file",
        offset: 0,
        message: format!("cannot infer graph format of {}", path.display()),
    })?;
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse {
        format: "file",
        offset: 0,
        message: format!("{}: {e}", path.display()),
    })?;
    read_graph(&text, format)
}
