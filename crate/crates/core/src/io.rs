//! JSON instance files and their detection.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::{Polynomial, SquareMatrix};
use crate::arrangement::{Arrangement, ArrangementSystem};
use crate::corridor::{BlockGlueSpec, CorridorSet, GlueRequest};
use crate::error::{Error, Result};
use crate::graph::LabeledDigraph;

/// A graph together with its corridors: `{"graph": {...}, "corridors": [...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CorridorSystemFile {
    pub graph: LabeledDigraph,
    pub corridors: Vec<CorridorSet>,
}

/// Blocks for the gluing identity: `{"blocks": [...], "first_index": [...], "q": "q"}`.
/// Without `first_index` each block's first label is used.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BlocksFile {
    pub blocks: Vec<SquareMatrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_index: Option<Vec<String>>,
    pub q: Polynomial,
}

impl BlocksFile {
    pub fn spec(&self) -> BlockGlueSpec {
        match &self.first_index {
            Some(first) => BlockGlueSpec {
                matrices: self.blocks.clone(),
                first_index: first.clone(),
                q: self.q.clone(),
            },
            None => BlockGlueSpec::with_leading_indices(self.blocks.clone(), self.q.clone()),
        }
    }
}

impl From<&BlockGlueSpec> for BlocksFile {
    fn from(spec: &BlockGlueSpec) -> Self {
        BlocksFile {
            blocks: spec.matrices.clone(),
            first_index: Some(spec.first_index.clone()),
            q: spec.q.clone(),
        }
    }
}

#[derive(Clone, Debug)]
pub enum Instance {
    Graph(LabeledDigraph),
    Corridors(Vec<CorridorSet>),
    CorridorSystem(CorridorSystemFile),
    Arrangement(Arrangement),
    ArrangementSystem(ArrangementSystem),
    Blocks(BlocksFile),
    Glue(GlueRequest),
    Matrix(SquareMatrix),
}

impl Instance {
    pub fn kind(&self) -> &'static str {
        match self {
            Instance::Graph(_) => "graph",
            Instance::Corridors(_) => "corridors",
            Instance::CorridorSystem(_) => "corridor-system",
            Instance::Arrangement(_) => "arrangement",
            Instance::ArrangementSystem(_) => "arrangement-system",
            Instance::Blocks(_) => "blocks",
            Instance::Glue(_) => "glue",
            Instance::Matrix(_) => "matrix",
        }
    }

    /// The graph and corridors this instance describes, if any.
    pub fn into_graph_system(self) -> Result<(LabeledDigraph, Vec<CorridorSet>)> {
        match self {
            Instance::Graph(g) => Ok((g, Vec::new())),
            Instance::CorridorSystem(s) => Ok((s.graph, s.corridors)),
            Instance::ArrangementSystem(s) => {
                let g = s.graph()?;
                Ok((g, s.corridors))
            }
            Instance::Arrangement(a) => {
                let g = crate::arrangement::enumerate_faces(&a)?.chamber_graph()?;
                Ok((g, Vec::new()))
            }
            Instance::Glue(r) => Ok((r.glue()?, Vec::new())),
            other => Err(Error::parse(format!("a {} file does not describe a graph", other.kind()))),
        }
    }
}

fn has(v: &Value, keys: &[&str]) -> bool {
    keys.iter().all(|k| v.get(k).is_some())
}

/// Parses any supported instance file, deciding the kind from its keys.
pub fn parse_instance(text: &str) -> Result<Instance> {
    let v: Value = serde_json::from_str(text)?;
    let inst = if v.is_array() {
        Instance::Corridors(serde_json::from_value(v)?)
    } else if has(&v, &["mode", "rooms"]) {
        Instance::Graph(serde_json::from_value(v)?)
    } else if has(&v, &["graph", "corridors"]) {
        Instance::CorridorSystem(serde_json::from_value(v)?)
    } else if has(&v, &["dim", "hyperplanes"]) {
        Instance::Arrangement(serde_json::from_value(v)?)
    } else if has(&v, &["parts", "corridors"]) {
        Instance::ArrangementSystem(serde_json::from_value(v)?)
    } else if has(&v, &["parts", "entrances"]) {
        Instance::Glue(serde_json::from_value(v)?)
    } else if has(&v, &["blocks", "q"]) {
        Instance::Blocks(serde_json::from_value(v)?)
    } else if has(&v, &["labels", "entries"]) {
        Instance::Matrix(serde_json::from_value(v)?)
    } else {
        return Err(Error::parse("unrecognized instance file"));
    };
    Ok(inst)
}

pub fn read_instance(path: &std::path::Path) -> Result<Instance> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::parse(format!("{}: {e}", path.display())))?;
    parse_instance(&text)
}
