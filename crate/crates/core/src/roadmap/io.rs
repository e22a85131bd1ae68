//! JSON persistence: `{ "directed", "vertices": [{id, x, y}],
//! "edges": [{from, to, num_stages, s11, s12, s21, s22}] }`.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{Edge, Roadmap, Vertex};
use crate::game::StageCostMatrix;
use crate::{Error, Result};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RoadmapFile {
    directed: bool,
    vertices: Vec<VertexRecord>,
    edges: Vec<EdgeRecord>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct VertexRecord {
    id: usize,
    x: f64,
    y: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeRecord {
    from: usize,
    to: usize,
    num_stages: usize,
    s11: f64,
    s12: f64,
    s21: f64,
    s22: f64,
}

pub fn to_json_string(g: &Roadmap) -> Result<String> {
    let file = RoadmapFile {
        directed: g.directed,
        vertices: g
            .vertices
            .iter()
            .map(|v| VertexRecord {
                id: v.id,
                x: v.x,
                y: v.y,
            })
            .collect(),
        edges: g
            .edges
            .iter()
            .map(|e| EdgeRecord {
                from: e.from,
                to: e.to,
                num_stages: e.num_stages,
                s11: e.stage_cost.s11,
                s12: e.stage_cost.s12,
                s21: e.stage_cost.s21,
                s22: e.stage_cost.s22,
            })
            .collect(),
    };
    Ok(serde_json::to_string_pretty(&file)?)
}

pub fn from_json_str(text: &str) -> Result<Roadmap> {
    let file: RoadmapFile = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let vertices = file
        .vertices
        .into_iter()
        .map(|v| Vertex {
            id: v.id,
            x: v.x,
            y: v.y,
        })
        .collect();
    let edges = file
        .edges
        .into_iter()
        .map(|e| Edge {
            from: e.from,
            to: e.to,
            num_stages: e.num_stages,
            stage_cost: StageCostMatrix {
                s11: e.s11,
                s12: e.s12,
                s21: e.s21,
                s22: e.s22,
            },
        })
        .collect();
    Roadmap::new(file.directed, vertices, edges)
}

pub fn save_roadmap(g: &Roadmap, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, to_json_string(g)? + "\n")?;
    Ok(())
}

pub fn load_roadmap(path: impl AsRef<Path>) -> Result<Roadmap> {
    from_json_str(&fs::read_to_string(path)?)
}
