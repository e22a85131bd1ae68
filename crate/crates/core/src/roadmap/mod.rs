//! Roadmaps: planar vertices joined by edges that each carry an edge-game.

mod generate;
mod io;

pub use generate::{
    generate_complete_dag, generate_sparse_graph, stages_for_distance, three_vertex_roadmap,
    SparseGraphParams, DEFAULT_STAGE_SCALE, MAX_GENERATION_ATTEMPTS,
};
pub use io::{from_json_str, load_roadmap, save_roadmap, to_json_string};

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::game::StageCostMatrix;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Vertex {
    pub id: usize,
    pub x: f64,
    pub y: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub num_stages: usize,
    pub stage_cost: StageCostMatrix,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Roadmap {
    pub directed: bool,
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
}

impl Roadmap {
    /// Validates ids, endpoints, self-loops, duplicates and stage counts.
    pub fn new(directed: bool, vertices: Vec<Vertex>, edges: Vec<Edge>) -> Result<Self> {
        let g = Self {
            directed,
            vertices,
            edges,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        for (i, v) in self.vertices.iter().enumerate() {
            if v.id != i {
                return Err(Error::InvariantViolation(format!(
                    "vertex at position {i} has id {}; ids must be 0..n in order",
                    v.id
                )));
            }
            if !(v.x.is_finite() && v.y.is_finite()) {
                return Err(Error::InvariantViolation(format!(
                    "vertex {i} has a non-finite position"
                )));
            }
        }
        let n = self.vertices.len();
        let mut seen = HashSet::new();
        for (i, e) in self.edges.iter().enumerate() {
            if e.from >= n || e.to >= n {
                return Err(Error::InvariantViolation(format!(
                    "edge {i} ({} -> {}) references a missing vertex",
                    e.from, e.to
                )));
            }
            if e.from == e.to {
                return Err(Error::InvariantViolation(format!(
                    "edge {i} is a self-loop on vertex {}",
                    e.from
                )));
            }
            if e.num_stages == 0 {
                return Err(Error::InvariantViolation(format!(
                    "edge {i} ({} -> {}) has num_stages = 0",
                    e.from, e.to
                )));
            }
            if e.stage_cost.entries().iter().any(|v| !v.is_finite()) {
                return Err(Error::InvariantViolation(format!(
                    "edge {i} has a non-finite stage cost"
                )));
            }
            let key = if self.directed {
                (e.from, e.to)
            } else {
                (e.from.min(e.to), e.from.max(e.to))
            };
            if !seen.insert(key) {
                return Err(Error::InvariantViolation(format!(
                    "duplicate edge {} -> {} (edge {i})",
                    e.from, e.to
                )));
            }
        }
        Ok(())
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    /// Outgoing arcs per vertex as `(edge index, head)`, ordered by head id
    /// and then edge index. Undirected edges appear in both directions.
    pub fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for (i, e) in self.edges.iter().enumerate() {
            adj[e.from].push((i, e.to));
            if !self.directed {
                adj[e.to].push((i, e.from));
            }
        }
        for arcs in &mut adj {
            arcs.sort_by_key(|&(edge, head)| (head, edge));
        }
        adj
    }

    /// Number of edges touching each vertex, ignoring direction.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertices.len()];
        for e in &self.edges {
            deg[e.from] += 1;
            deg[e.to] += 1;
        }
        deg
    }

    pub fn edge_length(&self, edge: usize) -> f64 {
        let e = &self.edges[edge];
        let (a, b) = (self.vertices[e.from], self.vertices[e.to]);
        (a.x - b.x).hypot(a.y - b.y)
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.vertices.len() {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!(
                "vertex {v} not in graph with {} vertices",
                self.vertices.len()
            )))
        }
    }

    /// A copy with every edge's stage cost replaced.
    pub fn with_stage_cost(&self, stage_cost: StageCostMatrix) -> Self {
        let mut g = self.clone();
        for e in &mut g.edges {
            e.stage_cost = stage_cost;
        }
        g
    }

    /// Whether `target` can be reached from `source` along edge directions.
    pub fn reaches(&self, source: usize, target: usize) -> bool {
        let adj = self.adjacency();
        let mut seen = vec![false; self.vertices.len()];
        let mut stack = vec![source];
        seen[source] = true;
        while let Some(v) = stack.pop() {
            if v == target {
                return true;
            }
            for &(_, w) in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        false
    }
}
