//! Shortest path under attacked edge weights, then its worst single-edge
//! attack.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use super::{path_row, EdgeWeights, Path};
use crate::roadmap::Roadmap;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HeuristicResult {
    pub shortest_path: Path,
    /// Sum of attacked weights along the path (what Dijkstra minimized).
    pub attacked_length: f64,
    /// Worst cost of the path when exactly one of its edges is attacked.
    pub length_under_attack: f64,
    pub worst_edge: usize,
}

#[derive(PartialEq)]
struct Label {
    dist: f64,
    vertices: Vec<usize>,
    edges: Vec<usize>,
}

impl Label {
    fn cmp_key(&self, other: &Self) -> Ordering {
        self.dist
            .total_cmp(&other.dist)
            .then_with(|| self.vertices.cmp(&other.vertices))
    }
}

struct Queued(Label);

impl PartialEq for Queued {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Queued {}
impl PartialOrd for Queued {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Queued {
    // BinaryHeap is a max-heap
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.cmp_key(&self.0)
    }
}

/// Dijkstra over non-negative `weights` (one per edge). Ties in distance go
/// to the lexicographically smaller vertex sequence.
pub fn dijkstra(g: &Roadmap, weights: &[f64], source: usize, target: usize) -> Option<(f64, Path)> {
    let adj = g.adjacency();
    let mut best: Vec<Option<Label>> = (0..g.num_vertices()).map(|_| None).collect();
    let mut done = vec![false; g.num_vertices()];
    let mut heap = BinaryHeap::new();
    let start = Label {
        dist: 0.0,
        vertices: vec![source],
        edges: vec![],
    };
    heap.push(Queued(Label {
        dist: 0.0,
        vertices: vec![source],
        edges: vec![],
    }));
    best[source] = Some(start);
    while let Some(Queued(label)) = heap.pop() {
        let v = *label.vertices.last().unwrap();
        if done[v] {
            continue;
        }
        done[v] = true;
        if v == target {
            return Some((
                label.dist,
                Path {
                    edges: label.edges,
                    vertices: label.vertices,
                },
            ));
        }
        for &(edge, w) in &adj[v] {
            if done[w] {
                continue;
            }
            let mut vertices = label.vertices.clone();
            vertices.push(w);
            let mut edges = label.edges.clone();
            edges.push(edge);
            let cand = Label {
                dist: label.dist + weights[edge],
                vertices,
                edges,
            };
            let improves = best[w]
                .as_ref()
                .is_none_or(|cur| cand.cmp_key(cur) == Ordering::Less);
            if improves {
                heap.push(Queued(Label {
                    dist: cand.dist,
                    vertices: cand.vertices.clone(),
                    edges: cand.edges.clone(),
                }));
                best[w] = Some(cand);
            }
        }
    }
    None
}

/// The shortest-path baseline: route on attacked weights, then let the
/// attacker pick the worst edge of that route. Ties pick the lowest edge
/// index.
pub fn shortest_path_edge_attack_with(
    g: &Roadmap,
    weights: &EdgeWeights,
    source: usize,
    target: usize,
) -> Result<HeuristicResult> {
    g.check_vertex(source)?;
    g.check_vertex(target)?;
    if source == target {
        return Err(Error::InvalidParameter(format!(
            "source and target are both {source}"
        )));
    }
    let (attacked_length, path) =
        dijkstra(g, &weights.attacked, source, target).ok_or(Error::NoPath {
            from: source,
            to: target,
        })?;
    let mut on_path = path.edges.clone();
    on_path.sort_unstable();
    let row = path_row(&path, &on_path, weights);
    let (col, &length_under_attack) = row
        .iter()
        .enumerate()
        .fold(None, |acc: Option<(usize, &f64)>, (j, v)| match acc {
            Some((_, best)) if *v <= *best => acc,
            _ => Some((j, v)),
        })
        .ok_or(Error::NoPath {
            from: source,
            to: target,
        })?;
    Ok(HeuristicResult {
        worst_edge: on_path[col],
        shortest_path: path,
        attacked_length,
        length_under_attack,
    })
}

pub fn shortest_path_edge_attack(
    g: &Roadmap,
    source: usize,
    target: usize,
) -> Result<HeuristicResult> {
    shortest_path_edge_attack_with(g, &EdgeWeights::compute(g)?, source, target)
}
