use serde::{Deserialize, Serialize};

use crate::roadmap::Roadmap;
use crate::{Error, Result};

pub const DEFAULT_PATH_CAP: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Path {
    /// Edge indices into the roadmap, in travel order.
    pub edges: Vec<usize>,
    /// Visited vertices, source first.
    pub vertices: Vec<usize>,
}

impl Path {
    pub fn contains_edge(&self, edge: usize) -> bool {
        self.edges.contains(&edge)
    }

    /// `0-1-2`
    pub fn label(&self) -> String {
        self.vertices
            .iter()
            .map(usize::to_string)
            .collect::<Vec<_>>()
            .join("-")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PathSet {
    pub source: usize,
    pub target: usize,
    /// Ordered by edge count, then by vertex sequence.
    pub paths: Vec<Path>,
    /// Every edge used by at least one path, ascending.
    pub attackable_edges: Vec<usize>,
}

impl PathSet {
    pub fn position(&self, path: &Path) -> Option<usize> {
        self.paths.iter().position(|p| p.edges == path.edges)
    }

    pub fn column(&self, edge: usize) -> Option<usize> {
        self.attackable_edges.binary_search(&edge).ok()
    }
}

pub fn enumerate_paths(g: &Roadmap, source: usize, target: usize) -> Result<PathSet> {
    enumerate_paths_capped(g, source, target, DEFAULT_PATH_CAP)
}

/// All simple paths from `source` to `target` by depth-first search over
/// ascending neighbour ids. Fails once more than `cap` paths are found.
pub fn enumerate_paths_capped(
    g: &Roadmap,
    source: usize,
    target: usize,
    cap: usize,
) -> Result<PathSet> {
    g.check_vertex(source)?;
    g.check_vertex(target)?;
    if source == target {
        return Err(Error::InvalidParameter(format!(
            "source and target are both {source}"
        )));
    }
    let adj = g.adjacency();
    let mut on_path = vec![false; g.num_vertices()];
    let mut found = Vec::new();
    let mut edges = Vec::new();
    let mut vertices = vec![source];
    on_path[source] = true;

    // explicit stack of (vertex, next arc to try)
    let mut stack = vec![(source, 0usize)];
    while let Some(top) = stack.last_mut() {
        let arc = adj[top.0].get(top.1).copied();
        top.1 += 1;
        if let Some((edge, w)) = arc {
            if on_path[w] {
                continue;
            }
            if w == target {
                let mut path_vertices = vertices.clone();
                path_vertices.push(w);
                let mut path_edges = edges.clone();
                path_edges.push(edge);
                found.push(Path {
                    edges: path_edges,
                    vertices: path_vertices,
                });
                if found.len() > cap {
                    return Err(Error::PathExplosion {
                        from: source,
                        to: target,
                        cap,
                    });
                }
                continue;
            }
            on_path[w] = true;
            edges.push(edge);
            vertices.push(w);
            stack.push((w, 0));
        } else {
            stack.pop();
            if let Some(last) = vertices.pop() {
                on_path[last] = false;
            }
            edges.pop();
        }
    }
    if found.is_empty() {
        return Err(Error::NoPath {
            from: source,
            to: target,
        });
    }
    found.sort_by(|a, b| {
        a.edges
            .len()
            .cmp(&b.edges.len())
            .then_with(|| a.vertices.cmp(&b.vertices))
    });
    let mut attackable: Vec<usize> = found.iter().flat_map(|p| p.edges.iter().copied()).collect();
    attackable.sort_unstable();
    attackable.dedup();
    Ok(PathSet {
        source,
        target,
        paths: found,
        attackable_edges: attackable,
    })
}
