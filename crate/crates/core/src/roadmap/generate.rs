//! Random roadmaps on the unit square.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::Rng;

use super::{Edge, Roadmap, Vertex};
use crate::game::StageCostMatrix;
use crate::{seed, Error, Result};

/// Stages per unit of Euclidean length.
pub const DEFAULT_STAGE_SCALE: f64 = 10.0;
pub const MAX_GENERATION_ATTEMPTS: usize = 100;

pub fn stages_for_distance(stage_scale: f64, distance: f64) -> usize {
    ((stage_scale * distance).round() as usize).max(1)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SparseGraphParams {
    pub n_vertices: usize,
    pub degree_low: f64,
    pub degree_high: f64,
    pub stage_scale: f64,
    pub stage_cost: StageCostMatrix,
    pub seed: u64,
}

fn sample_vertices<R: Rng>(n: usize, rng: &mut R) -> Vec<Vertex> {
    (0..n)
        .map(|id| Vertex {
            id,
            x: rng.gen(),
            y: rng.gen(),
        })
        .collect()
}

fn staged_edges(
    vertices: &[Vertex],
    pairs: impl IntoIterator<Item = (usize, usize)>,
    stage_scale: f64,
    stage_cost: StageCostMatrix,
) -> Vec<Edge> {
    pairs
        .into_iter()
        .map(|(from, to)| {
            let (a, b) = (vertices[from], vertices[to]);
            Edge {
                from,
                to,
                num_stages: stages_for_distance(stage_scale, (a.x - b.x).hypot(a.y - b.y)),
                stage_cost,
            }
        })
        .collect()
}

fn check_scale(stage_scale: f64) -> Result<()> {
    if stage_scale > 0.0 && stage_scale.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "stage_scale must be > 0, got {stage_scale}"
        )))
    }
}

// Undirected pairs (lo, hi) with every degree in [min_deg, max_deg], or
// None when the greedy matching gets stuck.
fn degree_constrained_pairs<R: Rng>(
    n: usize,
    min_deg: usize,
    max_deg: usize,
    rng: &mut R,
) -> Option<Vec<(usize, usize)>> {
    let mut deg = vec![0usize; n];
    let mut pairs = HashSet::new();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    for &v in &order {
        while deg[v] < min_deg {
            let open: Vec<usize> = (0..n)
                .filter(|&u| u != v && deg[u] < max_deg && !pairs.contains(&(u.min(v), u.max(v))))
                .collect();
            let starved: Vec<usize> = open.iter().copied().filter(|&u| deg[u] < min_deg).collect();
            let pool = if starved.is_empty() { &open } else { &starved };
            let &u = pool.choose(rng)?;
            pairs.insert((u.min(v), u.max(v)));
            deg[u] += 1;
            deg[v] += 1;
        }
    }
    let mut pairs: Vec<_> = pairs.into_iter().collect();
    pairs.sort_unstable();
    Some(pairs)
}

/// Sparse roadmap with every vertex degree in `[degree_low, degree_high]`,
/// edges oriented from lower to higher id, and vertex `n − 1` reachable
/// from vertex 0. Also returns the number of attempts used.
pub fn generate_sparse_graph(params: &SparseGraphParams) -> Result<(Roadmap, usize)> {
    let SparseGraphParams {
        n_vertices: n,
        degree_low: low,
        degree_high: high,
        stage_scale,
        stage_cost,
        seed,
    } = *params;
    check_scale(stage_scale)?;
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "need at least 2 vertices, got {n}"
        )));
    }
    if n == 2 {
        let vertices = sample_vertices(2, &mut seed::rng(seed::derive(seed, 0)));
        let edges = staged_edges(&vertices, [(0, 1)], stage_scale, stage_cost);
        return Ok((Roadmap::new(true, vertices, edges)?, 1));
    }
    if !(2.0 <= low && low <= high && high < n as f64) {
        return Err(Error::InvalidParameter(format!(
            "degree range [{low}, {high}] must satisfy 2 <= low <= high < {n}"
        )));
    }
    let infeasible = |attempts| Error::InfeasibleDegree {
        low,
        high,
        n,
        attempts,
    };
    let (min_deg, max_deg) = (low.ceil() as usize, high.floor() as usize);
    if min_deg > max_deg {
        return Err(infeasible(0));
    }
    for attempt in 0..MAX_GENERATION_ATTEMPTS {
        let mut rng = seed::rng(seed::derive(seed, attempt as u64));
        let vertices = sample_vertices(n, &mut rng);
        let Some(pairs) = degree_constrained_pairs(n, min_deg, max_deg, &mut rng) else {
            continue;
        };
        let edges = staged_edges(&vertices, pairs, stage_scale, stage_cost);
        let g = Roadmap::new(true, vertices, edges)?;
        if g.reaches(0, n - 1) {
            return Ok((g, attempt + 1));
        }
    }
    Err(infeasible(MAX_GENERATION_ATTEMPTS))
}

/// Edges `i -> j` for every `i < j`.
pub fn generate_complete_dag(
    n_vertices: usize,
    stage_scale: f64,
    stage_cost: StageCostMatrix,
    seed: u64,
) -> Result<Roadmap> {
    check_scale(stage_scale)?;
    if n_vertices < 2 {
        return Err(Error::InvalidParameter(format!(
            "need at least 2 vertices, got {n_vertices}"
        )));
    }
    let vertices = sample_vertices(n_vertices, &mut seed::rng(seed::derive(seed, 0)));
    let pairs = (0..n_vertices).flat_map(|i| (i + 1..n_vertices).map(move |j| (i, j)));
    let edges = staged_edges(&vertices, pairs, stage_scale, stage_cost);
    Roadmap::new(true, vertices, edges)
}

/// Three-vertex network: a direct edge `0 -> 2` and a detour `0 -> 1 -> 2`
/// whose two legs have the same stage count. Edge order is direct, first
/// leg, second leg.
pub fn three_vertex_roadmap(
    stage_cost: StageCostMatrix,
    direct_stages: usize,
    leg_stages: usize,
) -> Result<Roadmap> {
    let vertices = vec![
        Vertex {
            id: 0,
            x: 0.0,
            y: 0.0,
        },
        Vertex {
            id: 1,
            x: 0.5,
            y: 0.5,
        },
        Vertex {
            id: 2,
            x: 1.0,
            y: 0.0,
        },
    ];
    let edge = |from, to, num_stages| Edge {
        from,
        to,
        num_stages,
        stage_cost,
    };
    Roadmap::new(
        true,
        vertices,
        vec![
            edge(0, 2, direct_stages),
            edge(0, 1, leg_stages),
            edge(1, 2, leg_stages),
        ],
    )
}
