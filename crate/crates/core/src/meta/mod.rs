//! The path-vs-edge meta-game over a roadmap and its shortest-path baseline.
//!
//! The defender picks a simple path from source to target, the attacker one
//! edge. An unattacked path costs the mobility sum of its edges; if the
//! attacked edge lies on the path, that edge costs its edge-game value
//! instead.

mod dump;
mod heuristic;
mod paths;
mod sensitivity;
mod solve;
mod weights;

pub use dump::{meta_game_csv, parse_meta_game_csv, MetaGameDump};
pub use heuristic::{
    dijkstra, shortest_path_edge_attack, shortest_path_edge_attack_with, HeuristicResult,
};
pub use paths::{enumerate_paths, enumerate_paths_capped, Path, PathSet, DEFAULT_PATH_CAP};
pub use sensitivity::{
    sensitivity_sweep_costs, sensitivity_sweep_stages, CostSensitivity, StageSensitivity,
};
pub use solve::{solve_matrix_game, MatrixGameSolution, CERTIFICATE_TOL};
pub use weights::{edge_weight_attacked, edge_weight_clean, EdgeWeights};

use serde::{Deserialize, Serialize};

use crate::roadmap::Roadmap;
use crate::Result;

/// Costs of one path against each attacked column edge. `columns` must be
/// sorted.
pub(crate) fn path_row(path: &Path, columns: &[usize], weights: &EdgeWeights) -> Vec<f64> {
    let mobility: f64 = path.edges.iter().map(|&e| weights.clean[e]).sum();
    columns
        .iter()
        .map(|&attacked| {
            if path.contains_edge(attacked) {
                path.edges
                    .iter()
                    .filter(|&&e| e != attacked)
                    .map(|&e| weights.clean[e])
                    .sum::<f64>()
                    + weights.attacked[attacked]
            } else {
                mobility
            }
        })
        .collect()
}

pub fn meta_matrix_with(ps: &PathSet, weights: &EdgeWeights) -> Vec<Vec<f64>> {
    ps.paths
        .iter()
        .map(|p| path_row(p, &ps.attackable_edges, weights))
        .collect()
}

/// Rows follow `ps.paths`, columns follow `ps.attackable_edges`.
pub fn build_meta_matrix(g: &Roadmap, ps: &PathSet) -> Result<Vec<Vec<f64>>> {
    Ok(meta_matrix_with(ps, &EdgeWeights::compute(g)?))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetaGame {
    pub paths: PathSet,
    pub matrix: Vec<Vec<f64>>,
    pub value: f64,
    /// Over `paths.paths`.
    pub defender_mix: Vec<f64>,
    /// Over `paths.attackable_edges`.
    pub attacker_mix: Vec<f64>,
    pub duality_gap: f64,
}

impl MetaGame {
    pub fn from_matrix(paths: PathSet, matrix: Vec<Vec<f64>>) -> Result<Self> {
        let sol = solve_matrix_game(&matrix)?;
        Ok(Self {
            paths,
            matrix,
            value: sol.value,
            duality_gap: sol.duality_gap(),
            defender_mix: sol.row_mix,
            attacker_mix: sol.col_mix,
        })
    }
}

pub fn solve_meta_game(g: &Roadmap, source: usize, target: usize) -> Result<MetaGame> {
    let weights = EdgeWeights::compute(g)?;
    let ps = enumerate_paths(g, source, target)?;
    let matrix = meta_matrix_with(&ps, &weights);
    MetaGame::from_matrix(ps, matrix)
}

/// Meta-game and baseline on the same roadmap, with the equilibrium mass the
/// meta-game puts on the baseline's choices.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub meta: MetaGame,
    pub heuristic: HeuristicResult,
    /// Defender probability of the baseline's shortest path.
    pub p_shortest_path: f64,
    /// Attacker probability of the baseline's worst edge.
    pub p_shortest_edge: f64,
}

impl Comparison {
    pub fn cost_ratio(&self) -> f64 {
        self.meta.value / self.heuristic.length_under_attack
    }
}

pub fn compare(g: &Roadmap, source: usize, target: usize) -> Result<Comparison> {
    let weights = EdgeWeights::compute(g)?;
    let heuristic = shortest_path_edge_attack_with(g, &weights, source, target)?;
    let ps = enumerate_paths(g, source, target)?;
    let matrix = meta_matrix_with(&ps, &weights);
    let meta = MetaGame::from_matrix(ps, matrix)?;
    Ok(Comparison {
        p_shortest_path: mass_on_path(&meta, &heuristic.shortest_path),
        p_shortest_edge: mass_on_edge(&meta, heuristic.worst_edge),
        meta,
        heuristic,
    })
}

pub(crate) fn mass_on_path(meta: &MetaGame, path: &Path) -> f64 {
    meta.paths
        .position(path)
        .map_or(0.0, |i| meta.defender_mix[i])
}

pub(crate) fn mass_on_edge(meta: &MetaGame, edge: usize) -> f64 {
    meta.paths
        .column(edge)
        .map_or(0.0, |j| meta.attacker_mix[j])
}
