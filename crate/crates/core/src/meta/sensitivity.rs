//! How the equilibrium mass on the baseline's choices moves with stage
//! costs and stage counts.

use serde::{Deserialize, Serialize};

use super::{compare, mass_on_edge, mass_on_path};
use crate::game::StageCostMatrix;
use crate::roadmap::{three_vertex_roadmap, Roadmap};
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CostSensitivity {
    pub r1: f64,
    pub r2: f64,
    pub p_shortest_path: f64,
    pub p_shortest_edge: f64,
}

/// Re-prices every edge with `s11 · [[1, 1], [r1, r2]]` for each grid point
/// (r1 outer, r2 inner) and re-solves.
pub fn sensitivity_sweep_costs(
    g: &Roadmap,
    source: usize,
    target: usize,
    r1_grid: &[f64],
    r2_grid: &[f64],
    s11: f64,
) -> Result<Vec<CostSensitivity>> {
    let mut out = Vec::with_capacity(r1_grid.len() * r2_grid.len());
    for &r1 in r1_grid {
        for &r2 in r2_grid {
            let priced = g.with_stage_cost(StageCostMatrix::parameterized(s11, r1, r2)?);
            let c = compare(&priced, source, target)?;
            out.push(CostSensitivity {
                r1,
                r2,
                p_shortest_path: c.p_shortest_path,
                p_shortest_edge: c.p_shortest_edge,
            });
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StageSensitivity {
    pub stages_direct: usize,
    /// Stages on each of the two detour legs.
    pub stages_alt: usize,
    /// Mass on the baseline's shortest path, whichever route that is.
    pub p_shortest_path: f64,
    pub p_shortest_edge: f64,
    /// Mass on the direct route `0 -> 2`.
    pub p_direct_path: f64,
    /// Attacker mass on the direct edge.
    pub p_direct_edge: f64,
}

/// Sweeps the three-vertex network over direct (outer) and detour-leg
/// (inner) stage counts.
pub fn sensitivity_sweep_stages(
    stage_cost: StageCostMatrix,
    direct_grid: &[usize],
    alt_grid: &[usize],
) -> Result<Vec<StageSensitivity>> {
    let mut out = Vec::with_capacity(direct_grid.len() * alt_grid.len());
    for &stages_direct in direct_grid {
        for &stages_alt in alt_grid {
            let g = three_vertex_roadmap(stage_cost, stages_direct, stages_alt)?;
            let c = compare(&g, 0, 2)?;
            let direct = &c.meta.paths.paths[0];
            debug_assert_eq!(direct.vertices, vec![0, 2]);
            out.push(StageSensitivity {
                stages_direct,
                stages_alt,
                p_shortest_path: c.p_shortest_path,
                p_shortest_edge: c.p_shortest_edge,
                p_direct_path: mass_on_path(&c.meta, direct),
                p_direct_edge: mass_on_edge(&c.meta, 0),
            });
        }
    }
    Ok(out)
}
