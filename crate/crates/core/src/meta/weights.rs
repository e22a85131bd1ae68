use std::collections::HashMap;

use crate::game::solve_edge_game;
use crate::roadmap::{Edge, Roadmap};
use crate::Result;

/// Edge-game value `V_0` of the edge: its cost when it is the attacked one.
pub fn edge_weight_attacked(e: &Edge) -> Result<f64> {
    Ok(solve_edge_game(&e.stage_cost, e.num_stages)?.value())
}

/// Mobility cost of traversing the edge unattacked, `K_e · s22`.
pub fn edge_weight_clean(e: &Edge) -> f64 {
    e.num_stages as f64 * e.stage_cost.s22
}

/// Both weights for every edge of a roadmap, indexed like `Roadmap::edges`.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeWeights {
    pub clean: Vec<f64>,
    pub attacked: Vec<f64>,
}

impl EdgeWeights {
    pub fn compute(g: &Roadmap) -> Result<Self> {
        // edges sharing a stage count and cost share a game
        let mut games: HashMap<(usize, [u64; 4]), f64> = HashMap::new();
        let mut attacked = Vec::with_capacity(g.edges.len());
        for e in &g.edges {
            let key = (e.num_stages, e.stage_cost.entries().map(f64::to_bits));
            let v = match games.get(&key) {
                Some(&v) => v,
                None => {
                    let v = edge_weight_attacked(e)?;
                    games.insert(key, v);
                    v
                }
            };
            attacked.push(v);
        }
        Ok(Self {
            clean: g.edges.iter().map(edge_weight_clean).collect(),
            attacked,
        })
    }
}
