use serde::{Deserialize, Serialize};

use super::{stage_solve, MixedPolicy2, StageCostMatrix};
use crate::{Error, Result};

/// Detections needed to reach the stopping state. Only one is modelled.
pub const DETECTION_BUDGET: usize = 1;

/// Backward-induction solution of one edge-game.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeGameSolution {
    pub num_stages: usize,
    /// `values[k]` is the value of the game remaining after stage `k`;
    /// `values[0]` is the edge value and `values[num_stages]` is 0.
    pub values: Vec<f64>,
    /// `defender_policies[k - 1]` is played at stage `k`.
    pub defender_policies: Vec<MixedPolicy2>,
    pub attacker_policies: Vec<MixedPolicy2>,
}

impl EdgeGameSolution {
    /// Value of the whole edge-game, used as the weight of an attacked edge.
    pub fn value(&self) -> f64 {
        self.values[0]
    }

    pub fn detection_budget(&self) -> usize {
        DETECTION_BUDGET
    }
}

pub fn solve_edge_game(
    stage_cost: &StageCostMatrix,
    num_stages: usize,
) -> Result<EdgeGameSolution> {
    if num_stages == 0 {
        return Err(Error::InvalidParameter(
            "an edge-game needs at least one stage".into(),
        ));
    }
    let mut values = vec![0.0; num_stages + 1];
    let mut defender = vec![MixedPolicy2::PASSIVE; num_stages];
    let mut attacker = vec![MixedPolicy2::PASSIVE; num_stages];
    for k in (1..=num_stages).rev() {
        let sol = stage_solve(stage_cost, values[k]).map_err(|e| Error::at_stage(k, e))?;
        values[k - 1] = sol.value;
        defender[k - 1] = sol.defender;
        attacker[k - 1] = sol.attacker;
    }
    Ok(EdgeGameSolution {
        num_stages,
        values,
        defender_policies: defender,
        attacker_policies: attacker,
    })
}

/// Expected attacker payoff of arbitrary behavioural policies, evaluated
/// forward without any reference to stage values.
///
/// With `c_k = y_kᵀ S z_k` and `p_k = y_{k,1} z_{k,1}`, the payoff of the
/// game over stages `s..=K` satisfies
/// `J(s) = Σ_{k=s}^{K} c_k − Σ_{b=s}^{K-1} p_b · J(b + 1)`:
/// every stage cost is counted once, then the part of each tail that a
/// detection at stage `b` cuts off is removed.
pub fn forward_payoff(
    stage_cost: &StageCostMatrix,
    defender: &[MixedPolicy2],
    attacker: &[MixedPolicy2],
) -> Result<f64> {
    if defender.len() != attacker.len() {
        return Err(Error::LengthMismatch {
            defender: defender.len(),
            attacker: attacker.len(),
        });
    }
    if let Some(bad) = defender.iter().chain(attacker).find(|p| !p.is_valid()) {
        return Err(Error::InvalidParameter(format!(
            "policy {bad:?} is not a probability vector"
        )));
    }
    let stages = defender.len();
    let cost: Vec<f64> = defender
        .iter()
        .zip(attacker)
        .map(|(y, z)| stage_cost.expected(y, z))
        .collect();
    let detect: Vec<f64> = defender
        .iter()
        .zip(attacker)
        .map(|(y, z)| y.active * z.active)
        .collect();

    // tail[s] = J(s) over 0-based stages s..stages; tail[stages] = 0
    let mut tail = vec![0.0; stages + 1];
    for s in (0..stages).rev() {
        let mobility: f64 = cost[s..].iter().sum();
        let cut: f64 = (s..stages - 1).map(|b| detect[b] * tail[b + 1]).sum();
        tail[s] = mobility - cut;
    }
    Ok(tail[0])
}
