//! Monte Carlo play of an edge-game under given behavioural policies.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{MixedPolicy2, StageCostMatrix};
use crate::{seed, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DefenderAction {
    Defend,
    NoDefend,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum AttackerAction {
    Attack,
    NoAttack,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RolloutOutcome {
    pub actions: Vec<(DefenderAction, AttackerAction)>,
    /// 1-based stage of the detection, if one happened.
    pub stop_stage: Option<usize>,
    pub payoff: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RolloutStats {
    pub mean_payoff: f64,
    pub std_error: f64,
    pub num_rollouts: usize,
}

/// Plays one edge-game. The detection stage is charged its own stage cost
/// (`s11`) and nothing accrues afterwards, which is what the backward
/// recursion's zero continuation on {Defend, Attack} encodes.
pub fn rollout_once<R: Rng + ?Sized>(
    stage_cost: &StageCostMatrix,
    defender: &[MixedPolicy2],
    attacker: &[MixedPolicy2],
    rng: &mut R,
) -> RolloutOutcome {
    let s = stage_cost.as_rows();
    let mut actions = Vec::with_capacity(defender.len());
    let mut payoff = 0.0;
    let mut stop_stage = None;
    for (k, (y, z)) in defender.iter().zip(attacker).enumerate() {
        let defend = rng.gen::<f64>() < y.active;
        let attack = rng.gen::<f64>() < z.active;
        payoff += s[usize::from(!defend)][usize::from(!attack)];
        actions.push((
            if defend {
                DefenderAction::Defend
            } else {
                DefenderAction::NoDefend
            },
            if attack {
                AttackerAction::Attack
            } else {
                AttackerAction::NoAttack
            },
        ));
        if defend && attack {
            stop_stage = Some(k + 1);
            break;
        }
    }
    RolloutOutcome {
        actions,
        stop_stage,
        payoff,
    }
}

/// Sample mean and standard error of the attacker payoff over
/// `num_rollouts` independent plays, reproducible for a given `seed`.
pub fn simulate_rollouts(
    stage_cost: &StageCostMatrix,
    defender: &[MixedPolicy2],
    attacker: &[MixedPolicy2],
    num_rollouts: usize,
    seed: u64,
) -> Result<RolloutStats> {
    if defender.len() != attacker.len() {
        return Err(Error::LengthMismatch {
            defender: defender.len(),
            attacker: attacker.len(),
        });
    }
    if num_rollouts == 0 {
        return Err(Error::InvalidParameter("num_rollouts must be >= 1".into()));
    }
    if let Some(bad) = defender.iter().chain(attacker).find(|p| !p.is_valid()) {
        return Err(Error::InvalidParameter(format!(
            "policy {bad:?} is not a probability vector"
        )));
    }
    let mut rng = seed::rng(seed);
    // Welford
    let mut mean = 0.0;
    let mut m2 = 0.0;
    for n in 1..=num_rollouts {
        let x = rollout_once(stage_cost, defender, attacker, &mut rng).payoff;
        let delta = x - mean;
        mean += delta / n as f64;
        m2 += delta * (x - mean);
    }
    let std_error = if num_rollouts > 1 {
        (m2 / (num_rollouts - 1) as f64 / num_rollouts as f64).sqrt()
    } else {
        0.0
    };
    Ok(RolloutStats {
        mean_payoff: mean,
        std_error,
        num_rollouts,
    })
}
