use serde::{Deserialize, Serialize};

use super::{MixedPolicy2, StageCostMatrix};
use crate::{Error, Result};

/// `|den|` at or below this is treated as a singular stage game.
pub const DENOMINATOR_TOL: f64 = 1e-12;

/// Continuation multiplier per outcome: detection, {Defend, Attack}, ends the
/// game, every other outcome carries the next stage's value forward.
pub const DECISION_MATRIX: [[f64; 2]; 2] = [[0.0, 1.0], [1.0, 1.0]];

/// Equilibrium of one stage given the value of the stages after it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StageSolution {
    /// Value of the game from this stage on (`V_{k-1}`).
    pub value: f64,
    pub defender: MixedPolicy2,
    pub attacker: MixedPolicy2,
}

/// `A = V_k · D + S`.
pub fn effective_matrix(stage_cost: &StageCostMatrix, next_value: f64) -> [[f64; 2]; 2] {
    let s = stage_cost.as_rows();
    let mut a = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            a[i][j] = next_value * DECISION_MATRIX[i][j] + s[i][j];
        }
    }
    a
}

// Probabilities within this distance of [0, 1] are snapped onto it.
const SNAP: f64 = 1e-12;

fn snap_probability(p: f64) -> Option<f64> {
    if !(-SNAP..=1.0 + SNAP).contains(&p) {
        None
    } else {
        Some(p.clamp(0.0, 1.0))
    }
}

/// Closed-form interior equilibrium of `V_k · D + S`.
///
/// Fails with [`Error::PureSaddle`] when the equalizing policies are not
/// probabilities; [`stage_solve`] falls back to the pure saddle then.
pub fn stage_solve_mixed(stage_cost: &StageCostMatrix, next_value: f64) -> Result<StageSolution> {
    let StageCostMatrix { s11, s12, s21, s22 } = *stage_cost;
    let v = next_value;
    let den = s11 - s12 - s21 + s22 - v;
    if den.abs() <= DENOMINATOR_TOL {
        return Err(Error::DegenerateDenominator { denominator: den });
    }
    let y_active = (s22 - s21) / den;
    let z_active = (s22 - s12) / den;
    let (Some(y1), Some(z1)) = (snap_probability(y_active), snap_probability(z_active)) else {
        return Err(Error::PureSaddle { y_active, z_active });
    };
    // Complements straight from the formulas; they equal 1 - p up to rounding.
    let y2 = ((s11 - s12 - v) / den).clamp(0.0, 1.0);
    let z2 = ((s11 - s21 - v) / den).clamp(0.0, 1.0);
    let value = closed_form_value(stage_cost, v)?;
    Ok(StageSolution {
        value,
        defender: MixedPolicy2 {
            active: y1,
            passive: y2,
        },
        attacker: MixedPolicy2 {
            active: z1,
            passive: z2,
        },
    })
}

/// `V_k + (det S − s22·V_k) / den`, the value the equalizing policies would
/// give, whether or not they are probabilities.
pub fn closed_form_value(stage_cost: &StageCostMatrix, next_value: f64) -> Result<f64> {
    let den = stage_cost.s11 - stage_cost.s12 - stage_cost.s21 + stage_cost.s22 - next_value;
    if den.abs() <= DENOMINATOR_TOL {
        return Err(Error::DegenerateDenominator { denominator: den });
    }
    Ok(next_value + (stage_cost.det() - stage_cost.s22 * next_value) / den)
}

/// First entry (row-major) that is the largest in its row and the smallest in
/// its column.
pub fn pure_saddle(a: &[[f64; 2]; 2]) -> Option<(usize, usize)> {
    (0..2)
        .flat_map(|i| (0..2).map(move |j| (i, j)))
        .find(|&(i, j)| a[i][j] >= a[i][1 - j] && a[i][j] <= a[1 - i][j])
}

fn indicator(action: usize) -> MixedPolicy2 {
    if action == 0 {
        MixedPolicy2::ACTIVE
    } else {
        MixedPolicy2::PASSIVE
    }
}

/// One backward step: the stage equilibrium and `V_{k-1}` from `V_k`.
pub fn stage_solve(stage_cost: &StageCostMatrix, next_value: f64) -> Result<StageSolution> {
    match stage_solve_mixed(stage_cost, next_value) {
        Err(Error::PureSaddle { y_active, z_active }) => {
            let a = effective_matrix(stage_cost, next_value);
            let (i, j) = pure_saddle(&a).ok_or(Error::PureSaddle { y_active, z_active })?;
            Ok(StageSolution {
                value: a[i][j],
                defender: indicator(i),
                attacker: indicator(j),
            })
        }
        other => other,
    }
}
