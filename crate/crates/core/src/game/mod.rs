//! The single-edge game: a multistage 2×2 zero-sum game that stops at the
//! first joint {Defend, Attack}.
//!
//! Payoffs are to the attacker (column player, maximizer). The defender (row
//! player) minimizes. Row 1 is Defend, row 2 No Defend; column 1 is Attack,
//! column 2 No Attack.

mod analytic;
mod edge;
mod rollout;
mod stage;

pub use analytic::{analytic_value, approx_value, approximation_error, implicit_residual};
pub use edge::{forward_payoff, solve_edge_game, EdgeGameSolution, DETECTION_BUDGET};
pub use rollout::{
    rollout_once, simulate_rollouts, AttackerAction, DefenderAction, RolloutOutcome, RolloutStats,
};
pub use stage::{
    closed_form_value, effective_matrix, pure_saddle, stage_solve, stage_solve_mixed,
    StageSolution, DECISION_MATRIX, DENOMINATOR_TOL,
};

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Tolerance for a probability pair summing to one.
pub const SIMPLEX_TOL: f64 = 1e-12;

/// Per-stage attacker payoff.
///
/// `s11` is paid under {Defend, Attack}, `s12` under {Defend, No Attack},
/// `s21` under {No Defend, Attack} (the security loss) and `s22` under
/// {No Defend, No Attack} (the mobility cost of one stage).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StageCostMatrix {
    pub s11: f64,
    pub s12: f64,
    pub s21: f64,
    pub s22: f64,
}

impl StageCostMatrix {
    pub fn new(s11: f64, s12: f64, s21: f64, s22: f64) -> Result<Self> {
        let m = Self { s11, s12, s21, s22 };
        if m.entries().iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "stage cost entries must be finite, got {m:?}"
            )));
        }
        Ok(m)
    }

    /// `s11 · [[1, 1], [r1, r2]]` with `s11 > 0`, `r1 >= 1` and `r2 < 1`.
    pub fn parameterized(s11: f64, r1: f64, r2: f64) -> Result<Self> {
        if !(s11 > 0.0 && s11.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "s11 must be > 0, got {s11}"
            )));
        }
        if !(r1 >= 1.0 && r1.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "r1 must be >= 1, got {r1}"
            )));
        }
        if !(r2 < 1.0 && r2.is_finite()) {
            return Err(Error::InvalidParameter(format!("r2 must be < 1, got {r2}")));
        }
        Self::new(s11, s11, r1 * s11, r2 * s11)
    }

    /// The matrix used in the worked examples, `[[30, 30], [70, 10]]`.
    pub fn reference() -> Self {
        Self {
            s11: 30.0,
            s12: 30.0,
            s21: 70.0,
            s22: 10.0,
        }
    }

    pub fn entries(&self) -> [f64; 4] {
        [self.s11, self.s12, self.s21, self.s22]
    }

    pub fn as_rows(&self) -> [[f64; 2]; 2] {
        [[self.s11, self.s12], [self.s21, self.s22]]
    }

    pub fn det(&self) -> f64 {
        self.s11 * self.s22 - self.s12 * self.s21
    }

    /// Penalty ratio `s21 / s11`.
    pub fn r1(&self) -> Option<f64> {
        (self.s11 != 0.0).then(|| self.s21 / self.s11)
    }

    /// Mobility ratio `s22 / s11`.
    pub fn r2(&self) -> Option<f64> {
        (self.s11 != 0.0).then(|| self.s22 / self.s11)
    }

    /// Expected stage payoff `yᵀ S z`.
    pub fn expected(&self, y: &MixedPolicy2, z: &MixedPolicy2) -> f64 {
        let [[a, b], [c, d]] = self.as_rows();
        y.active * (a * z.active + b * z.passive) + y.passive * (c * z.active + d * z.passive)
    }
}

/// A distribution over the two actions of one player at one stage.
///
/// `active` is Defend for the defender and Attack for the attacker.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MixedPolicy2 {
    pub active: f64,
    pub passive: f64,
}

impl MixedPolicy2 {
    pub fn new(active: f64, passive: f64) -> Result<Self> {
        if !(active >= 0.0 && passive >= 0.0 && (active + passive - 1.0).abs() <= SIMPLEX_TOL) {
            return Err(Error::InvalidParameter(format!(
                "policy ({active}, {passive}) is not a probability vector"
            )));
        }
        Ok(Self { active, passive })
    }

    pub fn from_active(active: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&active) {
            return Err(Error::InvalidParameter(format!(
                "probability {active} outside [0, 1]"
            )));
        }
        Ok(Self {
            active,
            passive: 1.0 - active,
        })
    }

    pub const ACTIVE: Self = Self {
        active: 1.0,
        passive: 0.0,
    };

    pub const PASSIVE: Self = Self {
        active: 0.0,
        passive: 1.0,
    };

    pub fn as_array(&self) -> [f64; 2] {
        [self.active, self.passive]
    }

    pub fn is_valid(&self) -> bool {
        self.active >= 0.0
            && self.passive >= 0.0
            && (self.active + self.passive - 1.0).abs() <= SIMPLEX_TOL
    }
}
