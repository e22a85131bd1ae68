use serde::{Deserialize, Serialize};

use crate::lp;
use crate::{Error, Result};

/// Allowed slack in the value certificate of a solved matrix game.
pub const CERTIFICATE_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixGameSolution {
    pub value: f64,
    /// Over rows; the row player minimizes.
    pub row_mix: Vec<f64>,
    /// Over columns; the column player maximizes.
    pub col_mix: Vec<f64>,
    /// `max_j (ŷᵀW)_j`: the most the column player can get against `row_mix`.
    pub upper_bound: f64,
    /// `min_i (W ẑ)_i`: the least the row player can pay against `col_mix`.
    pub lower_bound: f64,
}

impl MatrixGameSolution {
    pub fn duality_gap(&self) -> f64 {
        self.upper_bound - self.lower_bound
    }
}

fn normalized(mut p: Vec<f64>) -> Vec<f64> {
    for x in &mut p {
        *x = x.max(0.0);
    }
    let total: f64 = p.iter().sum();
    for x in &mut p {
        *x /= total;
    }
    p
}

/// `min_ŷ max_ẑ ŷᵀ W ẑ` with the row player minimizing.
///
/// `W` is shifted by `1 + |min W|` so every entry is at least 1 and scaled
/// into `(0, 1]`; then `max Σu  s.t.  Wᵀu <= 1, u >= 0` has optimum
/// `1 / value` with `ŷ = u · value`, and its duals give `ẑ`.
pub fn solve_matrix_game(w: &[Vec<f64>]) -> Result<MatrixGameSolution> {
    let rows = w.len();
    let cols = w.first().map_or(0, Vec::len);
    if rows == 0 || cols == 0 || w.iter().any(|r| r.len() != cols) {
        return Err(Error::InvalidParameter(
            "payoff matrix must be non-empty and rectangular".into(),
        ));
    }
    if w.iter().flatten().any(|v| !v.is_finite()) {
        return Err(Error::InvalidParameter(
            "payoff matrix must be finite".into(),
        ));
    }
    let min = w.iter().flatten().copied().fold(f64::INFINITY, f64::min);
    let shift = 1.0 + min.abs();
    let scale = w.iter().flatten().map(|v| v + shift).fold(0.0, f64::max);

    let a: Vec<Vec<f64>> = (0..cols)
        .map(|j| (0..rows).map(|i| (w[i][j] + shift) / scale).collect())
        .collect();
    let sol = lp::maximize(&vec![1.0; rows], &a, &vec![1.0; cols])?;
    if sol.objective.is_nan() || sol.objective <= 0.0 {
        return Err(Error::SolverFailure(format!(
            "non-positive LP optimum {}",
            sol.objective
        )));
    }
    let value = scale / sol.objective - shift;
    let row_mix = normalized(sol.x);
    let col_mix = normalized(sol.dual);

    let upper_bound = (0..cols)
        .map(|j| (0..rows).map(|i| row_mix[i] * w[i][j]).sum::<f64>())
        .fold(f64::NEG_INFINITY, f64::max);
    let lower_bound = w
        .iter()
        .map(|r| r.iter().zip(&col_mix).map(|(a, z)| a * z).sum::<f64>())
        .fold(f64::INFINITY, f64::min);
    if upper_bound > value + CERTIFICATE_TOL || lower_bound < value - CERTIFICATE_TOL {
        return Err(Error::SolverFailure(format!(
            "certificate violated: value {value}, row player concedes {upper_bound} \
             (+{:e}), column player secures {lower_bound} (-{:e}) after {} pivots",
            upper_bound - value,
            value - lower_bound,
            sol.pivots
        )));
    }
    Ok(MatrixGameSolution {
        value,
        row_mix,
        col_mix,
        upper_bound,
        lower_bound,
    })
}
