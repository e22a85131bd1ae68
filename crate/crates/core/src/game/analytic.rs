//! Continuum approximations of the edge-game value with `s11 = 1`.
//!
//! Letting the stage spacing go to zero turns the value recursion into
//! `dV/dk = (c − r2·V) / (V − c)` with `c = r2 − r1` and boundary
//! `V(K_e) = 1`. Stage `k` of the continuum corresponds to the discrete
//! `values[k - 1]`, since the discrete recursion also reaches 1 one stage
//! before the end.

use super::{solve_edge_game, StageCostMatrix};
use crate::{Error, Result};

const RESIDUAL_TOL: f64 = 1e-10;

fn check_regime(r1: f64, r2: f64, num_stages: usize, stage: usize) -> Result<()> {
    if !(r1 >= 1.0 && r1.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "r1 must be >= 1, got {r1}"
        )));
    }
    if !(0.0..1.0).contains(&r2) {
        return Err(Error::InvalidParameter(format!(
            "r2 must lie in [0, 1), got {r2}"
        )));
    }
    if num_stages == 0 || stage == 0 || stage > num_stages {
        return Err(Error::InvalidParameter(format!(
            "stage {stage} outside 1..={num_stages}"
        )));
    }
    Ok(())
}

fn sqrt_term(r1: f64, num_stages: usize, stage: usize) -> f64 {
    let (kk, k) = (num_stages as f64, stage as f64);
    -r1 + (r1 * r1 + 2.0 * r1 * kk + 2.0 * r1 * (1.0 - k) + 1.0).sqrt()
}

/// Square-root growth plus a linear mobility term.
pub fn approx_value(r1: f64, r2: f64, num_stages: usize, stage: usize) -> f64 {
    sqrt_term(r1, num_stages, stage) + r2 * (num_stages as f64 - stage as f64)
}

// x − ln(1 + x), without the cancellation near 0.
fn log1p_gap(x: f64) -> f64 {
    if x.abs() < 0.1 {
        let mut term = -x;
        let mut sum = 0.0;
        for n in 2..40 {
            term *= -x;
            sum += term / n as f64;
        }
        sum
    } else {
        x - x.ln_1p()
    }
}

/// `G(V) − (K_e − k)` where
/// `G(V) = (V − 1)/r2 + (1 − r2)·c·ln((r2·V − c)/r1)/r2²`
/// is the stages-to-go needed to climb from 1 to `V`. Evaluated as
/// `(V − 1)(1 + r1 − r2)/r1 + (1 − r2)(r1 − r2)/r2² · (x − ln(1 + x))`,
/// `x = r2(V − 1)/r1`, which is the same function without cancellation.
pub fn implicit_residual(r1: f64, r2: f64, num_stages: usize, stage: usize, value: f64) -> f64 {
    let u = value - 1.0;
    let x = r2 * u / r1;
    let linear = u * (1.0 + r1 - r2) / r1;
    let curved = (1.0 - r2) * (r1 - r2) / (r2 * r2) * log1p_gap(x);
    linear + curved - (num_stages as f64 - stage as f64)
}

/// Continuum value at stage `k`: closed form for `r2 = 0`, otherwise the
/// root of [`implicit_residual`] found by bisection.
pub fn analytic_value(r1: f64, r2: f64, num_stages: usize, stage: usize) -> Result<f64> {
    check_regime(r1, r2, num_stages, stage)?;
    if r2 == 0.0 {
        return Ok(sqrt_term(r1, num_stages, stage));
    }
    let f = |v: f64| implicit_residual(r1, r2, num_stages, stage, v);
    let mut lo = 1.0;
    let mut hi = approx_value(r1, r2, num_stages, stage) + 10.0 * r1;
    let (f_lo, f_hi) = (f(lo), f(hi));
    if f_lo > 0.0 || f_hi < 0.0 {
        return Err(Error::NoBracket(format!(
            "residual {f_lo:e} at V = {lo}, {f_hi:e} at V = {hi} (r1 = {r1}, r2 = {r2}, K = {num_stages}, k = {stage})"
        )));
    }
    if f_lo == 0.0 {
        return Ok(lo);
    }
    let mut best = (hi, f_hi.abs());
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let r = f(mid);
        if r.abs() < best.1 {
            best = (mid, r.abs());
        }
        if r.abs() < RESIDUAL_TOL * 1e-3 {
            break;
        }
        if r < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(best.0)
}

/// Percentage error of [`approx_value`] at stage 1 against the discrete
/// edge value `V_0` with `S = [[1, 1], [r1, r2]]`.
pub fn approximation_error(r1: f64, r2: f64, num_stages: usize) -> Result<f64> {
    check_regime(r1, r2, num_stages, 1)?;
    let s = StageCostMatrix::parameterized(1.0, r1, r2)?;
    let exact = solve_edge_game(&s, num_stages)?.value();
    if exact == 0.0 {
        return Err(Error::DivisionByZero("recursive edge value is zero".into()));
    }
    Ok(100.0 * (approx_value(r1, r2, num_stages, 1) - exact).abs() / exact.abs())
}
