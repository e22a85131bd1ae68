//! Dense tableau simplex for `max cᵀx  s.t.  A x <= b, x >= 0` with `b >= 0`.
//!
//! The slack basis is feasible from the start, so there is no phase one.
//! Entering and leaving variables follow Bland's rule (lowest eligible
//! index), which cannot cycle on degenerate vertices.

use crate::{Error, Result};

/// Reduced costs above `-REDUCED_COST_TOL` count as non-improving.
pub const REDUCED_COST_TOL: f64 = 1e-9;
const PIVOT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub x: Vec<f64>,
    /// Optimal duals, one per constraint row: `min bᵀw  s.t.  Aᵀw >= c, w >= 0`.
    pub dual: Vec<f64>,
    pub objective: f64,
    pub pivots: usize,
}

struct Tableau {
    rows: usize,
    cols: usize, // structural + slack
    width: usize,
    data: Vec<f64>, // (rows + 1) × (cols + 1), objective row last, rhs last
    basis: Vec<usize>,
}

impl Tableau {
    fn at(&self, r: usize, c: usize) -> f64 {
        self.data[r * self.width + c]
    }

    fn pivot(&mut self, pr: usize, pc: usize) {
        let w = self.width;
        let p = self.data[pr * w + pc];
        for c in 0..w {
            self.data[pr * w + c] /= p;
        }
        self.data[pr * w + pc] = 1.0;
        let (before, rest) = self.data.split_at_mut(pr * w);
        let (pivot_row, after) = rest.split_at_mut(w);
        for row in before.chunks_exact_mut(w).chain(after.chunks_exact_mut(w)) {
            let f = row[pc];
            if f != 0.0 {
                for (x, &y) in row.iter_mut().zip(pivot_row.iter()) {
                    *x -= f * y;
                }
                row[pc] = 0.0;
            }
        }
        self.basis[pr] = pc;
    }
}

pub fn maximize(c: &[f64], a: &[Vec<f64>], b: &[f64]) -> Result<LpSolution> {
    let m = b.len();
    let n = c.len();
    if a.len() != m || a.iter().any(|row| row.len() != n) {
        return Err(Error::InvalidParameter(format!(
            "constraint matrix must be {m}×{n}"
        )));
    }
    if b.iter().any(|&v| !(v >= 0.0 && v.is_finite())) {
        return Err(Error::InvalidParameter(
            "right-hand side must be finite and non-negative".into(),
        ));
    }
    if c.iter().chain(a.iter().flatten()).any(|v| !v.is_finite()) {
        return Err(Error::InvalidParameter("LP data must be finite".into()));
    }

    let cols = n + m;
    let width = cols + 1;
    let mut data = vec![0.0; (m + 1) * width];
    for i in 0..m {
        let row = &mut data[i * width..(i + 1) * width];
        row[..n].copy_from_slice(&a[i]);
        row[n + i] = 1.0;
        row[cols] = b[i];
    }
    for j in 0..n {
        data[m * width + j] = -c[j];
    }
    let mut t = Tableau {
        rows: m,
        cols,
        width,
        data,
        basis: (n..n + m).collect(),
    };

    // Bland's rule bounds the walk; this only guards against numerical loops.
    let max_pivots = 50 * (m + cols).max(1) + 1000;
    let mut pivots = 0;
    while let Some(pc) = (0..t.cols).find(|&j| t.at(t.rows, j) < -REDUCED_COST_TOL) {
        let mut leave: Option<(usize, f64)> = None;
        for r in 0..t.rows {
            let coef = t.at(r, pc);
            if coef > PIVOT_TOL {
                let ratio = t.at(r, t.cols) / coef;
                let better = match leave {
                    None => true,
                    Some((lr, best)) => {
                        ratio < best - 1e-15 * best.abs().max(1.0)
                            || (ratio <= best + 1e-15 * best.abs().max(1.0)
                                && t.basis[r] < t.basis[lr])
                    }
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
        }
        let Some((pr, _)) = leave else {
            return Err(Error::SolverFailure(format!(
                "objective unbounded along column {pc}"
            )));
        };
        t.pivot(pr, pc);
        pivots += 1;
        if pivots > max_pivots {
            return Err(Error::SolverFailure(format!(
                "no optimum after {pivots} pivots"
            )));
        }
    }

    let mut x = vec![0.0; n];
    for (r, &var) in t.basis.iter().enumerate() {
        if var < n {
            x[var] = t.at(r, t.cols).max(0.0);
        }
    }
    let dual = (0..m).map(|i| t.at(t.rows, n + i).max(0.0)).collect();
    Ok(LpSolution {
        objective: t.at(t.rows, t.cols),
        x,
        dual,
        pivots,
    })
}
