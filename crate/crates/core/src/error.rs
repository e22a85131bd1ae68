use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("degenerate stage game: |denominator| = {denominator:e} <= 1e-12")]
    DegenerateDenominator { denominator: f64 },

    /// The closed-form mixed equilibrium leaves the simplex; the stage game
    /// has a pure saddle instead.
    #[error("closed-form policies leave the simplex (y1 = {y_active}, z1 = {z_active})")]
    PureSaddle { y_active: f64, z_active: f64 },

    #[error("stage {stage}: {source}")]
    AtStage {
        stage: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("policy length mismatch: defender has {defender} stages, attacker has {attacker}")]
    LengthMismatch { defender: usize, attacker: usize },

    #[error("no root bracket for the implicit value equation: {0}")]
    NoBracket(String),

    #[error("division by zero: {0}")]
    DivisionByZero(String),

    #[error(
        "degree range [{low}, {high}] not achievable on {n} vertices after {attempts} attempts"
    )]
    InfeasibleDegree {
        low: f64,
        high: f64,
        n: usize,
        attempts: usize,
    },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invariant violation: {0}")]
    InvariantViolation(String),

    #[error("no path from {from} to {to}")]
    NoPath { from: usize, to: usize },

    #[error("more than {cap} simple paths from {from} to {to}")]
    PathExplosion { from: usize, to: usize, cap: usize },

    #[error("LP solver failure: {0}")]
    SolverFailure(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn at_stage(stage: usize, source: Error) -> Self {
        Error::AtStage {
            stage,
            source: Box::new(source),
        }
    }

    /// Errors that come from the problem instance rather than from how the
    /// program was invoked.
    pub fn is_domain(&self) -> bool {
        !matches!(self, Error::InvalidParameter(_))
    }
}
