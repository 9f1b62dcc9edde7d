use std::fmt;

use thiserror::Error;

/// A single failed model invariant, with the offending location and how far off it was.
#[derive(Clone, Debug, PartialEq)]
pub struct Violation {
    pub location: String,
    pub residual: f64,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} (residual {:e})", self.location, self.message, self.residual)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),

    #[error("model failed validation: {}", join_violations(.0))]
    Validation(Vec<Violation>),

    #[error("enumeration needs {needed} points but the budget is {budget}; use Monte Carlo mode")]
    Capacity { needed: u128, budget: u128 },

    #[error("density undefined: {0}")]
    UndefinedPoint(String),

    #[error("{what} = {value} is outside the valid interval ({lo}, {hi})")]
    Domain {
        what: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },

    #[error("no closed form for this model family")]
    NoClosedForm,

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("malformed model file: {0}")]
    Json(#[from] serde_json::Error),
}

fn join_violations(v: &[Violation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

pub type Result<T> = std::result::Result<T, Error>;
