use std::fmt;

use crate::exact::Var;

/// Errors produced by the exact, numeric and verification pipelines.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("missing values for variables: {}", VarList(.0))]
    MissingVariables(Vec<Var>),

    #[error("integration variable {0} occurs in an integration bound")]
    BoundContainsVariable(Var),

    #[error("unexpected variables: {}", VarList(.0))]
    ForeignVariables(Vec<Var>),

    #[error("variable {0} occurs in one of the roots")]
    VariableCollision(Var),

    #[error("{what} = {value} is out of range {min}..={max}")]
    OutOfRange {
        what: &'static str,
        value: i64,
        min: i64,
        max: i64,
    },

    #[error("symbolic computation requested for n = {n}, above the configured cap {cap}")]
    SymbolicCap { n: usize, cap: usize },

    #[error("points must be strictly increasing (violated at index {index})")]
    NotIncreasing { index: usize },

    #[error("a point sequence needs at least {min} points, got {got}")]
    TooFewPoints { got: usize, min: usize },

    #[error("repeated point at indices {0} and {1}")]
    RepeatedPoints(usize, usize),

    #[error("non-finite coordinate at index {0}")]
    NonFinite(usize),

    #[error("pole at {pole} lies inside the evaluation domain [{lo}, {hi}]")]
    Pole { pole: f64, lo: f64, hi: f64 },

    #[error("{0} has no exact polynomial form")]
    NotPolynomial(String),

    #[error("cubature needs {required} evaluations, above the budget of {budget}")]
    BudgetExceeded { required: u128, budget: u64 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

struct VarList<'a>(&'a [Var]);

impl fmt::Display for VarList<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}
