use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use serde::ser::{Serialize, SerializeSeq, Serializer};
use serde::Serialize as DeriveSerialize;

use crate::exact::{format_rational, to_f64, MultiPoly, Rational};

/// Below this magnitude of `rhs` the floating policy switches to absolute
/// error.
pub const ZERO_RHS_THRESHOLD: f64 = 1e-14;
/// Absolute tolerance used when `rhs` is (numerically) zero.
pub const ZERO_ABS_TOLERANCE: f64 = 1e-12;

/// One side of an identity.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Exact(Rational),
    Float(f64),
    Poly(MultiPoly),
    Tuple(Vec<Rational>),
}

impl Serialize for Value {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Value::Exact(r) => s.serialize_str(&format_rational(r)),
            Value::Float(v) => s.serialize_f64(*v),
            Value::Poly(p) => s.serialize_str(&p.to_string()),
            Value::Tuple(items) => {
                let mut seq = s.serialize_seq(Some(items.len()))?;
                for r in items {
                    seq.serialize_element(&format_rational(r))?;
                }
                seq.end()
            }
        }
    }
}

impl std::fmt::Display for Value {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Value::Exact(r) => f.write_str(&format_rational(r)),
            Value::Float(v) => write!(f, "{v:?}"),
            Value::Poly(p) => write!(f, "{p}"),
            Value::Tuple(items) => {
                f.write_str("(")?;
                for (i, r) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    f.write_str(&format_rational(r))?;
                }
                f.write_str(")")
            }
        }
    }
}

/// Both sides of a checked identity and the verdict.
#[derive(Clone, Debug, PartialEq, DeriveSerialize)]
pub struct IdentityReport {
    pub name: String,
    pub n: usize,
    pub passed: bool,
    pub lhs: Value,
    pub rhs: Value,
    pub abs_err: f64,
    pub rel_err: f64,
    pub tolerance: f64,
    pub seed: Option<u64>,
    pub config: BTreeMap<String, serde_json::Value>,
}

impl IdentityReport {
    fn base(name: &str, n: usize, lhs: Value, rhs: Value) -> Self {
        IdentityReport {
            name: name.to_string(),
            n,
            passed: false,
            lhs,
            rhs,
            abs_err: 0.0,
            rel_err: 0.0,
            tolerance: 0.0,
            seed: None,
            config: BTreeMap::new(),
        }
    }

    /// Exact comparison of two rationals.
    pub fn exact(name: &str, n: usize, lhs: Rational, rhs: Rational) -> Self {
        let diff = (&lhs - &rhs).abs();
        let abs_err = to_f64(&diff);
        let rel_err = if rhs.is_zero() {
            abs_err
        } else {
            to_f64(&(&diff / rhs.abs()))
        };
        let passed = diff.is_zero();
        IdentityReport {
            passed,
            abs_err,
            rel_err,
            ..Self::base(name, n, Value::Exact(lhs), Value::Exact(rhs))
        }
    }

    /// Exact comparison of two polynomials; the errors record the number of
    /// terms in the difference.
    pub fn symbolic(name: &str, n: usize, lhs: MultiPoly, rhs: MultiPoly) -> Self {
        let residual = (&lhs - &rhs).len() as f64;
        IdentityReport {
            passed: residual == 0.0,
            abs_err: residual,
            rel_err: residual,
            ..Self::base(name, n, Value::Poly(lhs), Value::Poly(rhs))
        }
        .with("residual_terms", residual as u64)
    }

    /// Exact comparison of two tuples of rationals.
    pub fn tuple(name: &str, n: usize, lhs: Vec<Rational>, rhs: Vec<Rational>) -> Self {
        let max_diff = lhs
            .iter()
            .zip(&rhs)
            .map(|(a, b)| to_f64(&(a - b).abs()))
            .fold(0.0, f64::max);
        let passed = lhs == rhs;
        IdentityReport {
            passed,
            abs_err: max_diff,
            rel_err: max_diff,
            ..Self::base(name, n, Value::Tuple(lhs), Value::Tuple(rhs))
        }
    }

    /// Floating comparison: relative error, or absolute error when `|rhs|`
    /// is below [`ZERO_RHS_THRESHOLD`].
    pub fn numeric(name: &str, n: usize, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        let abs_err = (lhs - rhs).abs();
        let near_zero = rhs.abs() < ZERO_RHS_THRESHOLD;
        let rel_err = if near_zero {
            abs_err
        } else {
            abs_err / rhs.abs()
        };
        let passed = if near_zero {
            abs_err <= ZERO_ABS_TOLERANCE
        } else {
            rel_err <= tolerance
        };
        IdentityReport {
            passed,
            abs_err,
            rel_err,
            tolerance: if near_zero {
                ZERO_ABS_TOLERANCE
            } else {
                tolerance
            },
            ..Self::base(name, n, Value::Float(lhs), Value::Float(rhs))
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn with(mut self, key: &str, value: impl Into<serde_json::Value>) -> Self {
        self.config.insert(key.to_string(), value.into());
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("reports always serialize")
    }

    /// Column names of [`IdentityReport::csv_record`].
    pub const CSV_COLUMNS: [&'static str; 9] = [
        "name",
        "n",
        "passed",
        "lhs",
        "rhs",
        "abs_err",
        "rel_err",
        "tolerance",
        "seed",
    ];

    /// The report as unquoted CSV fields.
    pub fn csv_record(&self) -> [String; 9] {
        [
            self.name.clone(),
            self.n.to_string(),
            self.passed.to_string(),
            self.lhs.to_string(),
            self.rhs.to_string(),
            format!("{:e}", self.abs_err),
            format!("{:e}", self.rel_err),
            format!("{:e}", self.tolerance),
            self.seed.map(|s| s.to_string()).unwrap_or_default(),
        ]
    }

    /// One human-readable line.
    pub fn to_text(&self) -> String {
        format!(
            "{} {} n={} lhs={} rhs={} rel_err={:e}",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.n,
            self.lhs,
            self.rhs,
            self.rel_err
        )
    }
}
