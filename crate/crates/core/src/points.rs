//! Increasing point sequences, the sequential rectangle
//! `[x1,x2] x [x2,x3] x ... x [xn,x{n+1}]`, and the linear change of
//! coordinates between `x` and the partial-sum points `y`.

use std::fmt;

use num_traits::{FromPrimitive, Num};

use crate::error::{Error, Result};
use crate::exact::{format_rational, parse_rational, rat, to_f64, Rational};
use crate::funcs::AnalyticFunction;

/// Default minimum gap between consecutive floating coordinates.
pub const DEFAULT_MIN_GAP: f64 = 1e-12;

/// Scalar types a [`PointSequence`] can hold: exact rationals or `f64`.
pub trait Coordinate:
    Clone + PartialOrd + Num + FromPrimitive + fmt::Debug + Send + Sync + 'static
{
    fn to_f64(&self) -> f64;

    fn is_finite(&self) -> bool;

    /// Renders the value for reports: `p/q` for rationals, shortest
    /// round-trip decimal for floats.
    fn render(&self) -> String;

    /// Evaluates `f` at this point, in this coordinate type.
    fn apply(f: &AnalyticFunction, at: &Self) -> Result<Self>;

    /// Checks that `hi` is strictly above `lo` for this coordinate type.
    fn strictly_above(lo: &Self, hi: &Self, min_gap: f64) -> bool;
}

impl Coordinate for Rational {
    fn to_f64(&self) -> f64 {
        to_f64(self)
    }

    fn is_finite(&self) -> bool {
        true
    }

    fn render(&self) -> String {
        format_rational(self)
    }

    fn apply(f: &AnalyticFunction, at: &Self) -> Result<Self> {
        f.eval_exact(at)
    }

    fn strictly_above(lo: &Self, hi: &Self, _min_gap: f64) -> bool {
        hi > lo
    }
}

impl Coordinate for f64 {
    fn to_f64(&self) -> f64 {
        *self
    }

    fn is_finite(&self) -> bool {
        f64::is_finite(*self)
    }

    fn render(&self) -> String {
        format!("{self:?}")
    }

    fn apply(f: &AnalyticFunction, at: &Self) -> Result<Self> {
        f.eval(*at)
    }

    fn strictly_above(lo: &Self, hi: &Self, min_gap: f64) -> bool {
        hi > lo && hi - lo >= min_gap
    }
}

/// A strictly increasing sequence of at least two coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct PointSequence<T> {
    values: Vec<T>,
}

impl<T: Coordinate> PointSequence<T> {
    pub fn new(values: Vec<T>) -> Result<Self> {
        Self::with_min_gap(values, DEFAULT_MIN_GAP)
    }

    /// Like [`PointSequence::new`] with an explicit floating gap tolerance.
    /// Exact coordinates ignore `min_gap`.
    pub fn with_min_gap(values: Vec<T>, min_gap: f64) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::TooFewPoints {
                got: values.len(),
                min: 2,
            });
        }
        if let Some(i) = values.iter().position(|v| !Coordinate::is_finite(v)) {
            return Err(Error::NonFinite(i));
        }
        if let Some(i) =
            (1..values.len()).find(|&i| !T::strictly_above(&values[i - 1], &values[i], min_gap))
        {
            return Err(Error::NotIncreasing { index: i });
        }
        Ok(PointSequence { values })
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Dimension of the associated rectangle: one less than the length.
    pub fn dim(&self) -> usize {
        self.values.len() - 1
    }

    pub fn first(&self) -> &T {
        &self.values[0]
    }

    pub fn last(&self) -> &T {
        &self.values[self.values.len() - 1]
    }

    pub fn to_f64(&self) -> PointSequence<f64> {
        PointSequence {
            values: self.values.iter().map(Coordinate::to_f64).collect(),
        }
    }

    pub fn render(&self) -> String {
        self.values
            .iter()
            .map(Coordinate::render)
            .collect::<Vec<_>>()
            .join(",")
    }

    /// `y_i = (x_1 + ... + x_{n+1}) - x_{n+2-i}`: each `y_i` drops one `x`,
    /// from the last down to the first. Increasing whenever `x` is.
    pub fn y_from_x(&self) -> PointSequence<T> {
        let total = sum(&self.values);
        PointSequence {
            values: self
                .values
                .iter()
                .rev()
                .map(|xj| total.clone() - xj.clone())
                .collect(),
        }
    }

    /// Inverse of [`PointSequence::y_from_x`]:
    /// `x_i = (sum_j y_j - n y_{n+2-i}) / n`.
    pub fn x_from_y(&self) -> PointSequence<T> {
        let n = T::from_usize(self.dim()).expect("dimension fits in coordinate type");
        let total = sum(&self.values);
        PointSequence {
            values: self
                .values
                .iter()
                .rev()
                .map(|yj| (total.clone() - n.clone() * yj.clone()) / n.clone())
                .collect(),
        }
    }

    /// `(y_1, y_{n+1})`: the range of `t1 + ... + tn` over the rectangle.
    pub fn sum_bounds(&self) -> (T, T) {
        let total = sum(&self.values);
        (
            total.clone() - self.last().clone(),
            total - self.first().clone(),
        )
    }

    /// The `n + 1` rectangle vertices `v_i` obtained by omitting
    /// `x_{n+2-i}`; their coordinate sums are exactly the `y_i`.
    pub fn staircase_vertices(&self) -> Vec<Vec<T>> {
        let m = self.values.len();
        (1..=m)
            .map(|i| {
                let skip = m - i; // 0-based index of x_{n+2-i}
                self.values
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != skip)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect()
    }

    pub fn rectangle(&self) -> SequentialRectangle<T> {
        SequentialRectangle { x: self.clone() }
    }
}

impl PointSequence<f64> {
    /// Comma-separated decimal or `p/q` entries, read as floats.
    pub fn parse_float(text: &str) -> Result<Self> {
        let values = split_entries(text)?
            .into_iter()
            .map(|tok| {
                if tok.contains('/') {
                    parse_rational(tok).map(|r| to_f64(&r))
                } else {
                    tok.parse::<f64>()
                        .map_err(|_| Error::Parse(format!("invalid number {tok:?}")))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        PointSequence::new(values)
    }
}

impl PointSequence<Rational> {
    /// Comma-separated decimal or `p/q` entries, read exactly (decimals are
    /// scaled by powers of ten).
    pub fn parse_exact(text: &str) -> Result<Self> {
        let values = split_entries(text)?
            .into_iter()
            .map(parse_rational)
            .collect::<Result<Vec<_>>>()?;
        PointSequence::new(values)
    }
}

fn split_entries(text: &str) -> Result<Vec<&str>> {
    let compact = text.trim();
    if compact.is_empty() {
        return Err(Error::Parse("empty point list".into()));
    }
    Ok(compact.split(',').map(str::trim).collect())
}

fn sum<T: Coordinate>(values: &[T]) -> T {
    values.iter().fold(T::zero(), |acc, v| acc + v.clone())
}

/// A parsed point list that remembers whether every entry was an exact
/// literal (integer or `p/q`) or at least one was a decimal.
#[derive(Clone, Debug, PartialEq)]
pub enum Points {
    Exact(PointSequence<Rational>),
    Float(PointSequence<f64>),
}

impl Points {
    /// Integers and `p/q` parse exactly; any decimal literal makes the whole
    /// list floating unless `force_exact` is set.
    pub fn parse(text: &str, force_exact: bool) -> Result<Self> {
        let exact_literal = split_entries(text)?
            .iter()
            .all(|tok| !tok.contains(['.', 'e', 'E']));
        if force_exact || exact_literal {
            PointSequence::parse_exact(text).map(Points::Exact)
        } else {
            PointSequence::parse_float(text).map(Points::Float)
        }
    }

    pub fn to_f64(&self) -> PointSequence<f64> {
        match self {
            Points::Exact(p) => p.to_f64(),
            Points::Float(p) => p.clone(),
        }
    }

    pub fn render(&self) -> String {
        match self {
            Points::Exact(p) => p.render(),
            Points::Float(p) => p.render(),
        }
    }
}

/// The box `[x1,x2] x [x2,x3] x ... x [xn,x{n+1}]`.
#[derive(Clone, Debug, PartialEq)]
pub struct SequentialRectangle<T> {
    x: PointSequence<T>,
}

impl<T: Coordinate> SequentialRectangle<T> {
    pub fn dim(&self) -> usize {
        self.x.dim()
    }

    pub fn points(&self) -> &PointSequence<T> {
        &self.x
    }

    pub fn intervals(&self) -> Vec<(T, T)> {
        self.x
            .values
            .windows(2)
            .map(|w| (w[0].clone(), w[1].clone()))
            .collect()
    }

    pub fn contains(&self, t: &[T]) -> bool {
        t.len() == self.dim()
            && self
                .x
                .values
                .windows(2)
                .zip(t)
                .all(|(w, ti)| w[0] <= *ti && *ti <= w[1])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatrixRole {
    Forward,
    Inverse,
}

/// The `(n+1) x (n+1)` matrix `M` with `y = M x`, or its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransformMatrix {
    pub role: MatrixRole,
    pub entries: Vec<Vec<Rational>>,
}

impl TransformMatrix {
    /// `M` has ones everywhere except a zero on the anti-diagonal; the inverse
    /// has `1/n` everywhere except `(1 - n)/n` on the anti-diagonal.
    pub fn new(n: usize, role: MatrixRole) -> Result<Self> {
        if n < 1 {
            return Err(Error::OutOfRange {
                what: "n",
                value: 0,
                min: 1,
                max: i64::MAX,
            });
        }
        let size = n + 1;
        let (off, anti) = match role {
            MatrixRole::Forward => (rat(1, 1), rat(0, 1)),
            MatrixRole::Inverse => (rat(1, n as i64), rat(1 - n as i64, n as i64)),
        };
        let entries = (0..size)
            .map(|i| {
                (0..size)
                    .map(|j| {
                        if i + j == size - 1 {
                            anti.clone()
                        } else {
                            off.clone()
                        }
                    })
                    .collect()
            })
            .collect();
        Ok(TransformMatrix { role, entries })
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn apply(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.size() {
            return Err(Error::Dimension {
                expected: self.size(),
                got: v.len(),
            });
        }
        Ok(self
            .entries
            .iter()
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn matmul(&self, other: &TransformMatrix) -> Vec<Vec<Rational>> {
        let size = self.size();
        (0..size)
            .map(|i| {
                (0..size)
                    .map(|j| {
                        (0..size)
                            .map(|k| &self.entries[i][k] * &other.entries[k][j])
                            .sum()
                    })
                    .collect()
            })
            .collect()
    }
}

/// Convenience: `(lo, hi)` of a sequence's sum range as `f64`.
pub fn sum_bounds_f64<T: Coordinate>(x: &PointSequence<T>) -> (f64, f64) {
    let (lo, hi) = x.sum_bounds();
    (lo.to_f64(), hi.to_f64())
}
