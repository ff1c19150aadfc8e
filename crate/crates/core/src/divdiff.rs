//! Divided differences at distinct points, by the recursive table and by the
//! explicit reciprocal-product sum.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::funcs::AnalyticFunction;
use crate::points::{Coordinate, PointSequence};

/// Relative gap below which a conditioning warning is attached.
pub const CLUSTER_RATIO: f64 = 1e-6;

/// Warns that the smallest point gap is tiny relative to the span.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClusterWarning {
    pub min_gap: f64,
    pub span: f64,
}

/// A divided-difference value plus an optional conditioning warning.
#[derive(Clone, Debug, PartialEq)]
pub struct DividedDifference<T> {
    pub value: T,
    pub warning: Option<ClusterWarning>,
}

/// Triangular table: `layers[k][j]` is the divided difference of order `k`
/// over `points[j..=j+k]`.
#[derive(Clone, Debug, PartialEq)]
pub struct DividedDifferenceTable<T> {
    points: Vec<T>,
    layers: Vec<Vec<T>>,
}

impl<T: Coordinate> DividedDifferenceTable<T> {
    /// Builds the table for `values[j] = f(points[j])`. Points may come in
    /// any order but must be distinct.
    pub fn build(points: Vec<T>, values: Vec<T>) -> Result<Self> {
        if points.len() != values.len() {
            return Err(Error::Dimension {
                expected: points.len(),
                got: values.len(),
            });
        }
        check_distinct(&points)?;
        let m = points.len();
        let mut layers = Vec::with_capacity(m);
        layers.push(values);
        for k in 1..m {
            let prev = &layers[k - 1];
            let next: Vec<T> = (0..m - k)
                .map(|j| {
                    (prev[j + 1].clone() - prev[j].clone())
                        / (points[j + k].clone() - points[j].clone())
                })
                .collect();
            layers.push(next);
        }
        Ok(DividedDifferenceTable { points, layers })
    }

    pub fn for_function(points: &[T], f: &AnalyticFunction) -> Result<Self> {
        let values = points
            .iter()
            .map(|p| T::apply(f, p))
            .collect::<Result<Vec<_>>>()?;
        Self::build(points.to_vec(), values)
    }

    pub fn points(&self) -> &[T] {
        &self.points
    }

    pub fn layers(&self) -> &[Vec<T>] {
        &self.layers
    }

    /// Highest-order entry `[p_1, ..., p_m] f`.
    pub fn top(&self) -> &T {
        &self.layers[self.layers.len() - 1][0]
    }

    /// Newton-form coefficients `[p_1] f, [p_1,p_2] f, ...`.
    pub fn newton_coefficients(&self) -> Vec<T> {
        self.layers.iter().map(|l| l[0].clone()).collect()
    }
}

fn check_distinct<T: Coordinate>(points: &[T]) -> Result<()> {
    for j in 1..points.len() {
        for i in 0..j {
            if points[i] == points[j] {
                return Err(Error::RepeatedPoints(i, j));
            }
        }
    }
    Ok(())
}

fn cluster_warning<T: Coordinate>(points: &[T]) -> Option<ClusterWarning> {
    let mut sorted: Vec<f64> = points.iter().map(Coordinate::to_f64).collect();
    sorted.sort_by(f64::total_cmp);
    let span = sorted[sorted.len() - 1] - sorted[0];
    let min_gap = sorted
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold(f64::INFINITY, f64::min);
    (min_gap < CLUSTER_RATIO * span).then_some(ClusterWarning { min_gap, span })
}

/// Recursive-table divided difference at distinct points in any order.
pub fn divided_difference_at<T: Coordinate>(
    points: &[T],
    f: &AnalyticFunction,
) -> Result<DividedDifference<T>> {
    if points.is_empty() {
        return Err(Error::TooFewPoints { got: 0, min: 1 });
    }
    let table = DividedDifferenceTable::for_function(points, f)?;
    Ok(DividedDifference {
        value: table.top().clone(),
        warning: cluster_warning(points),
    })
}

pub fn divided_difference<T: Coordinate>(
    points: &PointSequence<T>,
    f: &AnalyticFunction,
) -> Result<DividedDifference<T>> {
    divided_difference_at(points.values(), f)
}

/// `sum_i f(p_i) / prod_{j != i} (p_i - p_j)` at distinct points in any
/// order.
pub fn divided_difference_sum_form_at<T: Coordinate>(
    points: &[T],
    f: &AnalyticFunction,
) -> Result<DividedDifference<T>> {
    if points.is_empty() {
        return Err(Error::TooFewPoints { got: 0, min: 1 });
    }
    check_distinct(points)?;
    let mut acc = T::zero();
    for (i, pi) in points.iter().enumerate() {
        let denom = points
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .fold(T::one(), |d, (_, pj)| d * (pi.clone() - pj.clone()));
        acc = acc + T::apply(f, pi)? / denom;
    }
    Ok(DividedDifference {
        value: acc,
        warning: cluster_warning(points),
    })
}

pub fn divided_difference_sum_form<T: Coordinate>(
    points: &PointSequence<T>,
    f: &AnalyticFunction,
) -> Result<DividedDifference<T>> {
    divided_difference_sum_form_at(points.values(), f)
}

/// `V(x) [y_1, ..., y_{n+1}] f` with `y = y_from_x(x)` and `V(x)` the direct
/// product of differences.
pub fn scaled_divided_difference<T: Coordinate>(
    x: &PointSequence<T>,
    f: &AnalyticFunction,
) -> Result<T> {
    let dd = divided_difference(&x.y_from_x(), f)?;
    Ok(vandermonde_value(x.values()) * dd.value)
}

/// `prod_{i<j} (v_j - v_i)` for any coordinate type.
pub fn vandermonde_value<T: Coordinate>(values: &[T]) -> T {
    let mut acc = T::one();
    for j in 1..values.len() {
        for i in 0..j {
            acc = acc * (values[j].clone() - values[i].clone());
        }
    }
    acc
}
