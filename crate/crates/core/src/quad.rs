//! Tensor-product Gauss-Legendre cubature over sequential rectangles.
//!
//! The node grid is walked in lexicographic order (first axis most
//! significant) and cut into fixed-size chunks. Each chunk is summed with
//! Neumaier compensation and the chunk partials are combined in chunk order.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::funcs::AnalyticFunction;
use crate::points::{PointSequence, SequentialRectangle};
use crate::symfun::vandermonde_product;

pub const MAX_ORDER: usize = 64;
pub const DEFAULT_ORDER: usize = 20;
pub const DEFAULT_BUDGET: u64 = 100_000_000;
/// Largest rectangle dimension the full grid is attempted for.
pub const MAX_DIM: usize = 8;

/// Grid points per work unit.
const CHUNK: usize = 4096;

/// Gauss-Legendre nodes and weights on `[-1, 1]`, nodes ascending.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn order(&self) -> usize {
        self.nodes.len()
    }
}

/// Computes the `order`-point rule by Newton iteration on the Legendre
/// polynomial `P_order`, starting from the Tricomi-style cosine guesses.
pub fn gauss_legendre(order: usize) -> Result<QuadratureRule> {
    if !(1..=MAX_ORDER).contains(&order) {
        return Err(Error::OutOfRange {
            what: "quadrature order",
            value: order as i64,
            min: 1,
            max: MAX_ORDER as i64,
        });
    }
    let n = order;
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let step = p / d;
            x -= step;
            if step.abs() <= 1e-16 * x.abs().max(1.0) {
                break;
            }
        }
        // One more evaluation at the converged node for the weight.
        let (_, d) = legendre_with_derivative(n, x);
        if d.is_finite() {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        // Guess i approaches the largest root first.
        nodes[n - 1 - i] = x;
        nodes[i] = -x;
        weights[n - 1 - i] = w;
        weights[i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    Ok(QuadratureRule { nodes, weights })
}

/// `(P_n(x), P_n'(x))` via the three-term recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Neumaier's compensated accumulator.
#[derive(Clone, Copy, Debug, Default)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.compensation += (self.sum - t) + v;
        } else {
            self.compensation += (v - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = CompensatedSum::default();
        for v in iter {
            acc.add(v);
        }
        acc
    }
}

/// Cubature settings: nodes per axis and the evaluation budget.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Cubature {
    pub order: usize,
    pub budget: u64,
}

impl Default for Cubature {
    fn default() -> Self {
        Cubature {
            order: DEFAULT_ORDER,
            budget: DEFAULT_BUDGET,
        }
    }
}

impl Cubature {
    pub fn with_order(order: usize) -> Self {
        Cubature {
            order,
            ..Self::default()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CubatureResult {
    pub value: f64,
    pub nodes_per_axis: usize,
    pub function_evaluations: u64,
}

/// Integrates `integrand` over `rect` with the tensor-product rule.
pub fn integrate_over_rectangle<F>(
    rect: &SequentialRectangle<f64>,
    integrand: F,
    cubature: Cubature,
) -> Result<CubatureResult>
where
    F: Fn(&[f64]) -> Result<f64> + Sync,
{
    let dim = rect.dim();
    if dim > MAX_DIM {
        return Err(Error::OutOfRange {
            what: "rectangle dimension",
            value: dim as i64,
            min: 1,
            max: MAX_DIM as i64,
        });
    }
    let rule = gauss_legendre(cubature.order)?;
    let order = rule.order();
    let required = (order as u128).pow(dim as u32);
    if required > cubature.budget as u128 {
        return Err(Error::BudgetExceeded {
            required,
            budget: cubature.budget,
        });
    }
    let total = required as usize;

    // Per-axis mapped nodes and weights (weights include the half-length).
    let axes: Vec<(Vec<f64>, Vec<f64>)> = rect
        .intervals()
        .into_iter()
        .map(|(a, b)| {
            let (mid, half) = (0.5 * (a + b), 0.5 * (b - a));
            let nodes = rule.nodes.iter().map(|&u| mid + half * u).collect();
            let weights = rule.weights.iter().map(|&w| half * w).collect();
            (nodes, weights)
        })
        .collect();

    let eval_chunk = |start: usize| -> Result<CompensatedSum> {
        let end = (start + CHUNK).min(total);
        let mut digits = vec![0usize; dim];
        let mut rem = start;
        for d in (0..dim).rev() {
            digits[d] = rem % order;
            rem /= order;
        }
        let mut point = vec![0.0; dim];
        let mut acc = CompensatedSum::default();
        for _ in start..end {
            let mut w = 1.0;
            for (d, &k) in digits.iter().enumerate() {
                point[d] = axes[d].0[k];
                w *= axes[d].1[k];
            }
            acc.add(w * integrand(&point)?);
            // Odometer increment, last axis fastest.
            for d in (0..dim).rev() {
                digits[d] += 1;
                if digits[d] < order {
                    break;
                }
                digits[d] = 0;
            }
        }
        Ok(acc)
    };

    let starts: Vec<usize> = (0..total).step_by(CHUNK).collect();
    let partials: Vec<CompensatedSum> = starts
        .par_iter()
        .map(|&s| eval_chunk(s))
        .collect::<Result<_>>()?;
    let value = partials
        .iter()
        .flat_map(|p| [p.sum, p.compensation])
        .collect::<CompensatedSum>()
        .value();

    Ok(CubatureResult {
        value,
        nodes_per_axis: order,
        function_evaluations: required as u64,
    })
}

/// The Vandermonde-weighted integral
/// `int_{R(x)} V(t) f^(n)(t1 + ... + tn) dt`, with `V` evaluated as the
/// running product of differences at each node.
pub fn weighted_integral(
    x: &PointSequence<f64>,
    f: &AnalyticFunction,
    cubature: Cubature,
) -> Result<CubatureResult> {
    let n = x.dim();
    let fn_n = f.derivative(n);
    let (lo, hi) = x.sum_bounds();
    fn_n.check_domain(lo, hi)?;
    integrate_over_rectangle(
        &x.rectangle(),
        |t| {
            let s: f64 = t.iter().sum();
            Ok(vandermonde_product(t) * fn_n.eval(s)?)
        },
        cubature,
    )
}
