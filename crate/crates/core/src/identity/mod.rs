//! End-to-end verifiers: the integral identity in exact and floating form,
//! the Vandermonde integral, the chain rule for `psi * f(s(t))`, and the
//! vertex sums for integrals of highest-order mixed derivatives.

mod lemmas;
mod report;
pub mod sampling;
mod suites;

use num_traits::{One, Zero};

use crate::divdiff::{divided_difference, scaled_divided_difference, vandermonde_value};
use crate::error::{Error, Result};
use crate::exact::{factorial, Family, MultiPoly, Rational, Var};
use crate::funcs::AnalyticFunction;
use crate::points::PointSequence;
use crate::quad::{weighted_integral, Cubature, MAX_DIM};
use crate::symfun::{
    apply_operator, enumerate_vertices, sum_poly, vandermonde_of, vandermonde_poly, OperatorKind,
};

pub use lemmas::{lemma_suite, LemmaCase, LemmaKind};
pub use report::{IdentityReport, Value, ZERO_ABS_TOLERANCE, ZERO_RHS_THRESHOLD};
pub use suites::{
    default_float_functions, integral_identity_exact_suite, integral_identity_float_suite,
    integral_repr_suite, vandermonde_integral_suite, FloatSuiteCase, SuiteOptions,
};

/// Default relative tolerance of the floating checks.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

fn t_vars(n: usize) -> Vec<Var> {
    Var::family_range(Family::T, n)
}

/// `f^(k)(t1 + ... + tn)` as an exact polynomial in the `t` variables.
fn derivative_of_sum(f: &AnalyticFunction, k: usize, n: usize) -> Result<MultiPoly> {
    let fk = f
        .derivative(k)
        .as_polynomial(Var::alpha())
        .ok_or_else(|| Error::NotPolynomial(f.to_string()))?;
    Ok(fk.substitute(Var::alpha(), &sum_poly(n)))
}

fn only_t_vars(p: &MultiPoly, n: usize) -> Result<()> {
    let foreign: Vec<Var> = p
        .vars()
        .into_iter()
        .filter(|v| v.family != Family::T || v.index < 1 || v.index as usize > n)
        .collect();
    if foreign.is_empty() {
        Ok(())
    } else {
        Err(Error::ForeignVariables(foreign))
    }
}

/// Integrates `p` over the box with constant bounds, one `t` axis at a time.
fn integrate_box(p: &MultiPoly, bounds: &[(Rational, Rational)]) -> Result<MultiPoly> {
    bounds
        .iter()
        .enumerate()
        .try_fold(p.clone(), |acc, (i, (lo, hi))| {
            acc.integrate(
                Var::t(i as u32 + 1),
                &MultiPoly::constant(lo.clone()),
                &MultiPoly::constant(hi.clone()),
            )
        })
}

fn constant_of(p: &MultiPoly) -> Result<Rational> {
    p.as_constant()
        .ok_or_else(|| Error::ForeignVariables(p.vars().into_iter().collect()))
}

/// Floating check of `int_{R(x)} V(t) f^(n)(s(t)) dt = V(x) [y_1..y_{n+1}] f`.
pub fn check_integral_identity_numeric(
    x: &PointSequence<f64>,
    f: &AnalyticFunction,
    cubature: Cubature,
    tolerance: f64,
) -> Result<IdentityReport> {
    let n = x.dim();
    if n > MAX_DIM {
        return Err(Error::OutOfRange {
            what: "n",
            value: n as i64,
            min: 1,
            max: MAX_DIM as i64,
        });
    }
    let lhs = weighted_integral(x, f, cubature)?;
    let rhs = scaled_divided_difference(x, f)?;
    Ok(
        IdentityReport::numeric("integral_identity", n, lhs.value, rhs, tolerance)
            .with("function", f.to_string())
            .with("x", x.render())
            .with("order", lhs.nodes_per_axis)
            .with("evaluations", lhs.function_evaluations),
    )
}

/// Exact check of the same identity for polynomial `f` at rational `x`: the
/// left side is integrated symbolically, the right side comes from the exact
/// divided-difference table.
pub fn check_integral_identity_exact(
    x: &PointSequence<Rational>,
    f: &AnalyticFunction,
    cap: usize,
) -> Result<IdentityReport> {
    let n = x.dim();
    if !f.is_polynomial() {
        return Err(Error::NotPolynomial(f.to_string()));
    }
    let v = vandermonde_poly(n, Family::T, cap)?;
    let integrand = &v * &derivative_of_sum(f, n, n)?;
    let lhs = constant_of(&integrate_box(&integrand, &x.rectangle().intervals())?)?;
    let rhs = scaled_divided_difference(x, f)?;
    Ok(
        IdentityReport::exact("integral_identity_exact", n, lhs, rhs)
            .with("function", f.to_string())
            .with("x", x.render()),
    )
}

/// `int_{R(x)} V(t) dt - V(x)/n!` computed fully symbolically in
/// `x1..x{n+1}`; passes when the difference is the zero polynomial.
pub fn check_vandermonde_integral(n: usize, cap: usize) -> Result<IdentityReport> {
    let v = vandermonde_poly(n, Family::T, cap)?;
    let lhs = (1..=n as u32).try_fold(v, |acc, i| {
        acc.integrate(
            Var::t(i),
            &MultiPoly::var(Var::x(i)),
            &MultiPoly::var(Var::x(i + 1)),
        )
    })?;
    let vx = vandermonde_of(&Var::family_range(Family::X, n + 1));
    let rhs = vx.scale(&(Rational::one() / factorial(n)));
    Ok(IdentityReport::symbolic(
        "vandermonde_integral",
        n,
        lhs,
        rhs,
    ))
}

/// Compares `d^n/(dt1...dtn) [psi f(s)]` with
/// `sum_{k=0}^{n} E_k psi * f^(n-k)(s)`.
pub fn check_chain_rule(n: usize, psi: &MultiPoly, f: &AnalyticFunction) -> Result<IdentityReport> {
    if n < 1 {
        return Err(Error::OutOfRange {
            what: "n",
            value: 0,
            min: 1,
            max: i64::MAX,
        });
    }
    only_t_vars(psi, n)?;
    let vars = t_vars(n);
    let phi = psi * &derivative_of_sum(f, 0, n)?;
    let lhs = phi.diff_all(&vars);
    let mut rhs = MultiPoly::zero();
    for k in 0..=n {
        let ek = apply_operator(OperatorKind::MixedSum(k), psi, &vars)?;
        if ek.is_zero() {
            continue;
        }
        rhs = &rhs + &(&ek * &derivative_of_sum(f, n - k, n)?);
    }
    Ok(IdentityReport::symbolic("chain_rule", n, lhs, rhs)
        .with("psi_terms", psi.len())
        .with("function", f.to_string()))
}

/// Integral of the highest-order mixed derivative of `phi` over a box against
/// the alternating sum of `phi` over its `2^n` vertices.
pub fn check_vertex_sum(
    bounds: &[(Rational, Rational)],
    phi: &MultiPoly,
) -> Result<IdentityReport> {
    let n = bounds.len();
    if n < 1 {
        return Err(Error::TooFewPoints { got: 0, min: 1 });
    }
    if let Some(i) = bounds.iter().position(|(lo, hi)| hi <= lo) {
        return Err(Error::NotIncreasing { index: i });
    }
    only_t_vars(phi, n)?;
    let vars = t_vars(n);
    let lhs = constant_of(&integrate_box(&phi.diff_all(&vars), bounds)?)?;
    let rhs = alternating_vertex_sum(phi, bounds)?;
    Ok(IdentityReport::exact("vertex_sum", n, lhs, rhs).with("phi_terms", phi.len()))
}

fn alternating_vertex_sum(phi: &MultiPoly, bounds: &[(Rational, Rational)]) -> Result<Rational> {
    let n = bounds.len();
    let vars = t_vars(n);
    let mut acc = Rational::zero();
    for (sel, point) in enumerate_vertices(bounds) {
        let value = phi.eval_at(&vars, &point)?;
        if (n - sel.upper_count()).is_multiple_of(2) {
            acc += value;
        } else {
            acc -= value;
        }
    }
    Ok(acc)
}

/// A function of `t1..tn` that vanishes whenever two consecutive arguments
/// coincide.
#[derive(Clone, Debug, PartialEq)]
pub struct ZeroPropertyFunction {
    phi: MultiPoly,
    n: usize,
}

impl ZeroPropertyFunction {
    /// `V(t) * g(t)`, which has the property by construction.
    pub fn vandermonde_times(g: &MultiPoly, n: usize, cap: usize) -> Result<Self> {
        only_t_vars(g, n)?;
        let phi = &vandermonde_poly(n, Family::T, cap)? * g;
        Ok(ZeroPropertyFunction { phi, n })
    }

    /// Wraps an arbitrary polynomial after checking the property
    /// symbolically.
    pub fn new(phi: MultiPoly, n: usize) -> Result<Option<Self>> {
        only_t_vars(&phi, n)?;
        let candidate = ZeroPropertyFunction { phi, n };
        Ok(candidate.has_zero_property().then_some(candidate))
    }

    pub fn phi(&self) -> &MultiPoly {
        &self.phi
    }

    /// Substitutes `t_{i+1} := t_i` for every `i` and checks for zero.
    pub fn has_zero_property(&self) -> bool {
        (1..self.n as u32).all(|i| {
            self.phi
                .substitute(Var::t(i + 1), &MultiPoly::var(Var::t(i)))
                .is_zero()
        })
    }

    pub fn eval(&self, t: &[Rational]) -> Result<Rational> {
        self.phi.eval_at(&t_vars(self.n), t)
    }
}

/// Reduced-vertex check on the sequential rectangle for `phi = V * g`: the
/// integral of the mixed derivative must equal
/// `sum_{i=1}^{n+1} (-1)^{n+1-i} phi(v_i)`, and the full `2^n` vertex sum must
/// agree with it.
pub fn check_reduced_vertex_sum(
    x: &PointSequence<Rational>,
    g: &MultiPoly,
    cap: usize,
) -> Result<IdentityReport> {
    let n = x.dim();
    let zp = ZeroPropertyFunction::vandermonde_times(g, n, cap)?;
    let bounds = x.rectangle().intervals();
    let lhs = constant_of(&integrate_box(&zp.phi.diff_all(&t_vars(n)), &bounds)?)?;
    let mut reduced = Rational::zero();
    for (i, v) in x.staircase_vertices().iter().enumerate() {
        // 0-based i: sign (-1)^{n - i}
        let value = zp.eval(v)?;
        if (n - i).is_multiple_of(2) {
            reduced += value;
        } else {
            reduced -= value;
        }
    }
    let full = alternating_vertex_sum(&zp.phi, &bounds)?;
    let full_matches = full == reduced;
    let mut report = IdentityReport::exact("reduced_vertex_sum", n, lhs, reduced)
        .with("x", x.render())
        .with("full_vertex_sum", crate::exact::format_rational(&full))
        .with("full_matches_reduced", full_matches);
    report.passed &= full_matches;
    Ok(report)
}

/// The divided difference through the integral route: map `y` back to `x`,
/// integrate, divide by `V(y)`.
pub fn divided_difference_via_integral(
    y: &PointSequence<f64>,
    f: &AnalyticFunction,
    cubature: Cubature,
) -> Result<f64> {
    let x = y.x_from_y();
    let integral = weighted_integral(&x, f, cubature)?;
    Ok(integral.value / vandermonde_value(y.values()))
}

/// Compares the integral route with the recursive table.
pub fn check_integral_representation(
    y: &PointSequence<f64>,
    f: &AnalyticFunction,
    cubature: Cubature,
    tolerance: f64,
) -> Result<IdentityReport> {
    let via_integral = divided_difference_via_integral(y, f, cubature)?;
    let table = divided_difference(y, f)?.value;
    Ok(IdentityReport::numeric(
        "integral_representation",
        y.dim(),
        via_integral,
        table,
        tolerance,
    )
    .with("function", f.to_string())
    .with("y", y.render())
    .with("order", cubature.order))
}
