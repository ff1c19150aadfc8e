//! Seeded batch runs of the integral identity, the Vandermonde integral and
//! the integral route to divided differences.

use rayon::prelude::*;
use serde::Serialize;

use super::sampling::{
    case_rng, random_float_points, random_polynomial_function, random_rational_points,
};
use super::{
    check_integral_identity_exact, check_integral_identity_numeric, check_integral_representation,
    check_vandermonde_integral, IdentityReport, DEFAULT_TOLERANCE,
};
use crate::error::Result;
use crate::funcs::AnalyticFunction;
use crate::points::PointSequence;
use crate::quad::Cubature;
use crate::symfun::DEFAULT_SYMBOLIC_CAP;

/// Range and spacing of the random floating sequences.
pub const FLOAT_RANGE: (f64, f64) = (-2.0, 3.0);
pub const FLOAT_MIN_GAP: f64 = 0.2;
/// Draws per case before giving up on keeping a pole out of the domain.
const MAX_REDRAWS: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SuiteOptions {
    pub seed: u64,
    pub n_max: usize,
    pub cases_per_n: usize,
    pub cubature: Cubature,
    pub tolerance: f64,
    pub cap: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            seed: 0,
            n_max: 5,
            cases_per_n: 20,
            cubature: Cubature::default(),
            tolerance: DEFAULT_TOLERANCE,
            cap: DEFAULT_SYMBOLIC_CAP,
        }
    }
}

/// Exact identity on random rational `x`, with a random polynomial of every
/// degree `n..=n+4` per sequence.
pub fn integral_identity_exact_suite(opts: &SuiteOptions) -> Result<Vec<IdentityReport>> {
    let cases: Vec<(usize, usize, usize)> = (1..=opts.n_max)
        .flat_map(|n| (0..opts.cases_per_n).flat_map(move |i| (n..=n + 4).map(move |d| (n, i, d))))
        .collect();
    cases
        .par_iter()
        .map(|&(n, index, degree)| {
            let mut rng = case_rng(opts.seed, "identity-exact", n, index);
            let x = random_rational_points(&mut rng, n + 1);
            let mut frng = case_rng(opts.seed, "identity-exact-f", n, index * 16 + degree);
            let f = random_polynomial_function(&mut frng, degree);
            Ok(check_integral_identity_exact(&x, &f, opts.cap)?
                .with_seed(opts.seed)
                .with("case", index))
        })
        .collect()
}

/// One random floating case: a sequence in [`FLOAT_RANGE`] with gaps of at
/// least [`FLOAT_MIN_GAP`], redrawn until no pole of `f^(n)` falls in the
/// range of `t1 + ... + tn`.
#[derive(Clone, Debug, PartialEq)]
pub struct FloatSuiteCase {
    pub n: usize,
    pub index: usize,
    pub function: AnalyticFunction,
    pub x: PointSequence<f64>,
}

impl FloatSuiteCase {
    pub fn generate(
        seed: u64,
        n: usize,
        index: usize,
        function: &AnalyticFunction,
    ) -> Result<Self> {
        let tag = format!("identity-float:{function}");
        let mut rng = case_rng(seed, &tag, n, index);
        let (lo, hi) = FLOAT_RANGE;
        let mut last_err = None;
        for _ in 0..MAX_REDRAWS {
            let x = random_float_points(&mut rng, n + 1, lo, hi, FLOAT_MIN_GAP)?;
            let (slo, shi) = x.sum_bounds();
            match function.derivative(n).check_domain(slo, shi) {
                Ok(()) => {
                    return Ok(FloatSuiteCase {
                        n,
                        index,
                        function: function.clone(),
                        x,
                    })
                }
                Err(e) => last_err = Some(e),
            }
        }
        Err(last_err.expect("at least one draw was made"))
    }

    /// All cases for `n = 1..=n_max`, in report order.
    pub fn all(opts: &SuiteOptions, functions: &[AnalyticFunction]) -> Result<Vec<Self>> {
        let mut keys = Vec::new();
        for n in 1..=opts.n_max {
            for f in functions {
                for index in 0..opts.cases_per_n {
                    keys.push((n, f, index));
                }
            }
        }
        keys.into_iter()
            .map(|(n, f, index)| Self::generate(opts.seed, n, index, f))
            .collect()
    }
}

/// The default floating functions: `exp:1`, `sin:1,0`, `recip:10`.
pub fn default_float_functions() -> Vec<AnalyticFunction> {
    vec![
        AnalyticFunction::exp(1.0),
        AnalyticFunction::sin(1.0, 0.0),
        AnalyticFunction::recip(10.0),
    ]
}

/// Floating identity by cubature against the table route.
pub fn integral_identity_float_suite(
    opts: &SuiteOptions,
    functions: &[AnalyticFunction],
) -> Result<Vec<IdentityReport>> {
    let cases = FloatSuiteCase::all(opts, functions)?;
    cases
        .par_iter()
        .map(|c| {
            Ok(
                check_integral_identity_numeric(&c.x, &c.function, opts.cubature, opts.tolerance)?
                    .with_seed(opts.seed)
                    .with("case", c.index),
            )
        })
        .collect()
}

/// The integral route to divided differences on the `y` points of the
/// floating suite.
pub fn integral_repr_suite(
    opts: &SuiteOptions,
    functions: &[AnalyticFunction],
) -> Result<Vec<IdentityReport>> {
    let cases = FloatSuiteCase::all(opts, functions)?;
    cases
        .par_iter()
        .map(|c| {
            Ok(check_integral_representation(
                &c.x.y_from_x(),
                &c.function,
                opts.cubature,
                opts.tolerance,
            )?
            .with_seed(opts.seed)
            .with("case", c.index))
        })
        .collect()
}

/// The symbolic Vandermonde integral for `n = 1..=n_max`.
pub fn vandermonde_integral_suite(opts: &SuiteOptions) -> Result<Vec<IdentityReport>> {
    (1..=opts.n_max)
        .into_par_iter()
        .map(|n| check_vandermonde_integral(n, opts.cap))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> SuiteOptions {
        SuiteOptions {
            n_max: 2,
            cases_per_n: 3,
            ..SuiteOptions::default()
        }
    }

    #[test]
    fn small_suites_pass() {
        let opts = small();
        let fs = default_float_functions();
        for r in integral_identity_exact_suite(&opts)
            .unwrap()
            .into_iter()
            .chain(integral_identity_float_suite(&opts, &fs).unwrap())
            .chain(integral_repr_suite(&opts, &fs).unwrap())
            .chain(vandermonde_integral_suite(&opts).unwrap())
        {
            assert!(r.passed, "{}", r.to_json());
        }
    }

    #[test]
    fn float_cases_avoid_poles() {
        let opts = SuiteOptions::default();
        let cases = FloatSuiteCase::all(&opts, &[AnalyticFunction::recip(10.0)]).unwrap();
        assert_eq!(cases.len(), 5 * 20);
        for c in cases {
            let (_, hi) = c.x.sum_bounds();
            assert!(hi < 10.0);
        }
    }

    #[test]
    fn seeds_change_inputs() {
        let f = AnalyticFunction::exp(1.0);
        let a = FloatSuiteCase::generate(1, 3, 0, &f).unwrap();
        let b = FloatSuiteCase::generate(2, 3, 0, &f).unwrap();
        assert_eq!(a, FloatSuiteCase::generate(1, 3, 0, &f).unwrap());
        assert_ne!(a.x, b.x);
    }
}
