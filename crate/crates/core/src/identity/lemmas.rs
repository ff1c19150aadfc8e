//! Exact verification of the supporting identities: derivatives of
//! elementary symmetric polynomials and of `omega`, pure derivatives of `V`,
//! the vanishing of `P_k V` and `E_k V`, Newton's identities between the
//! operators, the chain rule for `psi * f(s)`, and the vertex sums.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::sampling::{
    case_rng, random_distinct_rationals, random_multipoly, random_polynomial_function,
    random_rational, random_rational_points,
};
use super::{check_chain_rule, check_reduced_vertex_sum, check_vertex_sum, IdentityReport};
use crate::error::{Error, Result};
use crate::exact::{factorial, int, Family, MultiPoly, Rational, Var};
use crate::symfun::{apply_operator, elementary_symmetric, omega, vandermonde_poly, OperatorKind};

/// Random samples per case where the identity is checked on random inputs.
pub const SAMPLES: usize = 10;
/// Largest `n` for the operator, chain-rule and vertex families.
pub const SMALL_N_MAX: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LemmaKind {
    /// `d/dt e_k(t - t_1, ..., t - t_m) = (m - k + 1) e_{k-1}(...)`.
    ElementaryDerivative,
    /// `omega^(k)(t) = k! e_{m-k}(t - t_1, ..., t - t_m)`.
    OmegaDerivative,
    /// `d^k V / dt_i^k = k! V(t) e_k(1/(t_i - t_j), j != i)` at random points.
    VandermondePartial,
    /// `d^n V / dt_i^n = 0`.
    TopDerivative,
    /// `P_k V = 0`.
    PureSum,
    /// `E_k V = 0`.
    MixedSum,
    /// `k E_k = sum_{i<k} (-1)^{i-1} E_{k-i} P_i + (-1)^{k-1} P_k` on random
    /// polynomials.
    Newton,
    /// The chain rule for `psi * f(s(t))`, including `psi = V`.
    ChainRule,
    /// Mixed-derivative integrals against full and reduced vertex sums.
    VertexSum,
}

impl LemmaKind {
    pub const ALL: [LemmaKind; 9] = [
        LemmaKind::ElementaryDerivative,
        LemmaKind::OmegaDerivative,
        LemmaKind::VandermondePartial,
        LemmaKind::TopDerivative,
        LemmaKind::PureSum,
        LemmaKind::MixedSum,
        LemmaKind::Newton,
        LemmaKind::ChainRule,
        LemmaKind::VertexSum,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LemmaKind::ElementaryDerivative => "elementary-derivative",
            LemmaKind::OmegaDerivative => "omega-derivative",
            LemmaKind::VandermondePartial => "vandermonde-partial",
            LemmaKind::TopDerivative => "top-derivative",
            LemmaKind::PureSum => "pure-sum",
            LemmaKind::MixedSum => "mixed-sum",
            LemmaKind::Newton => "newton",
            LemmaKind::ChainRule => "chain-rule",
            LemmaKind::VertexSum => "vertex-sum",
        }
    }

    /// The cases of this family up to `n_max`, in report order.
    pub fn cases(self, n_max: usize) -> Vec<LemmaCase> {
        let case = |n, k, sample| LemmaCase {
            kind: self,
            n,
            k,
            sample,
        };
        let small = n_max.min(SMALL_N_MAX);
        let mut out = Vec::new();
        match self {
            LemmaKind::ElementaryDerivative => {
                for m in 1..=n_max {
                    out.extend((1..=m).map(|k| case(m, k, 0)));
                }
            }
            LemmaKind::OmegaDerivative => {
                for m in 0..=n_max {
                    out.extend((0..=m).map(|k| case(m, k, 0)));
                }
            }
            LemmaKind::VandermondePartial => {
                for n in 2..=n_max {
                    for k in 1..n {
                        out.extend((0..SAMPLES).map(|s| case(n, k, s)));
                    }
                }
            }
            LemmaKind::TopDerivative | LemmaKind::PureSum | LemmaKind::MixedSum => {
                for n in 1..=n_max {
                    out.extend((1..=n).map(|k| case(n, k, 0)));
                }
            }
            LemmaKind::Newton => {
                for n in 1..=small {
                    for k in 1..=n {
                        out.extend((0..SAMPLES).map(|s| case(n, k, s)));
                    }
                }
            }
            LemmaKind::ChainRule => {
                // The last sample uses psi = V.
                for n in 1..=small {
                    out.extend((0..=SAMPLES).map(|s| case(n, 0, s)));
                }
            }
            LemmaKind::VertexSum => {
                // Samples below SAMPLES use a random box and phi; the rest use
                // a sequential rectangle and phi = V g.
                for n in 1..=small {
                    out.extend((0..2 * SAMPLES).map(|s| case(n, 0, s)));
                }
            }
        }
        out
    }
}

impl fmt::Display for LemmaKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LemmaKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        LemmaKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = LemmaKind::ALL.iter().map(|k| k.name()).collect();
                Error::Parse(format!(
                    "unknown identity family {s:?}; expected one of {}",
                    names.join(", ")
                ))
            })
    }
}

/// One case of the suite: the family, the size `n` (or `m`), the order `k`
/// (or index `i`) and the sample number.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaCase {
    pub kind: LemmaKind,
    pub n: usize,
    pub k: usize,
    pub sample: usize,
}

impl LemmaCase {
    pub fn run(&self, seed: u64, cap: usize) -> Result<IdentityReport> {
        let report = match self.kind {
            LemmaKind::ElementaryDerivative => elementary_derivative(self.n, self.k)?,
            LemmaKind::OmegaDerivative => omega_derivative(self.n, self.k)?,
            LemmaKind::VandermondePartial => self.vandermonde_partial(seed, cap)?.with_seed(seed),
            LemmaKind::TopDerivative => {
                let v = vandermonde_poly(self.n, Family::T, cap)?;
                let lhs = v.diff_n(Var::t(self.k as u32), self.n as u32);
                IdentityReport::symbolic(self.kind.name(), self.n, lhs, MultiPoly::zero())
            }
            LemmaKind::PureSum | LemmaKind::MixedSum => {
                let v = vandermonde_poly(self.n, Family::T, cap)?;
                let op = if self.kind == LemmaKind::PureSum {
                    OperatorKind::PureSum(self.k)
                } else {
                    OperatorKind::MixedSum(self.k)
                };
                let lhs = apply_operator(op, &v, &Var::family_range(Family::T, self.n))?;
                IdentityReport::symbolic(self.kind.name(), self.n, lhs, MultiPoly::zero())
                    .with("operator", op.to_string())
            }
            LemmaKind::Newton => self.newton(seed)?.with_seed(seed),
            LemmaKind::ChainRule => self.chain_rule(seed, cap)?.with_seed(seed),
            LemmaKind::VertexSum => self.vertex_sum(seed, cap)?.with_seed(seed),
        };
        let mut report = report
            .with("family", self.kind.name())
            .with("k", self.k)
            .with("sample", self.sample);
        report.name = self.kind.name().to_string();
        Ok(report)
    }

    fn rng(&self, seed: u64) -> rand_chacha::ChaCha8Rng {
        case_rng(seed, self.kind.name(), self.n, self.k * 1000 + self.sample)
    }

    fn vandermonde_partial(&self, seed: u64, cap: usize) -> Result<IdentityReport> {
        let (n, k) = (self.n, self.k);
        let vars = Var::family_range(Family::T, n);
        let v = vandermonde_poly(n, Family::T, cap)?;
        let t = random_distinct_rationals(&mut self.rng(seed), n);
        let v_at = v.eval_at(&vars, &t)?;
        let mut lhs = Vec::with_capacity(n);
        let mut rhs = Vec::with_capacity(n);
        for i in 0..n {
            lhs.push(v.diff_n(vars[i], k as u32).eval_at(&vars, &t)?);
            let recips: Vec<Rational> = (0..n)
                .filter(|&j| j != i)
                .map(|j| Rational::one() / (&t[i] - &t[j]))
                .collect();
            rhs.push(factorial(k) * &v_at * elementary_symmetric(k, &recips)?);
        }
        let points: Vec<String> = t.iter().map(crate::exact::format_rational).collect();
        Ok(IdentityReport::tuple(self.kind.name(), n, lhs, rhs).with("t", points.join(",")))
    }

    fn newton(&self, seed: u64) -> Result<IdentityReport> {
        let (n, k) = (self.n, self.k);
        let vars = Var::family_range(Family::T, n);
        let p = random_multipoly(&mut self.rng(seed), &vars, 3, 6);
        let e = |j: usize, q: &MultiPoly| apply_operator(OperatorKind::MixedSum(j), q, &vars);
        let pk = |j: usize, q: &MultiPoly| apply_operator(OperatorKind::PureSum(j), q, &vars);
        let lhs = e(k, &p)?.scale(&int(k as i64));
        let mut rhs = MultiPoly::zero();
        for i in 1..k {
            let term = e(k - i, &pk(i, &p)?)?;
            rhs = if i % 2 == 1 {
                &rhs + &term
            } else {
                &rhs - &term
            };
        }
        let top = pk(k, &p)?;
        rhs = if k % 2 == 1 { &rhs + &top } else { &rhs - &top };
        Ok(IdentityReport::symbolic(self.kind.name(), n, lhs, rhs).with("p", p.to_string()))
    }

    fn chain_rule(&self, seed: u64, cap: usize) -> Result<IdentityReport> {
        let n = self.n;
        let mut rng = self.rng(seed);
        let vars = Var::family_range(Family::T, n);
        let psi = if self.sample == SAMPLES {
            vandermonde_poly(n, Family::T, cap)?
        } else {
            random_multipoly(&mut rng, &vars, 3, 5)
        };
        let degree = n + (self.sample % 4);
        let f = random_polynomial_function(&mut rng, degree);
        Ok(check_chain_rule(n, &psi, &f)?
            .with("psi", psi.to_string())
            .with("psi_is_vandermonde", self.sample == SAMPLES))
    }

    fn vertex_sum(&self, seed: u64, cap: usize) -> Result<IdentityReport> {
        let n = self.n;
        let mut rng = self.rng(seed);
        let vars = Var::family_range(Family::T, n);
        if self.sample < SAMPLES {
            let bounds: Vec<(Rational, Rational)> = (0..n)
                .map(|_| loop {
                    let (a, b) = (
                        random_rational(&mut rng, 100),
                        random_rational(&mut rng, 100),
                    );
                    if a != b {
                        break if a < b { (a, b) } else { (b, a) };
                    }
                })
                .collect();
            let phi = random_multipoly(&mut rng, &vars, 3, 6);
            Ok(check_vertex_sum(&bounds, &phi)?.with("phi", phi.to_string()))
        } else {
            let x = random_rational_points(&mut rng, n + 1);
            let g = random_multipoly(&mut rng, &vars, 3, 3);
            Ok(check_reduced_vertex_sum(&x, &g, cap)?.with("g", g.to_string()))
        }
    }
}

fn shifted_args(m: usize) -> Vec<MultiPoly> {
    let a = MultiPoly::var(Var::alpha());
    Var::family_range(Family::T, m)
        .into_iter()
        .map(|v| &a - &MultiPoly::var(v))
        .collect()
}

fn elementary_derivative(m: usize, k: usize) -> Result<IdentityReport> {
    let args = shifted_args(m);
    let lhs = elementary_symmetric(k, &args)?.diff(Var::alpha());
    let rhs = elementary_symmetric(k - 1, &args)?.scale(&int((m - k + 1) as i64));
    Ok(IdentityReport::symbolic(
        LemmaKind::ElementaryDerivative.name(),
        m,
        lhs,
        rhs,
    ))
}

fn omega_derivative(m: usize, k: usize) -> Result<IdentityReport> {
    let roots: Vec<MultiPoly> = Var::family_range(Family::T, m)
        .into_iter()
        .map(MultiPoly::var)
        .collect();
    let lhs = omega(&roots, Var::alpha())?.diff_n(Var::alpha(), k as u32);
    let rhs = elementary_symmetric(m - k, &shifted_args(m))?.scale(&factorial(k));
    Ok(IdentityReport::symbolic(
        LemmaKind::OmegaDerivative.name(),
        m,
        lhs,
        rhs,
    ))
}

/// Runs every case of the selected families up to `n_max` (the operator,
/// chain-rule and vertex families stop at [`SMALL_N_MAX`]) in parallel and
/// returns the reports in case order.
pub fn lemma_suite(
    n_max: usize,
    only: Option<LemmaKind>,
    seed: u64,
    cap: usize,
) -> Result<Vec<IdentityReport>> {
    if n_max < 1 {
        return Err(Error::OutOfRange {
            what: "n-max",
            value: 0,
            min: 1,
            max: cap as i64,
        });
    }
    if n_max > cap {
        return Err(Error::SymbolicCap { n: n_max, cap });
    }
    let cases: Vec<LemmaCase> = LemmaKind::ALL
        .into_iter()
        .filter(|k| only.is_none_or(|o| o == *k))
        .flat_map(|k| k.cases(n_max))
        .collect();
    cases.par_iter().map(|c| c.run(seed, cap)).collect()
}
