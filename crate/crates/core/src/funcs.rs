//! Univariate test functions with closed-form derivatives of every order.

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{format_rational, parse_rational, to_f64, MultiPoly, Rational, Var};

/// A test function `f(a)` whose derivatives stay in the same family.
#[derive(Clone, Debug, PartialEq)]
pub enum AnalyticFunction {
    /// `sum_k c_k a^k`, lowest degree first, trailing zeros stripped.
    Polynomial(Vec<Rational>),
    /// `scale * exp(rate * a)`.
    Exponential { scale: f64, rate: f64 },
    /// `amplitude * sin(frequency * a + phase + quarter_turns * pi/2)`.
    ///
    /// Each derivative advances `quarter_turns` by one.
    Sine {
        amplitude: f64,
        frequency: f64,
        phase: f64,
        quarter_turns: u32,
    },
    /// `scale * (a - shift)^(-power)`.
    Reciprocal { scale: f64, shift: f64, power: u32 },
}

impl AnalyticFunction {
    pub fn polynomial(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        AnalyticFunction::Polynomial(coeffs)
    }

    /// The monomial `c * a^degree`.
    pub fn monomial(c: Rational, degree: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); degree + 1];
        coeffs[degree] = c;
        Self::polynomial(coeffs)
    }

    pub fn exp(rate: f64) -> Self {
        AnalyticFunction::Exponential { scale: 1.0, rate }
    }

    pub fn sin(frequency: f64, phase: f64) -> Self {
        AnalyticFunction::Sine {
            amplitude: 1.0,
            frequency,
            phase,
            quarter_turns: 0,
        }
    }

    /// `1 / (a - shift)`.
    pub fn recip(shift: f64) -> Self {
        AnalyticFunction::Reciprocal {
            scale: 1.0,
            shift,
            power: 1,
        }
    }

    /// Parses `poly:c0,c1,...`, `exp:rate`, `sin:frequency,phase` or
    /// `recip:shift`. Polynomial coefficients are read exactly.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        let (kind, args) = text
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("function {text:?} lacks a `kind:` prefix")))?;
        let list: Vec<&str> = args.split(',').map(str::trim).collect();
        let float = |s: &str| -> Result<f64> {
            if s.contains('/') {
                parse_rational(s).map(|r| to_f64(&r))
            } else {
                s.parse::<f64>()
                    .map_err(|_| Error::Parse(format!("invalid number {s:?} in {text:?}")))
            }
        };
        let arity = |n: usize| -> Result<()> {
            if list.len() == n {
                Ok(())
            } else {
                Err(Error::Parse(format!(
                    "{kind} takes {n} argument(s), got {} in {text:?}",
                    list.len()
                )))
            }
        };
        match kind.trim() {
            "poly" => Ok(Self::polynomial(
                list.into_iter()
                    .map(parse_rational)
                    .collect::<Result<_>>()?,
            )),
            "exp" => {
                arity(1)?;
                Ok(Self::exp(float(list[0])?))
            }
            "sin" => {
                arity(2)?;
                Ok(Self::sin(float(list[0])?, float(list[1])?))
            }
            "recip" => {
                arity(1)?;
                Ok(Self::recip(float(list[0])?))
            }
            other => Err(Error::Parse(format!("unknown function kind {other:?}"))),
        }
    }

    pub fn is_polynomial(&self) -> bool {
        matches!(self, AnalyticFunction::Polynomial(_))
    }

    /// Degree of a polynomial (`None` for the zero polynomial and for
    /// transcendental families).
    pub fn degree(&self) -> Option<usize> {
        match self {
            AnalyticFunction::Polynomial(c) if !c.is_empty() => Some(c.len() - 1),
            _ => None,
        }
    }

    /// The `k`-th derivative, in closed form.
    pub fn derivative(&self, k: usize) -> AnalyticFunction {
        match self {
            AnalyticFunction::Polynomial(coeffs) => {
                let out = coeffs
                    .iter()
                    .enumerate()
                    .skip(k)
                    .map(|(j, c)| {
                        let falling: u64 = ((j - k + 1)..=j).map(|v| v as u64).product();
                        c * Rational::from_integer(falling.into())
                    })
                    .collect();
                Self::polynomial(out)
            }
            AnalyticFunction::Exponential { scale, rate } => AnalyticFunction::Exponential {
                scale: scale * rate.powi(k as i32),
                rate: *rate,
            },
            AnalyticFunction::Sine {
                amplitude,
                frequency,
                phase,
                quarter_turns,
            } => AnalyticFunction::Sine {
                amplitude: amplitude * frequency.powi(k as i32),
                frequency: *frequency,
                phase: *phase,
                quarter_turns: (quarter_turns + (k % 4) as u32) % 4,
            },
            AnalyticFunction::Reciprocal {
                scale,
                shift,
                power,
            } => {
                // d^k/da^k (a-c)^-p = (-1)^k p (p+1) ... (p+k-1) (a-c)^-(p+k)
                let rising: f64 = (0..k).map(|j| (*power as usize + j) as f64).product();
                let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
                AnalyticFunction::Reciprocal {
                    scale: scale * sign * rising,
                    shift: *shift,
                    power: power + k as u32,
                }
            }
        }
    }

    pub fn eval(&self, at: f64) -> Result<f64> {
        Ok(match self {
            AnalyticFunction::Polynomial(coeffs) => {
                coeffs.iter().rev().fold(0.0, |acc, c| acc * at + to_f64(c))
            }
            AnalyticFunction::Exponential { scale, rate } => scale * (rate * at).exp(),
            AnalyticFunction::Sine {
                amplitude,
                frequency,
                phase,
                quarter_turns,
            } => {
                let arg = frequency * at + phase;
                amplitude
                    * match quarter_turns % 4 {
                        0 => arg.sin(),
                        1 => arg.cos(),
                        2 => -arg.sin(),
                        _ => -arg.cos(),
                    }
            }
            AnalyticFunction::Reciprocal {
                scale,
                shift,
                power,
            } => {
                let d = at - shift;
                if d == 0.0 {
                    return Err(Error::Pole {
                        pole: *shift,
                        lo: at,
                        hi: at,
                    });
                }
                scale / d.powi(*power as i32)
            }
        })
    }

    /// Exact value; only polynomials qualify.
    pub fn eval_exact(&self, at: &Rational) -> Result<Rational> {
        match self {
            AnalyticFunction::Polynomial(coeffs) => Ok(coeffs
                .iter()
                .rev()
                .fold(Rational::zero(), |acc, c| acc * at + c)),
            other => Err(Error::NotPolynomial(other.to_string())),
        }
    }

    /// The exact univariate polynomial in `var`, or `None` for transcendental
    /// families.
    pub fn as_polynomial(&self, var: Var) -> Option<MultiPoly> {
        match self {
            AnalyticFunction::Polynomial(coeffs) => {
                let a = MultiPoly::var(var);
                let mut acc = MultiPoly::zero();
                for c in coeffs.iter().rev() {
                    acc = &(&acc * &a) + &MultiPoly::constant(c.clone());
                }
                Some(acc)
            }
            _ => None,
        }
    }

    /// Fails when a pole of the function lies in `[lo, hi]`.
    pub fn check_domain(&self, lo: f64, hi: f64) -> Result<()> {
        match self {
            AnalyticFunction::Reciprocal { shift, .. } if *shift >= lo && *shift <= hi => {
                Err(Error::Pole {
                    pole: *shift,
                    lo,
                    hi,
                })
            }
            _ => Ok(()),
        }
    }
}

fn fmt_float(v: f64) -> String {
    format!("{v:?}").trim_end_matches(".0").to_string()
}

fn scaled(f: &mut fmt::Formatter<'_>, scale: f64) -> fmt::Result {
    if scale != 1.0 {
        write!(f, "{}*", fmt_float(scale))?;
    }
    Ok(())
}

/// Base forms print in the command-line grammar (`exp:1`); derivatives add a
/// scale prefix and, where needed, an exponent or phase suffix.
impl fmt::Display for AnalyticFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnalyticFunction::Polynomial(coeffs) => {
                f.write_str("poly:")?;
                if coeffs.is_empty() {
                    return f.write_str("0");
                }
                let parts: Vec<String> = coeffs.iter().map(format_rational).collect();
                f.write_str(&parts.join(","))
            }
            AnalyticFunction::Exponential { scale, rate } => {
                scaled(f, *scale)?;
                write!(f, "exp:{}", fmt_float(*rate))
            }
            AnalyticFunction::Sine {
                amplitude,
                frequency,
                phase,
                quarter_turns,
            } => {
                scaled(f, *amplitude)?;
                write!(f, "sin:{},{}", fmt_float(*frequency), fmt_float(*phase))?;
                if *quarter_turns > 0 {
                    write!(f, "+{quarter_turns}pi/2")?;
                }
                Ok(())
            }
            AnalyticFunction::Reciprocal {
                scale,
                shift,
                power,
            } => {
                scaled(f, *scale)?;
                write!(f, "recip:{}", fmt_float(*shift))?;
                if *power != 1 {
                    write!(f, "^{power}")?;
                }
                Ok(())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};
    use proptest::prelude::*;

    fn poly(c: &[i64]) -> AnalyticFunction {
        AnalyticFunction::polynomial(c.iter().map(|&v| int(v)).collect())
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(poly(&[0, 0, 0, 1]).derivative(2), poly(&[0, 6]));
        assert_eq!(
            AnalyticFunction::exp(1.0).derivative(5),
            AnalyticFunction::exp(1.0)
        );
        let half_square = AnalyticFunction::monomial(rat(1, 2), 2);
        assert_eq!(
            half_square.derivative(3),
            AnalyticFunction::polynomial(vec![])
        );
        assert_eq!(half_square.derivative(3).eval(4.0).unwrap(), 0.0);
    }

    #[test]
    fn eval_examples() {
        assert_eq!(poly(&[0, 0, 1]).eval(3.0).unwrap(), 9.0);
        assert_eq!(poly(&[0, 0, 1]).eval_exact(&int(3)).unwrap(), int(9));
        assert_eq!(AnalyticFunction::exp(1.0).eval(0.0).unwrap(), 1.0);
        assert_eq!(AnalyticFunction::sin(1.0, 0.0).eval(0.0).unwrap(), 0.0);
    }

    #[test]
    fn reciprocal_pole() {
        let f = AnalyticFunction::recip(2.0);
        assert!(matches!(f.eval(2.0), Err(Error::Pole { .. })));
        assert!(f.check_domain(0.0, 3.0).is_err());
        assert!(f.check_domain(2.5, 3.0).is_ok());
        assert_eq!(f.eval(3.0).unwrap(), 1.0);
        // d/da 1/(a-2) = -1/(a-2)^2
        assert_eq!(f.derivative(1).eval(4.0).unwrap(), -0.25);
        assert_eq!(f.derivative(3).eval(3.0).unwrap(), -6.0);
    }

    #[test]
    fn exact_eval_requires_polynomial() {
        assert!(matches!(
            AnalyticFunction::exp(1.0).eval_exact(&int(0)),
            Err(Error::NotPolynomial(_))
        ));
    }

    #[test]
    fn as_polynomial_examples() {
        let a = MultiPoly::var(Var::alpha());
        let half_square = AnalyticFunction::monomial(rat(1, 2), 2);
        assert_eq!(
            half_square.as_polynomial(Var::alpha()),
            Some(a.pow(2).scale(&rat(1, 2)))
        );
        assert_eq!(AnalyticFunction::exp(1.0).as_polynomial(Var::alpha()), None);
        assert_eq!(
            poly(&[0]).as_polynomial(Var::alpha()),
            Some(MultiPoly::zero())
        );
    }

    #[test]
    fn parse_grammar() {
        assert_eq!(
            AnalyticFunction::parse("poly:0, 0, 1/2").unwrap(),
            AnalyticFunction::monomial(rat(1, 2), 2)
        );
        assert_eq!(
            AnalyticFunction::parse("exp:1").unwrap(),
            AnalyticFunction::exp(1.0)
        );
        assert_eq!(
            AnalyticFunction::parse("sin:2,0.5").unwrap(),
            AnalyticFunction::sin(2.0, 0.5)
        );
        assert_eq!(
            AnalyticFunction::parse("recip:10").unwrap(),
            AnalyticFunction::recip(10.0)
        );
        for bad in ["exp", "exp:1,2", "sin:1", "cos:1", "poly:x", "recip:"] {
            assert!(AnalyticFunction::parse(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn display_round_trips_base_forms() {
        for text in ["poly:0,0,1/2", "exp:1", "sin:1,0", "recip:10", "exp:-0.5"] {
            let f = AnalyticFunction::parse(text).unwrap();
            assert_eq!(f.to_string(), text);
        }
        assert_eq!(
            AnalyticFunction::recip(10.0).derivative(2).to_string(),
            "2*recip:10^3"
        );
    }

    fn families() -> Vec<AnalyticFunction> {
        vec![
            poly(&[3, -1, 4, 1, -5, 9, 2, 6, 5, 3]),
            AnalyticFunction::exp(0.7),
            AnalyticFunction::exp(-1.3),
            AnalyticFunction::sin(1.0, 0.0),
            AnalyticFunction::sin(2.5, 0.3),
            AnalyticFunction::recip(10.0),
            AnalyticFunction::recip(-4.0),
        ]
    }

    #[test]
    fn derivative_composition() {
        for f in families() {
            for a in 0..=8 {
                for b in 0..=8 {
                    let lhs = f.derivative(a).derivative(b);
                    let rhs = f.derivative(a + b);
                    if f.is_polynomial() {
                        assert_eq!(lhs, rhs);
                        continue;
                    }
                    for i in 0..20 {
                        let at = -1.5 + 0.17 * i as f64;
                        let (l, r) = (lhs.eval(at).unwrap(), rhs.eval(at).unwrap());
                        assert!(
                            (l - r).abs() <= 1e-12 * r.abs().max(f64::MIN_POSITIVE),
                            "{f} a={a} b={b} at={at}: {l} vs {r}"
                        );
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn first_derivative_matches_central_difference(at in -1.5f64..2.0, which in 0usize..7) {
            let f = &families()[which];
            let h = 1e-5;
            let fd = (f.eval(at + h).unwrap() - f.eval(at - h).unwrap()) / (2.0 * h);
            let exact = f.derivative(1).eval(at).unwrap();
            let scale = exact.abs().max(f.eval(at).unwrap().abs()).max(1.0);
            prop_assert!((fd - exact).abs() <= 1e-6 * scale, "{} at {}: {} vs {}", f, at, fd, exact);
        }
    }
}
