//! Elementary symmetric polynomials, `omega`, the Vandermonde polynomial, the
//! sum function and the derivative-sum operators `P_k` / `E_k`, all built as
//! exact objects.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use itertools::Itertools;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{Family, MultiPoly, Rational, Var};

/// Default largest `n` for which the Vandermonde polynomial is expanded
/// symbolically (720 terms at `n = 6`).
pub const DEFAULT_SYMBOLIC_CAP: usize = 6;

/// Elementary symmetric polynomial `e_k(args)` over any commutative ring.
///
/// Uses the product recurrence over `prod (1 + a_i z)`, so cost is
/// `O(k * m)` ring operations. `e_0 = 1`.
pub fn elementary_symmetric<T>(k: usize, args: &[T]) -> Result<T>
where
    T: Clone + Zero + One,
    for<'a> &'a T: Mul<&'a T, Output = T> + Add<&'a T, Output = T>,
{
    if k > args.len() {
        return Err(Error::OutOfRange {
            what: "k",
            value: k as i64,
            min: 0,
            max: args.len() as i64,
        });
    }
    let mut e = vec![T::zero(); k + 1];
    e[0] = T::one();
    for (seen, a) in args.iter().enumerate() {
        for j in (1..=k.min(seen + 1)).rev() {
            e[j] = &e[j] + &(&e[j - 1] * a);
        }
    }
    Ok(e.swap_remove(k))
}

/// `omega(t) = (t - r_1)(t - r_2)...(t - r_m)`; the empty product is 1.
pub fn omega(roots: &[MultiPoly], t: Var) -> Result<MultiPoly> {
    if roots.iter().any(|r| r.contains_var(t)) {
        return Err(Error::VariableCollision(t));
    }
    let tp = MultiPoly::var(t);
    Ok(roots
        .iter()
        .fold(MultiPoly::one(), |acc, r| &acc * &(&tp - r)))
}

/// `prod_{i<j} (v_j - v_i)` over any ring. Used for exact rationals, floats
/// and polynomial arguments alike.
pub fn vandermonde_product<T>(values: &[T]) -> T
where
    T: Clone + One,
    for<'a> &'a T: Sub<&'a T, Output = T> + Mul<&'a T, Output = T>,
{
    let mut acc = T::one();
    for j in 1..values.len() {
        for i in 0..j {
            acc = &acc * &(&values[j] - &values[i]);
        }
    }
    acc
}

/// `prod_{i<j} (v_j - v_i)` expanded over the given variables, with no cap.
pub fn vandermonde_of(vars: &[Var]) -> MultiPoly {
    let polys: Vec<MultiPoly> = vars.iter().copied().map(MultiPoly::var).collect();
    vandermonde_product(&polys)
}

/// The expanded Vandermonde polynomial in `family1..family{n}`.
pub fn vandermonde_poly(n: usize, family: Family, cap: usize) -> Result<MultiPoly> {
    if n < 1 {
        return Err(Error::OutOfRange {
            what: "n",
            value: n as i64,
            min: 1,
            max: cap as i64,
        });
    }
    if n > cap {
        return Err(Error::SymbolicCap { n, cap });
    }
    Ok(vandermonde_of(&Var::family_range(family, n)))
}

/// `s(t) = t1 + ... + tn`.
pub fn sum_poly(n: usize) -> MultiPoly {
    Var::family_range(Family::T, n)
        .into_iter()
        .fold(MultiPoly::zero(), |acc, v| &acc + &MultiPoly::var(v))
}

/// Differential operators acting on all variables of a list.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum OperatorKind {
    /// `P_k = sum_i d^k/dt_i^k`.
    PureSum(usize),
    /// `E_k = sum_{i_1<...<i_k} d^k/(dt_{i_1}...dt_{i_k})`.
    MixedSum(usize),
}

impl OperatorKind {
    pub fn order(self) -> usize {
        match self {
            OperatorKind::PureSum(k) | OperatorKind::MixedSum(k) => k,
        }
    }
}

impl fmt::Display for OperatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OperatorKind::PureSum(k) => write!(f, "P{k}"),
            OperatorKind::MixedSum(k) => write!(f, "E{k}"),
        }
    }
}

/// Applies `P_k` or `E_k` over `vars` to `p`. `E_0` is the identity; `P_0` is
/// rejected.
pub fn apply_operator(op: OperatorKind, p: &MultiPoly, vars: &[Var]) -> Result<MultiPoly> {
    let k = op.order();
    let min = match op {
        OperatorKind::PureSum(_) => 1,
        OperatorKind::MixedSum(_) => 0,
    };
    if k < min || k > vars.len() {
        return Err(Error::OutOfRange {
            what: "operator order",
            value: k as i64,
            min: min as i64,
            max: vars.len() as i64,
        });
    }
    Ok(match op {
        OperatorKind::PureSum(k) => vars
            .iter()
            .fold(MultiPoly::zero(), |acc, &v| &acc + &p.diff_n(v, k as u32)),
        OperatorKind::MixedSum(k) => vars
            .iter()
            .copied()
            .combinations(k)
            .fold(MultiPoly::zero(), |acc, combo| &acc + &p.diff_all(&combo)),
    })
}

/// Picks, per axis, the lower (`false`) or upper (`true`) end of an interval.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct VertexSelector(pub Vec<bool>);

impl VertexSelector {
    /// Number of upper ends chosen.
    pub fn upper_count(&self) -> usize {
        self.0.iter().filter(|&&b| b).count()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// True when no upper end is followed by a lower end.
    pub fn is_monotone(&self) -> bool {
        self.0.windows(2).all(|w| w[0] <= w[1])
    }

    pub fn select<T: Clone>(&self, bounds: &[(T, T)]) -> Vec<T> {
        self.0
            .iter()
            .zip(bounds)
            .map(|(&upper, (lo, hi))| if upper { hi.clone() } else { lo.clone() })
            .collect()
    }
}

impl fmt::Display for VertexSelector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, &b) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(if b { "1" } else { "0" })?;
        }
        f.write_str(")")
    }
}

/// All `2^n` vertices of a box, in binary-counter order with the first axis
/// as the least significant bit.
pub fn enumerate_vertices(bounds: &[(Rational, Rational)]) -> Vec<(VertexSelector, Vec<Rational>)> {
    let n = bounds.len();
    (0..1usize << n)
        .map(|code| {
            let sel = VertexSelector((0..n).map(|bit| code >> bit & 1 == 1).collect());
            let point = sel.select(bounds);
            (sel, point)
        })
        .collect()
}

/// The `n + 1` non-decreasing selectors: the `i`-th (1-based) has `n + 1 - i`
/// zeros followed by `i - 1` ones.
pub fn monotone_selectors(n: usize) -> Vec<VertexSelector> {
    (1..=n + 1)
        .map(|i| VertexSelector((0..n).map(|j| j >= n + 1 - i).collect()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    fn tv(i: u32) -> MultiPoly {
        MultiPoly::var(Var::t(i))
    }

    #[test]
    fn elementary_symmetric_examples() {
        let (a, b, c) = (tv(1), tv(2), tv(3));
        let e2 = elementary_symmetric(2, &[a.clone(), b.clone(), c.clone()]).unwrap();
        assert_eq!(e2, &(&(&a * &b) + &(&a * &c)) + &(&b * &c));
        assert_eq!(
            elementary_symmetric(0, std::slice::from_ref(&a)).unwrap(),
            MultiPoly::one()
        );
        assert_eq!(
            elementary_symmetric::<MultiPoly>(0, &[]).unwrap(),
            MultiPoly::one()
        );

        let t = MultiPoly::var(Var::alpha());
        let e1 = elementary_symmetric(1, &[&t - &a, &t - &b]).unwrap();
        assert_eq!(e1, &(&t.scale(&int(2)) - &a) - &b);
    }

    #[test]
    fn elementary_symmetric_rejects_large_k() {
        assert!(matches!(
            elementary_symmetric(3, &[int(1), int(2)]),
            Err(Error::OutOfRange { .. })
        ));
    }

    #[test]
    fn elementary_symmetric_over_rationals() {
        let vals = [int(1), int(2), int(3), int(4)];
        assert_eq!(elementary_symmetric(2, &vals).unwrap(), int(35));
        assert_eq!(elementary_symmetric(4, &vals).unwrap(), int(24));
    }

    #[test]
    fn omega_examples() {
        let a = MultiPoly::var(Var::alpha());
        let w = omega(&[tv(1), tv(2)], Var::alpha()).unwrap();
        let expected = &(&a.pow(2) - &(&a * &(&tv(1) + &tv(2)))) + &(&tv(1) * &tv(2));
        assert_eq!(w, expected);
        assert_eq!(omega(&[], Var::alpha()).unwrap(), MultiPoly::one());
        let w01 = omega(&[MultiPoly::zero(), MultiPoly::one()], Var::alpha()).unwrap();
        assert_eq!(w01, &a.pow(2) - &a);
    }

    #[test]
    fn omega_rejects_collision() {
        let a = MultiPoly::var(Var::alpha());
        assert!(matches!(
            omega(&[a], Var::alpha()),
            Err(Error::VariableCollision(_))
        ));
    }

    #[test]
    fn vandermonde_examples() {
        assert_eq!(vandermonde_poly(1, Family::T, 6).unwrap(), MultiPoly::one());
        assert_eq!(vandermonde_poly(2, Family::T, 6).unwrap(), &tv(2) - &tv(1));
        let v3 = vandermonde_poly(3, Family::T, 6).unwrap();
        let vars = Var::family_range(Family::T, 3);
        assert_eq!(
            v3.eval_at(&vars, &[int(0), int(1), int(2)]).unwrap(),
            int(2)
        );
        assert_eq!(v3.total_degree(), 3);
        assert_eq!(vandermonde_poly(6, Family::T, 6).unwrap().len(), 720);
    }

    #[test]
    fn vandermonde_limits() {
        assert!(matches!(
            vandermonde_poly(0, Family::T, 6),
            Err(Error::OutOfRange { .. })
        ));
        assert!(matches!(
            vandermonde_poly(7, Family::T, 6),
            Err(Error::SymbolicCap { n: 7, cap: 6 })
        ));
    }

    #[test]
    fn vandermonde_product_matches_direct_product() {
        assert_eq!(vandermonde_product(&[0.0, 1.0, 2.0]), 2.0);
        assert_eq!(
            vandermonde_product(&[int(0), int(1), int(2), int(4)]),
            int(48)
        );
        assert_eq!(vandermonde_product::<f64>(&[]), 1.0);
    }

    #[test]
    fn operator_examples() {
        let vars = Var::family_range(Family::T, 3);
        let d = &tv(2) - &tv(1);
        assert!(apply_operator(OperatorKind::MixedSum(1), &d, &vars[..2])
            .unwrap()
            .is_zero());
        let prod = &tv(1) * &tv(2);
        assert_eq!(
            apply_operator(OperatorKind::MixedSum(2), &prod, &vars[..2]).unwrap(),
            MultiPoly::one()
        );
        let v3 = vandermonde_poly(3, Family::T, 6).unwrap();
        assert!(apply_operator(OperatorKind::PureSum(2), &v3, &vars)
            .unwrap()
            .is_zero());
        assert_eq!(
            apply_operator(OperatorKind::MixedSum(0), &v3, &vars).unwrap(),
            v3
        );
    }

    #[test]
    fn operator_order_out_of_range() {
        let vars = Var::family_range(Family::T, 2);
        let p = tv(1);
        assert!(apply_operator(OperatorKind::PureSum(0), &p, &vars).is_err());
        assert!(apply_operator(OperatorKind::MixedSum(3), &p, &vars).is_err());
    }

    #[test]
    fn vertex_enumeration() {
        let unit = vec![(int(0), int(1))];
        let v = enumerate_vertices(&unit);
        assert_eq!(v.len(), 2);
        assert_eq!(v[0], (VertexSelector(vec![false]), vec![int(0)]));
        assert_eq!(v[1], (VertexSelector(vec![true]), vec![int(1)]));

        let two = vec![(int(0), int(1)), (int(1), int(2))];
        let pts: Vec<Vec<Rational>> = enumerate_vertices(&two)
            .into_iter()
            .map(|(_, p)| p)
            .collect();
        assert_eq!(
            pts,
            vec![
                vec![int(0), int(1)],
                vec![int(1), int(1)],
                vec![int(0), int(2)],
                vec![int(1), int(2)],
            ]
        );

        for n in 1..=5 {
            let bounds = vec![(rat(-1, 2), rat(3, 2)); n];
            assert_eq!(enumerate_vertices(&bounds).len(), 1 << n);
        }
    }

    #[test]
    fn monotone_selector_examples() {
        let two: Vec<String> = monotone_selectors(2)
            .iter()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(two, ["(0,0)", "(0,1)", "(1,1)"]);
        let one: Vec<String> = monotone_selectors(1)
            .iter()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(one, ["(0)", "(1)"]);
        for n in 1..=8 {
            let sels = monotone_selectors(n);
            assert_eq!(sels.len(), n + 1);
            for (i, s) in sels.iter().enumerate() {
                assert_eq!(s.upper_count(), i);
                assert!(s.is_monotone());
            }
        }
    }
}
