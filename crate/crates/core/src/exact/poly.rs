use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::rational::{format_rational, Rational};
use crate::error::{Error, Result};

/// Variable family. Families order before indices, so every `t` variable
/// sorts before every `x` variable, which sorts before the univariate `a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// Integration variables `t1..tn`.
    T,
    /// Sequence coordinates `x1..x{n+1}`.
    X,
    /// The univariate argument of a test function (and the free variable of
    /// `omega`).
    A,
}

/// A named polynomial variable such as `t3` or `x1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var {
    pub family: Family,
    pub index: u32,
}

impl Var {
    pub const fn new(family: Family, index: u32) -> Self {
        Var { family, index }
    }

    pub const fn t(index: u32) -> Self {
        Var::new(Family::T, index)
    }

    pub const fn x(index: u32) -> Self {
        Var::new(Family::X, index)
    }

    /// The univariate variable `a`.
    pub const fn alpha() -> Self {
        Var::new(Family::A, 0)
    }

    /// `family1 ..= family{count}`.
    pub fn family_range(family: Family, count: usize) -> Vec<Var> {
        (1..=count as u32).map(|i| Var::new(family, i)).collect()
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.family, self.index) {
            (Family::T, i) => write!(f, "t{i}"),
            (Family::X, i) => write!(f, "x{i}"),
            (Family::A, 0) => f.write_str("a"),
            (Family::A, i) => write!(f, "a{i}"),
        }
    }
}

/// Exponent vector stored sparsely: sorted by variable, no zero exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn from_exponents(exps: impl IntoIterator<Item = (Var, u32)>) -> Self {
        let mut map = BTreeMap::new();
        for (v, e) in exps {
            *map.entry(v).or_insert(0) += e;
        }
        Monomial(map.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn exponents(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0
            .binary_search_by(|(w, _)| w.cmp(&v))
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    /// Splits off the power of `v`: returns `(e, m / v^e)`.
    pub fn split(&self, v: Var) -> (u32, Monomial) {
        match self.0.binary_search_by(|(w, _)| w.cmp(&v)) {
            Ok(i) => {
                let mut rest = self.0.clone();
                let (_, e) = rest.remove(i);
                (e, Monomial(rest))
            }
            Err(_) => (0, self.clone()),
        }
    }

    /// The same monomial with the exponent of `v` replaced by `e`.
    fn with_exponent(&self, v: Var, e: u32) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + 1);
        let mut placed = false;
        for &(w, ew) in &self.0 {
            if w == v {
                placed = true;
                if e > 0 {
                    out.push((v, e));
                }
                continue;
            }
            if !placed && w > v {
                placed = true;
                if e > 0 {
                    out.push((v, e));
                }
            }
            out.push((w, ew));
        }
        if !placed && e > 0 {
            out.push((v, e));
        }
        Monomial(out)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }
}

/// Graded lexicographic order: total degree first, then the exponent of the
/// earliest variable (larger exponent is greater).
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            for (&(va, ea), &(vb, eb)) in self.0.iter().zip(&other.0) {
                match va.cmp(&vb) {
                    Ordering::Equal if ea != eb => return ea.cmp(&eb),
                    Ordering::Equal => {}
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                }
            }
            self.0.len().cmp(&other.0.len())
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, &(v, e)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Values for polynomial variables.
pub type Assignment = BTreeMap<Var, Rational>;

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Invariant: no stored coefficient is zero, so the zero polynomial is the
/// empty map and structural equality is polynomial equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn constant(c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        MultiPoly { terms }
    }

    pub fn var(v: Var) -> Self {
        Self::term(Rational::one(), Monomial::var(v))
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = MultiPoly::default();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// The value of a polynomial with no variables.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.terms
            .keys()
            .flat_map(|m| m.0.iter().map(|&(v, _)| v))
            .collect()
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.exponent(v) > 0)
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::default();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> MultiPoly {
        let mut base = self.clone();
        let mut acc = MultiPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Partial derivative with respect to `v`.
    pub fn diff(&self, v: Var) -> MultiPoly {
        let mut out = MultiPoly::default();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            if e > 0 {
                out.add_term(
                    m.with_exponent(v, e - 1),
                    c * Rational::from_integer(e.into()),
                );
            }
        }
        out
    }

    /// `k`-th partial derivative with respect to `v`.
    pub fn diff_n(&self, v: Var, k: u32) -> MultiPoly {
        let mut out = MultiPoly::default();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            if e >= k {
                let falling: u64 = (e - k + 1..=e).map(u64::from).product();
                out.add_term(
                    m.with_exponent(v, e - k),
                    c * Rational::from_integer(falling.into()),
                );
            }
        }
        out
    }

    /// Applies the mixed partial `d/dv1 d/dv2 ...` in sequence.
    pub fn diff_all(&self, vars: &[Var]) -> MultiPoly {
        vars.iter().fold(self.clone(), |p, &v| p.diff(v))
    }

    /// The antiderivative in `v` with zero constant of integration.
    pub fn antiderivative(&self, v: Var) -> MultiPoly {
        let mut out = MultiPoly::default();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            out.add_term(
                m.with_exponent(v, e + 1),
                c / Rational::from_integer((e + 1).into()),
            );
        }
        out
    }

    /// Definite integral in `v` from `lower` to `upper`.
    pub fn integrate(&self, v: Var, lower: &MultiPoly, upper: &MultiPoly) -> Result<MultiPoly> {
        if lower.contains_var(v) || upper.contains_var(v) {
            return Err(Error::BoundContainsVariable(v));
        }
        let anti = self.antiderivative(v);
        Ok(&anti.substitute(v, upper) - &anti.substitute(v, lower))
    }

    /// Replaces `v` by `replacement` everywhere.
    pub fn substitute(&self, v: Var, replacement: &MultiPoly) -> MultiPoly {
        if !self.contains_var(v) {
            return self.clone();
        }
        let mut by_power: BTreeMap<u32, MultiPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (e, rest) = m.split(v);
            by_power.entry(e).or_default().add_term(rest, c.clone());
        }
        let mut out = MultiPoly::default();
        let mut power = MultiPoly::one();
        let mut current = 0;
        for (e, coeff) in by_power {
            while current < e {
                power = &power * replacement;
                current += 1;
            }
            out = &out + &(&coeff * &power);
        }
        out
    }

    /// Substitutes the assigned variables and leaves the rest symbolic.
    pub fn eval_partial(&self, assignment: &Assignment) -> MultiPoly {
        let mut out = MultiPoly::default();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut rest = Vec::with_capacity(m.0.len());
            for &(v, e) in &m.0 {
                match assignment.get(&v) {
                    Some(value) => coeff *= num_traits::pow(value.clone(), e as usize),
                    None => rest.push((v, e)),
                }
            }
            out.add_term(Monomial(rest), coeff);
        }
        out
    }

    /// Exact value at a full assignment.
    pub fn eval(&self, assignment: &Assignment) -> Result<Rational> {
        let missing: Vec<Var> = self
            .vars()
            .into_iter()
            .filter(|v| !assignment.contains_key(v))
            .collect();
        if !missing.is_empty() {
            return Err(Error::MissingVariables(missing));
        }
        Ok(self
            .eval_partial(assignment)
            .as_constant()
            .expect("all variables assigned"))
    }

    /// Evaluates with `vars[i] = values[i]`.
    pub fn eval_at(&self, vars: &[Var], values: &[Rational]) -> Result<Rational> {
        let assignment: Assignment = vars.iter().copied().zip(values.iter().cloned()).collect();
        self.eval(&assignment)
    }
}

impl Zero for MultiPoly {
    fn zero() -> Self {
        MultiPoly::default()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for MultiPoly {
    fn one() -> Self {
        MultiPoly::constant(Rational::one())
    }
}

impl From<Rational> for MultiPoly {
    fn from(c: Rational) -> Self {
        MultiPoly::constant(c)
    }
}

impl From<Var> for MultiPoly {
    fn from(v: Var) -> Self {
        MultiPoly::var(v)
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;

    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let (big, small) = if self.len() >= rhs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;

    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;

    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::default();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;

    fn neg(self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &MultiPoly) -> MultiPoly {
                (&self).$method(rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;

    fn neg(self) -> MultiPoly {
        -&self
    }
}

/// Leading (graded-lex largest) term first, e.g. `t1^2 - 2*t1*t2 + 1/2*x1 - 3`.
impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            if m.is_one() {
                f.write_str(&format_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", format_rational(&abs))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};

    fn t(i: u32) -> MultiPoly {
        MultiPoly::var(Var::t(i))
    }

    fn x(i: u32) -> MultiPoly {
        MultiPoly::var(Var::x(i))
    }

    fn c(v: i64) -> MultiPoly {
        MultiPoly::constant(int(v))
    }

    #[test]
    fn addition_examples() {
        assert!((&t(1) + &(-&t(1))).is_zero());
        let tt = &t(1) * &t(2);
        assert_eq!(&tt + &tt, tt.scale(&int(2)));
        assert_eq!(&(&t(2) - &t(1)) + &t(1), t(2));
    }

    #[test]
    fn multiplication_examples() {
        let p = &(&t(2) - &t(1)) * &(&t(3) - &t(1));
        let expected = &(&(&(&t(2) * &t(3)) - &(&t(1) * &t(3))) - &(&t(1) * &t(2))) + &t(1).pow(2);
        assert_eq!(p, expected);
        assert!((&p * &MultiPoly::zero()).is_zero());
    }

    #[test]
    fn vandermonde_three_by_brute_force_terms() {
        let v = &(&(&t(2) - &t(1)) * &(&t(3) - &t(1))) * &(&t(3) - &t(2));
        // Oracle: expand the 2^3 sign/choice combinations term by term.
        let factors = [(2, 1), (3, 1), (3, 2)];
        let mut oracle: BTreeMap<Monomial, i64> = BTreeMap::new();
        for mask in 0..8u32 {
            let mut sign = 1;
            let mut exps = Vec::new();
            for (bit, &(j, i)) in factors.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    sign = -sign;
                    exps.push((Var::t(i), 1));
                } else {
                    exps.push((Var::t(j), 1));
                }
            }
            *oracle.entry(Monomial::from_exponents(exps)).or_default() += sign;
        }
        oracle.retain(|_, c| *c != 0);
        assert_eq!(v.len(), 6);
        assert_eq!(oracle.len(), 6);
        for (m, coeff) in oracle {
            assert_eq!(v.coefficient(&m), int(coeff));
            assert!(coeff == 1 || coeff == -1);
        }
    }

    #[test]
    fn differentiation_examples() {
        let d = &t(2) - &t(1);
        assert_eq!(d.diff(Var::t(1)), c(-1));
        let p = &t(1).pow(2) * &t(2);
        assert_eq!(p.diff(Var::t(1)), (&t(1) * &t(2)).scale(&int(2)));
        assert!(d.diff_n(Var::t(1), 2).is_zero());
        assert_eq!(
            t(1).pow(5).diff_n(Var::t(1), 3),
            t(1).pow(2).scale(&int(60))
        );
    }

    #[test]
    fn integration_examples() {
        let one = MultiPoly::one();
        assert_eq!(
            one.integrate(Var::t(1), &x(1), &x(2)).unwrap(),
            &x(2) - &x(1)
        );

        let inner = (&t(2) - &t(1)).integrate(Var::t(1), &x(1), &x(2)).unwrap();
        let outer = inner.integrate(Var::t(2), &x(2), &x(3)).unwrap();
        let closed = (&(&(&x(2) - &x(1)) * &(&x(3) - &x(1))) * &(&x(3) - &x(2))).scale(&rat(1, 2));
        assert_eq!(outer, closed);

        let val = t(1)
            .integrate(Var::t(1), &MultiPoly::zero(), &MultiPoly::one())
            .unwrap();
        assert_eq!(val.as_constant(), Some(rat(1, 2)));
    }

    #[test]
    fn integration_rejects_bound_in_variable() {
        let err = t(1).integrate(Var::t(1), &t(1), &x(2)).unwrap_err();
        assert!(matches!(err, Error::BoundContainsVariable(v) if v == Var::t(1)));
    }

    #[test]
    fn evaluation_examples() {
        let d = &t(2) - &t(1);
        assert_eq!(
            d.eval_at(&[Var::t(1), Var::t(2)], &[int(0), int(1)])
                .unwrap(),
            int(1)
        );
        let v = &(&(&t(2) - &t(1)) * &(&t(3) - &t(1))) * &(&t(3) - &t(2));
        let vars = Var::family_range(Family::T, 3);
        assert_eq!(v.eval_at(&vars, &[int(0), int(1), int(2)]).unwrap(), int(2));
        assert_eq!(MultiPoly::zero().eval(&Assignment::new()).unwrap(), int(0));
    }

    #[test]
    fn evaluation_reports_missing_variables() {
        let p = &(&t(1) * &x(2)) + &t(3);
        let err = p.eval_at(&[Var::t(1)], &[int(1)]).unwrap_err();
        match err {
            Error::MissingVariables(vs) => assert_eq!(vs, vec![Var::t(3), Var::x(2)]),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn substitution_examples() {
        let d = &t(2) - &t(1);
        assert_eq!(d.substitute(Var::t(1), &x(1)), &t(2) - &x(1));
        let a = MultiPoly::var(Var::alpha());
        let sum = &t(1) + &t(2);
        let expected = &(&t(1).pow(2) + &(&t(1) * &t(2)).scale(&int(2))) + &t(2).pow(2);
        assert_eq!(a.pow(2).substitute(Var::alpha(), &sum), expected);
        assert_eq!(d.substitute(Var::x(7), &c(3)), d);
    }

    #[test]
    fn canonical_form_has_no_zero_terms() {
        let p = &(&t(1) + &c(1)) - &t(1);
        assert_eq!(p, c(1));
        assert_eq!(p.len(), 1);
        assert!(MultiPoly::constant(int(0)).is_empty());
    }

    #[test]
    fn graded_lex_rendering() {
        let p =
            &(&(&t(1).pow(2) - &(&t(1) * &t(2)).scale(&int(2))) + &x(1).scale(&rat(1, 2))) - &c(3);
        assert_eq!(p.to_string(), "t1^2 - 2*t1*t2 + 1/2*x1 - 3");
        let q = &(&t(2) + &t(1).pow(2)) + &t(1);
        assert_eq!(q.to_string(), "t1^2 + t1 + t2");
        assert_eq!((-&t(1)).to_string(), "-t1");
        assert_eq!(MultiPoly::zero().to_string(), "0");
        assert_eq!(MultiPoly::var(Var::alpha()).pow(3).to_string(), "a^3");
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn small_rational() -> impl Strategy<Value = Rational> {
            (-20i64..=20, 1i64..=6).prop_map(|(p, q)| rat(p, q))
        }

        fn poly() -> impl Strategy<Value = MultiPoly> {
            let mono = prop::collection::vec(0u32..=3, 3).prop_map(|e| {
                Monomial::from_exponents(
                    e.into_iter()
                        .enumerate()
                        .map(|(i, d)| (Var::t(i as u32 + 1), d)),
                )
            });
            prop::collection::vec((mono, small_rational()), 0..6).prop_map(MultiPoly::from_terms)
        }

        fn point() -> impl Strategy<Value = Vec<Rational>> {
            prop::collection::vec(small_rational(), 3)
        }

        fn at(p: &MultiPoly, values: &[Rational]) -> Rational {
            p.eval_at(&Var::family_range(Family::T, 3), values).unwrap()
        }

        proptest! {
            #[test]
            fn ring_axioms(a in poly(), b in poly(), c in poly()) {
                prop_assert_eq!(&a + &b, &b + &a);
                prop_assert_eq!(&a * &b, &b * &a);
                prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
                prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
                prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
                prop_assert!((&a - &a).is_zero());
                prop_assert_eq!(&a * &MultiPoly::one(), a.clone());
            }

            #[test]
            fn evaluation_is_a_ring_homomorphism(a in poly(), b in poly(), v in point()) {
                prop_assert_eq!(at(&(&a + &b), &v), at(&a, &v) + at(&b, &v));
                prop_assert_eq!(at(&(&a * &b), &v), at(&a, &v) * at(&b, &v));
            }

            #[test]
            fn mixed_partials_commute(a in poly()) {
                let (u, w) = (Var::t(1), Var::t(3));
                prop_assert_eq!(a.diff(u).diff(w), a.diff(w).diff(u));
                prop_assert_eq!(a.diff_all(&[u, w, Var::t(2)]), a.diff_all(&[Var::t(2), w, u]));
            }

            #[test]
            fn product_rule(a in poly(), b in poly()) {
                let v = Var::t(2);
                prop_assert_eq!((&a * &b).diff(v), &(&a.diff(v) * &b) + &(&a * &b.diff(v)));
            }

            #[test]
            fn fundamental_theorem(a in poly(), lo in small_rational(), hi in small_rational()) {
                let v = Var::t(1);
                let (l, h) = (MultiPoly::constant(lo.clone()), MultiPoly::constant(hi.clone()));
                prop_assert_eq!(a.antiderivative(v).diff(v), a.clone());
                let integral = a.diff(v).integrate(v, &l, &h).unwrap();
                prop_assert_eq!(integral, &a.substitute(v, &h) - &a.substitute(v, &l));
            }

            #[test]
            fn substitution_then_eval_matches_eval(a in poly(), r in poly(), v in point()) {
                let target = Var::t(2);
                let direct = at(&a.substitute(target, &r), &v);
                let mut shifted = v.clone();
                shifted[1] = at(&r, &v);
                prop_assert_eq!(direct, at(&a, &shifted));
            }

            #[test]
            fn partial_then_full_evaluation(a in poly(), v in point()) {
                let mut first = Assignment::new();
                first.insert(Var::t(1), v[0].clone());
                let rest = a.eval_partial(&first);
                prop_assert!(!rest.contains_var(Var::t(1)));
                prop_assert_eq!(at(&rest, &v), at(&a, &v));
            }
        }
    }
}
