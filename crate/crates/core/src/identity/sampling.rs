//! Seeded random inputs. Every case draws from its own generator, keyed by
//! the suite seed, a tag, `n` and the case index.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::exact::{int, rat, Monomial, MultiPoly, Rational, Var};
use crate::funcs::AnalyticFunction;
use crate::points::PointSequence;

/// Bound on numerators and denominators of random rationals.
pub const RATIONAL_BOUND: i64 = 100;

fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of one case, derived from the suite seed and the case coordinates.
pub fn case_seed(seed: u64, tag: &str, n: usize, index: usize) -> u64 {
    let tag_hash = tag.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
        (h ^ b as u64).wrapping_mul(0x100_0000_01b3)
    });
    [tag_hash, n as u64, index as u64]
        .into_iter()
        .fold(mix(seed), |acc, v| mix(acc ^ v))
}

pub fn case_rng(seed: u64, tag: &str, n: usize, index: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(case_seed(seed, tag, n, index))
}

/// `p/q` with `|p| <= bound` and `1 <= q <= bound`.
pub fn random_rational<R: Rng>(rng: &mut R, bound: i64) -> Rational {
    rat(rng.gen_range(-bound..=bound), rng.gen_range(1..=bound))
}

pub fn random_nonzero_rational<R: Rng>(rng: &mut R, bound: i64) -> Rational {
    loop {
        let r = random_rational(rng, bound);
        if !r.is_zero() {
            return r;
        }
    }
}

/// `count` distinct random rationals in drawing order.
pub fn random_distinct_rationals<R: Rng>(rng: &mut R, count: usize) -> Vec<Rational> {
    let mut out: Vec<Rational> = Vec::with_capacity(count);
    while out.len() < count {
        let r = random_rational(rng, RATIONAL_BOUND);
        if !out.contains(&r) {
            out.push(r);
        }
    }
    out
}

/// A strictly increasing rational sequence of `count` points.
pub fn random_rational_points<R: Rng>(rng: &mut R, count: usize) -> PointSequence<Rational> {
    let mut values = random_distinct_rationals(rng, count);
    values.sort();
    PointSequence::new(values).expect("distinct sorted values are increasing")
}

/// `count` increasing floats in `[lo, hi]` with consecutive gaps at least
/// `min_gap`: sorted uniforms on the shortened interval, spread back out.
pub fn random_float_points<R: Rng>(
    rng: &mut R,
    count: usize,
    lo: f64,
    hi: f64,
    min_gap: f64,
) -> Result<PointSequence<f64>> {
    let slack = hi - lo - (count as f64 - 1.0) * min_gap;
    assert!(
        slack >= 0.0,
        "interval too short for {count} points at gap {min_gap}"
    );
    let mut u: Vec<f64> = (0..count).map(|_| rng.gen_range(0.0..=slack)).collect();
    u.sort_by(f64::total_cmp);
    let values = u
        .into_iter()
        .enumerate()
        .map(|(i, v)| lo + v + i as f64 * min_gap)
        .collect();
    PointSequence::with_min_gap(values, min_gap * 0.5)
}

/// A univariate polynomial of exactly `degree` with small integer
/// coefficients and a nonzero leading one.
pub fn random_polynomial_function<R: Rng>(rng: &mut R, degree: usize) -> AnalyticFunction {
    let mut coeffs: Vec<Rational> = (0..degree).map(|_| int(rng.gen_range(-9..=9))).collect();
    let lead = loop {
        let c = rng.gen_range(-9..=9);
        if c != 0 {
            break c;
        }
    };
    coeffs.push(int(lead));
    AnalyticFunction::polynomial(coeffs)
}

/// A sparse polynomial in `vars` with up to `terms` monomials, each exponent
/// at most `max_degree`, and rational coefficients.
pub fn random_multipoly<R: Rng>(
    rng: &mut R,
    vars: &[Var],
    max_degree: u32,
    terms: usize,
) -> MultiPoly {
    MultiPoly::from_terms((0..terms).map(|_| {
        let m = Monomial::from_exponents(vars.iter().map(|&v| (v, rng.gen_range(0..=max_degree))));
        (m, random_nonzero_rational(rng, 9))
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn case_seeds_separate_coordinates() {
        let a = case_seed(1, "x", 2, 3);
        assert_eq!(a, case_seed(1, "x", 2, 3));
        assert_ne!(a, case_seed(2, "x", 2, 3));
        assert_ne!(a, case_seed(1, "y", 2, 3));
        assert_ne!(a, case_seed(1, "x", 3, 2));
        assert_ne!(a, case_seed(1, "x", 2, 4));
    }

    #[test]
    fn float_points_respect_gap_and_range() {
        for idx in 0..200 {
            let mut rng = case_rng(0, "gap", 5, idx);
            let p = random_float_points(&mut rng, 6, -2.0, 3.0, 0.2).unwrap();
            let v = p.values();
            assert!(v[0] >= -2.0 && v[5] <= 3.0);
            assert!(v.windows(2).all(|w| w[1] - w[0] >= 0.2 - 1e-12));
        }
    }

    #[test]
    fn rational_points_are_bounded_and_increasing() {
        let mut rng = case_rng(9, "q", 3, 0);
        let p = random_rational_points(&mut rng, 8);
        for r in p.values() {
            assert!(r.numer().magnitude() <= &100u32.into());
            assert!(r.denom() <= &100.into());
        }
    }

    #[test]
    fn polynomial_function_has_exact_degree() {
        let mut rng = case_rng(3, "f", 0, 0);
        for d in 0..8 {
            assert_eq!(random_polynomial_function(&mut rng, d).degree(), Some(d));
        }
    }
}
