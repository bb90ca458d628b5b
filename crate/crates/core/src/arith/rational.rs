//! Exact rationals.
//!
//! [`Rational`] is `num_rational::BigRational`: always reduced, positive
//! denominator, zero stored as `0/1`. The helpers here cover the handful of
//! number-theoretic operations the rest of the crate needs.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Exponent of `p` in a nonzero integer.
pub fn int_valuation(x: &BigInt, p: u64) -> u32 {
    assert!(!x.is_zero(), "valuation of zero");
    let p = BigInt::from(p);
    let mut x = x.abs();
    let mut v = 0;
    loop {
        let (q, r) = x.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        x = q;
        v += 1;
    }
}

/// `p`-adic valuation of a nonzero rational.
pub fn rat_valuation(q: &Rational, p: u64) -> i64 {
    int_valuation(q.numer(), p) as i64 - int_valuation(q.denom(), p) as i64
}

/// Least common multiple of the denominators of `xs` (1 for an empty slice).
pub fn common_denominator<'a>(xs: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    xs.into_iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valuations() {
        assert_eq!(rat_valuation(&rat(50, 3), 5), 2);
        assert_eq!(rat_valuation(&rat(3, 125), 5), -3);
        assert_eq!(int_valuation(&BigInt::from(-96), 2), 5);
    }

    #[test]
    fn reduced_form() {
        let q = rat(6, -4);
        assert_eq!(q.numer(), &BigInt::from(-3));
        assert_eq!(q.denom(), &BigInt::from(2));
        assert_eq!(rat(0, 7), Rational::zero());
        assert_eq!(Rational::zero().denom(), &BigInt::one());
    }

    #[test]
    fn lcm_of_denominators() {
        let xs = [rat(1, 4), rat(1, 6), int(3)];
        assert_eq!(common_denominator(&xs), BigInt::from(12));
    }
}
