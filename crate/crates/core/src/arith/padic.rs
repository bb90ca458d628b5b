//! Truncated p-adic numbers with pessimistic precision tracking.
//!
//! A [`PadicNumber`] stores `p^valuation * unit + O(p^(valuation + precision))`
//! where `unit` is a residue modulo `p^precision`. A unit of zero means the
//! value is only known to be divisible by `p^(valuation + precision)`.
//! Every operation returns the largest modulus it can certify.

use std::cmp::min;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::rational::{int_valuation, rat_valuation, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PadicNumber {
    prime: u64,
    valuation: i64,
    unit: BigInt,
    precision: u32,
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

fn pow(p: u64, e: u32) -> BigInt {
    num_traits::pow(BigInt::from(p), e as usize)
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let g = a.extended_gcd(m);
    debug_assert!(g.gcd.is_one(), "not invertible");
    g.x.mod_floor(m)
}

impl PadicNumber {
    /// The value `O(p^abs_precision)`.
    pub fn zero(prime: u64, abs_precision: i64) -> Self {
        assert!(is_prime(prime), "{prime} is not prime");
        PadicNumber { prime, valuation: abs_precision - 1, unit: BigInt::zero(), precision: 1 }
    }

    pub fn one(prime: u64, abs_precision: i64) -> Self {
        Self::from_int(1, prime, abs_precision)
    }

    pub fn from_int(n: i64, prime: u64, abs_precision: i64) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(n)), prime, abs_precision)
    }

    pub fn from_bigint(n: &BigInt, prime: u64, abs_precision: i64) -> Self {
        Self::from_rational(&Rational::from_integer(n.clone()), prime, abs_precision)
    }

    /// Reduces an exact rational modulo `p^abs_precision`.
    pub fn from_rational(q: &Rational, prime: u64, abs_precision: i64) -> Self {
        assert!(is_prime(prime), "{prime} is not prime");
        if q.is_zero() {
            return Self::zero(prime, abs_precision);
        }
        let v = rat_valuation(q, prime);
        if abs_precision - v <= 0 {
            return Self::zero(prime, abs_precision);
        }
        let rel = (abs_precision - v) as u32;
        let modulus = pow(prime, rel);
        let p = BigInt::from(prime);
        let strip = |x: &BigInt| {
            let mut x = x.clone();
            while (&x % &p).is_zero() {
                x /= &p;
            }
            x
        };
        let num = strip(q.numer());
        let den = strip(q.denom());
        let unit = (num.mod_floor(&modulus) * mod_inverse(&den.mod_floor(&modulus), &modulus))
            .mod_floor(&modulus);
        PadicNumber { prime, valuation: v, unit, precision: rel }
    }

    /// Reduces an exact rational keeping `rel_precision` significant digits.
    pub fn from_rational_rel(q: &Rational, prime: u64, rel_precision: u32) -> Self {
        if q.is_zero() {
            return Self::zero(prime, rel_precision as i64);
        }
        let v = rat_valuation(q, prime);
        Self::from_rational(q, prime, v + rel_precision as i64)
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    /// Number of known significant digits (meaningless for zero).
    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn unit(&self) -> &BigInt {
        &self.unit
    }

    /// The value is known modulo `p^absolute_precision()`.
    pub fn absolute_precision(&self) -> i64 {
        self.valuation + self.precision as i64
    }

    pub fn is_zero(&self) -> bool {
        self.unit.is_zero()
    }

    /// Exact valuation, or `None` when the value is zero to its precision.
    pub fn valuation(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.valuation)
    }

    /// Exact valuation if nonzero, otherwise the guaranteed lower bound.
    pub fn valuation_bound(&self) -> i64 {
        if self.is_zero() {
            self.absolute_precision()
        } else {
            self.valuation
        }
    }

    /// The canonical representative `p^v * unit`.
    pub fn to_rational(&self) -> Rational {
        if self.is_zero() {
            return Rational::zero();
        }
        let p = BigInt::from(self.prime);
        let u = Rational::from_integer(self.unit.clone());
        if self.valuation >= 0 {
            u * Rational::from_integer(num_traits::pow(p, self.valuation as usize))
        } else {
            u / Rational::from_integer(num_traits::pow(p, (-self.valuation) as usize))
        }
    }

    /// Forgets digits beyond `p^abs_precision`.
    pub fn reduce(&self, abs_precision: i64) -> Self {
        if abs_precision >= self.absolute_precision() {
            return self.clone();
        }
        Self::from_rational(&self.to_rational(), self.prime, abs_precision)
    }

    /// True iff `self - other` is zero at the tracked precision.
    pub fn eq_at_precision(&self, other: &Self) -> bool {
        (self - other).is_zero()
    }

    fn check_prime(&self, other: &Self) {
        assert_eq!(self.prime, other.prime, "mixing p-adic numbers for different primes");
    }

    /// Divides by `n`, losing nothing in relative precision.
    pub fn div_int(&self, n: &BigInt) -> Self {
        assert!(!n.is_zero(), "division by zero");
        let v = int_valuation(n, self.prime) as i64;
        if self.is_zero() {
            return Self::zero(self.prime, self.absolute_precision() - v);
        }
        let q = Rational::from_integer(n.clone());
        let divisor = Self::from_rational_rel(&q, self.prime, self.precision);
        self.div(&divisor).expect("divisor is a nonzero exact integer")
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.check_prime(other);
        if other.is_zero() {
            return Err(Error::PrecisionExhausted("division by a value that is zero to its precision".into()));
        }
        if self.is_zero() {
            return Ok(Self::zero(self.prime, self.absolute_precision() - other.valuation));
        }
        let rel = min(self.precision, other.precision);
        let m = pow(self.prime, rel);
        let unit = (&self.unit * mod_inverse(&other.unit.mod_floor(&m), &m)).mod_floor(&m);
        Ok(PadicNumber { prime: self.prime, valuation: self.valuation - other.valuation, unit, precision: rel })
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.prime, self.precision as i64);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl Add for &PadicNumber {
    type Output = PadicNumber;
    fn add(self, rhs: &PadicNumber) -> PadicNumber {
        self.check_prime(rhs);
        let abs = min(self.absolute_precision(), rhs.absolute_precision());
        PadicNumber::from_rational(&(self.to_rational() + rhs.to_rational()), self.prime, abs)
    }
}

impl Sub for &PadicNumber {
    type Output = PadicNumber;
    fn sub(self, rhs: &PadicNumber) -> PadicNumber {
        self + &(-rhs)
    }
}

impl Neg for &PadicNumber {
    type Output = PadicNumber;
    fn neg(self) -> PadicNumber {
        if self.is_zero() {
            return self.clone();
        }
        let m = pow(self.prime, self.precision);
        PadicNumber { unit: (-&self.unit).mod_floor(&m), ..self.clone() }
    }
}

impl Mul for &PadicNumber {
    type Output = PadicNumber;
    fn mul(self, rhs: &PadicNumber) -> PadicNumber {
        self.check_prime(rhs);
        match (self.is_zero(), rhs.is_zero()) {
            (true, true) => PadicNumber::zero(self.prime, self.absolute_precision() + rhs.absolute_precision()),
            (true, false) => PadicNumber::zero(self.prime, self.absolute_precision() + rhs.valuation),
            (false, true) => PadicNumber::zero(self.prime, rhs.absolute_precision() + self.valuation),
            (false, false) => {
                let rel = min(self.precision, rhs.precision);
                let m = pow(self.prime, rel);
                PadicNumber {
                    prime: self.prime,
                    valuation: self.valuation + rhs.valuation,
                    unit: (&self.unit * &rhs.unit).mod_floor(&m),
                    precision: rel,
                }
            }
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for PadicNumber {
            type Output = PadicNumber;
            fn $f(self, rhs: PadicNumber) -> PadicNumber {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for PadicNumber {
    type Output = PadicNumber;
    fn neg(self) -> PadicNumber {
        -&self
    }
}

impl fmt::Display for PadicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            write!(f, "O({}^{})", self.prime, self.absolute_precision())
        } else {
            write!(f, "{}*{}^{} + O({}^{})", self.unit, self.prime, self.valuation, self.prime, self.absolute_precision())
        }
    }
}

/// `floor(log_p(a))` for `a >= 1`.
fn floor_log(a: u64, p: u64) -> i64 {
    let mut k = 0;
    let mut x = a;
    while x >= p {
        x /= p;
        k += 1;
    }
    k
}

/// p-adic logarithm `log(u) = sum_{a>=1} (-1)^(a-1) (u-1)^a / a`.
///
/// Requires `v(u-1) >= 1` (`>= 2` for `p = 2`). The result carries the
/// absolute precision of `u`: an input error `O(p^N)` perturbs every term
/// by at most `O(p^N)`, and the series is cut once `a*v(u-1) - floor(log_p a) >= N`.
pub fn padic_log(u: &PadicNumber) -> Result<PadicNumber> {
    let p = u.prime;
    let n = u.absolute_precision();
    if n < 1 {
        return Err(Error::PrecisionExhausted(format!("input known only modulo p^{n}")));
    }
    let one = PadicNumber::one(p, n);
    let z = u - &one;
    let required = if p == 2 { 2 } else { 1 };
    if z.valuation_bound() < required {
        return Err(Error::Domain(format!(
            "log_p needs v(u-1) >= {required}, got {}",
            z.valuation_bound()
        )));
    }
    if z.is_zero() {
        return Ok(PadicNumber::zero(p, n));
    }
    let vz = z.valuation;
    let zr = z.to_rational();
    let mut sum = Rational::zero();
    let mut power = Rational::one();
    let mut a: u64 = 1;
    loop {
        if a as i64 * vz - floor_log(a, p) >= n {
            break;
        }
        power *= &zr;
        let term = &power / Rational::from_integer(BigInt::from(a));
        if a % 2 == 1 {
            sum += term;
        } else {
            sum -= term;
        }
        a += 1;
    }
    Ok(PadicNumber::from_rational(&sum, p, n))
}

/// [`padic_log`] reduced to a requested absolute precision.
pub fn padic_log_to(u: &PadicNumber, abs_precision: i64) -> Result<PadicNumber> {
    if abs_precision > u.absolute_precision() {
        return Err(Error::PrecisionExhausted(format!(
            "requested O(p^{abs_precision}) but input is only known to O(p^{})",
            u.absolute_precision()
        )));
    }
    Ok(padic_log(u)?.reduce(abs_precision))
}
