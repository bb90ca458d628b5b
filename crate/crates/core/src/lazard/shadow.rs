//! The degree-one regulator: `f(g) = log_p det g` on `1 + pM_N(Z_p)` is a
//! homomorphism whose derivative at the identity is `p·Tr`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::Rng;

use crate::arith::{is_prime, padic_log_to, PadicNumber, Rational};
use crate::error::{Error, Result};
use crate::lie::primitive::signed_permutations;
use crate::lie::{primitive_element, LieAlgebra};

pub type IntMatrix = Vec<Vec<BigInt>>;

fn modulus(p: u64, e: u32) -> BigInt {
    num_traits::pow(BigInt::from(p), e as usize)
}

pub fn determinant(m: &IntMatrix) -> BigInt {
    let n = m.len();
    signed_permutations(n)
        .into_iter()
        .map(|(perm, s)| {
            let prod: BigInt = perm.iter().enumerate().map(|(i, &j)| m[i][j].clone()).product();
            if s > 0 { prod } else { -prod }
        })
        .sum()
}

pub fn matmul_mod(a: &IntMatrix, b: &IntMatrix, m: &BigInt) -> IntMatrix {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| &a[i][k] * &b[k][j]).sum::<BigInt>().mod_floor(m)).collect())
        .collect()
}

/// `f(g) = log_p(det g)` computed to absolute precision `digits`.
pub fn log_det(g: &IntMatrix, p: u64, digits: u32) -> Result<PadicNumber> {
    let det = PadicNumber::from_bigint(&determinant(g), p, i64::from(digits));
    padic_log_to(&det, i64::from(digits))
}

/// A random `1 + pX` with `X` reduced modulo `p^m`, so the entries are exact modulo `p^{m+1}`.
pub fn random_congruence_element(rng: &mut impl Rng, n: usize, p: u64, m: u32) -> IntMatrix {
    let bound = modulus(p, m);
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let x = BigInt::from(rng.gen::<u64>()).mod_floor(&bound);
                    BigInt::from(p) * x + if i == j { BigInt::one() } else { BigInt::zero() }
                })
                .collect()
        })
        .collect()
}

/// Coefficients of `det(I + tA)` as a polynomial in `t`, lowest degree first.
pub fn det_polynomial(a: &[Vec<Rational>]) -> Vec<Rational> {
    let n = a.len();
    let mut out = vec![Rational::zero(); n + 1];
    for (perm, s) in signed_permutations(n) {
        let mut poly = vec![Rational::from_integer(s.into())];
        for (i, &j) in perm.iter().enumerate() {
            let constant = if i == j { Rational::one() } else { Rational::zero() };
            let linear = a[i][j].clone();
            let mut next = vec![Rational::zero(); poly.len() + 1];
            for (k, c) in poly.iter().enumerate() {
                next[k] += c * &constant;
                next[k + 1] += c * &linear;
            }
            poly = next;
        }
        for (k, c) in poly.into_iter().enumerate() {
            out[k] += c;
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct ShadowReport {
    pub size: usize,
    pub prime: u64,
    pub precision: u32,
    pub pairs: usize,
    /// Pairs with `f(gh) − f(g) − f(h)` zero at its tracked precision.
    pub cocycle_pairs_ok: usize,
    /// Smallest absolute precision among the cocycle residuals.
    pub residual_precision: i64,
    /// `d/dt log_p det(1 + t·pE_ij)` at `t = 0`, one entry per matrix unit.
    pub linear_part: Vec<Rational>,
    /// `linear_part / p`, the derivative in the rescaled chart `g = 1 + pX`.
    pub chart_normalized: Vec<Rational>,
    /// The chart-normalized derivative agrees with `p_1` on every matrix unit.
    pub matches_p1: bool,
}

impl ShadowReport {
    pub fn passed(&self) -> bool {
        self.cocycle_pairs_ok == self.pairs && self.matches_p1
    }
}

/// Cocycle check on `pairs` random pairs plus the derivative at the identity.
pub fn regulator_shadow(size: usize, p: u64, m: u32, pairs: usize, rng: &mut impl Rng) -> Result<ShadowReport> {
    if !(1..=2).contains(&size) {
        return Err(Error::Range(format!("the regulator shadow supports N <= 2, got {size}")));
    }
    if !is_prime(p) || p == 2 {
        return Err(Error::Domain(format!("need an odd prime, got {p}")));
    }
    if m == 0 {
        return Err(Error::Range("precision must be positive".into()));
    }
    let digits = m + 1;
    let q = modulus(p, digits);
    let mut ok = 0;
    let mut residual_precision = i64::MAX;
    for _ in 0..pairs {
        let g = random_congruence_element(rng, size, p, m);
        let h = random_congruence_element(rng, size, p, m);
        let gh = matmul_mod(&g, &h, &q);
        let residual = &(&log_det(&gh, p, digits)? - &log_det(&g, p, digits)?) - &log_det(&h, p, digits)?;
        residual_precision = residual_precision.min(residual.absolute_precision());
        if residual.absolute_precision() < i64::from(m) {
            return Err(Error::PrecisionExhausted(format!(
                "cocycle residual known only modulo p^{}",
                residual.absolute_precision()
            )));
        }
        if residual.is_zero() {
            ok += 1;
        }
    }
    let pr = Rational::from_integer(p.into());
    let mut linear_part = Vec::new();
    for a in 0..size * size {
        let mut e = vec![vec![Rational::zero(); size]; size];
        e[a / size][a % size] = pr.clone();
        // log(P(t)) has linear coefficient P'(0)/P(0), and P(0) = 1
        linear_part.push(det_polynomial(&e)[1].clone());
    }
    let chart_normalized: Vec<Rational> = linear_part.iter().map(|c| c / &pr).collect();
    let p1 = primitive_element(&LieAlgebra::gl(size), 1)?;
    let matches_p1 = (0..size * size).all(|a| p1.coefficient(&[a]) == chart_normalized[a]);
    Ok(ShadowReport {
        size,
        prime: p,
        precision: m,
        pairs,
        cocycle_pairs_ok: ok,
        residual_precision: if pairs == 0 { i64::from(digits) } else { residual_precision },
        linear_part,
        chart_normalized,
        matches_p1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, padic_log};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn determinant_polynomial() {
        let a = vec![vec![int(1), int(2)], vec![int(3), int(4)]];
        // det(I + tA) = 1 + 5t − 2t²
        assert_eq!(det_polynomial(&a), vec![int(1), int(5), int(-2)]);
        assert_eq!(determinant(&vec![vec![BigInt::from(1), BigInt::from(2)], vec![BigInt::from(3), BigInt::from(4)]]), BigInt::from(-2));
    }

    #[test]
    fn rank_one_is_log() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let r = regulator_shadow(1, 5, 6, 25, &mut rng).unwrap();
        assert!(r.passed());
        assert_eq!(r.linear_part, vec![int(5)]);
        assert_eq!(r.chart_normalized, vec![int(1)]);
        // series oracle: log(1 + pλ) = pλ + O(p²), so the linear coefficient is p
        let u = PadicNumber::from_int(6, 5, 7);
        assert_eq!(padic_log(&u).unwrap().reduce(2), PadicNumber::from_int(5, 5, 2));
    }

    #[test]
    fn rank_two_cocycle_and_trace() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let r = regulator_shadow(2, 5, 6, 25, &mut rng).unwrap();
        assert_eq!(r.cocycle_pairs_ok, 25);
        assert!(r.residual_precision >= 6);
        // E_00 ↦ 1 and E_01 ↦ 0 after the chart rescaling
        assert_eq!(r.chart_normalized, vec![int(1), int(0), int(0), int(1)]);
        assert!(r.matches_p1);
    }

    #[test]
    fn bad_configurations() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(regulator_shadow(3, 5, 6, 1, &mut rng).is_err());
        assert!(regulator_shadow(1, 2, 6, 1, &mut rng).is_err());
        assert!(regulator_shadow(1, 9, 6, 1, &mut rng).is_err());
    }

    #[test]
    fn a_non_homomorphism_fails() {
        // the (0,0) entry is not multiplicative, so its logarithm is not a cocycle
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let q = modulus(5, 7);
        let mut failures = 0;
        for _ in 0..10 {
            let g = random_congruence_element(&mut rng, 2, 5, 6);
            let h = random_congruence_element(&mut rng, 2, 5, 6);
            let gh = matmul_mod(&g, &h, &q);
            let f = |m: &IntMatrix| padic_log_to(&PadicNumber::from_bigint(&m[0][0], 5, 7), 7).unwrap();
            if !(&(&f(&gh) - &f(&g)) - &f(&h)).is_zero() {
                failures += 1;
            }
        }
        assert!(failures > 0);
    }
}
