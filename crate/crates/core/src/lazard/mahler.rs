//! Mahler series on `Z_p^r`, distributions by their binomial moments, and the
//! Amice transform between them and power series.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::group_algebra::{multi_indices, partial_element, total_degree, MultiIndex, TruncatedGroupAlgebraElement, Truncation};
use crate::arith::{binomial_int, mahler_binomial_int, PadicNumber, Rational};
use crate::error::{Error, Result};

/// Power series in `T_1..T_r` truncated at total degree `D`; the ring structure is
/// the one of the truncated group algebra with `z_i` read as `T_i`.
pub type PowerSeries = TruncatedGroupAlgebraElement;

/// `f(λ) = Σ c_α binom(λ, α)` for `|α| ≤ D`.
#[derive(Clone, Debug, PartialEq)]
pub struct MahlerSeries {
    pub trunc: Truncation,
    coeffs: BTreeMap<MultiIndex, PadicNumber>,
    /// Declared analyticity order `h`, kept for bookkeeping only.
    pub order: Option<u32>,
}

impl MahlerSeries {
    pub fn from_coefficients(trunc: &Truncation, terms: impl IntoIterator<Item = (MultiIndex, PadicNumber)>) -> Result<Self> {
        let mut coeffs = BTreeMap::new();
        for (alpha, c) in terms {
            if alpha.len() != trunc.rank || total_degree(&alpha) > trunc.bound {
                return Err(Error::Shape(format!("multi-index {alpha:?} outside rank {} degree {}", trunc.rank, trunc.bound)));
            }
            coeffs.insert(alpha, c);
        }
        Ok(MahlerSeries { trunc: trunc.clone(), coeffs, order: None })
    }

    /// `λ ↦ binom(λ, α)`.
    pub fn binomial(trunc: &Truncation, alpha: &[u32]) -> Result<Self> {
        Self::from_coefficients(trunc, [(alpha.to_vec(), trunc.padic(&Rational::one()))])
    }

    /// Rank one: Mahler coefficients from values on `0..=D` by iterated differences,
    /// `c_k = Σ_j (−1)^{k−j} binom(k, j) f(j)`.
    pub fn from_values(trunc: &Truncation, values: &[PadicNumber]) -> Result<Self> {
        if trunc.rank != 1 || values.len() != trunc.bound as usize + 1 {
            return Err(Error::Shape(format!("need rank 1 and {} values", trunc.bound + 1)));
        }
        let mut terms = Vec::new();
        for k in 0..=trunc.bound {
            let mut c = PadicNumber::zero(trunc.prime, values[0].absolute_precision());
            for j in 0..=k {
                let b = binomial_int(&BigInt::from(k), j);
                let b = if (k - j) % 2 == 0 { b } else { -b };
                let w = PadicNumber::from_bigint(&b, trunc.prime, values[j as usize].absolute_precision() + 64);
                c = &c + &(&values[j as usize] * &w);
            }
            terms.push((vec![k], c));
        }
        Self::from_coefficients(trunc, terms)
    }

    pub fn coefficient(&self, alpha: &[u32]) -> Option<&PadicNumber> {
        self.coeffs.get(alpha)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &PadicNumber)> {
        self.coeffs.iter()
    }

    pub fn evaluate(&self, lambda: &[BigInt]) -> PadicNumber {
        let mut acc = PadicNumber::zero(self.trunc.prime, i64::from(self.trunc.precision));
        for (alpha, c) in self.terms() {
            let b = mahler_binomial_int(lambda, alpha);
            acc = &acc + &(c * &PadicNumber::from_bigint(&b, self.trunc.prime, c.absolute_precision() + 64));
        }
        acc
    }
}

/// A distribution, stored by its moments `ρ_α = μ(binom(λ, α))`.
#[derive(Clone, Debug, PartialEq)]
pub struct Distribution {
    pub trunc: Truncation,
    moments: BTreeMap<MultiIndex, PadicNumber>,
}

impl Distribution {
    pub fn from_moments(trunc: &Truncation, terms: impl IntoIterator<Item = (MultiIndex, PadicNumber)>) -> Result<Self> {
        let series = MahlerSeries::from_coefficients(trunc, terms)?;
        Ok(Distribution { trunc: trunc.clone(), moments: series.coeffs })
    }

    pub fn dirac(trunc: &Truncation, lambda: &[BigInt]) -> Result<Self> {
        if lambda.len() != trunc.rank {
            return Err(Error::Shape(format!("point of length {} for rank {}", lambda.len(), trunc.rank)));
        }
        let terms = multi_indices(trunc.rank, trunc.bound)
            .into_iter()
            .map(|a| {
                let b = mahler_binomial_int(lambda, &a);
                (a, PadicNumber::from_bigint(&b, trunc.prime, i64::from(trunc.precision)))
            })
            .collect::<Vec<_>>();
        Self::from_moments(trunc, terms)
    }

    /// The element `Σ ρ_α z^α` of the completed group algebra acts by these moments.
    pub fn from_group_algebra(x: &TruncatedGroupAlgebraElement) -> Self {
        Distribution { trunc: x.trunc.clone(), moments: x.terms().map(|(a, c)| (a.clone(), c.clone())).collect() }
    }

    /// The distribution of `∂_i`.
    pub fn partial(trunc: &Truncation, i: usize) -> Result<Self> {
        Ok(Self::from_group_algebra(&partial_element(trunc, i)?))
    }

    pub fn moment(&self, alpha: &[u32]) -> Option<&PadicNumber> {
        self.moments.get(alpha)
    }

    pub fn moments(&self) -> impl Iterator<Item = (&MultiIndex, &PadicNumber)> {
        self.moments.iter()
    }
}

/// `𝒜(μ) = Σ_α μ(binom(λ, α)) T^α`.
pub fn amice_transform(mu: &Distribution) -> PowerSeries {
    PowerSeries::from_terms(&mu.trunc, mu.moments().map(|(a, c)| (a.clone(), c.clone())).collect::<Vec<_>>())
        .expect("moments share the truncation")
}

/// Inverse of [`amice_transform`] on truncations.
pub fn distribution_from_series(series: &PowerSeries) -> Distribution {
    Distribution::from_group_algebra(series)
}

/// `μ(f) = Σ c_α ρ_α`.
pub fn pair_distribution(mu: &Distribution, f: &MahlerSeries) -> Result<PadicNumber> {
    if mu.trunc.rank != f.trunc.rank || mu.trunc.bound != f.trunc.bound || mu.trunc.prime != f.trunc.prime {
        return Err(Error::Shape("distribution and Mahler series use different truncations".into()));
    }
    let mut acc = PadicNumber::zero(f.trunc.prime, i64::from(f.trunc.precision));
    for (alpha, c) in f.terms() {
        if let Some(rho) = mu.moment(alpha) {
            acc = &acc + &(c * rho);
        }
    }
    Ok(acc)
}

#[derive(Clone, Debug, PartialEq)]
pub struct AnalyticityVerdict {
    /// `min v(c_α)/|α|` over `⌈D/2⌉ ≤ |α| ≤ D`; `None` if the window is empty.
    pub rate: Option<Rational>,
    pub threshold: Rational,
    pub consistent: bool,
    pub window: (u32, u32),
}

impl AnalyticityVerdict {
    pub fn describe(&self) -> String {
        let rate = self.rate.as_ref().map_or("none".to_string(), |r| r.to_string());
        let verdict = if self.consistent { "consistent with locally analytic" } else { "not consistent with locally analytic" };
        format!(
            "{verdict}: min v(c)/|alpha| = {rate} on degrees {}..={} (threshold {}; heuristic on a finite window)",
            self.window.0, self.window.1, self.threshold
        )
    }
}

/// Growth-rate heuristic for local analyticity on the upper half of the degree window.
/// A coefficient that is zero at its precision contributes its precision bound.
pub fn local_analyticity_test(f: &MahlerSeries, threshold: &Rational) -> AnalyticityVerdict {
    let hi = f.trunc.bound;
    let lo = hi.div_ceil(2).max(1);
    let rate = f
        .terms()
        .filter(|(a, _)| (lo..=hi).contains(&total_degree(a)))
        .map(|(a, c)| Rational::new(c.valuation_bound().into(), total_degree(a).into()))
        .min();
    let consistent = *threshold > Rational::zero() && rate.as_ref().is_some_and(|r| r >= threshold);
    AnalyticityVerdict { rate, threshold: threshold.clone(), consistent, window: (lo, hi) }
}

/// Coefficients of `binom(λ, a)` as a polynomial in `λ`, lowest degree first.
pub fn binomial_polynomial(a: u32) -> Vec<Rational> {
    let mut poly = vec![Rational::one()];
    for j in 0..a {
        let mut next = vec![Rational::zero(); poly.len() + 1];
        for (k, c) in poly.iter().enumerate() {
            next[k + 1] += c;
            next[k] -= c * Rational::from_integer(j.into());
        }
        poly = next;
    }
    let fact: BigInt = (1..=a).map(BigInt::from).product();
    poly.into_iter().map(|c| c / Rational::from_integer(fact.clone())).collect()
}

#[derive(Clone, Debug)]
pub struct DerivativeRoutes {
    /// `∂_i` paired with `f`.
    pub via_distribution: PadicNumber,
    /// `∂f/∂λ_i` at `λ = 0` from the monomial expansion.
    pub via_polynomial: PadicNumber,
}

impl DerivativeRoutes {
    pub fn agree(&self) -> bool {
        (&self.via_distribution - &self.via_polynomial).is_zero()
    }
}

pub fn derivative_at_identity(f: &MahlerSeries, i: usize) -> Result<DerivativeRoutes> {
    let via_distribution = pair_distribution(&Distribution::partial(&f.trunc, i)?, f)?;
    let mut via_polynomial = PadicNumber::zero(f.trunc.prime, i64::from(f.trunc.precision));
    for (alpha, c) in f.terms() {
        // other coordinates sit at 0, where binom(0, b) vanishes for b > 0
        if alpha.iter().enumerate().any(|(j, &b)| j != i && b > 0) || alpha[i] == 0 {
            continue;
        }
        let linear = binomial_polynomial(alpha[i])[1].clone();
        via_polynomial = &via_polynomial + &(c * &f.trunc.padic(&linear));
    }
    Ok(DerivativeRoutes { via_distribution, via_polynomial })
}

/// Random Mahler series with `p`-integral coefficients, reproducible from the rng.
pub fn random_mahler_series(rng: &mut impl rand::Rng, trunc: &Truncation) -> MahlerSeries {
    let modulus = num_traits::pow(BigInt::from(trunc.prime), trunc.precision as usize);
    let terms = multi_indices(trunc.rank, trunc.bound)
        .into_iter()
        .map(|a| {
            let digits: u64 = rng.gen();
            let c = BigInt::from(digits) % &modulus;
            (a, PadicNumber::from_bigint(&c, trunc.prime, i64::from(trunc.precision)))
        })
        .collect::<Vec<_>>();
    MahlerSeries::from_coefficients(trunc, terms).expect("indices within the truncation")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, padic_log_to, rat};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn trunc1(bound: u32) -> Truncation {
        Truncation::new(5, 1, bound, 6).unwrap()
    }

    fn same(x: &PadicNumber, q: Rational) -> bool {
        (x - &PadicNumber::from_rational(&q, x.prime(), x.absolute_precision())).is_zero()
    }

    #[test]
    fn dirac_transforms() {
        let s = trunc1(12);
        let at_zero = amice_transform(&Distribution::dirac(&s, &[BigInt::zero()]).unwrap());
        assert!(at_zero.sub(&PowerSeries::one(&s)).is_zero());
        let one_plus_t = PowerSeries::one(&s).add(&PowerSeries::generator(&s, 0));
        let mut power = PowerSeries::one(&s);
        for k in 0..=6 {
            let series = amice_transform(&Distribution::dirac(&s, &[BigInt::from(k)]).unwrap());
            assert!(series.sub(&power).is_zero(), "k = {k}");
            power = power.mul(&one_plus_t);
        }
    }

    #[test]
    fn partial_transforms_to_log() {
        let s = trunc1(12);
        let series = amice_transform(&Distribution::partial(&s, 0).unwrap());
        for a in 1..=12u32 {
            let sign = if a % 2 == 1 { 1 } else { -1 };
            assert!(same(series.coefficient(&[a]).unwrap(), rat(sign, a as i64)));
        }
        assert!(series.coefficient(&[0]).is_none());
    }

    #[test]
    fn transform_round_trip() {
        let s = Truncation::new(5, 2, 6, 6).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let f = random_mahler_series(&mut rng, &s);
        let mu = Distribution::from_moments(&s, f.terms().map(|(a, c)| (a.clone(), c.clone())).collect::<Vec<_>>()).unwrap();
        assert_eq!(distribution_from_series(&amice_transform(&mu)), mu);
    }

    #[test]
    fn pairings() {
        let s = trunc1(10);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let f = random_mahler_series(&mut rng, &s);
        let at_zero = pair_distribution(&Distribution::dirac(&s, &[BigInt::zero()]).unwrap(), &f).unwrap();
        assert_eq!(at_zero, f.evaluate(&[BigInt::zero()]));
        assert_eq!(at_zero, f.coefficient(&[0]).unwrap().clone());
        // Dirac at k evaluates, by the binomial moments
        let at_three = pair_distribution(&Distribution::dirac(&s, &[BigInt::from(3)]).unwrap(), &f).unwrap();
        assert!((&at_three - &f.evaluate(&[BigInt::from(3)])).is_zero());
        let d = Distribution::partial(&s, 0).unwrap();
        assert!(same(&pair_distribution(&d, &MahlerSeries::binomial(&s, &[1]).unwrap()).unwrap(), int(1)));
        assert!(same(&pair_distribution(&d, &MahlerSeries::binomial(&s, &[2]).unwrap()).unwrap(), rat(-1, 2)));
    }

    #[test]
    fn binomial_polynomials() {
        assert_eq!(binomial_polynomial(2), vec![int(0), rat(-1, 2), rat(1, 2)]);
        for a in 1..10u32 {
            let sign = if a % 2 == 1 { 1 } else { -1 };
            assert_eq!(binomial_polynomial(a)[1], rat(sign, a as i64));
            let at: Rational = binomial_polynomial(a).iter().enumerate().map(|(k, c)| c * Rational::from_integer(BigInt::from(7).pow(k as u32))).sum();
            assert_eq!(at, Rational::from_integer(binomial_int(&BigInt::from(7), a)));
        }
    }

    #[test]
    fn derivative_examples() {
        let s = trunc1(10);
        let r = derivative_at_identity(&MahlerSeries::binomial(&s, &[1]).unwrap(), 0).unwrap();
        assert!(same(&r.via_distribution, int(1)) && r.agree());
        let r = derivative_at_identity(&MahlerSeries::binomial(&s, &[2]).unwrap(), 0).unwrap();
        assert!(same(&r.via_polynomial, rat(-1, 2)) && r.agree());
    }

    #[test]
    fn derivative_routes_agree_on_random_series() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for rank in [1usize, 2] {
            let s = Truncation::new(5, rank, 10, 6).unwrap();
            for _ in 0..50 {
                let f = random_mahler_series(&mut rng, &s);
                for i in 0..rank {
                    assert!(derivative_at_identity(&f, i).unwrap().agree());
                }
            }
        }
    }

    #[test]
    fn analyticity_heuristic() {
        let s = trunc1(12);
        let geometric = MahlerSeries::from_coefficients(
            &s,
            (0..=12u32).map(|k| (vec![k], PadicNumber::from_bigint(&BigInt::from(5).pow(k), 5, 40))).collect::<Vec<_>>(),
        )
        .unwrap();
        let v = local_analyticity_test(&geometric, &rat(1, 2));
        assert_eq!(v.rate, Some(int(1)));
        assert!(v.consistent);
        assert!(v.describe().contains("heuristic"));
        let flat = MahlerSeries::from_coefficients(&s, (0..=12u32).map(|k| (vec![k], PadicNumber::one(5, 40))).collect::<Vec<_>>()).unwrap();
        let v = local_analyticity_test(&flat, &rat(1, 2));
        assert_eq!(v.rate, Some(int(0)));
        assert!(!v.consistent);
    }

    #[test]
    fn logarithm_is_locally_analytic() {
        let s = Truncation::new(5, 1, 12, 40).unwrap();
        let values: Vec<PadicNumber> = (0..=12i64)
            .map(|j| padic_log_to(&PadicNumber::from_int(1 + 5 * j, 5, 60), 40).unwrap())
            .collect();
        let f = MahlerSeries::from_values(&s, &values).unwrap();
        for j in 0..=12i64 {
            assert!((&f.evaluate(&[BigInt::from(j)]) - &values[j as usize]).is_zero());
        }
        let v = local_analyticity_test(&f, &rat(1, 2));
        assert!(v.consistent, "{}", v.describe());
        // ∂ f(0) = d/dλ log(1 + pλ) at 0 = p, up to the Mahler tail beyond degree 12
        let r = derivative_at_identity(&f, 0).unwrap();
        assert!(r.agree());
        let gap = &r.via_distribution - &PadicNumber::from_int(5, 5, 40);
        assert!(gap.valuation_bound() >= 8, "gap valuation {}", gap.valuation_bound());
    }
}
