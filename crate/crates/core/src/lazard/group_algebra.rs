//! Degree-truncated completed group algebras of `Z_p^r` with Lazard's valuation.
//!
//! Elements are `Σ λ_α z^α` with `z_i = x_i − 1` and `|α| ≤ D`. The weight of a
//! monomial is `w(z^α) = Σ α_i ω_i` and `w(x) = min v(λ_α) + w(z^α)`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::arith::rational::factorial;
use crate::arith::{is_prime, PadicNumber, Rational};
use crate::error::{Error, Result};

pub type MultiIndex = Vec<u32>;

/// All multi-indices of length `r` with `|α| ≤ bound`, by total degree then lexicographically.
pub fn multi_indices(r: usize, bound: u32) -> Vec<MultiIndex> {
    fn rec(r: usize, left: u32, cur: &mut MultiIndex, out: &mut Vec<MultiIndex>) {
        if cur.len() == r {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for a in (0..=left).rev() {
            cur.push(a);
            rec(r, left - a, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for d in 0..=bound {
        rec(r, d, &mut Vec::new(), &mut out);
    }
    out
}

pub fn total_degree(alpha: &[u32]) -> u32 {
    alpha.iter().sum()
}

/// Shared parameters of a truncation: prime, rank, degree bound, precision and weights.
#[derive(Clone, Debug, PartialEq)]
pub struct Truncation {
    pub prime: u64,
    pub rank: usize,
    pub bound: u32,
    /// Relative precision used when rational coefficients are introduced.
    pub precision: u32,
    pub weights: Vec<Rational>,
}

impl Truncation {
    /// Unit weights; requires an odd prime so that `1 > 1/(p − 1)`.
    pub fn new(prime: u64, rank: usize, bound: u32, precision: u32) -> Result<Self> {
        Self::with_weights(prime, rank, bound, precision, vec![Rational::one(); rank])
    }

    pub fn with_weights(prime: u64, rank: usize, bound: u32, precision: u32, weights: Vec<Rational>) -> Result<Self> {
        if !is_prime(prime) {
            return Err(Error::Domain(format!("{prime} is not prime")));
        }
        if weights.len() != rank {
            return Err(Error::Shape(format!("{} weights for rank {rank}", weights.len())));
        }
        let floor = Rational::new(1.into(), (prime - 1).into());
        if weights.iter().any(|w| *w <= floor) {
            return Err(Error::Domain(format!("weights must exceed 1/(p-1) = {floor}")));
        }
        if precision == 0 {
            return Err(Error::Range("precision must be at least one digit".into()));
        }
        Ok(Truncation { prime, rank, bound, precision, weights })
    }

    pub fn weight(&self, alpha: &[u32]) -> Rational {
        alpha.iter().zip(&self.weights).map(|(&a, w)| w * Rational::from_integer(a.into())).sum()
    }

    pub fn padic(&self, q: &Rational) -> PadicNumber {
        PadicNumber::from_rational_rel(q, self.prime, self.precision)
    }

    pub fn unit_index(&self, i: usize) -> MultiIndex {
        let mut a = vec![0; self.rank];
        a[i] = 1;
        a
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedGroupAlgebraElement {
    pub trunc: Truncation,
    coeffs: BTreeMap<MultiIndex, PadicNumber>,
}

impl TruncatedGroupAlgebraElement {
    pub fn zero(trunc: &Truncation) -> Self {
        TruncatedGroupAlgebraElement { trunc: trunc.clone(), coeffs: BTreeMap::new() }
    }

    /// Terms with `|α| > D` are dropped.
    pub fn from_terms(trunc: &Truncation, terms: impl IntoIterator<Item = (MultiIndex, PadicNumber)>) -> Result<Self> {
        let mut x = Self::zero(trunc);
        for (alpha, c) in terms {
            if alpha.len() != trunc.rank {
                return Err(Error::Shape(format!("multi-index {alpha:?} for rank {}", trunc.rank)));
            }
            x.add_term(alpha, c);
        }
        Ok(x)
    }

    pub fn from_rational_terms(trunc: &Truncation, terms: impl IntoIterator<Item = (MultiIndex, Rational)>) -> Result<Self> {
        Self::from_terms(trunc, terms.into_iter().map(|(a, q)| (a, trunc.padic(&q))).collect::<Vec<_>>())
    }

    fn add_term(&mut self, alpha: MultiIndex, c: PadicNumber) {
        if total_degree(&alpha) > self.trunc.bound {
            return;
        }
        let slot = self.coeffs.entry(alpha).or_insert_with(|| PadicNumber::zero(c.prime(), c.absolute_precision()));
        *slot = &*slot + &c;
    }

    pub fn one(trunc: &Truncation) -> Self {
        Self::from_rational_terms(trunc, [(vec![0; trunc.rank], Rational::one())]).expect("valid index")
    }

    /// `z_i`.
    pub fn generator(trunc: &Truncation, i: usize) -> Self {
        Self::from_rational_terms(trunc, [(trunc.unit_index(i), Rational::one())]).expect("valid index")
    }

    pub fn coefficient(&self, alpha: &[u32]) -> Option<&PadicNumber> {
        self.coeffs.get(alpha)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &PadicNumber)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.values().all(PadicNumber::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (a, c) in other.terms() {
            out.add_term(a.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&PadicNumber::from_int(-1, self.trunc.prime, i64::from(self.trunc.precision) + 64)))
    }

    pub fn scale(&self, s: &PadicNumber) -> Self {
        let mut out = Self::zero(&self.trunc);
        for (a, c) in self.terms() {
            out.add_term(a.clone(), c * s);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(&self.trunc);
        for (a, x) in self.terms() {
            for (b, y) in other.terms() {
                let ab: MultiIndex = a.iter().zip(b).map(|(s, t)| s + t).collect();
                out.add_term(ab, x * y);
            }
        }
        out
    }

    /// `w(x)`, or `None` for `+∞`; coefficients that are zero to their precision are skipped.
    pub fn valuation_w(&self) -> Option<Rational> {
        self.terms()
            .filter_map(|(a, c)| c.valuation().map(|v| Rational::from_integer(v.into()) + self.trunc.weight(a)))
            .min()
    }

    pub fn saturation_member(&self) -> bool {
        self.valuation_w().is_none_or(|w| w >= Rational::zero())
    }
}

/// `e_α = z^α / α!`.
pub fn divided_power(trunc: &Truncation, alpha: &[u32]) -> Result<TruncatedGroupAlgebraElement> {
    let den: num_bigint::BigInt = alpha.iter().map(|&a| factorial(a as u64)).product();
    TruncatedGroupAlgebraElement::from_rational_terms(trunc, [(alpha.to_vec(), Rational::new(1.into(), den))])
}

/// `∂_i = log(1 + z_i) = Σ_{1 ≤ a ≤ D} (−1)^{a−1} z_i^a / a`.
pub fn partial_element(trunc: &Truncation, i: usize) -> Result<TruncatedGroupAlgebraElement> {
    if i >= trunc.rank {
        return Err(Error::Range(format!("coordinate {i} out of range for rank {}", trunc.rank)));
    }
    let terms = (1..=trunc.bound).map(|a| {
        let mut alpha = vec![0; trunc.rank];
        alpha[i] = a;
        let sign = if a % 2 == 1 { 1 } else { -1 };
        (alpha, Rational::new(sign.into(), a.into()))
    });
    TruncatedGroupAlgebraElement::from_rational_terms(trunc, terms.collect::<Vec<_>>())
}

/// Elements of the completed tensor square, truncated at total degree `≤ D`.
#[derive(Clone, Debug, PartialEq)]
pub struct TensorSquare {
    pub trunc: Truncation,
    coeffs: BTreeMap<(MultiIndex, MultiIndex), PadicNumber>,
}

impl TensorSquare {
    pub fn zero(trunc: &Truncation) -> Self {
        TensorSquare { trunc: trunc.clone(), coeffs: BTreeMap::new() }
    }

    fn add_term(&mut self, a: MultiIndex, b: MultiIndex, c: PadicNumber) {
        if total_degree(&a) + total_degree(&b) > self.trunc.bound {
            return;
        }
        let slot = self.coeffs.entry((a, b)).or_insert_with(|| PadicNumber::zero(c.prime(), c.absolute_precision()));
        *slot = &*slot + &c;
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(MultiIndex, MultiIndex), &PadicNumber)> {
        self.coeffs.iter()
    }

    pub fn nonzero_terms(&self) -> impl Iterator<Item = (&(MultiIndex, MultiIndex), &PadicNumber)> {
        self.coeffs.iter().filter(|(_, c)| !c.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((a, b), c) in other.terms() {
            out.add_term(a.clone(), b.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, s: &PadicNumber) -> Self {
        let mut out = Self::zero(&self.trunc);
        for ((a, b), c) in self.terms() {
            out.add_term(a.clone(), b.clone(), c * s);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(&self.trunc);
        for ((a1, b1), x) in self.terms() {
            for ((a2, b2), y) in other.terms() {
                let a: MultiIndex = a1.iter().zip(a2).map(|(s, t)| s + t).collect();
                let b: MultiIndex = b1.iter().zip(b2).map(|(s, t)| s + t).collect();
                out.add_term(a, b, x * y);
            }
        }
        out
    }

    /// `x ⊗ 1 + 1 ⊗ x`.
    pub fn primitive_part(x: &TruncatedGroupAlgebraElement) -> Self {
        let zero = vec![0; x.trunc.rank];
        let mut out = Self::zero(&x.trunc);
        for (a, c) in x.terms() {
            out.add_term(a.clone(), zero.clone(), c.clone());
            out.add_term(zero.clone(), a.clone(), c.clone());
        }
        out
    }
}

/// The coproduct, from `Δ z_i = z_i ⊗ 1 + 1 ⊗ z_i + z_i ⊗ z_i` extended multiplicatively.
pub fn coproduct(x: &TruncatedGroupAlgebraElement) -> TensorSquare {
    let trunc = &x.trunc;
    let exact = |q: i64| PadicNumber::from_int(q, trunc.prime, i64::from(trunc.precision) + 64);
    let zero = vec![0; trunc.rank];
    let generator_image = |i: usize| {
        let e = trunc.unit_index(i);
        let mut t = TensorSquare::zero(trunc);
        t.add_term(e.clone(), zero.clone(), exact(1));
        t.add_term(zero.clone(), e.clone(), exact(1));
        t.add_term(e.clone(), e, exact(1));
        t
    };
    let images: Vec<TensorSquare> = (0..trunc.rank).map(generator_image).collect();
    let mut unit = TensorSquare::zero(trunc);
    unit.add_term(zero.clone(), zero.clone(), exact(1));
    let mut out = TensorSquare::zero(trunc);
    for (alpha, c) in x.terms() {
        let mut term = unit.clone();
        for (i, &a) in alpha.iter().enumerate() {
            for _ in 0..a {
                term = term.mul(&images[i]);
            }
        }
        out = out.add(&term.scale(c));
    }
    out
}

/// `Δ(x) − x ⊗ 1 − 1 ⊗ x` with per-coefficient precision.
#[derive(Clone, Debug)]
pub struct PrimitivityReport {
    pub residual: TensorSquare,
    /// Smallest absolute precision among the residual coefficients.
    pub min_precision: Option<i64>,
    /// Every residual coefficient is zero at its tracked precision.
    pub primitive: bool,
}

pub fn primitivity_check(x: &TruncatedGroupAlgebraElement) -> Result<PrimitivityReport> {
    let minus_one = PadicNumber::from_int(-1, x.trunc.prime, i64::from(x.trunc.precision) + 64);
    let residual = coproduct(x).add(&TensorSquare::primitive_part(x).scale(&minus_one));
    let min_precision = residual.terms().map(|(_, c)| c.absolute_precision()).min();
    if let Some(m) = min_precision {
        if m < 1 {
            return Err(Error::PrecisionExhausted(format!("residual known only modulo p^{m}")));
        }
    }
    let primitive = residual.nonzero_terms().next().is_none();
    Ok(PrimitivityReport { residual, min_precision, primitive })
}

/// `v_p(α!)` by Legendre's formula.
pub fn legendre_valuation(n: u64, p: u64) -> u64 {
    let mut v = 0;
    let mut q = p;
    while q <= n {
        v += n / q;
        q *= p;
    }
    v
}
