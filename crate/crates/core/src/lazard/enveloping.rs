//! Universal enveloping algebras in a PBW basis, truncated at a word-length bound.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::group_algebra::{partial_element, TruncatedGroupAlgebraElement, Truncation};
use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::lie::LieAlgebra;

/// A nondecreasing word in the basis indices of the Lie algebra.
pub type PbwWord = Vec<usize>;

#[derive(Clone, Debug, Default, PartialEq)]
pub struct TruncatedEnvelopingElement {
    coeffs: BTreeMap<PbwWord, Rational>,
}

impl TruncatedEnvelopingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(word: PbwWord, c: Rational) -> Self {
        let mut x = Self::zero();
        x.add_term(word, c);
        x
    }

    pub fn add_term(&mut self, word: PbwWord, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(word.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&word);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PbwWord, &Rational)> {
        self.coeffs.iter()
    }

    pub fn coefficient(&self, word: &[usize]) -> Rational {
        self.coeffs.get(word).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in other.terms() {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, s: &Rational) -> Self {
        let mut out = Self::zero();
        for (w, c) in self.terms() {
            out.add_term(w.clone(), c * s);
        }
        out
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.keys().map(Vec::len).max()
    }
}

#[derive(Clone, Debug)]
pub struct EnvelopingAlgebra {
    algebra: LieAlgebra,
    bound: usize,
}

impl EnvelopingAlgebra {
    pub fn new(algebra: LieAlgebra, bound: usize) -> Self {
        EnvelopingAlgebra { algebra, bound }
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    /// PBW words of length at most the bound, shortest first.
    pub fn basis(&self) -> Vec<PbwWord> {
        let mut out = vec![Vec::new()];
        let mut layer: Vec<PbwWord> = vec![Vec::new()];
        for _ in 0..self.bound {
            let mut next = Vec::new();
            for w in &layer {
                let start = w.last().copied().unwrap_or(0);
                for a in start..self.algebra.dim() {
                    let mut v = w.clone();
                    v.push(a);
                    next.push(v);
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }

    pub fn generator(&self, a: usize) -> TruncatedEnvelopingElement {
        TruncatedEnvelopingElement::term(vec![a], Rational::one())
    }

    /// Rewrites an arbitrary word in the PBW basis using `ba = ab − [a, b]` for `a < b`.
    pub fn straighten(&self, word: &[usize]) -> TruncatedEnvelopingElement {
        let Some(i) = word.windows(2).position(|w| w[0] > w[1]) else {
            return TruncatedEnvelopingElement::term(word.to_vec(), Rational::one());
        };
        let mut swapped = word.to_vec();
        swapped.swap(i, i + 1);
        let mut out = self.straighten(&swapped);
        for (c, v) in self.algebra.bracket_basis(word[i], word[i + 1]) {
            let mut shorter = word[..i].to_vec();
            shorter.push(*c);
            shorter.extend_from_slice(&word[i + 2..]);
            out = out.add(&self.straighten(&shorter).scale(v));
        }
        out
    }

    pub fn mul(&self, x: &TruncatedEnvelopingElement, y: &TruncatedEnvelopingElement) -> Result<TruncatedEnvelopingElement> {
        let mut out = TruncatedEnvelopingElement::zero();
        for (u, a) in x.terms() {
            for (v, b) in y.terms() {
                if u.len() + v.len() > self.bound {
                    return Err(Error::TruncationOverflow(format!(
                        "product of degree {} exceeds the bound {}",
                        u.len() + v.len(),
                        self.bound
                    )));
                }
                let word: Vec<usize> = u.iter().chain(v).copied().collect();
                out = out.add(&self.straighten(&word).scale(&(a * b)));
            }
        }
        Ok(out)
    }

    /// The augmentation, reading off the constant term.
    pub fn augmentation(&self, x: &TruncatedEnvelopingElement) -> Rational {
        x.coefficient(&[])
    }

    /// `as_n(X_1 ∧ … ∧ X_n) = Σ_σ sgn σ X_{σ(1)} ⊗ … ⊗ X_{σ(n)}` as signed tuples of generators.
    pub fn antisymmetrization(&self, wedge: &[usize]) -> Result<Vec<(Vec<usize>, Rational)>> {
        if wedge.len() > 4 {
            return Err(Error::Range(format!("antisymmetrization limited to n <= 4, got {}", wedge.len())));
        }
        if let Some(&a) = wedge.iter().find(|&&a| a >= self.algebra.dim()) {
            return Err(Error::Range(format!("generator {a} out of range")));
        }
        Ok(crate::lie::primitive::signed_permutations(wedge.len())
            .into_iter()
            .map(|(perm, sign)| (perm.iter().map(|&k| wedge[k]).collect(), Rational::from_integer(sign.into())))
            .collect())
    }
}

/// Sends `∂`-monomials of an abelian enveloping algebra to products of [`partial_element`].
pub fn to_saturated(
    u: &EnvelopingAlgebra,
    x: &TruncatedEnvelopingElement,
    trunc: &Truncation,
) -> Result<TruncatedGroupAlgebraElement> {
    let alg = u.algebra();
    if alg.dim() != trunc.rank {
        return Err(Error::Shape(format!("Lie algebra of dimension {} for rank {}", alg.dim(), trunc.rank)));
    }
    if (0..alg.dim()).any(|a| (0..alg.dim()).any(|b| !alg.bracket_basis(a, b).is_empty())) {
        return Err(Error::Domain("the group-algebra model is abelian; the Lie algebra must be too".into()));
    }
    let partials = (0..trunc.rank).map(|i| partial_element(trunc, i)).collect::<Result<Vec<_>>>()?;
    let mut out = TruncatedGroupAlgebraElement::zero(trunc);
    for (word, c) in x.terms() {
        let mut term = TruncatedGroupAlgebraElement::one(trunc);
        for &a in word {
            term = term.mul(&partials[a]);
        }
        out = out.add(&term.scale(&trunc.padic(c)));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    fn gl2(bound: usize) -> EnvelopingAlgebra {
        EnvelopingAlgebra::new(LieAlgebra::gl(2), bound)
    }

    #[test]
    fn basis_counts() {
        assert_eq!(gl2(3).basis().len(), 35);
        assert_eq!(EnvelopingAlgebra::new(LieAlgebra::abelian(1), 4).basis().len(), 5);
    }

    #[test]
    fn commutator_is_bracket() {
        // E_01 E_10 − E_10 E_01 = E_00 − E_11
        let u = gl2(2);
        let (e01, e10) = (u.generator(1), u.generator(2));
        let comm = u.mul(&e01, &e10).unwrap().add(&u.mul(&e10, &e01).unwrap().scale(&int(-1)));
        let expect = u.generator(0).add(&u.generator(3).scale(&int(-1)));
        assert_eq!(comm, expect);
    }

    #[test]
    fn associativity_in_degree_three() {
        let u = gl2(3);
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    let (x, y, z) = (u.generator(a), u.generator(b), u.generator(c));
                    let left = u.mul(&u.mul(&x, &y).unwrap(), &z).unwrap();
                    let right = u.mul(&x, &u.mul(&y, &z).unwrap()).unwrap();
                    assert_eq!(left, right, "{a} {b} {c}");
                }
            }
        }
    }

    #[test]
    fn truncation_overflow() {
        let u = gl2(1);
        assert!(matches!(u.mul(&u.generator(0), &u.generator(1)), Err(Error::TruncationOverflow(_))));
    }

    #[test]
    fn antisymmetrization_small_cases() {
        let u = gl2(3);
        assert_eq!(u.antisymmetrization(&[2]).unwrap(), vec![(vec![2], int(1))]);
        let mut two = u.antisymmetrization(&[0, 1]).unwrap();
        two.sort();
        assert_eq!(two, vec![(vec![0, 1], int(1)), (vec![1, 0], int(-1))]);
        assert_eq!(u.antisymmetrization(&[0, 1, 2]).unwrap().len(), 6);
        assert!(u.antisymmetrization(&[0, 1, 2, 3, 0]).is_err());
    }

    #[test]
    fn saturated_image_is_multiplicative() {
        let trunc = Truncation::new(5, 2, 8, 6).unwrap();
        let u = EnvelopingAlgebra::new(LieAlgebra::abelian(2), 4);
        let basis = u.basis();
        for (k, a) in basis.iter().enumerate() {
            for b in basis.iter().skip(k % 3).step_by(3) {
                if a.len() + b.len() > 4 {
                    continue;
                }
                let x = TruncatedEnvelopingElement::term(a.clone(), int(1));
                let y = TruncatedEnvelopingElement::term(b.clone(), int(2));
                let lhs = to_saturated(&u, &u.mul(&x, &y).unwrap(), &trunc).unwrap();
                let rhs = to_saturated(&u, &x, &trunc).unwrap().mul(&to_saturated(&u, &y, &trunc).unwrap());
                assert!(lhs.sub(&rhs).is_zero());
                assert!(lhs.saturation_member());
            }
        }
        assert!(to_saturated(&gl2(2), &TruncatedEnvelopingElement::zero(), &Truncation::new(5, 4, 3, 6).unwrap()).is_err());
    }
}
