//! Elements of the Weil algebra `Sym 𝔤^∨ ⊗ Λ 𝔤^∨` and its differential.
//!
//! The symmetric generators `y_a` are even of degree 2 and the exterior
//! generators `x_a` are odd of degree 1. A monomial is written with its
//! symmetric factors first, then the exterior factors in increasing order.
//!
//! The differential is the derivation with
//! `δ x_a = y_a + d x_a` (with `d` the Chevalley–Eilenberg differential) and
//! `δ y_a = Σ_{b,i} C^a_{b i} y_b x_i`.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::arith::Rational;
use crate::lie::exterior::{sort_with_sign, ExteriorBasis};
use crate::lie::{ce_matrix, ExteriorCochain, LieAlgebra, SymPolynomial};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeilMonomial {
    /// Symmetric factors, nondecreasing.
    pub sym: Vec<usize>,
    /// Exterior factors, increasing.
    pub ext: Vec<usize>,
}

impl WeilMonomial {
    pub fn new(mut sym: Vec<usize>, ext: Vec<usize>) -> Option<(Self, i64)> {
        sym.sort_unstable();
        let (ext, sign) = sort_with_sign(&ext)?;
        Some((WeilMonomial { sym, ext }, sign))
    }

    pub fn one() -> Self {
        WeilMonomial { sym: Vec::new(), ext: Vec::new() }
    }

    pub fn total_degree(&self) -> usize {
        2 * self.sym.len() + self.ext.len()
    }

    /// Symmetric degree `p` of the bidegree `(p, q)`.
    pub fn sym_degree(&self) -> usize {
        self.sym.len()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct WeilElement {
    pub dim: usize,
    terms: BTreeMap<WeilMonomial, Rational>,
}

impl WeilElement {
    pub fn zero(dim: usize) -> Self {
        WeilElement { dim, terms: BTreeMap::new() }
    }

    pub fn from_terms(dim: usize, terms: impl IntoIterator<Item = (WeilMonomial, Rational)>) -> Self {
        let mut w = Self::zero(dim);
        for (m, v) in terms {
            w.add_term(m, &v);
        }
        w
    }

    pub fn monomial(dim: usize, m: WeilMonomial) -> Self {
        Self::from_terms(dim, [(m, Rational::from_integer(1.into()))])
    }

    pub fn sym_generator(dim: usize, a: usize) -> Self {
        Self::monomial(dim, WeilMonomial { sym: vec![a], ext: vec![] })
    }

    pub fn ext_generator(dim: usize, a: usize) -> Self {
        Self::monomial(dim, WeilMonomial { sym: vec![], ext: vec![a] })
    }

    pub fn from_sym(p: &SymPolynomial) -> Self {
        Self::from_terms(p.dim, p.terms().map(|(m, v)| (WeilMonomial { sym: m.clone(), ext: vec![] }, v.clone())))
    }

    pub fn from_ext(c: &ExteriorCochain) -> Self {
        Self::from_terms(c.dim, c.terms().map(|(t, v)| (WeilMonomial { sym: vec![], ext: t.clone() }, v.clone())))
    }

    pub fn add_term(&mut self, m: WeilMonomial, v: &Rational) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += v;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                if !v.is_zero() {
                    e.insert(v.clone());
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&WeilMonomial, &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().map(WeilMonomial::total_degree).max()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, v) in other.terms() {
            out.add_term(m.clone(), v);
        }
        out
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self::from_terms(self.dim, self.terms().map(|(m, v)| (m.clone(), v * s)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.dim);
        for (a, u) in self.terms() {
            for (b, v) in other.terms() {
                let sym: Vec<usize> = a.sym.iter().chain(&b.sym).copied().collect();
                let ext: Vec<usize> = a.ext.iter().chain(&b.ext).copied().collect();
                if let Some((m, sign)) = WeilMonomial::new(sym, ext) {
                    out.add_term(m, &(u * v * Rational::from_integer(sign.into())));
                }
            }
        }
        out
    }

    /// Projection onto the part with symmetric degree 0, read as a cochain of degree `k`.
    pub fn exterior_part(&self, k: usize) -> ExteriorCochain {
        let terms = self.terms().filter(|(m, _)| m.sym.is_empty() && m.ext.len() == k).map(|(m, v)| (m.ext.clone(), v.clone()));
        ExteriorCochain::from_terms(self.dim, k, terms.collect::<Vec<_>>()).expect("valid tuples")
    }
}

/// Precomputed images of generators under the differential.
#[derive(Clone, Debug)]
pub struct WeilDifferential {
    dim: usize,
    /// `d x_a` as pairs `(b < c, coefficient)` of `x_b x_c`.
    ce_of_ext: Vec<Vec<([usize; 2], Rational)>>,
    /// `δ y_a` as triples `(b, i, C^a_{b i})` for `y_b x_i`.
    of_sym: Vec<Vec<(usize, usize, Rational)>>,
}

impl WeilDifferential {
    pub fn new(alg: &LieAlgebra) -> Self {
        let n = alg.dim();
        let d1 = ce_matrix(alg, 1);
        let pairs = ExteriorBasis::new(n, 2);
        let mut ce_of_ext = vec![Vec::new(); n];
        for (row, col, v) in d1.entries() {
            let t = pairs.tuple(row);
            ce_of_ext[col].push(([t[0], t[1]], v.clone()));
        }
        let mut of_sym = vec![Vec::new(); n];
        for b in 0..n {
            for i in 0..n {
                for (a, c) in alg.bracket_basis(b, i) {
                    of_sym[*a].push((b, i, c.clone()));
                }
            }
        }
        WeilDifferential { dim: n, ce_of_ext, of_sym }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `δ` of a single monomial, accumulated into `out` with weight `w`.
    pub fn apply_monomial(&self, m: &WeilMonomial, w: &Rational, out: &mut WeilElement) {
        let mut push = |sym: Vec<usize>, ext: Vec<usize>, c: Rational| {
            if let Some((mono, sign)) = WeilMonomial::new(sym, ext) {
                out.add_term(mono, &(c * Rational::from_integer(sign.into())));
            }
        };
        // symmetric factors are even: no sign
        for (j, &a) in m.sym.iter().enumerate() {
            for (b, i, c) in &self.of_sym[a] {
                let mut sym = m.sym.clone();
                sym[j] = *b;
                let mut ext = vec![*i];
                ext.extend(&m.ext);
                push(sym, ext, w * c);
            }
        }
        // the l-th exterior factor picks up (−1)^l from the odd factors before it
        for (l, &a) in m.ext.iter().enumerate() {
            let sign = if l % 2 == 0 { w.clone() } else { -w };
            let mut sym = m.sym.clone();
            sym.push(a);
            let mut ext = m.ext.clone();
            ext.remove(l);
            push(sym, ext, sign.clone());
            for ([b, c], v) in &self.ce_of_ext[a] {
                let mut ext = m.ext[..l].to_vec();
                ext.extend([*b, *c]);
                ext.extend(&m.ext[l + 1..]);
                push(m.sym.clone(), ext, &sign * v);
            }
        }
    }

    pub fn apply(&self, w: &WeilElement) -> WeilElement {
        let mut out = WeilElement::zero(w.dim);
        for (m, v) in w.terms() {
            self.apply_monomial(m, v, &mut out);
        }
        out
    }
}

/// `δ w` with no truncation.
pub fn weil_differential(alg: &LieAlgebra, w: &WeilElement) -> WeilElement {
    WeilDifferential::new(alg).apply(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;
    use crate::lie::sym::multisets;
    use crate::lie::exterior::subsets;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_element<R: Rng>(rng: &mut R, dim: usize, max_degree: usize) -> WeilElement {
        let mut w = WeilElement::zero(dim);
        for _ in 0..6 {
            let t = rng.gen_range(0..=max_degree);
            let p = rng.gen_range(0..=t / 2);
            let syms = multisets(dim, p);
            let exts = subsets(dim, t - 2 * p);
            if exts.is_empty() {
                continue;
            }
            let m = WeilMonomial {
                sym: syms[rng.gen_range(0..syms.len())].clone(),
                ext: exts[rng.gen_range(0..exts.len())].clone(),
            };
            w.add_term(m, &int(rng.gen_range(-3..4)));
        }
        w
    }

    #[test]
    fn abelian_generator_differential() {
        let g = LieAlgebra::gl(1);
        assert_eq!(weil_differential(&g, &WeilElement::ext_generator(1, 0)), WeilElement::sym_generator(1, 0));
        assert!(weil_differential(&g, &WeilElement::sym_generator(1, 0)).is_zero());
    }

    #[test]
    fn koszul_complex_in_one_variable() {
        // on gl_1, δ(y^k x) = y^{k+1} and δ(y^k) = 0
        let g = LieAlgebra::gl(1);
        for k in 0..5 {
            let yk = WeilElement::monomial(1, WeilMonomial { sym: vec![0; k], ext: vec![] });
            let ykx = WeilElement::monomial(1, WeilMonomial { sym: vec![0; k], ext: vec![0] });
            let yk1 = WeilElement::monomial(1, WeilMonomial { sym: vec![0; k + 1], ext: vec![] });
            assert!(weil_differential(&g, &yk).is_zero());
            assert_eq!(weil_differential(&g, &ykx), yk1);
        }
    }

    #[test]
    fn derivation_rule_on_products() {
        let g = LieAlgebra::gl(2);
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..30 {
            let a = random_element(&mut rng, 4, 3);
            let b = random_element(&mut rng, 4, 3);
            // δ(ab) = δa·b + (−1)^{|a|} a·δb on homogeneous pieces
            for (ma, va) in a.terms() {
                let a1 = WeilElement::from_terms(4, [(ma.clone(), va.clone())]);
                let sign = if ma.total_degree() % 2 == 0 { int(1) } else { int(-1) };
                let lhs = weil_differential(&g, &a1.mul(&b));
                let rhs = weil_differential(&g, &a1).mul(&b).add(&a1.mul(&weil_differential(&g, &b)).scale(&sign));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn delta_squared_on_random_elements() {
        let g = LieAlgebra::gl(2);
        let d = WeilDifferential::new(&g);
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..100 {
            let w = random_element(&mut rng, 4, 5);
            assert!(d.apply(&d.apply(&w)).is_zero());
        }
    }

    #[test]
    fn differential_is_basis_independent() {
        // rewrite gl_2 in the basis X'_a = Σ_b g_{ba} X_b and compare δ through the
        // induced algebra map y'_a ↦ Σ_b (g⁻¹)_{ab} y_b, x'_a ↦ Σ_b (g⁻¹)_{ab} x_b
        use crate::linalg::random::random_invertible;
        let g = LieAlgebra::gl(2);
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let (m, m_inv) = random_invertible(&mut rng, 4);
        let mut table = vec![vec![Vec::new(); 4]; 4];
        for a in 0..4 {
            for b in 0..4 {
                let mut out = vec![Rational::zero(); 4];
                for c in 0..4 {
                    for d in 0..4 {
                        let w = m.get(c, a) * m.get(d, b);
                        if w.is_zero() {
                            continue;
                        }
                        for (e, k) in g.bracket_basis(c, d) {
                            for f in 0..4 {
                                out[f] += &w * k * m_inv.get(f, *e);
                            }
                        }
                    }
                }
                table[a][b] = out.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).collect();
            }
        }
        let h = LieAlgebra::from_structure_constants(4, table).unwrap();
        let image = |w: &WeilElement| {
            let mut out = WeilElement::zero(4);
            for (mono, v) in w.terms() {
                let mut prod = WeilElement::monomial(4, WeilMonomial::one()).scale(v);
                for &a in &mono.sym {
                    let gen = WeilElement::from_terms(4, (0..4).map(|b| (WeilMonomial { sym: vec![b], ext: vec![] }, m_inv.get(a, b))));
                    prod = prod.mul(&gen);
                }
                for &a in &mono.ext {
                    let gen = WeilElement::from_terms(4, (0..4).map(|b| (WeilMonomial { sym: vec![], ext: vec![b] }, m_inv.get(a, b))));
                    prod = prod.mul(&gen);
                }
                out = out.add(&prod);
            }
            out
        };
        for a in 0..4 {
            for w in [WeilElement::sym_generator(4, a), WeilElement::ext_generator(4, a)] {
                assert_eq!(image(&weil_differential(&h, &w)), weil_differential(&g, &image(&w)));
            }
        }
    }
}
