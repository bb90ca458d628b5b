//! The standard complexes `T_n A = A^{⊗(n+1)}` with differentials `d` and `d~`,
//! truncated at total degree, for augmented algebras.

use std::collections::{BTreeMap, HashMap};
use std::hash::Hash;

use num_traits::{One, Zero};

use super::enveloping::{EnvelopingAlgebra, PbwWord, TruncatedEnvelopingElement};
use super::group_algebra::{multi_indices, total_degree, MultiIndex};
use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::lie::exterior::{sort_with_sign, subsets};
use crate::linalg::SparseMatrix;

/// A graded augmented algebra with a finite basis up to a degree bound.
pub trait AugmentedAlgebra {
    type Key: Clone + Ord + Hash + std::fmt::Debug;

    fn bound(&self) -> u32;
    /// Basis keys of degree at most the bound.
    fn keys(&self) -> Vec<Self::Key>;
    fn degree(&self, key: &Self::Key) -> u32;
    fn product(&self, a: &Self::Key, b: &Self::Key) -> Result<Vec<(Self::Key, Rational)>>;
    fn augmentation(&self, key: &Self::Key) -> Rational;
}

/// The group algebra of `Z^r` in the basis `z^α`, truncated at `|α| ≤ D`, over `Q`.
#[derive(Clone, Debug)]
pub struct GroupAlgebraModel {
    pub rank: usize,
    pub bound: u32,
}

impl AugmentedAlgebra for GroupAlgebraModel {
    type Key = MultiIndex;

    fn bound(&self) -> u32 {
        self.bound
    }

    fn keys(&self) -> Vec<MultiIndex> {
        multi_indices(self.rank, self.bound)
    }

    fn degree(&self, key: &MultiIndex) -> u32 {
        total_degree(key)
    }

    fn product(&self, a: &MultiIndex, b: &MultiIndex) -> Result<Vec<(MultiIndex, Rational)>> {
        let ab: MultiIndex = a.iter().zip(b).map(|(s, t)| s + t).collect();
        if total_degree(&ab) > self.bound {
            return Err(Error::TruncationOverflow(format!("z-degree {} exceeds {}", total_degree(&ab), self.bound)));
        }
        Ok(vec![(ab, Rational::one())])
    }

    fn augmentation(&self, key: &MultiIndex) -> Rational {
        if total_degree(key) == 0 { Rational::one() } else { Rational::zero() }
    }
}

impl AugmentedAlgebra for EnvelopingAlgebra {
    type Key = PbwWord;

    fn bound(&self) -> u32 {
        EnvelopingAlgebra::bound(self) as u32
    }

    fn keys(&self) -> Vec<PbwWord> {
        self.basis()
    }

    fn degree(&self, key: &PbwWord) -> u32 {
        key.len() as u32
    }

    fn product(&self, a: &PbwWord, b: &PbwWord) -> Result<Vec<(PbwWord, Rational)>> {
        let one = Rational::one();
        let x = TruncatedEnvelopingElement::term(a.clone(), one.clone());
        let y = TruncatedEnvelopingElement::term(b.clone(), one);
        Ok(self.mul(&x, &y)?.terms().map(|(w, c)| (w.clone(), c.clone())).collect())
    }

    fn augmentation(&self, key: &PbwWord) -> Rational {
        if key.is_empty() { Rational::one() } else { Rational::zero() }
    }
}

/// Basis of `A^{⊗k}` restricted to total degree at most the bound.
#[derive(Clone, Debug)]
pub struct TensorBasis<K> {
    tuples: Vec<Vec<K>>,
    index: HashMap<Vec<K>, usize>,
}

impl<K: Clone + Eq + Hash> TensorBasis<K> {
    pub fn new<A: AugmentedAlgebra<Key = K>>(alg: &A, arity: usize) -> Self {
        let keys = alg.keys();
        let mut tuples = vec![Vec::new()];
        for _ in 0..arity {
            let mut next = Vec::new();
            for t in &tuples {
                let used: u32 = t.iter().map(|k| alg.degree(k)).sum();
                for k in keys.iter().filter(|k| used + alg.degree(k) <= alg.bound()) {
                    let mut u = t.clone();
                    u.push(k.clone());
                    next.push(u);
                }
            }
            tuples = next;
        }
        let index = tuples.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
        TensorBasis { tuples, index }
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn tuple(&self, i: usize) -> &[K] {
        &self.tuples[i]
    }

    pub fn tuples(&self) -> &[Vec<K>] {
        &self.tuples
    }

    pub fn index_of(&self, t: &[K]) -> Option<usize> {
        self.index.get(t).copied()
    }
}

/// `T_n A` for `0 ≤ n ≤ max_n` with both differentials, `d_n, d~_n : T_n → T_{n−1}`.
#[derive(Clone, Debug)]
pub struct StandardComplexes<K> {
    pub bases: Vec<TensorBasis<K>>,
    d: Vec<SparseMatrix>,
    d_tilde: Vec<SparseMatrix>,
}

impl<K: Clone + Ord + Hash + std::fmt::Debug> StandardComplexes<K> {
    /// Builds the matrices and checks `d² = 0` and `d~² = 0`.
    pub fn new<A: AugmentedAlgebra<Key = K>>(alg: &A, max_n: usize) -> Result<Self> {
        let bases: Vec<TensorBasis<K>> = (0..=max_n).map(|n| TensorBasis::new(alg, n + 1)).collect();
        let mut d = Vec::new();
        let mut d_tilde = Vec::new();
        for n in 1..=max_n {
            let (src, tgt) = (&bases[n], &bases[n - 1]);
            let mut plain = Vec::new();
            let mut tilde = Vec::new();
            for (col, t) in src.tuples().iter().enumerate() {
                let locate = |u: &[K]| {
                    tgt.index_of(u).ok_or_else(|| Error::TruncationOverflow(format!("{u:?} leaves the truncation")))
                };
                for i in 0..=n {
                    let e = alg.augmentation(&t[i]);
                    if !e.is_zero() {
                        let mut u = t.clone();
                        u.remove(i);
                        plain.push((locate(&u)?, col, sign(i) * e));
                    }
                }
                for i in 0..n {
                    for (k, c) in alg.product(&t[i], &t[i + 1])? {
                        let mut u = t[..i].to_vec();
                        u.push(k);
                        u.extend_from_slice(&t[i + 2..]);
                        tilde.push((locate(&u)?, col, sign(i) * c));
                    }
                }
                let e = alg.augmentation(&t[n]);
                if !e.is_zero() {
                    tilde.push((locate(&t[..n])?, col, sign(n) * e));
                }
            }
            d.push(SparseMatrix::from_triplets(tgt.len(), src.len(), plain));
            d_tilde.push(SparseMatrix::from_triplets(tgt.len(), src.len(), tilde));
        }
        for n in 2..=max_n {
            if !d[n - 2].mul(&d[n - 1]).is_zero() || !d_tilde[n - 2].mul(&d_tilde[n - 1]).is_zero() {
                return Err(Error::NotAComplex { degree: n as i64 });
            }
        }
        Ok(StandardComplexes { bases, d, d_tilde })
    }

    pub fn max_n(&self) -> usize {
        self.bases.len() - 1
    }

    /// `d_n : T_n → T_{n−1}` for `n ≥ 1`.
    pub fn d(&self, n: usize) -> &SparseMatrix {
        &self.d[n - 1]
    }

    pub fn d_tilde(&self, n: usize) -> &SparseMatrix {
        &self.d_tilde[n - 1]
    }
}

fn sign(i: usize) -> Rational {
    if i % 2 == 0 { Rational::one() } else { -Rational::one() }
}

/// The Koszul complex `U ⊗ Λ^n g`, truncated at `deg u + n ≤` the PBW bound.
#[derive(Clone, Debug)]
pub struct KoszulComplex {
    pub bases: Vec<Vec<(PbwWord, Vec<usize>)>>,
    index: Vec<HashMap<(PbwWord, Vec<usize>), usize>>,
    d: Vec<SparseMatrix>,
}

impl KoszulComplex {
    /// `d(u ⊗ X_1∧…∧X_n) = Σ_i (−1)^{i+1} uX_i ⊗ (…X̂_i…) + Σ_{i<j} (−1)^{i+j} u ⊗ [X_i, X_j]∧(…X̂_i…X̂_j…)`.
    pub fn new(u: &EnvelopingAlgebra, max_n: usize) -> Result<Self> {
        let dim = u.algebra().dim();
        let words = u.basis();
        let mut bases = Vec::new();
        let mut index = Vec::new();
        for n in 0..=max_n {
            let b: Vec<(PbwWord, Vec<usize>)> = subsets(dim, n)
                .into_iter()
                .flat_map(|s| words.iter().filter(move |w| w.len() + n <= u.bound()).map(move |w| (w.clone(), s.clone())))
                .collect();
            index.push(b.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect::<HashMap<_, _>>());
            bases.push(b);
        }
        let mut d = Vec::new();
        for n in 1..=max_n {
            let mut acc: BTreeMap<(usize, usize), Rational> = BTreeMap::new();
            let mut put = |key: (PbwWord, Vec<usize>), col: usize, c: Rational| -> Result<()> {
                let row = *index[n - 1]
                    .get(&key)
                    .ok_or_else(|| Error::TruncationOverflow(format!("{key:?} leaves the truncation")))?;
                *acc.entry((row, col)).or_insert_with(Rational::zero) += c;
                Ok(())
            };
            for (col, (w, xs)) in bases[n].iter().enumerate() {
                let uw = TruncatedEnvelopingElement::term(w.clone(), Rational::one());
                for i in 0..n {
                    let rest: Vec<usize> = xs.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, &x)| x).collect();
                    for (v, c) in u.mul(&uw, &u.generator(xs[i]))?.terms() {
                        put((v.clone(), rest.clone()), col, sign(i) * c)?;
                    }
                }
                for i in 0..n {
                    for j in i + 1..n {
                        let rest: Vec<usize> =
                            xs.iter().enumerate().filter(|&(k, _)| k != i && k != j).map(|(_, &x)| x).collect();
                        for (c, v) in u.algebra().bracket_basis(xs[i], xs[j]) {
                            let mut wedge = vec![*c];
                            wedge.extend_from_slice(&rest);
                            if let Some((sorted, s)) = sort_with_sign(&wedge) {
                                let coeff = sign(i + j) * v * Rational::from_integer(s.into());
                                put((w.clone(), sorted), col, coeff)?;
                            }
                        }
                    }
                }
            }
            let entries = acc.into_iter().filter(|(_, v)| !v.is_zero()).map(|((r, c), v)| (r, c, v));
            d.push(SparseMatrix::from_triplets(bases[n - 1].len(), bases[n].len(), entries));
        }
        for n in 2..=max_n {
            if !d[n - 2].mul(&d[n - 1]).is_zero() {
                return Err(Error::NotAComplex { degree: n as i64 });
            }
        }
        Ok(KoszulComplex { bases, index, d })
    }

    pub fn d(&self, n: usize) -> &SparseMatrix {
        &self.d[n - 1]
    }

    pub fn index_of(&self, n: usize, key: &(PbwWord, Vec<usize>)) -> Option<usize> {
        self.index[n].get(key).copied()
    }
}

/// Matrix of `u ⊗ X_1∧…∧X_n ↦ Σ_σ sgn σ u ⊗ X_{σ(1)} ⊗ … ⊗ X_{σ(n)}` into `T_n U`.
pub fn antisymmetrization_matrix(
    u: &EnvelopingAlgebra,
    koszul: &KoszulComplex,
    standard: &StandardComplexes<PbwWord>,
    n: usize,
) -> Result<SparseMatrix> {
    let target = &standard.bases[n];
    let mut entries = Vec::new();
    for (col, (w, xs)) in koszul.bases[n].iter().enumerate() {
        for (perm, c) in u.antisymmetrization(xs)? {
            let mut t = vec![w.clone()];
            t.extend(perm.into_iter().map(|x| vec![x]));
            let row = target
                .index_of(&t)
                .ok_or_else(|| Error::TruncationOverflow(format!("{t:?} leaves the truncation")))?;
            entries.push((row, col, c));
        }
    }
    Ok(SparseMatrix::from_triplets(target.len(), koszul.bases[n].len(), entries))
}

/// Checks `d~ ∘ as_n = as_{n−1} ∘ d_Koszul` for `1 ≤ n ≤ max_n`.
pub fn antisymmetrization_is_chain_map(u: &EnvelopingAlgebra, max_n: usize) -> Result<bool> {
    let koszul = KoszulComplex::new(u, max_n)?;
    let standard = StandardComplexes::new(u, max_n)?;
    let maps = (0..=max_n).map(|n| antisymmetrization_matrix(u, &koszul, &standard, n)).collect::<Result<Vec<_>>>()?;
    Ok((1..=max_n).all(|n| standard.d_tilde(n).mul(&maps[n]) == maps[n - 1].mul(koszul.d(n))))
}

type SlotPolynomial = BTreeMap<Vec<MultiIndex>, Rational>;

fn slot_mul(a: &SlotPolynomial, b: &SlotPolynomial, bound: u32) -> SlotPolynomial {
    let mut out = SlotPolynomial::new();
    for (x, c) in a {
        for (y, e) in b {
            let key: Vec<MultiIndex> = x.iter().zip(y).map(|(s, t)| s.iter().zip(t).map(|(p, q)| p + q).collect()).collect();
            if key.iter().map(|m| total_degree(m)).sum::<u32>() > bound {
                continue;
            }
            *out.entry(key).or_insert_with(Rational::zero) += c * e;
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// The change of variables `(g_0, …, g_n) ↦ (g_0, g_0^{−1}g_1, …, g_{n−1}^{−1}g_n)` on
/// `T_n` of the truncated group algebra, in the `z`-basis.
pub fn group_change_of_variables(model: &GroupAlgebraModel, basis: &TensorBasis<MultiIndex>, n: usize) -> SparseMatrix {
    let (r, bound) = (model.rank, model.bound);
    let empty = vec![vec![0u32; r]; n + 1];
    let unit: SlotPolynomial = [(empty.clone(), Rational::one())].into_iter().collect();
    let monomial = |slot: usize, i: usize, power: u32| {
        let mut key = empty.clone();
        key[slot][i] = power;
        key
    };
    // x_i in slot j goes to x_i in slot j times x_i^{-1} in slot j + 1
    let image_of_z = |slot: usize, i: usize| -> SlotPolynomial {
        let mut one_plus: SlotPolynomial = unit.clone();
        one_plus.insert(monomial(slot, i, 1), Rational::one());
        let mut img = if slot < n {
            let inverse: SlotPolynomial = (0..=bound)
                .map(|k| (monomial(slot + 1, i, k), sign(k as usize)))
                .collect();
            slot_mul(&one_plus, &inverse, bound)
        } else {
            one_plus
        };
        *img.entry(empty.clone()).or_insert_with(Rational::zero) -= Rational::one();
        img.retain(|_, v| !v.is_zero());
        img
    };
    let images: Vec<Vec<SlotPolynomial>> = (0..=n).map(|j| (0..r).map(|i| image_of_z(j, i)).collect()).collect();
    let mut entries = Vec::new();
    for (col, t) in basis.tuples().iter().enumerate() {
        let mut acc = unit.clone();
        for (j, alpha) in t.iter().enumerate() {
            for (i, &a) in alpha.iter().enumerate() {
                for _ in 0..a {
                    acc = slot_mul(&acc, &images[j][i], bound);
                }
            }
        }
        for (key, c) in acc {
            let row = basis.index_of(&key).expect("truncated products stay in the basis");
            entries.push((row, col, c));
        }
    }
    SparseMatrix::from_triplets(basis.len(), basis.len(), entries)
}

/// Checks `d~ ∘ ψ_n = ψ_{n−1} ∘ d` for `1 ≤ n ≤ max_n` and that every `ψ_n` is invertible.
pub fn group_isomorphism_intertwines(model: &GroupAlgebraModel, max_n: usize) -> Result<bool> {
    let standard = StandardComplexes::new(model, max_n)?;
    let psi: Vec<SparseMatrix> = (0..=max_n).map(|n| group_change_of_variables(model, &standard.bases[n], n)).collect();
    let bijective = psi.iter().all(|m| crate::linalg::rank(m) == m.rows());
    let intertwines = (1..=max_n).all(|n| standard.d_tilde(n).mul(&psi[n]) == psi[n - 1].mul(standard.d(n)));
    Ok(bijective && intertwines)
}
