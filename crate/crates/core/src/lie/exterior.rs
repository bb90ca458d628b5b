//! Exterior powers of the dual of a Lie algebra and the Chevalley–Eilenberg complex.
//!
//! A `k`-cochain is stored by its values on increasing basis tuples. With the
//! determinant convention for wedges of functionals, the dual basis element for
//! the tuple `s_1 < … < s_k` is `x_{s_1}^∨ ∧ … ∧ x_{s_k}^∨`.
//!
//! The differential is
//! `(dc)(x_0, …, x_k) = Σ_{i<j} (−1)^{i+j} c([x_i, x_j], x_0, …, x̂_i, …, x̂_j, …, x_k)`.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;

use super::algebra::LieAlgebra;
use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::linalg::{FiniteComplex, SparseMatrix, Vector};

/// All increasing `k`-tuples from `0..n`, in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, k: usize, from: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in from..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(n, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(n, k, 0, &mut Vec::new(), &mut out);
    }
    out
}

/// Sorts `indices` and returns the sign of the sorting permutation, or `None` on a repeat.
pub fn sort_with_sign(indices: &[usize]) -> Option<(Vec<usize>, i64)> {
    let mut v = indices.to_vec();
    let mut sign = 1;
    // insertion sort counts transpositions
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, sign))
}

/// Ordered basis of `Λ^k` on `n` generators.
#[derive(Clone, Debug)]
pub struct ExteriorBasis {
    pub n: usize,
    pub k: usize,
    tuples: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl ExteriorBasis {
    pub fn new(n: usize, k: usize) -> Self {
        let tuples = subsets(n, k);
        let index = tuples.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
        ExteriorBasis { n, k, tuples, index }
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn tuple(&self, i: usize) -> &[usize] {
        &self.tuples[i]
    }

    pub fn tuples(&self) -> &[Vec<usize>] {
        &self.tuples
    }

    /// Position of an increasing tuple.
    pub fn index_of(&self, sorted: &[usize]) -> Option<usize> {
        self.index.get(sorted).copied()
    }

    /// Position and sign of an arbitrary tuple, `None` if it has a repeat.
    pub fn signed_index(&self, indices: &[usize]) -> Option<(usize, i64)> {
        let (sorted, sign) = sort_with_sign(indices)?;
        Some((self.index[&sorted], sign))
    }
}

/// An element of `Λ^k 𝔤^∨`, i.e. an alternating `k`-form on the algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct ExteriorCochain {
    pub dim: usize,
    pub degree: usize,
    coeffs: BTreeMap<Vec<usize>, Rational>,
}

impl ExteriorCochain {
    pub fn zero(dim: usize, degree: usize) -> Self {
        ExteriorCochain { dim, degree, coeffs: BTreeMap::new() }
    }

    /// Builds a cochain from values on arbitrary tuples, antisymmetrizing into canonical order.
    pub fn from_terms(dim: usize, degree: usize, terms: impl IntoIterator<Item = (Vec<usize>, Rational)>) -> Result<Self> {
        let mut c = Self::zero(dim, degree);
        for (t, v) in terms {
            if t.len() != degree || t.iter().any(|&i| i >= dim) {
                return Err(Error::Shape(format!("tuple {t:?} is not a degree-{degree} index tuple for dimension {dim}")));
            }
            if let Some((sorted, sign)) = sort_with_sign(&t) {
                c.add_term(sorted, &(v * Rational::from_integer(sign.into())));
            }
        }
        Ok(c)
    }

    fn add_term(&mut self, sorted: Vec<usize>, v: &Rational) {
        use std::collections::btree_map::Entry;
        match self.coeffs.entry(sorted) {
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

    pub fn from_vector(dim: usize, degree: usize, v: &[Rational]) -> Self {
        let basis = ExteriorBasis::new(dim, degree);
        assert_eq!(v.len(), basis.len());
        let coeffs = v
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, x)| (basis.tuple(i).to_vec(), x.clone()))
            .collect();
        ExteriorCochain { dim, degree, coeffs }
    }

    pub fn to_vector(&self) -> Vector {
        let basis = ExteriorBasis::new(self.dim, self.degree);
        let mut v = vec![Rational::zero(); basis.len()];
        for (t, x) in &self.coeffs {
            v[basis.index_of(t).unwrap()] = x.clone();
        }
        v
    }

    /// Value on an increasing tuple.
    pub fn coefficient(&self, sorted: &[usize]) -> Rational {
        self.coeffs.get(sorted).cloned().unwrap_or_else(Rational::zero)
    }

    /// Value on an arbitrary tuple of basis elements.
    pub fn evaluate(&self, indices: &[usize]) -> Rational {
        match sort_with_sign(indices) {
            Some((sorted, sign)) => self.coefficient(&sorted) * Rational::from_integer(sign.into()),
            None => Rational::zero(),
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &Rational)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

/// Matrix of the differential `Λ^k 𝔤^∨ → Λ^{k+1} 𝔤^∨` in the lexicographic tuple bases.
pub fn ce_matrix(alg: &LieAlgebra, k: usize) -> SparseMatrix {
    let n = alg.dim();
    let src = ExteriorBasis::new(n, k);
    let tgt = ExteriorBasis::new(n, k + 1);
    let mut triplets = Vec::new();
    for (row, t) in tgt.tuples().iter().enumerate() {
        for i in 0..t.len() {
            for j in i + 1..t.len() {
                let rest: Vec<usize> = t.iter().enumerate().filter(|&(p, _)| p != i && p != j).map(|(_, &x)| x).collect();
                let outer = if (i + j) % 2 == 0 { 1 } else { -1 };
                for (m, c) in alg.bracket_basis(t[i], t[j]) {
                    let mut args = Vec::with_capacity(k);
                    args.push(*m);
                    args.extend_from_slice(&rest);
                    if let Some((col, sign)) = src.signed_index(&args) {
                        triplets.push((row, col, c * Rational::from_integer((outer * sign).into())));
                    }
                }
            }
        }
    }
    SparseMatrix::from_triplets(tgt.len(), src.len(), triplets)
}

pub fn ce_differential(alg: &LieAlgebra, c: &ExteriorCochain) -> ExteriorCochain {
    assert_eq!(c.dim, alg.dim());
    let v = ce_matrix(alg, c.degree).apply(&c.to_vector());
    ExteriorCochain::from_vector(c.dim, c.degree + 1, &v)
}

/// The full complex `Λ^0 → Λ^1 → … → Λ^dim`.
pub fn ce_complex(alg: &LieAlgebra) -> FiniteComplex {
    let n = alg.dim();
    let dims = (0..=n).map(|k| ExteriorBasis::new(n, k).len()).collect();
    let diffs = (0..n).map(|k| ce_matrix(alg, k)).collect();
    FiniteComplex::new(0, dims, diffs).expect("the Chevalley–Eilenberg differential squares to zero")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn subsets_count_and_order() {
        let s = subsets(5, 2);
        assert_eq!(s.len(), 10);
        assert_eq!(s[0], vec![0, 1]);
        assert_eq!(s[9], vec![3, 4]);
        assert_eq!(subsets(3, 0), vec![Vec::<usize>::new()]);
        assert!(subsets(2, 3).is_empty());
    }

    #[test]
    fn sorting_sign() {
        assert_eq!(sort_with_sign(&[2, 0, 1]), Some((vec![0, 1, 2], 1)));
        assert_eq!(sort_with_sign(&[1, 0]), Some((vec![0, 1], -1)));
        assert_eq!(sort_with_sign(&[1, 1]), None);
    }

    #[test]
    fn abelian_differential_vanishes() {
        let g = LieAlgebra::gl(1);
        assert!(ce_matrix(&g, 0).is_zero());
        assert!(ce_matrix(&g, 1).is_zero());
    }

    #[test]
    fn trace_is_closed_by_brute_force() {
        let g = LieAlgebra::gl(2);
        let tr = ExteriorCochain::from_terms(4, 1, [(vec![0], int(1)), (vec![3], int(1))]).unwrap();
        // Tr([x, y]) = 0 on every basis pair
        for a in 0..4 {
            for b in 0..4 {
                let s: Rational = g.bracket_basis(a, b).iter().map(|(c, v)| v * tr.evaluate(&[*c])).sum();
                assert!(s.is_zero());
            }
        }
        assert!(ce_differential(&g, &tr).is_zero());
    }

    #[test]
    fn differential_matches_pointwise_formula() {
        // evaluate (dc)(x_0, x_1, x_2) directly from the defining sum on unsorted tuples
        let g = LieAlgebra::gl(2);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let terms: Vec<(Vec<usize>, Rational)> =
            subsets(4, 2).into_iter().map(|t| (t, int(rng.gen_range(-3..4)))).collect();
        let c = ExteriorCochain::from_terms(4, 2, terms).unwrap();
        let dc = ce_differential(&g, &c);
        for x in [[2usize, 0, 1], [3, 1, 2], [0, 3, 1]] {
            let mut expect = Rational::zero();
            for i in 0..3 {
                for j in i + 1..3 {
                    let rest: Vec<usize> = (0..3).filter(|&p| p != i && p != j).map(|p| x[p]).collect();
                    let sign = if (i + j) % 2 == 0 { int(1) } else { int(-1) };
                    for (m, v) in g.bracket_basis(x[i], x[j]) {
                        let mut args = vec![*m];
                        args.extend(&rest);
                        expect += &sign * v * c.evaluate(&args);
                    }
                }
            }
            assert_eq!(dc.evaluate(&x), expect);
        }
    }

    #[test]
    fn d_squared_on_random_cochains() {
        let g = LieAlgebra::gl(2);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..100 {
            let k = rng.gen_range(0..4);
            let terms: Vec<(Vec<usize>, Rational)> =
                subsets(4, k).into_iter().map(|t| (t, int(rng.gen_range(-5..6)))).collect();
            let c = ExteriorCochain::from_terms(4, k, terms).unwrap();
            assert!(ce_differential(&g, &ce_differential(&g, &c)).is_zero());
        }
    }

    #[test]
    fn gl2_betti_numbers() {
        assert_eq!(ce_complex(&LieAlgebra::gl(2)).cohomology_dims(), vec![1, 1, 0, 1, 1]);
    }
}
