//! Symmetric powers of the dual of a Lie algebra and invariant polynomials.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use super::algebra::LieAlgebra;
use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::linalg::{Rref, SparseMatrix, Vector};

/// All nondecreasing `k`-tuples from `0..n`, in lexicographic order.
pub fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, k: usize, from: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in from..n {
            cur.push(i);
            rec(n, k, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, k, 0, &mut Vec::new(), &mut out);
    out
}

/// Ordered monomial basis of `Sym^k` on `n` generators.
#[derive(Clone, Debug)]
pub struct SymBasis {
    pub n: usize,
    pub k: usize,
    monomials: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl SymBasis {
    pub fn new(n: usize, k: usize) -> Self {
        let monomials = multisets(n, k);
        let index = monomials.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        SymBasis { n, k, monomials, index }
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomial(&self, i: usize) -> &[usize] {
        &self.monomials[i]
    }

    pub fn monomials(&self) -> &[Vec<usize>] {
        &self.monomials
    }

    /// Position of a monomial given by any ordering of its factors.
    pub fn index_of(&self, factors: &[usize]) -> usize {
        let mut m = factors.to_vec();
        m.sort_unstable();
        self.index[&m]
    }
}

/// A homogeneous polynomial on the algebra, in the dual coordinates `y_a`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymPolynomial {
    pub dim: usize,
    pub degree: usize,
    coeffs: BTreeMap<Vec<usize>, Rational>,
}

impl SymPolynomial {
    pub fn from_terms(dim: usize, degree: usize, terms: impl IntoIterator<Item = (Vec<usize>, Rational)>) -> Result<Self> {
        let mut coeffs: BTreeMap<Vec<usize>, Rational> = BTreeMap::new();
        for (mut m, v) in terms {
            if m.len() != degree || m.iter().any(|&a| a >= dim) {
                return Err(Error::Shape(format!("monomial {m:?} is not of degree {degree} in {dim} variables")));
            }
            m.sort_unstable();
            *coeffs.entry(m).or_insert_with(Rational::zero) += v;
        }
        coeffs.retain(|_, v| !v.is_zero());
        Ok(SymPolynomial { dim, degree, coeffs })
    }

    pub fn from_vector(dim: usize, degree: usize, v: &[Rational]) -> Self {
        let basis = SymBasis::new(dim, degree);
        let terms = v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (basis.monomial(i).to_vec(), x.clone()));
        Self::from_terms(dim, degree, terms.collect::<Vec<_>>()).expect("basis monomials")
    }

    pub fn to_vector(&self) -> Vector {
        let basis = SymBasis::new(self.dim, self.degree);
        let mut v = vec![Rational::zero(); basis.len()];
        for (m, x) in &self.coeffs {
            v[basis.index_of(m)] = x.clone();
        }
        v
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &Rational)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Value at the point with coordinates `y_a = x[a]`.
    pub fn evaluate(&self, x: &[Rational]) -> Rational {
        self.coeffs.iter().map(|(m, c)| m.iter().fold(c.clone(), |acc, &a| acc * &x[a])).sum()
    }
}

/// Matrix of the coadjoint action of `x_i` on `Sym^k`, extended as a derivation.
///
/// On generators it is `x_i · y_a = Σ_b C^a_{b i} y_b`, i.e. `(x_i · f)(y) = −f([x_i, y])`.
pub fn coadjoint_matrix(alg: &LieAlgebra, i: usize, k: usize) -> SparseMatrix {
    let n = alg.dim();
    let basis = SymBasis::new(n, k);
    let mut triplets = Vec::new();
    for (col, m) in basis.monomials().iter().enumerate() {
        for pos in 0..m.len() {
            let a = m[pos];
            for b in 0..n {
                let c = alg.structure_constant(b, i, a);
                if c.is_zero() {
                    continue;
                }
                let mut image = m.clone();
                image[pos] = b;
                triplets.push((basis.index_of(&image), col, c));
            }
        }
    }
    SparseMatrix::from_triplets(basis.len(), basis.len(), triplets)
}

/// Echelonized basis of the invariants `(Sym^k 𝔤^∨)^𝔤`.
pub fn invariant_polynomials(alg: &LieAlgebra, k: usize) -> Vec<SymPolynomial> {
    let blocks: Vec<SparseMatrix> = (0..alg.dim()).map(|i| coadjoint_matrix(alg, i, k)).collect();
    let stacked = SparseMatrix::vstack(&blocks);
    let cols = SymBasis::new(alg.dim(), k).len();
    let rref = if blocks.is_empty() { Rref::of_rows(cols, Vec::<Vec<(usize, &Rational)>>::new()) } else { Rref::of_matrix(&stacked) };
    let null = rref.nullspace();
    // echelonize the kernel itself so the basis is canonical
    let echelon = Rref::of_rows(cols, null.iter().map(|v| v.iter().enumerate()));
    echelon
        .rows()
        .iter()
        .map(|row| {
            let mut v = vec![Rational::zero(); cols];
            for (&c, x) in row {
                v[c] = x.clone();
            }
            SymPolynomial::from_vector(alg.dim(), k, &v)
        })
        .collect()
}

/// `Tr(X^k)` on `gl_N` as a polynomial in the entries `y_{ij} = X_ij`.
pub fn power_trace(n: usize, k: usize) -> SymPolynomial {
    let mut terms = Vec::new();
    let mut chain = vec![0usize; k];
    // enumerate index chains i_1 → i_2 → … → i_k → i_1
    loop {
        let monomial: Vec<usize> = (0..k).map(|t| chain[t] * n + chain[(t + 1) % k]).collect();
        terms.push((monomial, Rational::one()));
        let mut pos = 0;
        while pos < k && chain[pos] == n - 1 {
            chain[pos] = 0;
            pos += 1;
        }
        if pos == k {
            break;
        }
        chain[pos] += 1;
    }
    SymPolynomial::from_terms(n * n, k, terms).expect("valid indices")
}

/// Product of polynomials.
pub fn multiply(p: &SymPolynomial, q: &SymPolynomial) -> SymPolynomial {
    assert_eq!(p.dim, q.dim);
    let terms = p.terms().flat_map(|(a, x)| {
        q.terms().map(move |(b, y)| {
            let mut m = a.clone();
            m.extend(b);
            (m, x * y)
        })
    });
    SymPolynomial::from_terms(p.dim, p.degree + q.degree, terms.collect::<Vec<_>>()).expect("valid indices")
}
