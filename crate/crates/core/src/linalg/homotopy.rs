//! Chain maps between finite complexes and null-homotopy search.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::complex::FiniteComplex;
use super::elim::solve;
use super::sparse::SparseMatrix;
use crate::arith::Rational;
use crate::error::{Error, Result};

/// Degreewise linear maps `source^k → target^k` for `k` in `start ..`.
#[derive(Clone, Debug)]
pub struct ChainMap {
    start: i64,
    maps: Vec<SparseMatrix>,
}

impl ChainMap {
    pub fn new(start: i64, maps: Vec<SparseMatrix>) -> Self {
        ChainMap { start, maps }
    }

    pub fn start(&self) -> i64 {
        self.start
    }

    pub fn end(&self) -> i64 {
        self.start + self.maps.len() as i64 - 1
    }

    pub fn get(&self, k: i64) -> Option<&SparseMatrix> {
        let i = k - self.start;
        (i >= 0).then(|| self.maps.get(i as usize)).flatten()
    }

    /// The map in degree `k`, or the zero map of the right shape outside the stored range.
    pub fn at(&self, k: i64, source: &FiniteComplex, target: &FiniteComplex) -> SparseMatrix {
        self.get(k).cloned().unwrap_or_else(|| SparseMatrix::zeros(target.dim(k), source.dim(k)))
    }

    pub fn sub(&self, other: &ChainMap) -> Result<ChainMap> {
        if self.start != other.start || self.maps.len() != other.maps.len() {
            return Err(Error::Shape("chain maps over different degree ranges".into()));
        }
        Ok(ChainMap::new(self.start, self.maps.iter().zip(&other.maps).map(|(a, b)| a.sub(b)).collect()))
    }

    pub fn scale_by_degree(&self, sign: impl Fn(i64) -> Rational) -> ChainMap {
        let maps = self.maps.iter().enumerate().map(|(i, m)| m.scale(&sign(self.start + i as i64))).collect();
        ChainMap::new(self.start, maps)
    }

    /// Checks `f_{k+1} ∘ d = d ∘ f_k` for every `k` with `lo <= k` and `k + 1 <= hi`.
    pub fn verify(&self, source: &FiniteComplex, target: &FiniteComplex, lo: i64, hi: i64) -> Result<()> {
        for k in lo..=hi {
            let f = self.get(k).ok_or_else(|| Error::ChainMapViolation(format!("no map in degree {k}")))?;
            if f.rows() != target.dim(k) || f.cols() != source.dim(k) {
                return Err(Error::ChainMapViolation(format!("map in degree {k} has the wrong shape")));
            }
        }
        for k in lo..hi {
            let lhs = self.get(k + 1).unwrap().mul(&source.d(k));
            let rhs = target.d(k).mul(self.get(k).unwrap());
            if lhs != rhs {
                return Err(Error::ChainMapViolation(format!("square out of degree {k} does not commute")));
            }
        }
        Ok(())
    }

    /// The induced map `H^k(source) → H^k(target)` in the bases returned by `cohomology_basis`.
    pub fn induced_on_cohomology(&self, source: &FiniteComplex, target: &FiniteComplex, k: i64) -> Result<SparseMatrix> {
        let src = source.cohomology_basis(k);
        let tgt = target.cohomology_basis(k);
        let f = self.at(k, source, target);
        let mut columns = Vec::with_capacity(src.dim());
        for z in &src.representatives {
            let image = f.apply(z);
            let coords = tgt
                .coordinates(&image)
                .ok_or_else(|| Error::ChainMapViolation(format!("image of a cocycle in degree {k} is not a cocycle")))?;
            columns.push(coords);
        }
        Ok(SparseMatrix::from_columns(tgt.dim(), &columns))
    }
}

/// Degree −1 maps `h_k : source^k → target^{k−1}`.
#[derive(Clone, Debug)]
pub struct Homotopy {
    pub maps: BTreeMap<i64, SparseMatrix>,
}

impl Homotopy {
    pub fn at(&self, k: i64, source: &FiniteComplex, target: &FiniteComplex) -> SparseMatrix {
        self.maps.get(&k).cloned().unwrap_or_else(|| SparseMatrix::zeros(target.dim(k - 1), source.dim(k)))
    }

    /// Exact check of `f − g = h∘d + d∘h` in every degree of `lo ..= hi`.
    pub fn verify(&self, diff: &ChainMap, source: &FiniteComplex, target: &FiniteComplex, lo: i64, hi: i64) -> bool {
        (lo..=hi).all(|k| {
            let rhs = self
                .at(k + 1, source, target)
                .mul(&source.d(k))
                .add(&target.d(k - 1).mul(&self.at(k, source, target)));
            diff.at(k, source, target) == rhs
        })
    }
}

/// Searches for `h` with `f − g = h∘d + d∘h` on degrees `lo ..= hi` by one exact solve.
///
/// Unknowns are the entries of `h_k` for `k` in `lo ..= hi + 1`. Returns `Ok(None)` when
/// the system is infeasible and an error when `f` or `g` is not a chain map on the range.
pub fn null_homotopy_solve(
    f: &ChainMap,
    g: &ChainMap,
    source: &FiniteComplex,
    target: &FiniteComplex,
    lo: i64,
    hi: i64,
) -> Result<Option<Homotopy>> {
    f.verify(source, target, lo, hi)?;
    g.verify(source, target, lo, hi)?;
    let diff = f.sub(g)?;

    // offset of the block of unknowns for h_k, stored row-major as (target row, source col)
    let mut offset = BTreeMap::new();
    let mut unknowns = 0usize;
    for k in lo..=hi + 1 {
        offset.insert(k, unknowns);
        unknowns += target.dim(k - 1) * source.dim(k);
    }
    let var = |k: i64, r: usize, c: usize| offset[&k] + r * source.dim(k) + c;

    let mut eq_offset = BTreeMap::new();
    let mut equations = 0usize;
    for k in lo..=hi {
        eq_offset.insert(k, equations);
        equations += target.dim(k) * source.dim(k);
    }
    let eq = |k: i64, r: usize, c: usize| eq_offset[&k] + r * source.dim(k) + c;

    let mut triplets = Vec::new();
    let mut rhs = vec![Rational::zero(); equations];
    for k in lo..=hi {
        // (h_{k+1} d_k)[r, c] = Σ_j h_{k+1}[r, j] d_k[j, c]
        for (j, c, v) in source.d(k).entries() {
            for r in 0..target.dim(k) {
                triplets.push((eq(k, r, c), var(k + 1, r, j), v.clone()));
            }
        }
        // (d_{k-1} h_k)[r, c] = Σ_j d_{k-1}[r, j] h_k[j, c]
        for (r, j, v) in target.d(k - 1).entries() {
            for c in 0..source.dim(k) {
                triplets.push((eq(k, r, c), var(k, j, c), v.clone()));
            }
        }
        for (r, c, v) in diff.at(k, source, target).entries() {
            rhs[eq(k, r, c)] = v.clone();
        }
    }
    let system = SparseMatrix::from_triplets(equations, unknowns, triplets);
    let Some(x) = solve(&system, &rhs) else { return Ok(None) };

    let mut maps = BTreeMap::new();
    for k in lo..=hi + 1 {
        let (rows, cols) = (target.dim(k - 1), source.dim(k));
        let entries = (0..rows)
            .flat_map(|r| (0..cols).map(move |c| (r, c)))
            .map(|(r, c)| (r, c, x[var(k, r, c)].clone()));
        maps.insert(k, SparseMatrix::from_triplets(rows, cols, entries));
    }
    let h = Homotopy { maps };
    if !h.verify(&diff, source, target, lo, hi) {
        return Err(Error::ChainMapViolation("solved homotopy failed exact re-verification".into()));
    }
    Ok(Some(h))
}
