//! Total-degree truncations of the Weil complex and its filtration by symmetric degree.

use std::collections::HashMap;

use num_traits::Zero;

use super::element::{WeilDifferential, WeilElement, WeilMonomial};
use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::lie::exterior::subsets;
use crate::lie::sym::multisets;
use crate::lie::LieAlgebra;
use crate::linalg::{FiniteComplex, ShortExactSequence, SparseMatrix, Vector};

/// Every Weil monomial of total degree `≤ bound`, and the complex they span.
///
/// The differential out of the top degree is dropped, so cohomology in degree
/// `bound` is not that of the untruncated complex.
#[derive(Clone, Debug)]
pub struct WeilSlice {
    pub alg: LieAlgebra,
    pub bound: usize,
    differential: WeilDifferential,
    bases: Vec<Vec<WeilMonomial>>,
    index: Vec<HashMap<WeilMonomial, usize>>,
    complex: FiniteComplex,
}

/// The pieces `0 → W^{≥n} → W → W^{<n} → 0` of a slice.
#[derive(Clone, Debug)]
pub struct Filtration {
    pub level: usize,
    /// Positions in the slice basis of the monomials of symmetric degree `≥ level`, per degree.
    pub upper: Vec<Vec<usize>>,
    /// Positions of the monomials of symmetric degree `< level`, per degree.
    pub lower: Vec<Vec<usize>>,
    pub sequence: ShortExactSequence,
}

impl Filtration {
    pub fn sub(&self) -> &FiniteComplex {
        &self.sequence.sub
    }

    pub fn quotient(&self) -> &FiniteComplex {
        &self.sequence.quotient
    }
}

fn monomials_of_degree(dim: usize, t: usize) -> Vec<WeilMonomial> {
    let mut out = Vec::new();
    for p in 0..=t / 2 {
        for sym in multisets(dim, p) {
            for ext in subsets(dim, t - 2 * p) {
                out.push(WeilMonomial { sym: sym.clone(), ext });
            }
        }
    }
    out
}

fn select(m: &SparseMatrix, rows: &[usize], cols: &[usize]) -> SparseMatrix {
    let row_pos: HashMap<usize, usize> = rows.iter().enumerate().map(|(i, &r)| (r, i)).collect();
    let col_pos: HashMap<usize, usize> = cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let entries = m
        .entries()
        .filter_map(|(r, c, v)| Some((*row_pos.get(&r)?, *col_pos.get(&c)?, v.clone())))
        .collect::<Vec<_>>();
    SparseMatrix::from_triplets(rows.len(), cols.len(), entries)
}

fn coordinate_injection(total: usize, positions: &[usize]) -> SparseMatrix {
    SparseMatrix::from_triplets(total, positions.len(), positions.iter().enumerate().map(|(i, &r)| (r, i, Rational::from_integer(1.into()))))
}

impl WeilSlice {
    /// Enumerates the slice and assembles its differential; fails unless `δ∘δ = 0`.
    pub fn new(alg: &LieAlgebra, bound: usize) -> Result<Self> {
        let dim = alg.dim();
        let differential = WeilDifferential::new(alg);
        let bases: Vec<Vec<WeilMonomial>> = (0..=bound).map(|t| monomials_of_degree(dim, t)).collect();
        let index: Vec<HashMap<WeilMonomial, usize>> =
            bases.iter().map(|b| b.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect()).collect();
        let mut diffs = Vec::with_capacity(bound);
        for t in 0..bound {
            let mut triplets = Vec::new();
            for (col, m) in bases[t].iter().enumerate() {
                let mut image = WeilElement::zero(dim);
                differential.apply_monomial(m, &Rational::from_integer(1.into()), &mut image);
                for (mono, v) in image.terms() {
                    triplets.push((index[t + 1][mono], col, v.clone()));
                }
            }
            diffs.push(SparseMatrix::from_triplets(bases[t + 1].len(), bases[t].len(), triplets));
        }
        let complex = FiniteComplex::new(0, bases.iter().map(Vec::len).collect(), diffs)?;
        Ok(WeilSlice { alg: alg.clone(), bound, differential, bases, index, complex })
    }

    pub fn complex(&self) -> &FiniteComplex {
        &self.complex
    }

    pub fn basis(&self, t: usize) -> &[WeilMonomial] {
        &self.bases[t]
    }

    /// Coordinates of a homogeneous element of degree `t`.
    pub fn to_vector(&self, w: &WeilElement, t: usize) -> Result<Vector> {
        if t > self.bound {
            return Err(Error::TruncationOverflow(format!("degree {t} exceeds the slice bound {}", self.bound)));
        }
        let mut v = vec![Rational::zero(); self.bases[t].len()];
        for (m, x) in w.terms() {
            if m.total_degree() != t {
                return Err(Error::Shape(format!("element is not homogeneous of degree {t}")));
            }
            v[self.index[t][m]] = x.clone();
        }
        Ok(v)
    }

    pub fn from_vector(&self, t: usize, v: &[Rational]) -> WeilElement {
        WeilElement::from_terms(
            self.alg.dim(),
            v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (self.bases[t][i].clone(), x.clone())),
        )
    }

    /// `δ w`, refusing results beyond the slice.
    pub fn differential(&self, w: &WeilElement) -> Result<WeilElement> {
        if let Some(t) = w.max_degree() {
            if t + 1 > self.bound {
                return Err(Error::TruncationOverflow(format!("δ of a degree-{t} element leaves the slice of bound {}", self.bound)));
            }
        }
        Ok(self.differential.apply(w))
    }

    /// The split sequence `0 → W^{≥n} → W → W^{<n} → 0`.
    pub fn filtration(&self, level: usize) -> Result<Filtration> {
        let degrees = self.bound + 1;
        let upper: Vec<Vec<usize>> =
            self.bases.iter().map(|b| (0..b.len()).filter(|&i| b[i].sym_degree() >= level).collect()).collect();
        let lower: Vec<Vec<usize>> =
            self.bases.iter().map(|b| (0..b.len()).filter(|&i| b[i].sym_degree() < level).collect()).collect();
        let piece = |pos: &[Vec<usize>]| -> Result<FiniteComplex> {
            let diffs = (0..self.bound).map(|t| select(&self.complex.d(t as i64), &pos[t + 1], &pos[t])).collect();
            FiniteComplex::new(0, pos.iter().map(Vec::len).collect(), diffs)
        };
        let sub = piece(&upper)?;
        let quot = piece(&lower)?;
        let mut inclusion = Vec::with_capacity(degrees);
        let mut projection = Vec::with_capacity(degrees);
        let mut section = Vec::with_capacity(degrees);
        let mut retraction = Vec::with_capacity(degrees);
        for t in 0..degrees {
            let n = self.bases[t].len();
            let inc = coordinate_injection(n, &upper[t]);
            let sec = coordinate_injection(n, &lower[t]);
            retraction.push(inc.transpose());
            projection.push(sec.transpose());
            inclusion.push(inc);
            section.push(sec);
        }
        let sequence = ShortExactSequence::new(sub, self.complex.clone(), quot, inclusion, projection, section, retraction)?;
        Ok(Filtration { level, upper, lower, sequence })
    }
}

/// Cohomology of a slice and of its filtered pieces.
#[derive(Clone, Debug, PartialEq)]
pub struct WeilCohomology {
    pub bound: usize,
    /// `dim H^t(W)` for `t = 0..=bound`.
    pub full: Vec<usize>,
    /// `(n, dim H^t(W^{≥n}))` for `1 ≤ n ≤ bound / 2`.
    pub filtered: Vec<(usize, Vec<usize>)>,
    /// Degrees strictly below this are unaffected by the truncation.
    pub reliable_below: usize,
}

pub fn weil_cohomology(alg: &LieAlgebra, bound: usize) -> Result<WeilCohomology> {
    if bound < 2 {
        return Err(Error::Range("the Weil slice needs a degree bound of at least 2".into()));
    }
    let slice = WeilSlice::new(alg, bound)?;
    let full = slice.complex().cohomology_dims();
    let mut filtered = Vec::new();
    for n in 1..=bound / 2 {
        filtered.push((n, slice.filtration(n)?.sub().cohomology_dims()));
    }
    Ok(WeilCohomology { bound, full, filtered, reliable_below: bound })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{ce_complex, invariant_polynomials};

    #[test]
    fn slice_sizes() {
        let s = WeilSlice::new(&LieAlgebra::gl(1), 4).unwrap();
        assert_eq!(s.complex().dims(), &[1, 1, 1, 1, 1]);
        let s = WeilSlice::new(&LieAlgebra::gl(2), 2).unwrap();
        // degree 2: Λ² (6) plus Sym¹ (4)
        assert_eq!(s.complex().dims(), &[1, 4, 10]);
    }

    #[test]
    fn lowest_quotient_is_ce_complex() {
        for n in 1..=2 {
            let g = LieAlgebra::gl(n);
            let slice = WeilSlice::new(&g, 5).unwrap();
            let quot = slice.filtration(1).unwrap();
            let ce = ce_complex(&g);
            for t in 0..5i64 {
                assert_eq!(quot.quotient().d(t), ce.d(t), "gl_{n}, degree {t}");
            }
        }
    }

    #[test]
    fn acyclic_below_the_bound() {
        for n in 1..=2 {
            let c = weil_cohomology(&LieAlgebra::gl(n), 6).unwrap();
            assert_eq!(c.full[0], 1);
            assert!(c.full[1..6].iter().all(|&d| d == 0), "{:?}", c.full);
        }
    }

    #[test]
    fn filtered_top_class_counts_invariants() {
        for n in 1..=2 {
            let g = LieAlgebra::gl(n);
            let c = weil_cohomology(&g, 6).unwrap();
            for (level, dims) in &c.filtered {
                if *level <= 2 {
                    assert_eq!(dims[2 * level], invariant_polynomials(&g, *level).len(), "gl_{n}, level {level}");
                }
            }
        }
    }

    #[test]
    fn truncation_overflow() {
        let s = WeilSlice::new(&LieAlgebra::gl(1), 2).unwrap();
        let w = WeilElement::sym_generator(1, 0);
        assert!(matches!(s.differential(&w), Err(Error::TruncationOverflow(_))));
        assert!(matches!(s.to_vector(&w, 3), Err(Error::TruncationOverflow(_))));
    }
}
