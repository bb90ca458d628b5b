//! The first-order quotient of the model and its normalization.
//!
//! `J` is the cosimplicial ideal generated by the square of the augmentation
//! ideal at level 1. In level `n` it is spanned by the products
//! `m · μ_I^*(z_a) · μ_I^*(z_b)`, where `m` is a monomial, `I = [i, j]` with
//! `i < j` is a run of consecutive blocks and `μ_I^*(z_ab) = (Π_{k∈I}(1 + Z_k) − 1)_ab`
//! pulls `z_ab` back along the multiplication of the blocks in `I`.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::model::{decode, encode, InfinitesimalModel};
use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::lie::exterior::{sort_with_sign, ExteriorBasis};
use crate::lie::{ce_complex, LieAlgebra};
use crate::linalg::elim::IntRow;
use crate::linalg::{rank, Echelon, FiniteComplex, Rref, SparseMatrix, Vector};

type Poly = HashMap<usize, i64>;

/// `(Π_{k∈[i,j]}(1 + Z_k) − 1)_ab` as a polynomial on level `n`.
fn interval_entry(size: usize, n: usize, i: usize, j: usize, a: usize, b: usize) -> Poly {
    let mut out = Poly::new();
    let blocks: Vec<usize> = (i..=j).collect();
    for mask in 1u32..(1 << blocks.len()) {
        let chosen: Vec<usize> = blocks.iter().enumerate().filter(|(t, _)| mask & (1 << t) != 0).map(|(_, &k)| k).collect();
        let mids = chosen.len() - 1;
        for path_code in 0..size.pow(mids as u32) {
            let mut path = vec![a];
            let mut code = path_code;
            for _ in 0..mids {
                path.push(code % size);
                code /= size;
            }
            path.push(b);
            let mut slots = vec![0usize; n];
            for (t, &k) in chosen.iter().enumerate() {
                slots[k] = 1 + path[t] * size + path[t + 1];
            }
            *out.entry(encode(size, &slots)).or_default() += 1;
        }
    }
    out
}

/// Product of multilinear polynomials, dropping terms with two coordinates in one block.
fn multiply(size: usize, n: usize, p: &Poly, q: &Poly) -> Poly {
    let mut out = Poly::new();
    let dp: Vec<(Vec<usize>, i64)> = p.iter().map(|(&k, &v)| (decode(size, n, k), v)).collect();
    let dq: Vec<(Vec<usize>, i64)> = q.iter().map(|(&k, &v)| (decode(size, n, k), v)).collect();
    for (a, x) in &dp {
        'term: for (b, y) in &dq {
            let mut slots = a.clone();
            for (s, &t) in slots.iter_mut().zip(b) {
                if t != 0 {
                    if *s != 0 {
                        continue 'term;
                    }
                    *s = t;
                }
            }
            *out.entry(encode(size, &slots)).or_default() += x * y;
        }
    }
    out.retain(|_, v| *v != 0);
    out
}

fn primitive_row(p: &Poly) -> Option<Vec<(usize, i64)>> {
    let mut row: Vec<(usize, i64)> = p.iter().filter(|(_, v)| **v != 0).map(|(&k, &v)| (k, v)).collect();
    if row.is_empty() {
        return None;
    }
    row.sort_unstable();
    let g = row.iter().fold(0i64, |g, (_, v)| g.gcd(v));
    let s = if row[0].1 < 0 { -g } else { g };
    for (_, v) in row.iter_mut() {
        *v /= s;
    }
    Some(row)
}

/// The ideal in one level, as a reduced row-echelon basis.
#[derive(Clone, Debug)]
pub struct LevelIdeal {
    pub level: usize,
    pub rref: Rref,
    /// Columns that survive in the quotient, in increasing order.
    pub free: Vec<usize>,
    free_pos: HashMap<usize, usize>,
}

impl LevelIdeal {
    fn build(size: usize, n: usize, dim: usize) -> Self {
        let mut seen: HashSet<Vec<(usize, i64)>> = HashSet::new();
        let mut ech = Echelon::new(dim);
        let vdim = size * size;
        for i in 0..n {
            for j in i + 1..n {
                let entries: Vec<Poly> = (0..vdim).map(|a| interval_entry(size, n, i, j, a / size, a % size)).collect();
                for a in 0..vdim {
                    for b in a..vdim {
                        let g = multiply(size, n, &entries[a], &entries[b]);
                        for m in 0..dim {
                            let mono: Poly = [(m, 1)].into_iter().collect();
                            let Some(row) = primitive_row(&multiply(size, n, &mono, &g)) else { continue };
                            if seen.insert(row.clone()) {
                                let int_row: IntRow = row.into_iter().map(|(c, v)| (c, BigInt::from(v))).collect();
                                ech.insert(int_row);
                            }
                        }
                        if ech.rank() == dim {
                            break;
                        }
                    }
                }
            }
        }
        let rref = ech.into_rref();
        let free = rref.free_columns();
        let free_pos = free.iter().enumerate().map(|(p, &c)| (c, p)).collect();
        LevelIdeal { level: n, rref, free, free_pos }
    }

    pub fn rank(&self) -> usize {
        self.rref.rank()
    }

    pub fn quotient_dim(&self) -> usize {
        self.free.len()
    }

    /// Quotient coordinates of a level vector.
    pub fn reduce(&self, v: &[Rational]) -> Vector {
        let nf = self.rref.normal_form(v);
        self.free.iter().map(|&c| nf[c].clone()).collect()
    }

    /// The representative supported on the surviving columns.
    pub fn lift(&self, coords: &[Rational], dim: usize) -> Vector {
        let mut v = vec![Rational::zero(); dim];
        for (&c, x) in self.free.iter().zip(coords) {
            v[c] = x.clone();
        }
        v
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.rref.row_space_contains(v)
    }

    pub fn free_position(&self, column: usize) -> Option<usize> {
        self.free_pos.get(&column).copied()
    }
}

/// The model modulo the ideal, with the induced cosimplicial operators.
#[derive(Clone, Debug)]
pub struct QuotientModel {
    pub model: InfinitesimalModel,
    pub ideals: Vec<LevelIdeal>,
    /// `δ̄^i` out of each level, in quotient coordinates.
    pub cofaces: Vec<Vec<SparseMatrix>>,
    /// `σ̄^i` out of each level, in quotient coordinates.
    pub codegeneracies: Vec<Vec<SparseMatrix>>,
}

impl QuotientModel {
    pub fn new(model: InfinitesimalModel) -> Result<Self> {
        let ideals: Vec<LevelIdeal> = (0..=model.max_level).map(|n| LevelIdeal::build(model.size, n, model.dim(n))).collect();
        let descend = |m: &SparseMatrix, src: &LevelIdeal, tgt: &LevelIdeal, what: &str| -> Result<SparseMatrix> {
            for row in src.rref.rows() {
                let v: Vector = {
                    let mut v = vec![Rational::zero(); m.cols()];
                    for (&c, x) in row {
                        v[c] = x.clone();
                    }
                    v
                };
                if !tgt.contains(&m.apply(&v)) {
                    return Err(Error::CosimplicialIdentity(format!("{what} does not preserve the ideal at level {}", src.level)));
                }
            }
            let columns: Vec<Vector> = src
                .free
                .iter()
                .map(|&c| {
                    let mut e = vec![Rational::zero(); m.cols()];
                    e[c] = Rational::one();
                    tgt.reduce(&m.apply(&e))
                })
                .collect();
            Ok(SparseMatrix::from_columns(tgt.quotient_dim(), &columns))
        };
        let mut cofaces = Vec::new();
        let mut codegeneracies = Vec::new();
        for n in 0..=model.max_level {
            let lvl = &model.levels[n];
            let mut cf = Vec::new();
            for (i, m) in lvl.cofaces.iter().enumerate() {
                cf.push(descend(m, &ideals[n], &ideals[n + 1], &format!("δ^{i}"))?);
            }
            let mut cd = Vec::new();
            for (i, m) in lvl.codegeneracies.iter().enumerate() {
                cd.push(descend(m, &ideals[n], &ideals[n - 1], &format!("σ^{i}"))?);
            }
            cofaces.push(cf);
            codegeneracies.push(cd);
        }
        Ok(QuotientModel { model, ideals, cofaces, codegeneracies })
    }

    pub fn size(&self) -> usize {
        self.model.size
    }

    pub fn max_level(&self) -> usize {
        self.model.max_level
    }

    pub fn quotient_dims(&self) -> Vec<usize> {
        self.ideals.iter().map(LevelIdeal::quotient_dim).collect()
    }

    pub fn differential(&self, n: usize) -> SparseMatrix {
        let target = self.ideals[n + 1].quotient_dim();
        let mut d = SparseMatrix::zeros(target, self.ideals[n].quotient_dim());
        for (i, m) in self.cofaces[n].iter().enumerate() {
            d = d.add(&m.scale(&Rational::from_integer(if i % 2 == 0 { 1.into() } else { (-1).into() })));
        }
        d
    }

    pub fn normalize(&self) -> Result<NormalizedComplex> {
        NormalizedComplex::new(self)
    }
}

/// `∩ ker σ̄^i` in every level of the quotient, with the induced differential.
#[derive(Clone, Debug)]
pub struct NormalizedComplex {
    pub complex: FiniteComplex,
    /// Basis vectors of each level, in quotient coordinates.
    pub bases: Vec<Vec<Vector>>,
    /// Quotient coordinates at which basis vector `k` has a 1 and the others vanish.
    pub pivots: Vec<Vec<usize>>,
    codegeneracy_stacks: Vec<Option<SparseMatrix>>,
}

impl NormalizedComplex {
    fn new(q: &QuotientModel) -> Result<Self> {
        let mut bases = Vec::new();
        let mut pivots = Vec::new();
        let mut stacks = Vec::new();
        for n in 0..=q.max_level() {
            let dim = q.ideals[n].quotient_dim();
            if n == 0 {
                bases.push((0..dim).map(|i| (0..dim).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect()).collect());
                pivots.push((0..dim).collect());
                stacks.push(None);
                continue;
            }
            let stack = SparseMatrix::vstack(&q.codegeneracies[n]);
            let rref = Rref::of_matrix(&stack);
            pivots.push(rref.free_columns());
            bases.push(rref.nullspace());
            stacks.push(Some(stack));
        }
        let mut nc = NormalizedComplex { complex: FiniteComplex::new(0, vec![1], vec![])?, bases, pivots, codegeneracy_stacks: stacks };
        let mut diffs = Vec::new();
        for n in 0..q.max_level() {
            let d = q.differential(n);
            let mut columns = Vec::new();
            for b in &nc.bases[n] {
                let image = d.apply(b);
                columns.push(nc.coordinates(n + 1, &image).ok_or_else(|| {
                    Error::CosimplicialIdentity(format!("differential leaves the normalized part at level {}", n + 1))
                })?);
            }
            diffs.push(SparseMatrix::from_columns(nc.bases[n + 1].len(), &columns));
        }
        nc.complex = FiniteComplex::new(0, nc.bases.iter().map(Vec::len).collect(), diffs)?;
        Ok(nc)
    }

    pub fn dims(&self) -> Vec<usize> {
        self.bases.iter().map(Vec::len).collect()
    }

    /// Coordinates of a quotient vector in the normalized basis, `None` if it is not normalized.
    pub fn coordinates(&self, level: usize, v: &[Rational]) -> Option<Vector> {
        if let Some(stack) = &self.codegeneracy_stacks[level] {
            if !stack.apply(v).iter().all(Zero::is_zero) {
                return None;
            }
        }
        Some(self.pivots[level].iter().map(|&c| v[c].clone()).collect())
    }
}

/// The map `Λ^n 𝔤^∨ → N^n` sending `e_{a_1} ∧ … ∧ e_{a_n}` to the class of `z_{a_1} ⊗ … ⊗ z_{a_n}`.
#[derive(Clone, Debug)]
pub struct NormalizationIso {
    /// `κ_n` as a `dim N^n × dim Λ^n` matrix, per level.
    pub maps: Vec<SparseMatrix>,
    /// Inverses `κ_n^{-1}`.
    pub inverses: Vec<SparseMatrix>,
    pub ce: FiniteComplex,
}

fn invert(m: &SparseMatrix) -> Option<SparseMatrix> {
    let n = m.rows();
    if m.cols() != n || rank(m) != n {
        return None;
    }
    let columns: Option<Vec<Vector>> = (0..n)
        .map(|i| {
            let mut e = vec![Rational::zero(); n];
            e[i] = Rational::one();
            crate::linalg::solve(m, &e)
        })
        .collect();
    Some(SparseMatrix::from_columns(n, &columns?))
}

impl NormalizationIso {
    /// Builds `κ`, checking alternation, bijectivity and `d_N ∘ κ = κ ∘ d_CE` exactly.
    pub fn new(q: &QuotientModel, nc: &NormalizedComplex) -> Result<Self> {
        let size = q.size();
        let vdim = size * size;
        let ce = ce_complex(&LieAlgebra::gl(size));
        let mut maps = Vec::new();
        let mut inverses = Vec::new();
        for n in 0..=q.max_level() {
            let ext = ExteriorBasis::new(vdim, n);
            let ideal = &q.ideals[n];
            let dim = q.model.dim(n);
            let class_of = |labels: &[usize]| -> Vector {
                let slots: Vec<usize> = labels.iter().map(|a| a + 1).collect();
                let mut e = vec![Rational::zero(); dim];
                e[encode(size, &slots)] = Rational::one();
                ideal.reduce(&e)
            };
            let mut columns = Vec::with_capacity(ext.len());
            for t in ext.tuples() {
                let v = class_of(t);
                let coords = nc.coordinates(n, &v).ok_or_else(|| {
                    Error::IntertwiningFailure(format!("image of a wedge at level {n} is not normalized"))
                })?;
                columns.push(coords);
            }
            // every ordering of the factors must give the signed class of the sorted one
            let full = vdim.pow(n as u32);
            for code in 0..full {
                let mut labels = vec![0usize; n];
                let mut c = code;
                for l in labels.iter_mut().rev() {
                    *l = c % vdim;
                    c /= vdim;
                }
                let v = class_of(&labels);
                let ok = match sort_with_sign(&labels) {
                    None => v.iter().all(Zero::is_zero),
                    Some((sorted, sign)) => {
                        let base = class_of(&sorted);
                        let s = Rational::from_integer(sign.into());
                        v.iter().zip(&base).all(|(x, y)| *x == &s * y)
                    }
                };
                if !ok {
                    return Err(Error::IntertwiningFailure(format!("class of {labels:?} is not alternating at level {n}")));
                }
            }
            let kappa = SparseMatrix::from_columns(nc.dims()[n], &columns);
            let inv = invert(&kappa).ok_or_else(|| {
                Error::IntertwiningFailure(format!("level {n}: {} normalized vs {} exterior, not bijective", nc.dims()[n], ext.len()))
            })?;
            maps.push(kappa);
            inverses.push(inv);
        }
        for n in 0..q.max_level() {
            let lhs = nc.complex.d(n as i64).mul(&maps[n]);
            let rhs = maps[n + 1].mul(&ce.d(n as i64));
            if lhs != rhs {
                return Err(Error::IntertwiningFailure(format!("differentials disagree out of level {n}")));
            }
        }
        Ok(NormalizationIso { maps, inverses, ce })
    }
}

/// Summary of the normalization computation.
#[derive(Clone, Debug, PartialEq)]
pub struct NormalizationSummary {
    pub size: usize,
    pub max_level: usize,
    pub level_dims: Vec<usize>,
    pub ideal_ranks: Vec<usize>,
    pub quotient_dims: Vec<usize>,
    pub normalized_dims: Vec<usize>,
    pub normalized_cohomology: Vec<usize>,
}

/// Builds the model, the quotient, the normalization and the isomorphism to the CE complex.
pub fn normalized_iso_to_ce(size: usize, max_level: usize) -> Result<(QuotientModel, NormalizedComplex, NormalizationIso, NormalizationSummary)> {
    let model = InfinitesimalModel::new(size, max_level)?;
    model.verify_identities()?;
    let q = QuotientModel::new(model)?;
    let nc = q.normalize()?;
    let iso = NormalizationIso::new(&q, &nc)?;
    let summary = NormalizationSummary {
        size,
        max_level,
        level_dims: (0..=max_level).map(|n| q.model.dim(n)).collect(),
        ideal_ranks: q.ideals.iter().map(LevelIdeal::rank).collect(),
        quotient_dims: q.quotient_dims(),
        normalized_dims: nc.dims(),
        normalized_cohomology: nc.complex.cohomology_dims(),
    };
    Ok((q, nc, iso, summary))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    #[test]
    fn interval_entry_matches_product() {
        // (1 + Z_0)(1 + Z_1) − 1 for gl_1 is z⊗1 + 1⊗z + z⊗z
        let p = interval_entry(1, 2, 0, 1, 0, 0);
        let expect: Poly = [(encode(1, &[1, 0]), 1), (encode(1, &[0, 1]), 1), (encode(1, &[1, 1]), 1)].into_iter().collect();
        assert_eq!(p, expect);
    }

    #[test]
    fn gl1_quotient_dims() {
        let (_, nc, _, s) = normalized_iso_to_ce(1, 4).unwrap();
        assert_eq!(s.quotient_dims, vec![1, 2, 3, 4, 5]);
        assert_eq!(nc.dims(), vec![1, 1, 0, 0, 0]);
    }

    #[test]
    fn gl2_normalization_through_level_three() {
        let (q, nc, iso, s) = normalized_iso_to_ce(2, 3).unwrap();
        assert_eq!(s.quotient_dims, vec![1, 5, 15, 35]);
        assert_eq!(s.ideal_ranks, vec![0, 0, 10, 90]);
        assert_eq!(nc.dims(), vec![1, 4, 6, 4]);
        assert_eq!(iso.maps[1], SparseMatrix::identity(4));
        assert_eq!(&s.normalized_cohomology[..3], &[1, 1, 0]);
        let _ = q;
    }

    #[test]
    fn level_one_is_identity_on_generators() {
        let (q, nc, _, _) = normalized_iso_to_ce(2, 2).unwrap();
        // z_01 survives in the quotient and is normalized
        let mut e = vec![Rational::zero(); q.model.dim(1)];
        e[encode(2, &[2])] = int(1);
        let coords = nc.coordinates(1, &q.ideals[1].reduce(&e)).unwrap();
        assert_eq!(coords, vec![int(0), int(1), int(0), int(0)]);
    }
}
