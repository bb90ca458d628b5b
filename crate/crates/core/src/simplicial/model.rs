//! Multilinear functions on the bar construction of `GL_N` near the identity.
//!
//! Level `n` is spanned by products `f_1(h_1) ⋯ f_n(h_n)` where each slot
//! function is either the constant `1` or a matrix coordinate `z_ab(h) = (h − 1)_ab`.
//! These spaces are stable under the cosimplicial structure of `B.G`:
//!
//! * `δ^0 f = 1 ⊗ f` and `δ^{n+1} f = f ⊗ 1`;
//! * the interior coface `δ^i` evaluates slot `i` on the product `h_i h_{i+1}`,
//!   i.e. applies `z_ab ↦ z_ab ⊗ 1 + 1 ⊗ z_ab + Σ_c z_ac ⊗ z_cb`;
//! * the codegeneracy `σ^i` inserts the identity at block `i`, which kills every
//!   monomial with a coordinate in that slot.
//!
//! A monomial is a tuple of slot labels: `0` is the constant, `a + 1` is `z_a`
//! with `a = i * N + j`. Tuples are indexed in base `1 + N²`, first slot most
//! significant.

use num_traits::{One, Zero};

use crate::arith::{int, Rational};
use crate::error::{Error, Result};
use crate::linalg::{FiniteComplex, SparseMatrix, Vector};

/// Largest level dimension the model will build.
pub const MAX_LEVEL_DIM: usize = 1000;
/// Largest supported level.
pub const MAX_LEVEL: usize = 5;

/// One level of the cosimplicial model.
#[derive(Clone, Debug)]
pub struct CosimplicialLevel {
    pub level: usize,
    pub dim: usize,
    /// `δ^i : level → level + 1` for `i = 0 ..= level + 1` (empty at the top level).
    pub cofaces: Vec<SparseMatrix>,
    /// `σ^i : level → level − 1` for `i = 0 .. level`.
    pub codegeneracies: Vec<SparseMatrix>,
}

#[derive(Clone, Debug)]
pub struct InfinitesimalModel {
    /// Matrix size `N`.
    pub size: usize,
    pub max_level: usize,
    pub levels: Vec<CosimplicialLevel>,
}

/// Slot labels of a monomial from its index.
pub fn decode(size: usize, level: usize, mut index: usize) -> Vec<usize> {
    let base = 1 + size * size;
    let mut slots = vec![0; level];
    for s in slots.iter_mut().rev() {
        *s = index % base;
        index /= base;
    }
    slots
}

pub fn encode(size: usize, slots: &[usize]) -> usize {
    let base = 1 + size * size;
    slots.iter().fold(0, |acc, &s| acc * base + s)
}

pub fn level_dim(size: usize, level: usize) -> Option<usize> {
    (1 + size * size).checked_pow(level as u32)
}

/// Images of a slot label under the interior coface: pairs of labels with coefficient 1.
fn split_slot(size: usize, label: usize) -> Vec<(usize, usize)> {
    if label == 0 {
        return vec![(0, 0)];
    }
    let a = label - 1;
    let (i, j) = (a / size, a % size);
    let mut out = vec![(label, 0), (0, label)];
    for c in 0..size {
        out.push((1 + i * size + c, 1 + c * size + j));
    }
    out
}

impl InfinitesimalModel {
    pub fn new(size: usize, max_level: usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::Range("matrix size must be positive".into()));
        }
        if max_level > MAX_LEVEL {
            return Err(Error::Range(format!("levels above {MAX_LEVEL} are not supported")));
        }
        match level_dim(size, max_level) {
            Some(d) if d <= MAX_LEVEL_DIM => {}
            _ => {
                return Err(Error::SizeOverflow(format!(
                    "level {max_level} of gl_{size} has dimension (1+{}²)^{max_level} > {MAX_LEVEL_DIM}",
                    size
                )))
            }
        }
        let mut levels = Vec::with_capacity(max_level + 1);
        for n in 0..=max_level {
            let dim = level_dim(size, n).unwrap();
            let cofaces = if n < max_level { (0..=n + 1).map(|i| Self::coface(size, n, i)).collect() } else { Vec::new() };
            let codegeneracies = (0..n).map(|i| Self::codegeneracy(size, n, i)).collect();
            levels.push(CosimplicialLevel { level: n, dim, cofaces, codegeneracies });
        }
        Ok(InfinitesimalModel { size, max_level, levels })
    }

    /// Largest level whose dimension stays within [`MAX_LEVEL_DIM`].
    pub fn largest_level(size: usize) -> usize {
        (0..=MAX_LEVEL).take_while(|&l| level_dim(size, l).is_some_and(|d| d <= MAX_LEVEL_DIM)).last().unwrap_or(0)
    }

    fn coface(size: usize, n: usize, i: usize) -> SparseMatrix {
        let src = level_dim(size, n).unwrap();
        let tgt = level_dim(size, n + 1).unwrap();
        let mut triplets = Vec::new();
        for col in 0..src {
            let slots = decode(size, n, col);
            if i == 0 || i == n + 1 {
                let mut out = slots.clone();
                out.insert(if i == 0 { 0 } else { n }, 0);
                triplets.push((encode(size, &out), col, Rational::one()));
                continue;
            }
            for (left, right) in split_slot(size, slots[i - 1]) {
                let mut out = slots[..i - 1].to_vec();
                out.extend([left, right]);
                out.extend(&slots[i..]);
                triplets.push((encode(size, &out), col, Rational::one()));
            }
        }
        SparseMatrix::from_triplets(tgt, src, triplets)
    }

    fn codegeneracy(size: usize, n: usize, i: usize) -> SparseMatrix {
        let src = level_dim(size, n).unwrap();
        let tgt = level_dim(size, n - 1).unwrap();
        let mut triplets = Vec::new();
        for col in 0..src {
            let slots = decode(size, n, col);
            if slots[i] == 0 {
                let mut out = slots;
                out.remove(i);
                triplets.push((encode(size, &out), col, Rational::one()));
            }
        }
        SparseMatrix::from_triplets(tgt, src, triplets)
    }

    pub fn coface_matrix(&self, level: usize, i: usize) -> &SparseMatrix {
        &self.levels[level].cofaces[i]
    }

    pub fn codegeneracy_matrix(&self, level: usize, i: usize) -> &SparseMatrix {
        &self.levels[level].codegeneracies[i]
    }

    pub fn dim(&self, level: usize) -> usize {
        self.levels[level].dim
    }

    /// `Σ_i (−1)^i δ^i` out of `level`.
    pub fn differential(&self, level: usize) -> SparseMatrix {
        let cof = &self.levels[level].cofaces;
        let mut d = SparseMatrix::zeros(self.dim(level + 1), self.dim(level));
        for (i, m) in cof.iter().enumerate() {
            d = d.add(&m.scale(&int(if i % 2 == 0 { 1 } else { -1 })));
        }
        d
    }

    /// The unnormalized cochain complex on levels `0 ..= max_level`.
    pub fn cochain_complex(&self) -> Result<FiniteComplex> {
        let dims = (0..=self.max_level).map(|n| self.dim(n)).collect();
        let diffs = (0..self.max_level).map(|n| self.differential(n)).collect();
        FiniteComplex::new(0, dims, diffs)
    }

    /// Checks every cosimplicial identity between the built operators.
    pub fn verify_identities(&self) -> Result<usize> {
        let fail = |what: String| Err(Error::CosimplicialIdentity(what));
        let mut checked = 0;
        for n in 0..=self.max_level {
            // δ^j δ^i = δ^i δ^{j−1} for i < j, from level n to n + 2
            if n + 2 <= self.max_level {
                for j in 0..=n + 2 {
                    for i in 0..j {
                        let lhs = self.coface_matrix(n + 1, j).mul(self.coface_matrix(n, i));
                        let rhs = self.coface_matrix(n + 1, i).mul(self.coface_matrix(n, j - 1));
                        if lhs != rhs {
                            return fail(format!("δ^{j}δ^{i} = δ^{i}δ^{} at level {n}", j - 1));
                        }
                        checked += 1;
                    }
                }
            }
            // σ^j σ^i = σ^i σ^{j+1} for i ≤ j, from level n to n − 2
            if n >= 2 {
                for j in 0..n - 1 {
                    for i in 0..=j {
                        let lhs = self.codegeneracy_matrix(n - 1, j).mul(self.codegeneracy_matrix(n, i));
                        let rhs = self.codegeneracy_matrix(n - 1, i).mul(self.codegeneracy_matrix(n, j + 1));
                        if lhs != rhs {
                            return fail(format!("σ^{j}σ^{i} = σ^{i}σ^{} at level {n}", j + 1));
                        }
                        checked += 1;
                    }
                }
            }
            // σ^j δ^i from level n to n, with σ^j acting on level n + 1
            if n < self.max_level {
                for j in 0..=n {
                    for i in 0..=n + 1 {
                        let lhs = self.codegeneracy_matrix(n + 1, j).mul(self.coface_matrix(n, i));
                        let rhs = if i == j || i == j + 1 {
                            SparseMatrix::identity(self.dim(n))
                        } else if i < j {
                            self.coface_matrix(n - 1, i).mul(self.codegeneracy_matrix(n, j - 1))
                        } else {
                            self.coface_matrix(n - 1, i - 1).mul(self.codegeneracy_matrix(n, j))
                        };
                        if lhs != rhs {
                            return fail(format!("σ^{j}δ^{i} at level {n}"));
                        }
                        checked += 1;
                    }
                }
            }
        }
        Ok(checked)
    }

    /// Evaluates a level-`n` element on matrices `h_1, …, h_n` via `z_ab(h) = (h − 1)_ab`.
    pub fn evaluate<T>(&self, level: usize, v: &[Rational], points: &[Vec<Vec<T>>], one: &T, from_rational: impl Fn(&Rational) -> T) -> T
    where
        T: Clone + std::ops::Add<Output = T> + std::ops::Sub<Output = T> + std::ops::Mul<Output = T>,
    {
        assert_eq!(points.len(), level);
        let n = self.size;
        let mut total = from_rational(&Rational::zero());
        for (idx, c) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let slots = decode(n, level, idx);
            let mut term = from_rational(c);
            for (h, &s) in points.iter().zip(&slots) {
                if s == 0 {
                    continue;
                }
                let (i, j) = ((s - 1) / n, (s - 1) % n);
                let entry = if i == j { h[i][j].clone() - one.clone() } else { h[i][j].clone() };
                term = term * entry;
            }
            total = total + term;
        }
        total
    }

    pub fn basis_vector(&self, level: usize, slots: &[usize]) -> Vector {
        let mut v = vec![Rational::zero(); self.dim(level)];
        v[encode(self.size, slots)] = Rational::one();
        v
    }
}

/// Applies the group-side face map `d_i` of `B.G` to a tuple of matrices.
pub fn group_face<T>(points: &[Vec<Vec<T>>], i: usize, mul: impl Fn(&[Vec<T>], &[Vec<T>]) -> Vec<Vec<T>>) -> Vec<Vec<Vec<T>>>
where
    T: Clone,
{
    let n = points.len();
    if i == 0 {
        return points[1..].to_vec();
    }
    if i == n {
        return points[..n - 1].to_vec();
    }
    let mut out = points[..i - 1].to_vec();
    out.push(mul(&points[i - 1], &points[i]));
    out.extend_from_slice(&points[i + 1..]);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::PadicNumber;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rat_mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
        let n = a.len();
        (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| &a[i][k] * &b[k][j]).sum()).collect()).collect()
    }

    #[test]
    fn indexing_round_trip() {
        for idx in 0..125 {
            assert_eq!(encode(2, &decode(2, 3, idx)), idx);
        }
    }

    #[test]
    fn identities_hold() {
        for (size, lvl) in [(1, 4), (2, 3)] {
            let m = InfinitesimalModel::new(size, lvl).unwrap();
            assert!(m.verify_identities().unwrap() > 0);
        }
    }

    #[test]
    fn level_one_cofaces() {
        let m = InfinitesimalModel::new(2, 2).unwrap();
        let v = m.basis_vector(1, &[2]); // z_01
        assert_eq!(m.coface_matrix(1, 0).apply(&v), m.basis_vector(2, &[0, 2]));
        assert_eq!(m.coface_matrix(1, 2).apply(&v), m.basis_vector(2, &[2, 0]));
        let mid = m.coface_matrix(1, 1).apply(&v);
        // z_01 ⊗ 1 + 1 ⊗ z_01 + z_00 ⊗ z_01 + z_01 ⊗ z_11
        let mut expect = m.basis_vector(2, &[2, 0]);
        for s in [[0, 2], [1, 2], [2, 4]] {
            let b = m.basis_vector(2, &s);
            for (x, y) in expect.iter_mut().zip(b) {
                *x += y;
            }
        }
        assert_eq!(mid, expect);
    }

    #[test]
    fn size_limits() {
        assert!(matches!(InfinitesimalModel::new(2, 5), Err(Error::SizeOverflow(_))));
        assert!(matches!(InfinitesimalModel::new(1, 6), Err(Error::Range(_))));
        assert_eq!(InfinitesimalModel::largest_level(2), 4);
        assert_eq!(InfinitesimalModel::largest_level(3), 3);
        assert_eq!(InfinitesimalModel::largest_level(1), 5);
    }

    #[test]
    fn cofaces_are_pullbacks_of_group_faces() {
        let m = InfinitesimalModel::new(2, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        for n in 0..3 {
            for _ in 0..10 {
                let v: Vec<Rational> = (0..m.dim(n)).map(|_| int(rng.gen_range(-2..3))).collect();
                let pts: Vec<Vec<Vec<Rational>>> = (0..=n)
                    .map(|_| (0..2).map(|_| (0..2).map(|_| int(rng.gen_range(-3..4))).collect()).collect())
                    .collect();
                for i in 0..=n + 1 {
                    let pulled = m.coface_matrix(n, i).apply(&v);
                    let lhs = m.evaluate(n + 1, &pulled, &pts, &int(1), Clone::clone);
                    let face = group_face(&pts, i, rat_mul);
                    let rhs = m.evaluate(n, &v, &face, &int(1), Clone::clone);
                    assert_eq!(lhs, rhs, "level {n}, face {i}");
                }
            }
        }
    }

    #[test]
    fn gl1_faces_on_principal_units() {
        // GL_1 evaluated at 1 + 5u with 5-adic precision 6
        let m = InfinitesimalModel::new(1, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        let one = PadicNumber::one(5, 6);
        let lift = |q: &Rational| PadicNumber::from_rational(q, 5, 6);
        let pmul = |a: &[Vec<PadicNumber>], b: &[Vec<PadicNumber>]| vec![vec![&a[0][0] * &b[0][0]]];
        for n in 0..3 {
            let v: Vec<Rational> = (0..m.dim(n)).map(|_| int(rng.gen_range(-4..5))).collect();
            let pts: Vec<Vec<Vec<PadicNumber>>> = (0..=n)
                .map(|_| vec![vec![&one + &PadicNumber::from_int(5 * rng.gen_range(-50..50), 5, 6)]])
                .collect();
            for i in 0..=n + 1 {
                let pulled = m.coface_matrix(n, i).apply(&v);
                let lhs = m.evaluate(n + 1, &pulled, &pts, &one, lift);
                let rhs = m.evaluate(n, &v, &group_face(&pts, i, pmul), &one, lift);
                assert!(lhs.eq_at_precision(&rhs), "level {n}, face {i}");
            }
        }
    }

    #[test]
    fn unnormalized_complex_is_acyclic_above_zero() {
        let m = InfinitesimalModel::new(2, 3).unwrap();
        let dims = m.cochain_complex().unwrap().cohomology_dims();
        assert_eq!(&dims[..3], &[1, 0, 0]);
    }
}
