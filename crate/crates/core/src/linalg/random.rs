//! Seeded random complexes and split short exact sequences for property tests.

use num_traits::Zero;
use rand::Rng;

use super::complex::{FiniteComplex, ShortExactSequence};
use super::elim::kernel;
use super::sparse::SparseMatrix;
use crate::arith::{int, Rational};

/// A random invertible integer matrix and its inverse, as a product of elementary matrices.
pub fn random_invertible<R: Rng>(rng: &mut R, n: usize) -> (SparseMatrix, SparseMatrix) {
    let mut g = SparseMatrix::identity(n);
    let mut g_inv = SparseMatrix::identity(n);
    if n < 2 {
        return (g, g_inv);
    }
    for _ in 0..3 * n {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let c: i64 = *[-2, -1, 1, 2].get(rng.gen_range(0..4)).unwrap();
        let e = SparseMatrix::identity(n).add(&SparseMatrix::from_triplets(n, n, [(i, j, int(c))]));
        let e_inv = SparseMatrix::identity(n).add(&SparseMatrix::from_triplets(n, n, [(i, j, int(-c))]));
        g = e.mul(&g);
        g_inv = g_inv.mul(&e_inv);
    }
    (g, g_inv)
}

/// A random complex with the given dimensions, returned with its known cohomology dimensions.
///
/// It is a direct sum of copies of `Q → Q` and of `Q` in a random basis.
pub fn random_complex<R: Rng>(rng: &mut R, start: i64, dims: &[usize]) -> (FiniteComplex, Vec<usize>) {
    let n = dims.len();
    let mut ranks = vec![0usize; n.saturating_sub(1)];
    for k in 0..ranks.len() {
        let used = if k > 0 { ranks[k - 1] } else { 0 };
        let cap = (dims[k] - used).min(dims[k + 1]);
        ranks[k] = rng.gen_range(0..=cap);
    }
    let standard: Vec<SparseMatrix> = (0..ranks.len())
        .map(|k| {
            let skip = if k > 0 { ranks[k - 1] } else { 0 };
            SparseMatrix::from_triplets(dims[k + 1], dims[k], (0..ranks[k]).map(|i| (i, skip + i, Rational::from(int(1)))))
        })
        .collect();
    let bases: Vec<_> = dims.iter().map(|&d| random_invertible(rng, d)).collect();
    let diffs = standard
        .iter()
        .enumerate()
        .map(|(k, d)| bases[k + 1].0.mul(d).mul(&bases[k].1))
        .collect();
    let betti = (0..n)
        .map(|k| dims[k] - ranks.get(k).copied().unwrap_or(0) - if k > 0 { ranks[k - 1] } else { 0 })
        .collect();
    (FiniteComplex::new(start, dims.to_vec(), diffs).expect("conjugated standard complex"), betti)
}

fn block(rows: usize, cols: usize, blocks: [(&SparseMatrix, usize, usize); 2]) -> SparseMatrix {
    let mut m = SparseMatrix::zeros(rows, cols);
    for (b, r0, c0) in blocks {
        for (r, c, v) in b.entries() {
            m.set(r0 + r, c0 + c, v.clone());
        }
    }
    m
}

/// A random split short exact sequence with a nontrivially twisted total complex,
/// presented in a random basis of the total complex.
pub fn random_split_sequence<R: Rng>(rng: &mut R, sub_dims: &[usize], quot_dims: &[usize]) -> ShortExactSequence {
    assert_eq!(sub_dims.len(), quot_dims.len());
    let n = sub_dims.len();
    let (sub, _) = random_complex(rng, 0, sub_dims);
    let (quot, _) = random_complex(rng, 0, quot_dims);

    // twists t_k : C_k → A_{k+1} with d_A t_k + t_{k+1} d_C = 0
    let mut offsets = Vec::new();
    let mut unknowns = 0;
    for k in 0..n - 1 {
        offsets.push(unknowns);
        unknowns += sub_dims[k + 1] * quot_dims[k];
    }
    let var = |k: usize, r: usize, c: usize| offsets[k] + r * quot_dims[k] + c;
    let mut triplets = Vec::new();
    let mut eqs = 0;
    for k in 0..n.saturating_sub(2) {
        // entry (r, c) of the map C_k → A_{k+2}
        let base = eqs;
        eqs += sub_dims[k + 2] * quot_dims[k];
        let eq = |r: usize, c: usize| base + r * quot_dims[k] + c;
        for (r, j, v) in sub.d(k as i64 + 1).entries() {
            for c in 0..quot_dims[k] {
                triplets.push((eq(r, c), var(k, j, c), v.clone()));
            }
        }
        for (j, c, v) in quot.d(k as i64).entries() {
            for r in 0..sub_dims[k + 2] {
                triplets.push((eq(r, c), var(k + 1, r, j), v.clone()));
            }
        }
    }
    let constraints = SparseMatrix::from_triplets(eqs, unknowns, triplets);
    let mut t = vec![Rational::zero(); unknowns];
    for v in kernel(&constraints) {
        let c = int(rng.gen_range(-2..3));
        for (x, y) in t.iter_mut().zip(v) {
            *x += &c * y;
        }
    }

    let total_dims: Vec<usize> = (0..n).map(|k| sub_dims[k] + quot_dims[k]).collect();
    let bases: Vec<_> = total_dims.iter().map(|&d| random_invertible(rng, d)).collect();
    let mut diffs = Vec::new();
    for k in 0..n - 1 {
        let twist = SparseMatrix::from_triplets(
            sub_dims[k + 1],
            quot_dims[k],
            (0..sub_dims[k + 1]).flat_map(|r| (0..quot_dims[k]).map(move |c| (r, c))).map(|(r, c)| (r, c, t[var(k, r, c)].clone())).collect::<Vec<_>>(),
        );
        let (a, b) = (sub_dims[k], sub_dims[k + 1]);
        let mut d = block(total_dims[k + 1], total_dims[k], [(&sub.d(k as i64), 0, 0), (&quot.d(k as i64), b, a)]);
        for (r, c, v) in twist.entries() {
            d.set(r, a + c, v.clone());
        }
        diffs.push(bases[k + 1].0.mul(&d).mul(&bases[k].1));
    }
    let total = FiniteComplex::new(0, total_dims.clone(), diffs).expect("twisted sum is a complex");

    let mut inclusion = Vec::new();
    let mut projection = Vec::new();
    let mut section = Vec::new();
    let mut retraction = Vec::new();
    for k in 0..n {
        let (a, c, b) = (sub_dims[k], quot_dims[k], total_dims[k]);
        let (g, g_inv) = &bases[k];
        let incl = block(b, a, [(&SparseMatrix::identity(a), 0, 0), (&SparseMatrix::zeros(0, 0), 0, 0)]);
        let sect = block(b, c, [(&SparseMatrix::identity(c), a, 0), (&SparseMatrix::zeros(0, 0), 0, 0)]);
        inclusion.push(g.mul(&incl));
        section.push(g.mul(&sect));
        projection.push(sect.transpose().mul(g_inv));
        retraction.push(incl.transpose().mul(g_inv));
    }
    ShortExactSequence::new(sub, total, quot, inclusion, projection, section, retraction).expect("split by construction")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::complex::CohomologyClass;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn inverse_is_inverse() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let (g, gi) = random_invertible(&mut rng, 5);
        assert_eq!(g.mul(&gi), SparseMatrix::identity(5));
    }

    #[test]
    fn cohomology_dims_survive_basis_change() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let dims: Vec<usize> = (0..4).map(|_| rng.gen_range(0..5)).collect();
            let (c, betti) = random_complex(&mut rng, -1, &dims);
            assert_eq!(c.cohomology_dims(), betti);
        }
    }

    fn random_cocycle<R: Rng>(rng: &mut R, c: &FiniteComplex, k: i64) -> CohomologyClass {
        let mut v = vec![Rational::zero(); c.dim(k)];
        for z in kernel(&c.d(k)) {
            let s = int(rng.gen_range(-3..4));
            for (x, y) in v.iter_mut().zip(z) {
                *x += &s * y;
            }
        }
        c.class(k, v).unwrap()
    }

    #[test]
    fn connecting_map_independent_of_lift() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..20 {
            let a: Vec<usize> = (0..3).map(|_| rng.gen_range(1..4)).collect();
            let c: Vec<usize> = (0..3).map(|_| rng.gen_range(1..4)).collect();
            let ses = random_split_sequence(&mut rng, &a, &c);
            for k in 0..2 {
                let class = random_cocycle(&mut rng, &ses.quotient, k);
                let first = ses.connecting_map(&class).unwrap();
                let shift: Vec<Rational> = (0..ses.sub.dim(k)).map(|_| int(rng.gen_range(-3..4))).collect();
                let lift = ses.section(k).unwrap().apply(&class.representative);
                let other = ses.inclusion(k).unwrap().apply(&shift);
                let lift2: Vec<Rational> = lift.iter().zip(&other).map(|(x, y)| x + y).collect();
                let second = ses.connecting_map_with_lift(&class, &lift2).unwrap();
                assert!(ses.sub.same_class(&first, &second).unwrap());
            }
        }
    }

    #[test]
    fn connecting_map_is_natural_under_isomorphism() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let mut nonzero = 0;
        for _ in 0..20 {
            let a: Vec<usize> = (0..3).map(|_| rng.gen_range(1..4)).collect();
            let c: Vec<usize> = (0..3).map(|_| rng.gen_range(1..4)).collect();
            let ses = random_split_sequence(&mut rng, &a, &c);
            let bases: Vec<_> = ses.total.dims().iter().map(|&d| random_invertible(&mut rng, d)).collect();
            let other = ses.change_total_basis(&bases).unwrap();
            for k in 0..2 {
                let class = random_cocycle(&mut rng, &ses.quotient, k);
                let x = ses.connecting_map(&class).unwrap();
                let y = other.connecting_map(&class).unwrap();
                assert!(ses.sub.same_class(&x, &y).unwrap());
                if !ses.sub.class_is_zero(&x).unwrap() {
                    nonzero += 1;
                }
            }
        }
        assert!(nonzero > 0, "twists never produced a nonzero connecting class");
    }
}
