//! The primitive cocycles `p_n` on `gl_N`.

use super::algebra::LieAlgebra;
use super::exterior::{subsets, ExteriorCochain};
use crate::arith::rational::factorial;
use crate::arith::Rational;
use crate::error::{Error, Result};

/// All permutations of `0..m` with their signs.
pub fn signed_permutations(m: usize) -> Vec<(Vec<usize>, i64)> {
    // Heap's algorithm: consecutive permutations differ by one transposition
    let mut p: Vec<usize> = (0..m).collect();
    let mut out = vec![(p.clone(), 1)];
    let mut c = vec![0usize; m];
    let mut sign = 1;
    let mut i = 1;
    while i < m {
        if c[i] < i {
            if i % 2 == 0 {
                p.swap(0, i);
            } else {
                p.swap(c[i], i);
            }
            sign = -sign;
            out.push((p.clone(), sign));
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

/// `Tr(E_{a_1} ⋯ E_{a_m})` for matrix units of size `n`.
fn trace_of_units(n: usize, units: impl Iterator<Item = usize> + Clone) -> bool {
    let mut it = units.clone().map(|a| (a / n, a % n));
    let Some((first_row, mut col)) = it.next() else { return true };
    for (r, c) in it {
        if r != col {
            return false;
        }
        col = c;
    }
    col == first_row
}

/// `p_n(x_1, …, x_{2n−1}) = ((n−1)!)² / (2n−1)! · Σ_σ sgn σ · Tr(x_{σ(1)} ⋯ x_{σ(2n−1)})` on `gl_N`.
pub fn primitive_element(alg: &LieAlgebra, n: usize) -> Result<ExteriorCochain> {
    let size = alg.matrix_size().ok_or_else(|| Error::Domain("primitive elements need gl_N".into()))?;
    if n < 1 || n > size {
        return Err(Error::Range(format!("p_{n} is defined for 1 <= n <= {size}")));
    }
    let m = 2 * n - 1;
    let scale = Rational::new(factorial(n as u64 - 1).pow(2), factorial(m as u64));
    let perms = signed_permutations(m);
    let mut terms = Vec::new();
    for t in subsets(alg.dim(), m) {
        let s: i64 = perms
            .iter()
            .filter(|(p, _)| trace_of_units(size, p.iter().map(|&i| t[i])))
            .map(|(_, sign)| sign)
            .sum();
        if s != 0 {
            terms.push((t, &scale * Rational::from_integer(s.into())));
        }
    }
    ExteriorCochain::from_terms(alg.dim(), m, terms)
}

/// Restricts a cochain on `gl_{N+k}` to the upper-left `gl_N` block.
pub fn restrict_to_block(c: &ExteriorCochain, big: usize, small: usize) -> Result<ExteriorCochain> {
    if c.dim != big * big || small > big {
        return Err(Error::Shape(format!("cannot restrict a cochain on {} generators from gl_{big} to gl_{small}", c.dim)));
    }
    let terms = c.terms().filter_map(|(t, v)| {
        let mapped: Option<Vec<usize>> = t
            .iter()
            .map(|&a| {
                let (i, j) = (a / big, a % big);
                (i < small && j < small).then_some(i * small + j)
            })
            .collect();
        mapped.map(|m| (m, v.clone()))
    });
    ExteriorCochain::from_terms(small * small, c.degree, terms.collect::<Vec<_>>())
}

/// The trace form `Σ_i E_ii^∨`.
pub fn trace_cochain(n: usize) -> ExteriorCochain {
    let terms = (0..n).map(|i| (vec![i * n + i], Rational::from_integer(1.into())));
    ExteriorCochain::from_terms(n * n, 1, terms.collect::<Vec<_>>()).expect("valid indices")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use crate::lie::exterior::ce_differential;

    #[test]
    fn permutation_signs() {
        let perms = signed_permutations(3);
        assert_eq!(perms.len(), 6);
        for (p, s) in &perms {
            let inversions = (0..3).flat_map(|i| (i + 1..3).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
            assert_eq!(*s, if inversions % 2 == 0 { 1 } else { -1 });
        }
        assert_eq!(signed_permutations(1), vec![(vec![0], 1)]);
    }

    #[test]
    fn p1_is_trace() {
        for n in 1..=3 {
            assert_eq!(primitive_element(&LieAlgebra::gl(n), 1).unwrap(), trace_cochain(n));
        }
    }

    #[test]
    fn p2_on_gl2_matches_direct_sum() {
        // direct evaluation of (1/6) Σ_σ sgn σ Tr(x_σ(1) x_σ(2) x_σ(3)) with dense 2×2 matrices
        let g = LieAlgebra::gl(2);
        let p2 = primitive_element(&g, 2).unwrap();
        let unit = |a: usize| {
            let mut m = [[0i64; 2]; 2];
            m[a / 2][a % 2] = 1;
            m
        };
        let mul = |x: [[i64; 2]; 2], y: [[i64; 2]; 2]| {
            let mut z = [[0i64; 2]; 2];
            for i in 0..2 {
                for j in 0..2 {
                    z[i][j] = x[i][0] * y[0][j] + x[i][1] * y[1][j];
                }
            }
            z
        };
        for t in subsets(4, 3) {
            let mut s = 0;
            for (p, sign) in signed_permutations(3) {
                let m = mul(mul(unit(t[p[0]]), unit(t[p[1]])), unit(t[p[2]]));
                s += sign * (m[0][0] + m[1][1]);
            }
            assert_eq!(p2.coefficient(&t), rat(s, 6));
        }
        assert!(!p2.is_zero());
        assert!(ce_differential(&g, &p2).is_zero());
    }

    #[test]
    fn range_errors() {
        let g = LieAlgebra::gl(2);
        assert!(matches!(primitive_element(&g, 0), Err(Error::Range(_))));
        assert!(matches!(primitive_element(&g, 3), Err(Error::Range(_))));
        assert!(matches!(primitive_element(&LieAlgebra::abelian(2), 1), Err(Error::Domain(_))));
    }

    #[test]
    fn restriction_is_compatible_with_enlarging() {
        for n in 1..=2 {
            let big = primitive_element(&LieAlgebra::gl(3), n).unwrap();
            let small = primitive_element(&LieAlgebra::gl(2), n).unwrap();
            assert_eq!(restrict_to_block(&big, 3, 2).unwrap(), small);
        }
        let p1 = primitive_element(&LieAlgebra::gl(2), 1).unwrap();
        assert_eq!(restrict_to_block(&p1, 2, 1).unwrap(), trace_cochain(1));
        assert_eq!(trace_cochain(1).coefficient(&[0]), int(1));
    }
}
