//! Finite-dimensional Lie algebras given by structure constants.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::arith::{int, Rational};
use crate::error::{Error, Result};

/// A Lie algebra over `Q` with basis `x_0, …, x_{dim-1}` and `[x_a, x_b] = Σ_c C^c_{ab} x_c`.
#[derive(Clone, Debug, PartialEq)]
pub struct LieAlgebra {
    dim: usize,
    /// Matrix size for `gl_N`, `None` for algebras without a matrix model.
    matrix_size: Option<usize>,
    table: Vec<Vec<Vec<(usize, Rational)>>>,
}

impl LieAlgebra {
    /// Builds the algebra after checking antisymmetry and the Jacobi identity on basis triples.
    pub fn from_structure_constants(dim: usize, table: Vec<Vec<Vec<(usize, Rational)>>>) -> Result<Self> {
        let alg = LieAlgebra { dim, matrix_size: None, table };
        alg.check()?;
        Ok(alg)
    }

    /// `gl_N`, with `E_ij` at index `i * N + j` (0-based) and
    /// `[E_ij, E_kl] = δ_jk E_il − δ_li E_kj`.
    pub fn gl(n: usize) -> Self {
        let dim = n * n;
        let mut table = vec![vec![Vec::new(); dim]; dim];
        for (a, row) in table.iter_mut().enumerate() {
            let (i, j) = (a / n, a % n);
            for (b, entry) in row.iter_mut().enumerate() {
                let (k, l) = (b / n, b % n);
                let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
                if j == k {
                    *acc.entry(i * n + l).or_default() += 1;
                }
                if l == i {
                    *acc.entry(k * n + j).or_default() -= 1;
                }
                *entry = acc.into_iter().filter(|(_, v)| *v != 0).map(|(c, v)| (c, int(v))).collect();
            }
        }
        let alg = LieAlgebra { dim, matrix_size: Some(n), table };
        alg.check().expect("gl_N satisfies the Lie algebra axioms");
        alg
    }

    /// The abelian Lie algebra of dimension `r`.
    pub fn abelian(r: usize) -> Self {
        LieAlgebra { dim: r, matrix_size: None, table: vec![vec![Vec::new(); r]; r] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix_size(&self) -> Option<usize> {
        self.matrix_size
    }

    /// Nonzero structure constants of `[x_a, x_b]`.
    pub fn bracket_basis(&self, a: usize, b: usize) -> &[(usize, Rational)] {
        &self.table[a][b]
    }

    /// `C^c_{ab}`.
    pub fn structure_constant(&self, a: usize, b: usize, c: usize) -> Rational {
        self.table[a][b].iter().find(|(k, _)| *k == c).map_or_else(Rational::zero, |(_, v)| v.clone())
    }

    /// Bracket of two elements in coordinates.
    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim];
        for (a, xa) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (b, yb) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                for (c, v) in &self.table[a][b] {
                    out[*c] += xa * yb * v;
                }
            }
        }
        out
    }

    fn unit(&self, a: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim];
        v[a] = int(1);
        v
    }

    fn check(&self) -> Result<()> {
        if self.table.len() != self.dim || self.table.iter().any(|r| r.len() != self.dim) {
            return Err(Error::Shape("structure constant table has the wrong size".into()));
        }
        for a in 0..self.dim {
            for b in 0..self.dim {
                let ab = self.bracket(&self.unit(a), &self.unit(b));
                let ba = self.bracket(&self.unit(b), &self.unit(a));
                if ab.iter().zip(&ba).any(|(x, y)| !(x + y).is_zero()) {
                    return Err(Error::Domain(format!("bracket is not antisymmetric on ({a}, {b})")));
                }
            }
        }
        for a in 0..self.dim {
            for b in a + 1..self.dim {
                for c in b + 1..self.dim {
                    let (xa, xb, xc) = (self.unit(a), self.unit(b), self.unit(c));
                    let t1 = self.bracket(&xa, &self.bracket(&xb, &xc));
                    let t2 = self.bracket(&xb, &self.bracket(&xc, &xa));
                    let t3 = self.bracket(&xc, &self.bracket(&xa, &xb));
                    if (0..self.dim).any(|i| !(&t1[i] + &t2[i] + &t3[i]).is_zero()) {
                        return Err(Error::Domain(format!("Jacobi identity fails on ({a}, {b}, {c})")));
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn matmul(n: usize, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); n * n];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    out[i * n + j] += &x[i * n + k] * &y[k * n + j];
                }
            }
        }
        out
    }

    #[test]
    fn gl_bracket_is_commutator() {
        for n in 1..=3 {
            let g = LieAlgebra::gl(n);
            for a in 0..n * n {
                for b in 0..n * n {
                    let (x, y) = (g.unit(a), g.unit(b));
                    let comm: Vec<Rational> =
                        matmul(n, &x, &y).into_iter().zip(matmul(n, &y, &x)).map(|(p, q)| p - q).collect();
                    assert_eq!(g.bracket(&x, &y), comm);
                }
            }
        }
    }

    #[test]
    fn rejects_non_antisymmetric_table() {
        let mut table = vec![vec![Vec::new(); 2]; 2];
        table[0][1] = vec![(0, int(1))];
        assert!(LieAlgebra::from_structure_constants(2, table).is_err());
    }

    #[test]
    fn abelian_has_no_brackets() {
        let a = LieAlgebra::abelian(3);
        assert!(a.bracket_basis(0, 1).is_empty());
        assert_eq!(a.dim(), 3);
    }
}
