//! Row-major sparse matrices over [`Rational`].

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::arith::Rational;
use crate::error::{Error, Result};

pub type Vector = Vec<Rational>;

pub fn zero_vector(n: usize) -> Vector {
    vec![Rational::zero(); n]
}

pub fn is_zero_vector(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn vec_add(a: &[Rational], b: &[Rational]) -> Vector {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Rational], b: &[Rational]) -> Vector {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(s: &Rational, a: &[Rational]) -> Vector {
    a.iter().map(|x| s * x).collect()
}

#[derive(Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BTreeMap<usize, Rational>>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, data: vec![BTreeMap::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_triplets(rows: usize, cols: usize, entries: impl IntoIterator<Item = (usize, usize, Rational)>) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (r, c, v) in entries {
            m.add_to(r, c, &v);
        }
        m
    }

    /// Builds a matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(rows: usize, columns: &[Vector]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column {j} has wrong length");
            for (i, v) in col.iter().enumerate() {
                if !v.is_zero() {
                    m.set(i, j, v.clone());
                }
            }
        }
        m
    }

    pub fn from_dense(rows: &[Vector]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    m.set(i, j, v.clone());
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(BTreeMap::len).sum()
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        self.data[r].get(&c).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        assert!(r < self.rows && c < self.cols, "index ({r}, {c}) out of range");
        if v.is_zero() {
            self.data[r].remove(&c);
        } else {
            self.data[r].insert(c, v);
        }
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: &Rational) {
        assert!(r < self.rows && c < self.cols, "index ({r}, {c}) out of range");
        if v.is_zero() {
            return;
        }
        let slot = self.data[r].entry(c).or_insert_with(Rational::zero);
        *slot += v;
        if slot.is_zero() {
            self.data[r].remove(&c);
        }
    }

    pub fn row(&self, r: usize) -> &BTreeMap<usize, Rational> {
        &self.data[r]
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.data.iter().enumerate().flat_map(|(r, row)| row.iter().map(move |(&c, v)| (r, c, v)))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(BTreeMap::is_empty)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for (r, c, v) in self.entries() {
            t.data[c].insert(r, v.clone());
        }
        t
    }

    pub fn column(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn apply(&self, v: &[Rational]) -> Vector {
        assert_eq!(v.len(), self.cols, "vector length {} vs {} columns", v.len(), self.cols);
        self.data
            .iter()
            .map(|row| row.iter().fold(Rational::zero(), |acc, (&c, x)| acc + x * &v[c]))
            .collect()
    }

    pub fn try_mul(&self, rhs: &SparseMatrix) -> Result<SparseMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for (r, row) in self.data.iter().enumerate() {
            let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
            for (&k, a) in row {
                for (&c, b) in &rhs.data[k] {
                    *acc.entry(c).or_insert_with(Rational::zero) += a * b;
                }
            }
            acc.retain(|_, v| !v.is_zero());
            out.data[r] = acc;
        }
        Ok(out)
    }

    pub fn mul(&self, rhs: &SparseMatrix) -> SparseMatrix {
        self.try_mul(rhs).expect("shape mismatch")
    }

    pub fn add(&self, rhs: &SparseMatrix) -> SparseMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        let mut out = self.clone();
        for (r, c, v) in rhs.entries() {
            out.add_to(r, c, v);
        }
        out
    }

    pub fn scale(&self, s: &Rational) -> SparseMatrix {
        if s.is_zero() {
            return Self::zeros(self.rows, self.cols);
        }
        let mut out = self.clone();
        for row in &mut out.data {
            for v in row.values_mut() {
                *v *= s;
            }
        }
        out
    }

    pub fn sub(&self, rhs: &SparseMatrix) -> SparseMatrix {
        self.add(&rhs.scale(&-Rational::one()))
    }

    /// Stacks `blocks` vertically.
    pub fn vstack(blocks: &[SparseMatrix]) -> SparseMatrix {
        let cols = blocks.first().map_or(0, |b| b.cols);
        let mut data = Vec::new();
        for b in blocks {
            assert_eq!(b.cols, cols, "vstack column mismatch");
            data.extend(b.data.iter().cloned());
        }
        SparseMatrix { rows: data.len(), cols, data }
    }

    pub fn to_dense(&self) -> Vec<Vector> {
        (0..self.rows).map(|r| (0..self.cols).map(|c| self.get(r, c)).collect()).collect()
    }
}

impl fmt::Debug for SparseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SparseMatrix {}x{} ({} nonzeros)", self.rows, self.cols, self.nnz())?;
        for (r, c, v) in self.entries().take(64) {
            writeln!(f, "  ({r}, {c}) = {v}")?;
        }
        Ok(())
    }
}
