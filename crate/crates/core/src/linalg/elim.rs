//! Fraction-free sparse elimination.
//!
//! Rows are cleared of denominators and reduced over the integers:
//! eliminating column `c` from row `r` with pivot row `P` replaces `r` by
//! `P[c] * r - r[c] * P` and then divides by the content of the result, so
//! no division ever produces a fraction and entries stay small. Rational
//! values only reappear when a reduced echelon form is requested.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::sparse::{SparseMatrix, Vector};
use crate::arith::rational::{common_denominator, Rational};

pub type IntRow = BTreeMap<usize, BigInt>;

/// Scales a rational row to a primitive integer row with positive leading entry.
pub fn integer_row<'a>(entries: impl IntoIterator<Item = (usize, &'a Rational)>) -> IntRow {
    let entries: Vec<_> = entries.into_iter().filter(|(_, v)| !v.is_zero()).collect();
    let den = common_denominator(entries.iter().map(|(_, v)| *v));
    let mut row: IntRow = entries
        .into_iter()
        .map(|(c, v)| (c, v.numer() * (&den / v.denom())))
        .collect();
    normalize(&mut row);
    row
}

fn normalize(row: &mut IntRow) {
    let g = row.values().fold(BigInt::zero(), |g, v| g.gcd(v));
    if g.is_zero() {
        return;
    }
    let flip = row.values().next().is_some_and(Signed::is_negative);
    if !g.is_one() || flip {
        let g = if flip { -g } else { g };
        for v in row.values_mut() {
            *v = &*v / &g;
        }
    }
}

/// `a * r - b * p`, with the content divided out.
fn combine(r: &IntRow, a: &BigInt, p: &IntRow, b: &BigInt) -> IntRow {
    let mut out = IntRow::new();
    let mut ri = r.iter().peekable();
    let mut pi = p.iter().peekable();
    loop {
        let (c, v) = match (ri.peek(), pi.peek()) {
            (None, None) => break,
            (Some(&(&cr, vr)), None) => {
                ri.next();
                (cr, a * vr)
            }
            (None, Some(&(&cp, vp))) => {
                pi.next();
                (cp, -(b * vp))
            }
            (Some(&(&cr, vr)), Some(&(&cp, vp))) => {
                if cr < cp {
                    ri.next();
                    (cr, a * vr)
                } else if cp < cr {
                    pi.next();
                    (cp, -(b * vp))
                } else {
                    ri.next();
                    pi.next();
                    (cr, a * vr - b * vp)
                }
            }
        };
        if !v.is_zero() {
            out.insert(c, v);
        }
    }
    normalize(&mut out);
    out
}

/// An incrementally built row-echelon basis of a subspace of `Q^ncols`.
#[derive(Clone, Debug)]
pub struct Echelon {
    ncols: usize,
    rows: Vec<IntRow>,
    pivot_of: HashMap<usize, usize>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Echelon { ncols, rows: Vec::new(), pivot_of: HashMap::new() }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.iter().map(|r| *r.keys().next().expect("rows are nonzero"))
    }

    pub fn is_pivot(&self, c: usize) -> bool {
        self.pivot_of.contains_key(&c)
    }

    /// Reduces until the leading column is not a pivot; returns the remainder.
    fn reduce_lead(&self, mut row: IntRow) -> IntRow {
        while let Some((&c, lead)) = row.iter().next() {
            let Some(&pi) = self.pivot_of.get(&c) else { break };
            let p = &self.rows[pi];
            let (pl, rl) = (p[&c].clone(), lead.clone());
            let g = pl.gcd(&rl);
            row = combine(&row, &(&pl / &g), p, &(&rl / &g));
        }
        row
    }

    /// Adds `row` to the span; returns whether the rank grew.
    pub fn insert(&mut self, row: IntRow) -> bool {
        let row = self.reduce_lead(row);
        match row.keys().next() {
            None => false,
            Some(&c) => {
                debug_assert!(c < self.ncols);
                self.pivot_of.insert(c, self.rows.len());
                self.rows.push(row);
                true
            }
        }
    }

    pub fn insert_rational<'a>(&mut self, entries: impl IntoIterator<Item = (usize, &'a Rational)>) -> bool {
        self.insert(integer_row(entries))
    }

    pub fn insert_vector(&mut self, v: &[Rational]) -> bool {
        self.insert_rational(v.iter().enumerate())
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.reduce_lead(integer_row(v.iter().enumerate())).is_empty()
    }

    /// Full back-substitution to reduced row-echelon form.
    pub fn into_rref(self) -> Rref {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&i| *self.rows[i].keys().next().unwrap());
        let mut rows: Vec<IntRow> = order.iter().map(|&i| self.rows[i].clone()).collect();
        let pivots: Vec<usize> = rows.iter().map(|r| *r.keys().next().unwrap()).collect();
        // eliminate each pivot column from the rows above it, bottom-up
        for k in (0..rows.len()).rev() {
            let c = pivots[k];
            let (below, above) = {
                let (a, b) = rows.split_at_mut(k);
                (&b[0], a)
            };
            for r in above.iter_mut() {
                if let Some(x) = r.get(&c).cloned() {
                    let pl = below[&c].clone();
                    let g = pl.gcd(&x);
                    *r = combine(r, &(&pl / &g), below, &(&x / &g));
                }
            }
        }
        let rows = rows
            .into_iter()
            .map(|r| {
                let lead = r.values().next().unwrap().clone();
                r.into_iter().map(|(c, v)| (c, Rational::new(v, lead.clone()))).collect()
            })
            .collect();
        let pivot_index = pivots.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        Rref { ncols: self.ncols, pivots, pivot_index, rows }
    }
}

/// Reduced row-echelon form: every pivot is 1 and is the only nonzero in its column.
#[derive(Clone, Debug)]
pub struct Rref {
    ncols: usize,
    pivots: Vec<usize>,
    pivot_index: HashMap<usize, usize>,
    rows: Vec<BTreeMap<usize, Rational>>,
}

impl Rref {
    pub fn of_rows<'a, I, R>(ncols: usize, rows: I) -> Rref
    where
        I: IntoIterator<Item = R>,
        R: IntoIterator<Item = (usize, &'a Rational)>,
    {
        let mut ints: Vec<IntRow> = rows.into_iter().map(integer_row).filter(|r| !r.is_empty()).collect();
        // sparse rows with small leading columns first keeps fill-in down
        ints.sort_by_key(|r| (*r.keys().next().unwrap(), r.len()));
        let mut e = Echelon::new(ncols);
        for r in ints {
            e.insert(r);
        }
        e.into_rref()
    }

    pub fn of_matrix(m: &SparseMatrix) -> Rref {
        Self::of_rows(m.cols(), (0..m.rows()).map(|r| m.row(r).iter().map(|(&c, v)| (c, v))))
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[BTreeMap<usize, Rational>] {
        &self.rows
    }

    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.ncols).filter(|c| !self.pivot_index.contains_key(c)).collect()
    }

    /// Basis of the solutions of `row . x = 0` for every row.
    pub fn nullspace(&self) -> Vec<Vector> {
        self.free_columns()
            .into_iter()
            .map(|f| {
                let mut v = vec![Rational::zero(); self.ncols];
                v[f] = Rational::one();
                for (row, &pc) in self.rows.iter().zip(&self.pivots) {
                    if let Some(x) = row.get(&f) {
                        v[pc] = -x;
                    }
                }
                v
            })
            .collect()
    }

    /// Canonical representative of `v` modulo the row space (all pivot coordinates cleared).
    pub fn normal_form(&self, v: &[Rational]) -> Vector {
        let mut out = v.to_vec();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let x = out[pc].clone();
            if !x.is_zero() {
                for (&c, r) in row {
                    out[c] -= &x * r;
                }
            }
        }
        out
    }

    pub fn row_space_contains(&self, v: &[Rational]) -> bool {
        self.normal_form(v).iter().all(Zero::is_zero)
    }
}

pub fn rank(m: &SparseMatrix) -> usize {
    Rref::of_matrix(m).rank()
}

/// Basis of `{x : m x = 0}`.
pub fn kernel(m: &SparseMatrix) -> Vec<Vector> {
    Rref::of_matrix(m).nullspace()
}

/// One solution of `m x = b` (free variables set to zero), or `None`.
pub fn solve(m: &SparseMatrix, b: &[Rational]) -> Option<Vector> {
    assert_eq!(b.len(), m.rows(), "right-hand side length");
    let n = m.cols();
    let rows = (0..m.rows()).map(|r| {
        m.row(r).iter().map(|(&c, v)| (c, v)).chain(std::iter::once((n, &b[r])))
    });
    let rref = Rref::of_rows(n + 1, rows);
    if rref.pivots().last() == Some(&n) {
        return None;
    }
    let mut x = vec![Rational::zero(); n];
    for (row, &pc) in rref.rows().iter().zip(rref.pivots()) {
        if let Some(v) = row.get(&n) {
            x[pc] = v.clone();
        }
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use proptest::prelude::*;

    fn dense_rank_oracle(mut a: Vec<Vec<Rational>>) -> usize {
        // textbook Gaussian elimination over Q
        let (m, n) = (a.len(), a.first().map_or(0, Vec::len));
        let mut r = 0;
        for c in 0..n {
            let Some(p) = (r..m).find(|&i| !a[i][c].is_zero()) else { continue };
            a.swap(r, p);
            for i in 0..m {
                if i != r && !a[i][c].is_zero() {
                    let f = &a[i][c] / &a[r][c];
                    for j in 0..n {
                        let t = &f * &a[r][j];
                        a[i][j] -= t;
                    }
                }
            }
            r += 1;
        }
        r
    }

    #[test]
    fn small_rank_and_kernel() {
        let m = SparseMatrix::from_dense(&[
            vec![int(1), int(2), int(3)],
            vec![int(2), int(4), int(6)],
            vec![int(0), int(1), rat(1, 2)],
        ]);
        assert_eq!(rank(&m), 2);
        let k = kernel(&m);
        assert_eq!(k.len(), 1);
        assert!(m.apply(&k[0]).iter().all(Zero::is_zero));
    }

    #[test]
    fn solve_feasible_and_not() {
        let m = SparseMatrix::from_dense(&[vec![int(1), int(1)], vec![int(1), int(1)]]);
        assert!(solve(&m, &[int(1), int(2)]).is_none());
        let x = solve(&m, &[int(3), int(3)]).unwrap();
        assert_eq!(m.apply(&x), vec![int(3), int(3)]);
    }

    proptest! {
        #[test]
        fn rank_matches_dense_oracle(entries in proptest::collection::vec(-3i64..4, 30), den in 1i64..5) {
            let dense: Vec<Vec<Rational>> = entries.chunks(6).map(|r| r.iter().map(|&x| rat(x, den)).collect()).collect();
            let m = SparseMatrix::from_dense(&dense);
            prop_assert_eq!(rank(&m), dense_rank_oracle(dense.clone()));
            for v in kernel(&m) {
                prop_assert!(m.apply(&v).iter().all(Zero::is_zero));
            }
        }

        #[test]
        fn normal_form_is_canonical(entries in proptest::collection::vec(-2i64..3, 24), shift in proptest::collection::vec(-2i64..3, 4)) {
            let dense: Vec<Vec<Rational>> = entries.chunks(6).map(|r| r.iter().map(|&x| int(x)).collect()).collect();
            let rref = Rref::of_matrix(&SparseMatrix::from_dense(&dense));
            let v: Vec<Rational> = (0..6).map(|i| int(i as i64 - 2)).collect();
            let mut w = v.clone();
            for (row, s) in dense.iter().zip(&shift) {
                for j in 0..6 { w[j] += &row[j] * int(*s); }
            }
            prop_assert_eq!(rref.normal_form(&v), rref.normal_form(&w));
        }
    }
}
