//! The suspension `H^{2n}(W^{≥n}) → H^{2n−1}(𝔤)` and Chern–Weil classes of `p_n`.

use num_traits::Zero;

use super::element::WeilElement;
use super::slice::WeilSlice;
use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::lie::{ce_complex, invariant_polynomials, primitive_element, ExteriorCochain, LieAlgebra, SymPolynomial};
use crate::linalg::{solve, CohomologyClass, FiniteComplex, SparseMatrix, Vector};

/// A suspended class together with the Weil lift that produced it.
#[derive(Clone, Debug)]
pub struct Suspended {
    pub class: CohomologyClass,
    pub cochain: ExteriorCochain,
    /// `y` with `δ y = c` in the full slice.
    pub lift: WeilElement,
}

/// The invariant polynomial whose suspension is `[p_n]`.
#[derive(Clone, Debug)]
pub struct ChernWeilClass {
    pub n: usize,
    /// Invariant polynomial basis used for the solve.
    pub basis: Vec<SymPolynomial>,
    /// Coordinates of the result in `basis`.
    pub coefficients: Vec<Rational>,
    pub polynomial: SymPolynomial,
    /// The class in `H^{2n}(W^{≥n})`, in the coordinates of the filtered subcomplex.
    pub class: CohomologyClass,
}

/// Suspension computations on a fixed slice of the Weil complex.
#[derive(Clone, Debug)]
pub struct Suspension {
    pub slice: WeilSlice,
    pub ce: FiniteComplex,
}

impl Suspension {
    pub fn new(alg: &LieAlgebra, bound: usize) -> Result<Self> {
        Ok(Suspension { slice: WeilSlice::new(alg, bound)?, ce: ce_complex(alg) })
    }

    fn check_input(&self, c: &WeilElement, n: usize) -> Result<Vector> {
        if n == 0 {
            return Err(Error::Range("suspension starts at n = 1".into()));
        }
        let t = 2 * n;
        if t >= self.slice.bound {
            return Err(Error::TruncationOverflow(format!(
                "suspending degree {t} needs a slice bound above {t}, have {}",
                self.slice.bound
            )));
        }
        if c.terms().any(|(m, _)| m.sym_degree() < n) {
            return Err(Error::Domain(format!("element does not lie in W^(>={n})")));
        }
        let v = self.slice.to_vector(c, t)?;
        if !self.slice.complex().is_cocycle(t as i64, &v) {
            return Err(Error::NotACocycle { degree: t as i64 });
        }
        Ok(v)
    }

    fn to_ce_class(&self, y: &WeilElement, k: usize) -> Result<(ExteriorCochain, CohomologyClass)> {
        let cochain = y.exterior_part(k);
        let class = self.ce.class(k as i64, cochain.to_vector())?;
        Ok((cochain, class))
    }

    /// Solves `δ y = c` in the full slice and keeps the symmetric-degree-0 part of `y`.
    pub fn suspend(&self, c: &WeilElement, n: usize) -> Result<Suspended> {
        let v = self.check_input(c, n)?;
        let k = 2 * n - 1;
        let y = solve(&self.slice.complex().d(k as i64), &v)
            .ok_or_else(|| Error::InfeasibleLift(format!("no preimage of the degree-{} cocycle under δ", 2 * n)))?;
        let lift = self.slice.from_vector(k, &y);
        let (cochain, class) = self.to_ce_class(&lift, k)?;
        Ok(Suspended { class, cochain, lift })
    }

    /// The same suspension computed through `0 → W^{≥n} → W → W^{<n} → 0`.
    ///
    /// Finds a cocycle `x` of `W^{<n}` whose connecting image is `[c]`, then
    /// projects `x` to `W^{<1}`.
    pub fn suspend_through_filtration(&self, c: &WeilElement, n: usize) -> Result<CohomologyClass> {
        let v = self.check_input(c, n)?;
        let k = 2 * n - 1;
        let (t, ki) = (2 * n as i64, k as i64);
        let filt = self.slice.filtration(n)?;
        let ses = &filt.sequence;
        let c_sub: Vector = filt.upper[2 * n].iter().map(|&i| v[i].clone()).collect();

        // unknowns (x in W^{<n}_k, z in W^{≥n}_k):
        //   d_quot x = 0  and  retr·d·sect x − d_sub z = c
        let q = ses.quotient.dim(ki);
        let s = ses.sub.dim(ki);
        let d_quot = ses.quotient.d(ki);
        let retr = ses.inclusion(t).unwrap().transpose();
        let boundary = retr.mul(&ses.total.d(ki)).mul(&ses.section(ki).unwrap());
        let d_sub = ses.sub.d(ki);
        let rows_top = d_quot.rows();
        let mut triplets = Vec::new();
        for (r, col, x) in d_quot.entries() {
            triplets.push((r, col, x.clone()));
        }
        for (r, col, x) in boundary.entries() {
            triplets.push((rows_top + r, col, x.clone()));
        }
        for (r, col, x) in d_sub.entries() {
            triplets.push((rows_top + r, q + col, -x.clone()));
        }
        let system = SparseMatrix::from_triplets(rows_top + boundary.rows(), q + s, triplets);
        let mut rhs = vec![Rational::zero(); rows_top];
        rhs.extend(c_sub.iter().cloned());
        let sol = solve(&system, &rhs)
            .ok_or_else(|| Error::InfeasibleLift(format!("no cocycle of W^(<{n}) bounds onto the class")))?;
        let x: Vector = sol[..q].to_vec();

        // re-check with the generic snake-lemma map
        let quot_class = ses.quotient.class(ki, x.clone())?;
        let image = ses.connecting_map(&quot_class)?;
        let target = ses.sub.class(t, c_sub)?;
        if !ses.sub.same_class(&image, &target)? {
            return Err(Error::ExactnessViolation("connecting map does not reproduce the class".into()));
        }

        let mut full = vec![Rational::zero(); self.slice.basis(k).len()];
        for (pos, val) in filt.lower[k].iter().zip(&x) {
            full[*pos] = val.clone();
        }
        let (_, class) = self.to_ce_class(&self.slice.from_vector(k, &full), k)?;
        Ok(class)
    }

    /// Suspension of an invariant polynomial viewed in `W^{n,n}`.
    pub fn suspend_polynomial(&self, p: &SymPolynomial) -> Result<Suspended> {
        self.suspend(&WeilElement::from_sym(p), p.degree)
    }

    /// Solves `Σ a_j s(P_j) ≡ p_n` modulo coboundaries over the invariant polynomial basis.
    ///
    /// Decomposable invariants suspend to zero, so the coefficients are not unique;
    /// the solver sets its free variables to zero.
    pub fn chern_weil_class(&self, n: usize) -> Result<ChernWeilClass> {
        let alg = &self.slice.alg;
        let p_n = primitive_element(alg, n)?;
        let basis = invariant_polynomials(alg, n);
        let k = 2 * n - 1;
        let mut columns: Vec<Vector> = Vec::with_capacity(basis.len());
        for p in &basis {
            columns.push(self.suspend_polynomial(p)?.class.representative);
        }
        let d_in = self.ce.d(k as i64 - 1);
        for col in 0..d_in.cols() {
            columns.push(d_in.column(col));
        }
        let system = SparseMatrix::from_columns(self.ce.dim(k as i64), &columns);
        let sol = solve(&system, &p_n.to_vector())
            .ok_or_else(|| Error::NotFound(format!("no invariant polynomial suspends to p_{n}")))?;
        let coefficients: Vec<Rational> = sol[..basis.len()].to_vec();
        let mut terms = Vec::new();
        for (p, a) in basis.iter().zip(&coefficients) {
            terms.extend(p.terms().map(|(m, v)| (m.clone(), v * a)));
        }
        let polynomial = SymPolynomial::from_terms(alg.dim(), n, terms)?;

        let back = self.suspend_polynomial(&polynomial)?;
        let target = self.ce.class(k as i64, p_n.to_vector())?;
        if !self.ce.same_class(&back.class, &target)? {
            return Err(Error::NotFound(format!("solved polynomial does not suspend back to p_{n}")));
        }
        let filt = self.slice.filtration(n)?;
        let full = self.slice.to_vector(&WeilElement::from_sym(&polynomial), 2 * n)?;
        let sub_coords = filt.upper[2 * n].iter().map(|&i| full[i].clone()).collect();
        let class = filt.sub().class(2 * n as i64, sub_coords)?;
        Ok(ChernWeilClass { n, basis, coefficients, polynomial, class })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;
    use crate::lie::sym::multiply;
    use crate::lie::{power_trace, trace_cochain};

    #[test]
    fn trace_suspends_to_p1() {
        for n in 1..=2 {
            let s = Suspension::new(&LieAlgebra::gl(n), 6).unwrap();
            let out = s.suspend_polynomial(&power_trace(n, 1)).unwrap();
            let p1 = s.ce.class(1, trace_cochain(n).to_vector()).unwrap();
            assert!(s.ce.same_class(&out.class, &p1).unwrap());
            assert_eq!(out.cochain, trace_cochain(n));
        }
    }

    #[test]
    fn suspension_is_linear() {
        let s = Suspension::new(&LieAlgebra::gl(2), 6).unwrap();
        let a = power_trace(2, 2);
        let tr = power_trace(2, 1);
        let b = multiply(&tr, &tr);
        let three = int(3);
        let combo = WeilElement::from_sym(&a).scale(&three).add(&WeilElement::from_sym(&b));
        let lhs = s.suspend(&combo, 2).unwrap().class.representative;
        let sa = s.suspend_polynomial(&a).unwrap().class.representative;
        let sb = s.suspend_polynomial(&b).unwrap().class.representative;
        let rhs: Vec<Rational> = sa.iter().zip(&sb).map(|(x, y)| &three * x + y).collect();
        let diff: Vec<Rational> = lhs.iter().zip(&rhs).map(|(x, y)| x - y).collect();
        assert!(s.ce.is_coboundary(3, &diff));
    }

    #[test]
    fn both_routes_agree() {
        for n in 1..=2 {
            let g = LieAlgebra::gl(n);
            let s = Suspension::new(&g, 6).unwrap();
            for level in 1..=n {
                for p in invariant_polynomials(&g, level) {
                    let direct = s.suspend_polynomial(&p).unwrap().class;
                    let filtered = s.suspend_through_filtration(&WeilElement::from_sym(&p), level).unwrap();
                    assert!(s.ce.same_class(&direct, &filtered).unwrap());
                }
            }
        }
    }

    #[test]
    fn decomposable_invariant_suspends_to_zero() {
        let s = Suspension::new(&LieAlgebra::gl(2), 6).unwrap();
        let tr = power_trace(2, 1);
        let out = s.suspend_polynomial(&multiply(&tr, &tr)).unwrap();
        assert!(s.ce.class_is_zero(&out.class).unwrap());
    }

    #[test]
    fn chern_weil_round_trip() {
        let s = Suspension::new(&LieAlgebra::gl(2), 6).unwrap();
        let c1 = s.chern_weil_class(1).unwrap();
        assert_eq!(c1.polynomial, power_trace(2, 1));
        let c2 = s.chern_weil_class(2).unwrap();
        // coordinates in {Tr(X)², Tr(X²)}: the Tr(X²) coordinate must be nonzero
        let tr = power_trace(2, 1);
        let spanning = [multiply(&tr, &tr).to_vector(), power_trace(2, 2).to_vector()];
        let m = SparseMatrix::from_columns(10, &spanning);
        let coords = solve(&m, &c2.polynomial.to_vector()).unwrap();
        assert!(!coords[1].is_zero());
    }

    #[test]
    fn rejects_bad_inputs() {
        let s = Suspension::new(&LieAlgebra::gl(2), 4).unwrap();
        assert!(matches!(s.suspend_polynomial(&power_trace(2, 2)), Err(Error::TruncationOverflow(_))));
        let s = Suspension::new(&LieAlgebra::gl(2), 6).unwrap();
        // y_{01} alone is not closed
        let y = WeilElement::sym_generator(4, 1);
        assert!(matches!(s.suspend(&y, 1), Err(Error::NotACocycle { .. })));
        assert!(s.suspend(&WeilElement::sym_generator(4, 0), 2).is_err());
    }

    #[test]
    fn boundary_from_lie_cohomology_is_injective() {
        let g = LieAlgebra::gl(2);
        let s = Suspension::new(&g, 6).unwrap();
        let filt = s.slice.filtration(1).unwrap();
        for k in [1i64, 3] {
            let basis = s.ce.cohomology_basis(k);
            let target = filt.sub().cohomology_basis(k + 1);
            let images: Vec<Vector> = basis
                .representatives
                .iter()
                .map(|z| {
                    let c = filt.quotient().class(k, z.clone()).unwrap();
                    let b = filt.sequence.connecting_map(&c).unwrap();
                    target.coordinates(&b.representative).unwrap()
                })
                .collect();
            let m = SparseMatrix::from_columns(target.dim(), &images);
            assert_eq!(crate::linalg::rank(&m), basis.dim());
        }
    }
}
