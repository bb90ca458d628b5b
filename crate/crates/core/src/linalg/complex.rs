//! Finite cochain complexes of rational vector spaces.

use num_traits::Zero;

use super::elim::{kernel, rank, solve, Echelon};
use super::sparse::{is_zero_vector, SparseMatrix, Vector};
use crate::arith::Rational;
use crate::error::{Error, Result};

/// A cochain complex concentrated in degrees `start ..= end`.
///
/// `diffs[i]` is the differential from degree `start + i` to `start + i + 1`;
/// the differential out of the top degree is zero.
#[derive(Clone, Debug)]
pub struct FiniteComplex {
    start: i64,
    dims: Vec<usize>,
    diffs: Vec<SparseMatrix>,
}

impl FiniteComplex {
    /// Builds the complex, rejecting mismatched shapes and any `d∘d ≠ 0`.
    pub fn new(start: i64, dims: Vec<usize>, diffs: Vec<SparseMatrix>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::Shape("a complex needs at least one degree".into()));
        }
        if diffs.len() + 1 != dims.len() {
            return Err(Error::Shape(format!("{} degrees need {} differentials, got {}", dims.len(), dims.len() - 1, diffs.len())));
        }
        for (i, d) in diffs.iter().enumerate() {
            if d.cols() != dims[i] || d.rows() != dims[i + 1] {
                return Err(Error::Shape(format!(
                    "differential out of degree {} is {}x{}, expected {}x{}",
                    start + i as i64,
                    d.rows(),
                    d.cols(),
                    dims[i + 1],
                    dims[i]
                )));
            }
        }
        for (i, pair) in diffs.windows(2).enumerate() {
            if !pair[1].mul(&pair[0]).is_zero() {
                return Err(Error::NotAComplex { degree: start + i as i64 });
            }
        }
        Ok(FiniteComplex { start, dims, diffs })
    }

    pub fn start(&self) -> i64 {
        self.start
    }

    pub fn end(&self) -> i64 {
        self.start + self.dims.len() as i64 - 1
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        self.start..=self.end()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Dimension in degree `k`, zero outside the support.
    pub fn dim(&self, k: i64) -> usize {
        self.index(k).map_or(0, |i| self.dims[i])
    }

    fn index(&self, k: i64) -> Option<usize> {
        (self.start..=self.end()).contains(&k).then(|| (k - self.start) as usize)
    }

    /// The differential out of degree `k`, as a `dim(k+1) × dim(k)` matrix.
    pub fn d(&self, k: i64) -> SparseMatrix {
        match self.index(k) {
            Some(i) if i < self.diffs.len() => self.diffs[i].clone(),
            _ => SparseMatrix::zeros(self.dim(k + 1), self.dim(k)),
        }
    }

    pub fn apply_d(&self, k: i64, v: &[Rational]) -> Vector {
        match self.index(k) {
            Some(i) if i < self.diffs.len() => self.diffs[i].apply(v),
            _ => vec![Rational::zero(); self.dim(k + 1)],
        }
    }

    pub fn is_cocycle(&self, k: i64, v: &[Rational]) -> bool {
        is_zero_vector(&self.apply_d(k, v))
    }

    /// `dim H^k` for every degree in the support, in order.
    pub fn cohomology_dims(&self) -> Vec<usize> {
        let ranks: Vec<usize> = self.diffs.iter().map(rank).collect();
        (0..self.dims.len())
            .map(|i| {
                let out = ranks.get(i).copied().unwrap_or(0);
                let inc = if i > 0 { ranks[i - 1] } else { 0 };
                self.dims[i] - out - inc
            })
            .collect()
    }

    pub fn cohomology_dim(&self, k: i64) -> usize {
        let out = self.index(k).and_then(|i| self.diffs.get(i)).map_or(0, rank);
        let inc = if k > self.start { self.index(k - 1).and_then(|i| self.diffs.get(i)).map_or(0, rank) } else { 0 };
        self.dim(k) - out - inc
    }

    /// Whether `v` is a coboundary in degree `k`.
    pub fn is_coboundary(&self, k: i64, v: &[Rational]) -> bool {
        if is_zero_vector(v) {
            return true;
        }
        solve(&self.d(k - 1), v).is_some()
    }

    pub fn class_is_zero(&self, c: &CohomologyClass) -> Result<bool> {
        self.check_class(c)?;
        Ok(self.is_coboundary(c.degree, &c.representative))
    }

    fn check_class(&self, c: &CohomologyClass) -> Result<()> {
        if c.representative.len() != self.dim(c.degree) {
            return Err(Error::Shape(format!(
                "representative of length {} in degree {} of dimension {}",
                c.representative.len(),
                c.degree,
                self.dim(c.degree)
            )));
        }
        if !c.certified && !self.is_cocycle(c.degree, &c.representative) {
            return Err(Error::NotACocycle { degree: c.degree });
        }
        Ok(())
    }

    /// Certifies `v` as a cocycle of degree `k`.
    pub fn class(&self, k: i64, v: Vector) -> Result<CohomologyClass> {
        CohomologyClass::uncertified(k, v).certify(self)
    }

    /// Whether two cocycles represent the same class.
    pub fn same_class(&self, a: &CohomologyClass, b: &CohomologyClass) -> Result<bool> {
        if a.degree != b.degree {
            return Err(Error::Shape("classes of different degrees".into()));
        }
        self.check_class(a)?;
        self.check_class(b)?;
        let diff: Vector = a.representative.iter().zip(&b.representative).map(|(x, y)| x - y).collect();
        Ok(self.is_coboundary(a.degree, &diff))
    }

    pub fn cohomology_basis(&self, k: i64) -> CohomologyBasis {
        CohomologyBasis::new(self, k)
    }
}

/// A cocycle representative in a fixed degree.
#[derive(Clone, Debug, PartialEq)]
pub struct CohomologyClass {
    pub degree: i64,
    pub representative: Vector,
    certified: bool,
}

impl CohomologyClass {
    pub fn uncertified(degree: i64, representative: Vector) -> Self {
        CohomologyClass { degree, representative, certified: false }
    }

    pub fn certify(mut self, complex: &FiniteComplex) -> Result<Self> {
        self.certified = false;
        complex.check_class(&self)?;
        self.certified = true;
        Ok(self)
    }

    pub fn is_certified(&self) -> bool {
        self.certified
    }

    pub fn zero(complex: &FiniteComplex, degree: i64) -> Self {
        CohomologyClass { degree, representative: vec![Rational::zero(); complex.dim(degree)], certified: true }
    }
}

/// Representatives of a basis of `H^k` together with a coordinate map.
#[derive(Clone, Debug)]
pub struct CohomologyBasis {
    pub degree: i64,
    boundaries: Vec<Vector>,
    pub representatives: Vec<Vector>,
    system: SparseMatrix,
}

impl CohomologyBasis {
    fn new(c: &FiniteComplex, k: i64) -> Self {
        let d_in = c.d(k - 1);
        let n = c.dim(k);
        let mut ech = Echelon::new(n);
        let mut boundaries = Vec::new();
        for col in 0..d_in.cols() {
            let v = d_in.column(col);
            if ech.insert_vector(&v) {
                boundaries.push(v);
            }
        }
        let mut representatives = Vec::new();
        for z in kernel(&c.d(k)) {
            if ech.insert_vector(&z) {
                representatives.push(z);
            }
        }
        let cols: Vec<Vector> = boundaries.iter().chain(&representatives).cloned().collect();
        let system = SparseMatrix::from_columns(n, &cols);
        CohomologyBasis { degree: k, boundaries, representatives, system }
    }

    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    /// Coordinates of a cocycle's class; `None` if `v` is not in the cocycle space.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vector> {
        let x = solve(&self.system, v)?;
        Some(x[self.boundaries.len()..].to_vec())
    }
}

/// A degreewise split short exact sequence `0 → sub → total → quotient → 0`.
///
/// The splitting consists of a section of the projection and a retraction of
/// the inclusion with `incl∘retr + sect∘proj = id` in every degree.
#[derive(Clone, Debug)]
pub struct ShortExactSequence {
    pub sub: FiniteComplex,
    pub total: FiniteComplex,
    pub quotient: FiniteComplex,
    inclusion: Vec<SparseMatrix>,
    projection: Vec<SparseMatrix>,
    section: Vec<SparseMatrix>,
    retraction: Vec<SparseMatrix>,
}

impl ShortExactSequence {
    /// Maps are indexed by degree starting at `total.start()`, one per degree of `total`.
    pub fn new(
        sub: FiniteComplex,
        total: FiniteComplex,
        quotient: FiniteComplex,
        inclusion: Vec<SparseMatrix>,
        projection: Vec<SparseMatrix>,
        section: Vec<SparseMatrix>,
        retraction: Vec<SparseMatrix>,
    ) -> Result<Self> {
        let n = total.dims().len();
        for (name, maps) in [("inclusion", &inclusion), ("projection", &projection), ("section", &section), ("retraction", &retraction)] {
            if maps.len() != n {
                return Err(Error::Shape(format!("{name} needs {n} maps, got {}", maps.len())));
            }
        }
        let ses = ShortExactSequence { sub, total, quotient, inclusion, projection, section, retraction };
        ses.verify()?;
        Ok(ses)
    }

    fn verify(&self) -> Result<()> {
        let bad = |what: &str, k: i64| Err(Error::ExactnessViolation(format!("{what} fails in degree {k}")));
        for k in self.total.degrees() {
            let i = (k - self.total.start()) as usize;
            let (a, b, c) = (self.sub.dim(k), self.total.dim(k), self.quotient.dim(k));
            let shapes = [
                (&self.inclusion[i], b, a),
                (&self.projection[i], c, b),
                (&self.section[i], b, c),
                (&self.retraction[i], a, b),
            ];
            if shapes.iter().any(|(m, r, cc)| m.rows() != *r || m.cols() != *cc) {
                return bad("shape check", k);
            }
            let (inc, proj, sect, retr) = (&self.inclusion[i], &self.projection[i], &self.section[i], &self.retraction[i]);
            if !proj.mul(inc).is_zero() {
                return bad("projection∘inclusion = 0", k);
            }
            if proj.mul(sect) != SparseMatrix::identity(c) {
                return bad("projection∘section = id", k);
            }
            if retr.mul(inc) != SparseMatrix::identity(a) {
                return bad("retraction∘inclusion = id", k);
            }
            if inc.mul(retr).add(&sect.mul(proj)) != SparseMatrix::identity(b) {
                return bad("inclusion∘retraction + section∘projection = id", k);
            }
            if k < self.total.end() {
                if self.total.d(k).mul(inc) != self.inclusion[i + 1].mul(&self.sub.d(k)) {
                    return bad("inclusion commutes with d", k);
                }
                if self.quotient.d(k).mul(proj) != self.projection[i + 1].mul(&self.total.d(k)) {
                    return bad("projection commutes with d", k);
                }
            }
        }
        Ok(())
    }

    /// The same sequence with the total complex rewritten in a new basis.
    ///
    /// `bases[i]` holds `(g, g⁻¹)` for the `i`-th degree of the total complex; new
    /// coordinates are `g` applied to old ones.
    pub fn change_total_basis(&self, bases: &[(SparseMatrix, SparseMatrix)]) -> Result<Self> {
        let n = self.total.dims().len();
        if bases.len() != n {
            return Err(Error::Shape(format!("need {n} basis changes, got {}", bases.len())));
        }
        let diffs = (0..n - 1).map(|i| bases[i + 1].0.mul(&self.total.diffs[i]).mul(&bases[i].1)).collect();
        let total = FiniteComplex::new(self.total.start, self.total.dims.clone(), diffs)?;
        let left = |maps: &[SparseMatrix]| maps.iter().zip(bases).map(|(m, (g, _))| g.mul(m)).collect();
        let right = |maps: &[SparseMatrix]| maps.iter().zip(bases).map(|(m, (_, gi))| m.mul(gi)).collect();
        ShortExactSequence::new(
            self.sub.clone(),
            total,
            self.quotient.clone(),
            left(&self.inclusion),
            right(&self.projection),
            left(&self.section),
            right(&self.retraction),
        )
    }

    fn at(&self, maps: &[SparseMatrix], k: i64) -> Option<SparseMatrix> {
        let i = k - self.total.start();
        (i >= 0 && (i as usize) < maps.len()).then(|| maps[i as usize].clone())
    }

    pub fn inclusion(&self, k: i64) -> Option<SparseMatrix> {
        self.at(&self.inclusion, k)
    }

    pub fn projection(&self, k: i64) -> Option<SparseMatrix> {
        self.at(&self.projection, k)
    }

    pub fn section(&self, k: i64) -> Option<SparseMatrix> {
        self.at(&self.section, k)
    }

    /// Connecting homomorphism `H^k(quotient) → H^{k+1}(sub)` using the stored section as preimage.
    pub fn connecting_map(&self, c: &CohomologyClass) -> Result<CohomologyClass> {
        let sect = self
            .section(c.degree)
            .ok_or_else(|| Error::Range(format!("degree {} outside the sequence", c.degree)))?;
        self.quotient.check_class(c)?;
        let lift = sect.apply(&c.representative);
        self.connecting_map_with_lift(c, &lift)
    }

    /// Connecting homomorphism computed from a caller-chosen preimage of the representative.
    pub fn connecting_map_with_lift(&self, c: &CohomologyClass, lift: &[Rational]) -> Result<CohomologyClass> {
        let k = c.degree;
        self.quotient.check_class(c)?;
        let proj = self.projection(k).ok_or_else(|| Error::Range(format!("degree {k} outside the sequence")))?;
        if proj.apply(lift) != c.representative {
            return Err(Error::ExactnessViolation(format!("supplied lift does not project to the class in degree {k}")));
        }
        let y = self.total.apply_d(k, lift);
        if k + 1 > self.total.end() {
            return Ok(CohomologyClass::zero(&self.sub, k + 1));
        }
        if !is_zero_vector(&self.projection(k + 1).unwrap().apply(&y)) {
            return Err(Error::ExactnessViolation(format!("d of the lift does not land in the subcomplex in degree {}", k + 1)));
        }
        let a = self.at(&self.retraction, k + 1).unwrap().apply(&y);
        if self.inclusion(k + 1).unwrap().apply(&a) != y {
            return Err(Error::ExactnessViolation(format!("retraction does not recover the boundary in degree {}", k + 1)));
        }
        self.sub.class(k + 1, a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use num_traits::One;

    fn two_term(d: i64) -> FiniteComplex {
        FiniteComplex::new(0, vec![1, 1], vec![SparseMatrix::from_dense(&[vec![int(d)]])]).unwrap()
    }

    #[test]
    fn identity_and_zero_two_term() {
        assert_eq!(two_term(1).cohomology_dims(), vec![0, 0]);
        assert_eq!(two_term(0).cohomology_dims(), vec![1, 1]);
    }

    #[test]
    fn rejects_non_complex() {
        let one = SparseMatrix::identity(1);
        let err = FiniteComplex::new(0, vec![1, 1, 1], vec![one.clone(), one]).unwrap_err();
        assert!(matches!(err, Error::NotAComplex { degree: 0 }));
    }

    #[test]
    fn rejects_bad_shapes() {
        let err = FiniteComplex::new(0, vec![2, 1], vec![SparseMatrix::identity(1)]).unwrap_err();
        assert!(matches!(err, Error::Shape(_)));
    }

    #[test]
    fn class_checks() {
        let c = two_term(0);
        assert!(!c.class_is_zero(&c.class(0, vec![int(1)]).unwrap()).unwrap());
        let c = two_term(2);
        assert!(c.class_is_zero(&c.class(1, vec![rat(3, 7)]).unwrap()).unwrap());
        assert!(c.class_is_zero(&CohomologyClass::zero(&c, 0)).unwrap());
        assert!(matches!(c.class(0, vec![int(1)]), Err(Error::NotACocycle { degree: 0 })));
        assert!(matches!(c.class_is_zero(&CohomologyClass::uncertified(0, vec![int(1)])), Err(Error::NotACocycle { .. })));
    }

    #[test]
    fn basis_coordinates() {
        let c = two_term(0);
        let b = c.cohomology_basis(1);
        assert_eq!(b.dim(), 1);
        assert_eq!(b.coordinates(&[int(5)]).unwrap().len(), 1);
        let one = Rational::one();
        assert!(two_term(1).cohomology_basis(1).coordinates(&[one]).unwrap().is_empty());
    }
}
