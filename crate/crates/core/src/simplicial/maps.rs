//! The maps `Φ` and `Ψ` from the model to the Chevalley–Eilenberg complex.
//!
//! `Φ(f_1 ⊗ … ⊗ f_n) = df_1(e) ∧ … ∧ df_n(e)`: a monomial with a constant slot
//! goes to zero and `z_{a_1} ⊗ … ⊗ z_{a_n}` goes to `e_{a_1} ∧ … ∧ e_{a_n}`.
//!
//! `Ψ` pulls back along `(g_0, …, g_n) ↦ (g_0 g_1^{-1}, …, g_{n−1} g_n^{-1})` and
//! then applies `f_0 ⊗ … ⊗ f_n ↦ f_0(e) df_1(e) ∧ … ∧ df_n(e)`. To first order in
//! `Y_k = g_k − 1` with `g_0 = 1` this substitutes `Z_1 = −Y_1` and
//! `Z_i = Y_{i−1} − Y_i − Y_{i−1} Y_i`, keeps the part linear in each `Y_k`, and
//! wedges in block order.

use num_traits::{One, Zero};

use super::model::{decode, InfinitesimalModel};
use super::quotient::{normalized_iso_to_ce, NormalizationSummary};
use crate::arith::{int, Rational};
use crate::error::{Error, Result};
use crate::lie::exterior::ExteriorBasis;
use crate::linalg::{null_homotopy_solve, ChainMap, FiniteComplex, SparseMatrix, Vector};

/// `Φ` on level `n` as a `dim Λ^n × dim Q_n` matrix.
pub fn phi_matrix(model: &InfinitesimalModel, n: usize) -> SparseMatrix {
    let size = model.size;
    let ext = ExteriorBasis::new(size * size, n);
    let mut triplets = Vec::new();
    for col in 0..model.dim(n) {
        let slots = decode(size, n, col);
        if slots.contains(&0) {
            continue;
        }
        let labels: Vec<usize> = slots.iter().map(|s| s - 1).collect();
        if let Some((row, sign)) = ext.signed_index(&labels) {
            triplets.push((row, col, int(sign)));
        }
    }
    SparseMatrix::from_triplets(ext.len(), model.dim(n), triplets)
}

/// `Ψ` on level `n` as a `dim Λ^n × dim Q_n` matrix.
pub fn psi_matrix(model: &InfinitesimalModel, n: usize) -> SparseMatrix {
    let size = model.size;
    let ext = ExteriorBasis::new(size * size, n);
    let mut triplets = Vec::new();
    for col in 0..model.dim(n) {
        let slots = decode(size, n, col);
        // per slot: alternatives as (block assignments, coefficient)
        let options: Vec<Vec<(Vec<(usize, usize)>, i64)>> = slots
            .iter()
            .enumerate()
            .map(|(i, &s)| {
                if s == 0 {
                    return vec![(Vec::new(), 1)];
                }
                let a = s - 1;
                let (r, c) = (a / size, a % size);
                let mut o = vec![(vec![(i, a)], -1)];
                if i > 0 {
                    o.push((vec![(i - 1, a)], 1));
                    for m in 0..size {
                        o.push((vec![(i - 1, r * size + m), (i, m * size + c)], -1));
                    }
                }
                o
            })
            .collect();
        let mut choice = vec![0usize; n];
        loop {
            let mut blocks = vec![None; n];
            let mut coeff = 1i64;
            let mut clash = false;
            for (i, &k) in choice.iter().enumerate() {
                let (assign, c) = &options[i][k];
                coeff *= c;
                for &(b, label) in assign {
                    if blocks[b].is_some() {
                        clash = true;
                    }
                    blocks[b] = Some(label);
                }
            }
            if !clash && blocks.iter().all(Option::is_some) {
                let labels: Vec<usize> = blocks.into_iter().map(Option::unwrap).collect();
                if let Some((row, sign)) = ext.signed_index(&labels) {
                    triplets.push((row, col, int(sign * coeff)));
                }
            }
            // next combination
            let mut pos = 0;
            while pos < n {
                choice[pos] += 1;
                if choice[pos] < options[pos].len() {
                    break;
                }
                choice[pos] = 0;
                pos += 1;
            }
            if pos == n {
                break;
            }
        }
    }
    SparseMatrix::from_triplets(ext.len(), model.dim(n), triplets)
}

fn sign(k: i64) -> Rational {
    if k % 2 == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// Outcome of comparing `Φ` and `Ψ`; discrepancies are data, not errors.
#[derive(Clone, Debug)]
pub struct PhiPsiReport {
    pub size: usize,
    pub max_level: usize,
    /// `Φ` commutes with the differentials of the unnormalized model on all levels.
    pub phi_chain_map: bool,
    /// `Ψ` commutes with the differentials as literally defined.
    pub psi_chain_map: bool,
    /// `Ψ ∘ d = −d ∘ Ψ` on all levels.
    pub psi_anticommutes: bool,
    /// `(−1)^k Ψ` is a chain map.
    pub signed_psi_chain_map: bool,
    /// Per-degree sign `s_k` used for `Φ − s·Ψ`.
    pub signs: Vec<i64>,
    pub phi_kills_ideal: bool,
    pub psi_kills_ideal: bool,
    pub phi_kills_slot_constants: bool,
    pub psi_kills_slot_constants: bool,
    /// Induced maps on `H^k` of the normalized quotient for `k < max_level`.
    pub cohomology: Vec<InducedComparison>,
    /// `null_homotopy_solve(Φ, s·Ψ)` on the unnormalized model.
    pub homotopy_unnormalized: bool,
    /// `null_homotopy_solve(κ^{-1}, s·Ψ)` on the normalized quotient.
    pub homotopy_normalized: bool,
    /// Verdict for the literal `Ψ` (without sign) on the unnormalized model.
    pub literal_homotopy: String,
    pub normalization: NormalizationSummary,
}

/// `Φ_*` against `Ψ_*` on one cohomology group.
#[derive(Clone, Debug, PartialEq)]
pub struct InducedComparison {
    pub degree: i64,
    pub dim: usize,
    /// Rank of `Φ_*`.
    pub phi_rank: usize,
    /// `λ` with `Ψ_* = λ Φ_*`; `None` when the group is zero or the maps are not proportional.
    pub scalar: Option<Rational>,
}

fn chain_map_from(start: i64, maps: Vec<SparseMatrix>) -> ChainMap {
    ChainMap::new(start, maps)
}

fn commutes(f: &ChainMap, src: &FiniteComplex, tgt: &FiniteComplex, lo: i64, hi: i64) -> bool {
    f.verify(src, tgt, lo, hi).is_ok()
}

/// Proportionality scalar `λ` with `b = λ a`, if one exists.
fn proportional(a: &SparseMatrix, b: &SparseMatrix) -> Option<Rational> {
    let mut lambda: Option<Rational> = None;
    for r in 0..a.rows() {
        for c in 0..a.cols() {
            let (x, y) = (a.get(r, c), b.get(r, c));
            if x.is_zero() {
                if !y.is_zero() {
                    return None;
                }
                continue;
            }
            let q = y / x;
            match &lambda {
                None => lambda = Some(q),
                Some(l) if *l != q => return None,
                _ => {}
            }
        }
    }
    lambda
}

/// Compares `Φ` and `Ψ` on the model of `gl_size` through `max_level`.
pub fn compare_phi_psi(size: usize, max_level: usize) -> Result<PhiPsiReport> {
    if max_level < 1 {
        return Err(Error::Range("the comparison needs at least level 1".into()));
    }
    let (q, nc, iso, normalization) = normalized_iso_to_ce(size, max_level)?;
    let model = &q.model;
    let cq = model.cochain_complex()?;
    let ce = &iso.ce;
    let top = max_level as i64;

    let phis: Vec<SparseMatrix> = (0..=max_level).map(|n| phi_matrix(model, n)).collect();
    let psis: Vec<SparseMatrix> = (0..=max_level).map(|n| psi_matrix(model, n)).collect();
    let signs: Vec<i64> = (0..=max_level as i64).map(|k| if k % 2 == 0 { 1 } else { -1 }).collect();
    let phi = chain_map_from(0, phis.clone());
    let psi = chain_map_from(0, psis.clone());
    let signed_psi = psi.scale_by_degree(sign);

    let phi_chain_map = commutes(&phi, &cq, ce, 0, top);
    let psi_chain_map = commutes(&psi, &cq, ce, 0, top);
    let psi_anticommutes = (0..top).all(|k| {
        let lhs = psis[k as usize + 1].mul(&cq.d(k));
        let rhs = ce.d(k).mul(&psis[k as usize]);
        lhs == rhs.scale(&-Rational::one())
    });
    let signed_psi_chain_map = commutes(&signed_psi, &cq, ce, 0, top);

    let kills_ideal = |m: &[SparseMatrix]| {
        q.ideals.iter().all(|ideal| {
            ideal.rref.rows().iter().all(|row| {
                let mut v = vec![Rational::zero(); model.dim(ideal.level)];
                for (&c, x) in row {
                    v[c] = x.clone();
                }
                m[ideal.level].apply(&v).iter().all(Zero::is_zero)
            })
        })
    };
    let kills_slot_constants = |m: &[SparseMatrix]| {
        (1..=max_level).all(|n| {
            (0..model.dim(n))
                .filter(|&col| decode(size, n, col).contains(&0))
                .all(|col| m[n].column(col).iter().all(Zero::is_zero))
        })
    };
    let phi_kills_ideal = kills_ideal(&phis);
    let psi_kills_ideal = kills_ideal(&psis);
    let phi_kills_slot_constants = kills_slot_constants(&phis);
    let psi_kills_slot_constants = kills_slot_constants(&psis);

    // Ψ on the normalized quotient, through the representative on surviving columns
    let psi_bar: Vec<SparseMatrix> = (0..=max_level)
        .map(|n| {
            let cols: Vec<Vector> =
                nc.bases[n].iter().map(|b| psis[n].apply(&q.ideals[n].lift(b, model.dim(n)))).collect();
            SparseMatrix::from_columns(ce.dim(n as i64), &cols)
        })
        .collect();
    let psi_bar = chain_map_from(0, psi_bar);
    let signed_psi_bar = psi_bar.scale_by_degree(sign);
    let phi_bar = chain_map_from(0, iso.inverses.clone());

    // literal Ψ sends cocycles to cocycles and coboundaries to coboundaries, so it
    // induces maps on cohomology even though it anticommutes with d
    let mut cohomology = Vec::new();
    for k in 0..top {
        let a = phi_bar.induced_on_cohomology(&nc.complex, ce, k)?;
        let b = psi_bar.induced_on_cohomology(&nc.complex, ce, k)?;
        cohomology.push(InducedComparison {
            degree: k,
            dim: a.cols(),
            phi_rank: crate::linalg::rank(&a),
            scalar: if a.cols() == 0 { None } else { proportional(&a, &b) },
        });
    }

    let window_hi = top - 1;
    let homotopy_unnormalized = signed_psi_chain_map
        && phi_chain_map
        && null_homotopy_solve(&phi, &signed_psi, &cq, ce, 0, window_hi)?.is_some();
    let homotopy_normalized = psi_kills_ideal
        && null_homotopy_solve(&phi_bar, &signed_psi_bar, &nc.complex, ce, 0, window_hi)?.is_some();
    let literal_homotopy = match null_homotopy_solve(&phi, &psi, &cq, ce, 0, window_hi) {
        Ok(Some(_)) => "homotopic".to_string(),
        Ok(None) => "not homotopic".to_string(),
        Err(Error::ChainMapViolation(_)) => "literal Psi is not a chain map".to_string(),
        Err(e) => return Err(e),
    };

    Ok(PhiPsiReport {
        size,
        max_level,
        phi_chain_map,
        psi_chain_map,
        psi_anticommutes,
        signed_psi_chain_map,
        signs,
        phi_kills_ideal,
        psi_kills_ideal,
        phi_kills_slot_constants,
        psi_kills_slot_constants,
        cohomology,
        homotopy_unnormalized,
        homotopy_normalized,
        literal_homotopy,
        normalization,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{ce_complex, LieAlgebra};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn low_level_values() {
        let m = InfinitesimalModel::new(2, 2).unwrap();
        assert_eq!(phi_matrix(&m, 0).to_dense(), vec![vec![int(1)]]);
        assert_eq!(psi_matrix(&m, 0).to_dense(), vec![vec![int(1)]]);
        // level 1: Φ(z_a) = e_a and Ψ(z_a) = −e_a
        let phi1 = phi_matrix(&m, 1);
        let psi1 = psi_matrix(&m, 1);
        for a in 0..4 {
            assert_eq!(phi1.get(a, a + 1), int(1));
            assert_eq!(psi1.get(a, a + 1), int(-1));
        }
        // Φ(z_0 ⊗ z_1) = e_0 ∧ e_1 and Φ(z_0 ⊗ 1) = 0
        let phi2 = phi_matrix(&m, 2);
        assert_eq!(phi2.get(0, super::super::model::encode(2, &[1, 2])), int(1));
        assert!(phi2.column(super::super::model::encode(2, &[1, 0])).iter().all(Zero::is_zero));
    }

    #[test]
    fn random_chain_map_checks() {
        let m = InfinitesimalModel::new(2, 3).unwrap();
        let cq = m.cochain_complex().unwrap();
        let ce = ce_complex(&LieAlgebra::gl(2));
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..100 {
            let n = rng.gen_range(0..3usize);
            let t: Vec<Rational> = (0..m.dim(n)).map(|_| int(rng.gen_range(-3..4))).collect();
            let dt = cq.apply_d(n as i64, &t);
            assert_eq!(phi_matrix(&m, n + 1).apply(&dt), ce.apply_d(n as i64, &phi_matrix(&m, n).apply(&t)));
            let lhs = psi_matrix(&m, n + 1).apply(&dt);
            let rhs = ce.apply_d(n as i64, &psi_matrix(&m, n).apply(&t));
            assert!(lhs.iter().zip(&rhs).all(|(x, y)| *x == -y.clone()));
        }
    }

    #[test]
    fn gl1_comparison() {
        let r = compare_phi_psi(1, 3).unwrap();
        assert!(r.phi_chain_map && r.signed_psi_chain_map);
        assert_eq!(r.cohomology[0].scalar, Some(int(1)));
        assert_eq!(r.cohomology[1].scalar, Some(int(-1)));
        assert!(r.homotopy_unnormalized && r.homotopy_normalized);
    }

    #[test]
    fn gl2_comparison() {
        let r = compare_phi_psi(2, 3).unwrap();
        assert!(r.phi_chain_map);
        assert!(!r.psi_chain_map);
        assert!(r.psi_anticommutes && r.signed_psi_chain_map);
        assert!(r.psi_kills_ideal);
        assert!(!r.phi_kills_ideal);
        assert!(r.phi_kills_slot_constants);
        assert!(!r.psi_kills_slot_constants);
        let scalars: Vec<_> = r.cohomology.iter().map(|c| c.scalar.clone()).collect();
        assert_eq!(scalars, vec![Some(int(1)), Some(int(-1)), None]);
        assert_eq!(r.cohomology.iter().map(|c| c.dim).collect::<Vec<_>>(), vec![1, 1, 0]);
        assert!(r.cohomology.iter().all(|c| c.phi_rank == c.dim));
        assert!(r.homotopy_unnormalized);
        assert!(r.homotopy_normalized);
        assert_eq!(r.literal_homotopy, "literal Psi is not a chain map");
    }
}
