//! The verification suites run by `verify` and `shadow`.

use std::time::Instant;

use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use regulator_core::arith::{padic_log_to, PadicNumber, Rational};
use regulator_core::lazard::{
    amice_transform, antisymmetrization_is_chain_map, derivative_at_identity, group_isomorphism_intertwines,
    local_analyticity_test, partial_element, primitivity_check, random_mahler_series, regulator_shadow, Distribution,
    EnvelopingAlgebra, GroupAlgebraModel, MahlerSeries, StandardComplexes, Truncation,
};
use regulator_core::lie::{ce_complex, invariant_polynomials, power_trace, primitive_element, LieAlgebra};
use regulator_core::simplicial::{compare_phi_psi, normalized_iso_to_ce};
use regulator_core::weil::{weil_cohomology, Suspension};
use regulator_core::{Error, Result};

use crate::config::RunConfig;
use crate::report::SuiteReport;

pub const SUITES: [&str; 6] = ["ce", "weil", "suspension", "normalization", "phi-psi", "lazard"];

/// A finished suite, and whether it stopped on exhausted precision.
pub struct SuiteOutcome {
    pub report: SuiteReport,
    pub precision_exhausted: bool,
}

pub fn run_suite(name: &str, config: &RunConfig) -> SuiteOutcome {
    let body: fn(&RunConfig, &mut SuiteReport) -> Result<()> = match name {
        "ce" => ce,
        "weil" => weil,
        "suspension" => suspension,
        "normalization" => normalization,
        "phi-psi" => phi_psi,
        "lazard" => lazard,
        "shadow" => shadow,
        _ => unreachable!("suite names are validated by the argument parser"),
    };
    let mut report = SuiteReport::new(name);
    let start = Instant::now();
    let result = body(config, &mut report);
    report.timings.elapsed_ms = start.elapsed().as_millis() as u64;
    let precision_exhausted = matches!(result, Err(Error::PrecisionExhausted(_)));
    if let Err(e) = result {
        report.check("completed", false, e.to_string());
    }
    report.finish();
    SuiteOutcome { report, precision_exhausted }
}

/// Each suite draws from its own stream so selections do not perturb each other.
fn rng_for(config: &RunConfig, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(config.seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

fn exterior_poincare(n: usize) -> Vec<usize> {
    let mut poly = vec![1usize];
    for i in 1..=n {
        let deg = 2 * i - 1;
        let mut next = vec![0; poly.len() + deg];
        for (k, c) in poly.iter().enumerate() {
            next[k] += c;
            next[k + deg] += c;
        }
        poly = next;
    }
    poly
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn ce(config: &RunConfig, r: &mut SuiteReport) -> Result<()> {
    let n = config.size;
    let g = LieAlgebra::gl(n);
    let c = ce_complex(&g);
    let betti = c.cohomology_dims();
    let mut expect = exterior_poincare(n);
    expect.resize(n * n + 1, 0);
    r.check("betti", betti == expect, format!("{betti:?}, expected {expect:?}"));
    r.witness("betti", &betti);
    for k in 1..=n {
        let p = primitive_element(&g, k)?;
        let degree = p.degree as i64;
        let closed = c.is_cocycle(degree, &p.to_vector());
        r.check(&format!("d p_{k} = 0"), closed, format!("degree {degree}"));
        if closed {
            let nonzero = !c.class_is_zero(&c.class(degree, p.to_vector())?)?;
            r.check(&format!("[p_{k}] != 0"), nonzero, "");
        }
    }
    Ok(())
}

fn weil(config: &RunConfig, r: &mut SuiteReport) -> Result<()> {
    let g = LieAlgebra::gl(config.size);
    let h = weil_cohomology(&g, config.weil_degree)?;
    r.check("H^0 = 1", h.full[0] == 1, format!("{}", h.full[0]));
    let middle = &h.full[1..h.reliable_below];
    r.check("acyclic below the bound", middle.iter().all(|&d| d == 0), format!("{middle:?}"));
    let mut filtered = Vec::new();
    for (level, dims) in h.filtered.iter().filter(|(l, _)| *l <= 2) {
        let invariants = invariant_polynomials(&g, *level).len();
        let got = dims[2 * level];
        r.check(&format!("H^{}(W>={level}) = invariants", 2 * level), got == invariants, format!("{got} vs {invariants}"));
        filtered.push(json!({"n": level, "dims": dims}));
    }
    r.witness("cohomology", &h.full);
    r.witness("filtered", filtered);
    Ok(())
}

fn suspension(config: &RunConfig, r: &mut SuiteReport) -> Result<()> {
    let n = config.size;
    let g = LieAlgebra::gl(n);
    let s = Suspension::new(&g, config.weil_degree)?;
    let out = s.suspend_polynomial(&power_trace(n, 1))?;
    let p1 = s.ce.class(1, primitive_element(&g, 1)?.to_vector())?;
    r.check("s(Tr) = [p_1]", s.ce.same_class(&out.class, &p1)?, "");
    // suspending a class of degree 2k needs the slice to reach degree 2k + 1
    let top = n.min((config.weil_degree - 1) / 2);
    let mut coefficients = Vec::new();
    for k in 2..=top {
        let cw = s.chern_weil_class(k)?;
        r.check(&format!("p_{k} is hit"), cw.coefficients.iter().any(|c| !c.is_zero()), "");
        let back = s.suspend_polynomial(&cw.polynomial)?;
        let target = s.ce.class(2 * k as i64 - 1, primitive_element(&g, k)?.to_vector())?;
        r.check(&format!("chern_weil_class({k}) round trip"), s.ce.same_class(&back.class, &target)?, "");
        let shown: Vec<String> = cw.coefficients.iter().map(ToString::to_string).collect();
        r.record(&format!("chern_weil coefficients n={k}"), shown.join(", "));
        coefficients.push(json!({"n": k, "coefficients": shown}));
    }
    r.witness("chern_weil", coefficients);
    Ok(())
}

fn normalization(config: &RunConfig, r: &mut SuiteReport) -> Result<()> {
    let level = config.max_level_used;
    let (_, _, _, summary) = normalized_iso_to_ce(config.size, level)?;
    let v = config.size * config.size;
    let expect: Vec<usize> = (0..=level).map(|k| binomial(v, k)).collect();
    r.check("normalized dims", summary.normalized_dims == expect, format!("{:?}", summary.normalized_dims));
    r.check("intertwines with CE", true, "checked entrywise while building the isomorphism");
    r.witness("max_level", level);
    r.witness("level_dims", &summary.level_dims);
    r.witness("quotient_dims", &summary.quotient_dims);
    r.witness("normalized_dims", &summary.normalized_dims);
    Ok(())
}

fn phi_psi(config: &RunConfig, r: &mut SuiteReport) -> Result<()> {
    let rep = compare_phi_psi(config.size, config.max_level_used)?;
    r.check("Phi is a chain map", rep.phi_chain_map, "");
    r.check("signed Psi is a chain map", rep.signed_psi_chain_map, format!("signs {:?}", rep.signs));
    r.record("literal Psi", &rep.literal_homotopy);
    let mut scalars = Vec::new();
    for c in &rep.cohomology {
        let shown = c.scalar.as_ref().map(ToString::to_string);
        if c.dim > 0 {
            let is_sign = c.scalar.as_ref().is_some_and(|s| s.numer().magnitude() == s.denom().magnitude());
            r.check(&format!("H^{} agree up to sign", c.degree), is_sign, shown.clone().unwrap_or_default());
            r.record(&format!("H^{} scalar", c.degree), shown.clone().unwrap_or_default());
        }
        scalars.push(json!({"degree": c.degree, "dim": c.dim, "scalar": shown}));
    }
    r.check("null homotopy (unnormalized)", rep.homotopy_unnormalized, "");
    r.check("null homotopy (normalized)", rep.homotopy_normalized, "");
    r.witness("signs", &rep.signs);
    r.witness("scalars", scalars);
    r.witness("max_level", rep.max_level);
    Ok(())
}

fn lazard(config: &RunConfig, r: &mut SuiteReport) -> Result<()> {
    let rank = config.size * config.size;
    let trunc = Truncation::new(config.p, rank, config.degree_bound, config.m)?;
    let mut min_precision = i64::MAX;
    for i in 0..rank {
        let report = primitivity_check(&partial_element(&trunc, i)?)?;
        min_precision = min_precision.min(report.min_precision.unwrap_or(i64::MAX));
        r.check(&format!("partial {i} primitive"), report.primitive, "");
    }
    r.bound("primitivity residual", min_precision);

    let line = Truncation::new(config.p, 1, config.degree_bound, config.m)?;
    let series = amice_transform(&Distribution::partial(&line, 0)?);
    let log_matches = (1..=config.degree_bound).all(|a| {
        let sign = if a % 2 == 1 { 1 } else { -1 };
        let expect = line.padic(&Rational::new(sign.into(), a.into()));
        series.coefficient(&[a]).is_some_and(|c| (c - &expect).is_zero())
    });
    r.check("Amice(partial) = log(1+T)", log_matches, format!("through degree {}", config.degree_bound));

    // full-support series in rank 9 have ~10^5 terms; rank 4 keeps the check interactive
    let series_rank = rank.min(4);
    let series_trunc = Truncation::new(config.p, series_rank, config.degree_bound, config.m)?;
    let mut rng = rng_for(config, 7);
    let mut agree = 0;
    for _ in 0..50 {
        let f = random_mahler_series(&mut rng, &series_trunc);
        if (0..series_rank).all(|i| derivative_at_identity(&f, i).is_ok_and(|d| d.agree())) {
            agree += 1;
        }
    }
    r.check("derivative routes agree", agree == 50, format!("{agree} of 50 series in rank {series_rank}"));

    let digits = i64::from(config.m) + 2 * i64::from(config.degree_bound);
    let wide = Truncation::new(config.p, 1, config.degree_bound, digits as u32)?;
    let values = (0..=i64::from(config.degree_bound))
        .map(|j| padic_log_to(&PadicNumber::from_int(1 + config.p as i64 * j, config.p, digits + 8), digits))
        .collect::<Result<Vec<_>>>()?;
    let verdict = local_analyticity_test(&MahlerSeries::from_values(&wide, &values)?, &Rational::new(1.into(), 2.into()));
    r.record("log(1 + p lambda) analyticity", verdict.describe());

    let small = config.size.min(2);
    let u = EnvelopingAlgebra::new(LieAlgebra::gl(small), 3);
    StandardComplexes::new(&u, 3)?;
    StandardComplexes::new(&GroupAlgebraModel { rank: small * small, bound: 3 }, 3)?;
    r.check("standard complexes square to zero", true, format!("gl_{small}, degree 3, n <= 3"));
    r.check("antisymmetrization is a chain map", antisymmetrization_is_chain_map(&u, 3)?, format!("gl_{small}"));
    let iso = group_isomorphism_intertwines(&GroupAlgebraModel { rank: small * small, bound: 3 }, 2)?;
    r.check("E and tilde E are isomorphic", iso, "n <= 2");
    r.witness("rank", rank);
    r.witness("analyticity_rate", verdict.rate.map(|q| q.to_string()));
    Ok(())
}

fn shadow(config: &RunConfig, r: &mut SuiteReport) -> Result<()> {
    let mut rng = rng_for(config, 11);
    let rep = regulator_shadow(config.size, config.p, config.m, 25, &mut rng)?;
    r.check("log det is a cocycle", rep.cocycle_pairs_ok == rep.pairs, format!("{} of {} pairs", rep.cocycle_pairs_ok, rep.pairs));
    let n = config.size;
    let p = Rational::from_integer(config.p.into());
    let p_trace: Vec<Rational> = (0..n * n).map(|a| if a / n == a % n { p.clone() } else { Rational::zero() }).collect();
    r.check("linear part is p Tr", rep.linear_part == p_trace, "");
    r.check("chart-normalized derivative is p_1", rep.matches_p1, "");
    r.bound("cocycle residual", rep.residual_precision);
    r.witness("chart_normalized", rep.chart_normalized.iter().map(ToString::to_string).collect::<Vec<_>>());
    Ok(())
}
