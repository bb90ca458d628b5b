//! Run configuration and its validation.

use serde::{Deserialize, Serialize};

use regulator_core::arith::is_prime;
use regulator_core::simplicial::InfinitesimalModel;

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    #[serde(rename = "N")]
    pub size: usize,
    pub p: u64,
    pub m: u32,
    #[serde(rename = "D")]
    pub degree_bound: u32,
    pub weil_degree: usize,
    /// Requested cosimplicial level.
    pub max_level: usize,
    /// Level actually used after clamping to the size limit of the model.
    pub max_level_used: usize,
    pub seed: u64,
}

impl RunConfig {
    pub fn new(size: usize, p: u64, m: u32, degree_bound: u32, weil_degree: usize, max_level: usize, seed: u64) -> Result<Self, CliError> {
        if !(1..=3).contains(&size) {
            return Err(CliError::Config(format!("N must be 1, 2 or 3, got {size}")));
        }
        if !is_prime(p) || p == 2 {
            return Err(CliError::Config(format!("p must be an odd prime, got {p}")));
        }
        if m == 0 || degree_bound == 0 || max_level == 0 {
            return Err(CliError::Config("m, D and max-level must be positive".into()));
        }
        if weil_degree < 3 {
            return Err(CliError::Config(format!("weil-degree must be at least 3, got {weil_degree}")));
        }
        let max_level_used = max_level.min(InfinitesimalModel::largest_level(size));
        Ok(RunConfig { size, p, m, degree_bound, weil_degree, max_level, max_level_used, seed })
    }
}
