use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Numerical thresholds shared by classification and the solvers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ToleranceConfig {
    /// A quantity is zero when `|value| ≤ zero_rel · scale`.
    pub zero_rel: f64,
    /// Singular values below `rank_threshold · σ_max` count as zero.
    pub rank_threshold: f64,
    pub newton_residual: f64,
    pub newton_max_iter: usize,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self { zero_rel: 1e-7, rank_threshold: 1e-8, newton_residual: 1e-10, newton_max_iter: 50 }
    }
}

/// A quantity must exceed this multiple of its zero threshold to count as nonzero.
pub const NONZERO_FACTOR: f64 = 10.0;

/// Newton steps shorter than this count as converged.
pub const NEWTON_STEP_TOL: f64 = 1e-12;

/// Roots closer than this are merged.
pub const DEDUP_RADIUS: f64 = 1e-6;

impl ToleranceConfig {
    pub fn validate(&self) -> Result<()> {
        let positive =
            self.zero_rel > 0.0 && self.rank_threshold > 0.0 && self.newton_residual > 0.0 && self.newton_max_iter > 0;
        if !positive || self.zero_rel >= 1.0 {
            return Err(Error::InvalidSpec(format!("invalid tolerances {self:?}")));
        }
        Ok(())
    }
}
