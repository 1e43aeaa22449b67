use crate::error::{Error, Result};

/// Global estimator constants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EstimatorConfig {
    /// Stopping probability of the walk.
    pub alpha: f64,
    /// Relative-error constant.
    pub c: f64,
    /// Failure probability.
    pub p_f: f64,
    /// Approximation threshold.
    pub delta: f64,
    pub seed: u64,
}

impl Default for EstimatorConfig {
    fn default() -> Self {
        EstimatorConfig { alpha: 0.2, c: 0.1, p_f: 0.1, delta: 0.1, seed: 0 }
    }
}

impl EstimatorConfig {
    pub fn with_delta(delta: f64) -> EstimatorConfig {
        EstimatorConfig { delta, ..Default::default() }
    }

    pub fn validate(&self) -> Result<()> {
        let open01 = |x: f64| x > 0.0 && x < 1.0;
        if !open01(self.alpha) {
            return Err(Error::InvalidParam(format!("alpha = {} not in (0,1)", self.alpha)));
        }
        if !(self.c > 0.0 && self.c < 0.5) {
            return Err(Error::InvalidParam(format!("c = {} not in (0,1/2)", self.c)));
        }
        if !open01(self.p_f) {
            return Err(Error::InvalidParam(format!("p_f = {} not in (0,1)", self.p_f)));
        }
        if !(self.delta > 0.0 && self.delta <= 1.0) {
            return Err(Error::InvalidParam(format!("delta = {} not in (0,1]", self.delta)));
        }
        Ok(())
    }

    /// Walks per unit of 1/δ: 3/(c²p_f), from Chebyshev on a Bernoulli mean.
    pub fn kappa_mc(&self) -> f64 {
        3.0 / (self.c * self.c * self.p_f)
    }

    /// Rounds L with (1−α)^L ≤ x.
    pub fn rounds_for(&self, x: f64) -> usize {
        if x >= 1.0 {
            return 0;
        }
        (x.ln() / (1.0 - self.alpha).ln()).ceil() as usize
    }
}

/// ⌈x⌉ as a count, guarding against float noise just above an integer.
pub(crate) fn ceil_count(x: f64) -> usize {
    let r = x.round();
    if (x - r).abs() <= 1e-9 * r.abs().max(1.0) {
        r as usize
    } else {
        x.ceil() as usize
    }
}

/// ⌊x⌋ as a count, with the same float-noise guard as [`ceil_count`].
pub(crate) fn floor_count(x: f64) -> usize {
    let r = x.round();
    if (x - r).abs() <= 1e-9 * r.abs().max(1.0) {
        r.max(0.0) as usize
    } else {
        x.floor().max(0.0) as usize
    }
}
