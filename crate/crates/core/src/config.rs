use crate::error::{Error, Result};

/// Walk horizon, classification thresholds, estimator accuracy, and seed.
#[derive(Debug, Clone, PartialEq)]
pub struct WalkConfig {
    /// Exploration factor: walks are capped at `t` steps.
    pub t: usize,
    pub theta_good: f64,
    pub theta_bad: f64,
    pub epsilon: f64,
    pub delta: f64,
    /// Inner walks per sampled source in centrality estimation.
    pub kappa: usize,
    pub seed: u64,
}

impl WalkConfig {
    /// Defaults: `theta_good = 2`, `theta_bad = t / 2`, `epsilon = 0.5`,
    /// `delta = 0.05`, `kappa = 4`, seed 0.
    pub fn new(t: usize) -> Self {
        Self {
            t,
            theta_good: 2.0,
            theta_bad: t as f64 / 2.0,
            epsilon: 0.5,
            delta: 0.05,
            kappa: 4,
            seed: 0,
        }
    }

    pub fn with_thresholds(mut self, theta_good: f64, theta_bad: f64) -> Self {
        self.theta_good = theta_good;
        self.theta_bad = theta_bad;
        self
    }

    pub fn with_accuracy(mut self, epsilon: f64, delta: f64) -> Self {
        self.epsilon = epsilon;
        self.delta = delta;
        self
    }

    pub fn with_kappa(mut self, kappa: usize) -> Self {
        self.kappa = kappa;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.t == 0 {
            return Err(Error::InvalidHorizon);
        }
        check_thresholds(self.theta_good, self.theta_bad, self.t)?;
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return Err(Error::InvalidAccuracy { name: "epsilon", value: self.epsilon });
        }
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return Err(Error::InvalidAccuracy { name: "delta", value: self.delta });
        }
        if self.kappa == 0 {
            return Err(Error::InvalidAccuracy { name: "kappa", value: 0.0 });
        }
        Ok(())
    }

    /// Horizon used for the centrality that drives source selection.
    pub fn centrality_horizon(&self) -> usize {
        self.t.saturating_sub(2)
    }
}

pub(crate) fn check_thresholds(good: f64, bad: f64, t: usize) -> Result<()> {
    if good >= 1.0 && good < bad && bad <= t as f64 {
        Ok(())
    } else {
        Err(Error::ThresholdOrder { good, bad, t })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_follow_t() {
        let cfg = WalkConfig::new(10);
        assert_eq!(cfg.theta_bad, 5.0);
        assert!(cfg.validate().is_ok());
        assert_eq!(cfg.centrality_horizon(), 8);
    }

    #[test]
    fn threshold_order_enforced() {
        assert!(WalkConfig::new(4).validate().is_err());
        assert!(WalkConfig::new(10).with_thresholds(0.5, 5.0).validate().is_err());
        assert!(WalkConfig::new(10).with_thresholds(2.0, 11.0).validate().is_err());
        assert!(WalkConfig::new(4).with_thresholds(1.0, 2.0).validate().is_ok());
    }

    #[test]
    fn accuracy_range_enforced() {
        assert!(WalkConfig::new(10).with_accuracy(1.0, 0.1).validate().is_err());
        assert!(WalkConfig::new(10).with_accuracy(0.5, 0.0).validate().is_err());
    }
}

/// Where bubble radii and centralities come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Backend {
    #[default]
    Exact,
    MonteCarlo,
}

impl std::str::FromStr for Backend {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "exact" => Ok(Backend::Exact),
            "mc" | "montecarlo" => Ok(Backend::MonteCarlo),
            other => Err(format!("unknown backend {other:?}")),
        }
    }
}
