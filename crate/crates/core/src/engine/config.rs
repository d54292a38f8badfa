//! Decision tunables.

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ConfigError {
    #[error("invalid decision config: {0}")]
    Invalid(String),
}

/// How a trial ends.
#[derive(Debug, Clone, PartialEq)]
pub enum Termination {
    /// Play to the end of the game; trials still running after `max_plies`
    /// plies score 0 and are flagged truncated. Games of random-ish policies
    /// can run extremely long, and the cap biases all candidates equally.
    ToCompletion { max_plies: u32 },
    /// Take exactly `k_plies` plies (fewer if the game ends first), then
    /// substitute the named evaluator's equity estimate for the outcome.
    Truncated { k_plies: u32, evaluator: String },
}

pub const DEFAULT_PLY_CAP: u32 = 2000;

impl Default for Termination {
    fn default() -> Self {
        Termination::ToCompletion {
            max_plies: DEFAULT_PLY_CAP,
        }
    }
}

/// All tunables of one rollout decision.
#[derive(Debug, Clone, PartialEq)]
pub struct DecisionConfig {
    /// Trial budget per candidate.
    pub max_trials_per_candidate: u32,
    /// Trials per candidate between pruning checkpoints.
    pub batch_size: u32,
    /// Confidence multiplier for the pruning bounds; 0 disables the
    /// confidence component entirely only together with epsilon = 0.
    pub z: f64,
    /// Equivalence margin in equity units; candidates within epsilon of the
    /// best are considered interchangeable and pruned.
    pub epsilon: f64,
    pub termination: Termination,
    pub master_seed: u64,
}

impl DecisionConfig {
    pub fn new(max_trials_per_candidate: u32, batch_size: u32, master_seed: u64) -> Self {
        DecisionConfig {
            max_trials_per_candidate,
            batch_size,
            z: 3.0,
            epsilon: 0.0,
            termination: Termination::default(),
            master_seed,
        }
    }

    /// `value_range` is the task's declared terminal-value range.
    pub fn validate(&self, value_range: (f64, f64)) -> Result<(), ConfigError> {
        let fail = |what: String| Err(ConfigError::Invalid(what));
        if self.max_trials_per_candidate == 0 {
            return fail("max_trials_per_candidate must be positive".into());
        }
        if self.batch_size == 0 {
            return fail("batch_size must be positive".into());
        }
        if self.batch_size > self.max_trials_per_candidate {
            return fail(format!(
                "batch_size {} exceeds max_trials_per_candidate {}",
                self.batch_size, self.max_trials_per_candidate
            ));
        }
        if !self.z.is_finite() || self.z < 0.0 {
            return fail(format!("z must be a non-negative real, got {}", self.z));
        }
        let width = value_range.1 - value_range.0;
        if !self.epsilon.is_finite() || self.epsilon < 0.0 || self.epsilon >= width {
            return fail(format!(
                "epsilon must lie in [0, {width}) (task value range width), got {}",
                self.epsilon
            ));
        }
        match &self.termination {
            Termination::ToCompletion { max_plies } if *max_plies == 0 => {
                fail("max_plies must be positive".into())
            }
            Termination::Truncated { k_plies, .. } if *k_plies == 0 => {
                fail("k_plies must be positive".into())
            }
            _ => Ok(()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_degenerate_values() {
        let range = (-3.0, 3.0);
        assert!(DecisionConfig::new(100, 10, 0).validate(range).is_ok());
        assert!(DecisionConfig::new(0, 10, 0).validate(range).is_err());
        assert!(DecisionConfig::new(5, 10, 0).validate(range).is_err());
        let mut c = DecisionConfig::new(100, 10, 0);
        c.epsilon = 6.0;
        assert!(c.validate(range).is_err());
        c.epsilon = -0.1;
        assert!(c.validate(range).is_err());
        c.epsilon = 0.0;
        c.z = f64::NAN;
        assert!(c.validate(range).is_err());
    }
}
