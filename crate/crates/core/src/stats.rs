//! Numerically stable running statistics.
//!
//! Single-pass Welford accumulation with a parallel merge, used for the
//! engine's per-candidate value estimates and the harness's reports. The
//! naive sum-of-squares form cancels catastrophically for long streams of
//! near-equal values, which is exactly what rollout outcomes look like.

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum StatsError {
    #[error("confidence interval requires at least 2 samples, have {count}")]
    InsufficientCount { count: u64 },
}

/// Running mean/variance accumulator.
///
/// `m2` is the sum of squared deviations from the current mean; the unbiased
/// sample variance is `m2 / (count - 1)` and is defined only for `count >= 2`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct RunningStats {
    count: u64,
    mean: f64,
    m2: f64,
}

impl RunningStats {
    pub fn new() -> Self {
        Self::default()
    }

    /// Accumulator over a whole sample, for tests and one-shot summaries.
    pub fn from_samples<I: IntoIterator<Item = f64>>(samples: I) -> Self {
        let mut s = Self::new();
        for x in samples {
            s.push(x);
        }
        s
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    pub fn m2(&self) -> f64 {
        self.m2
    }

    /// Unbiased sample variance; `None` for fewer than 2 samples.
    pub fn sample_variance(&self) -> Option<f64> {
        if self.count < 2 {
            None
        } else {
            Some(self.m2 / (self.count - 1) as f64)
        }
    }

    /// Standard error of the mean; `None` for fewer than 2 samples.
    pub fn standard_error(&self) -> Option<f64> {
        self.sample_variance()
            .map(|v| (v / self.count as f64).sqrt())
    }

    /// Welford update.
    pub fn push(&mut self, x: f64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        let delta2 = x - self.mean;
        self.m2 += delta * delta2;
    }

    /// Parallel merge: the result equals pushing `other`'s underlying sample
    /// after `self`'s.
    pub fn merge(&self, other: &RunningStats) -> RunningStats {
        if self.count == 0 {
            return *other;
        }
        if other.count == 0 {
            return *self;
        }
        let count = self.count + other.count;
        let delta = other.mean - self.mean;
        let mean = self.mean + delta * other.count as f64 / count as f64;
        let m2 = self.m2
            + other.m2
            + delta * delta * (self.count as f64 * other.count as f64) / count as f64;
        RunningStats { count, mean, m2 }
    }

    /// Normal-approximation interval `mean ± z·se`. No t-correction: counts
    /// are large wherever intervals gate decisions.
    pub fn confidence_interval(&self, z: f64) -> Result<(f64, f64), StatsError> {
        let se = self
            .standard_error()
            .ok_or(StatsError::InsufficientCount { count: self.count })?;
        Ok((self.mean - z * se, self.mean + z * se))
    }
}
