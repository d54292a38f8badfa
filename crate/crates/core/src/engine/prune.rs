//! Statistical pruning of candidate actions.
//!
//! One rule covers both prunings: a candidate is dropped when its upper
//! confidence bound falls below the best candidate's lower bound plus the
//! equivalence margin. With epsilon = 0 this is pure confidence pruning
//! (the candidate is unlikely to be best); with epsilon > 0 it also drops
//! candidates whose values are close enough to the best to be considered
//! interchangeable.

use crate::stats::RunningStats;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CandidateStatus {
    Active,
    PrunedConfidence,
    PrunedEquivalent,
    /// The only candidate left standing (forced move, or sole pruning
    /// survivor); receives no further trials.
    ForcedWinner,
}

impl CandidateStatus {
    pub fn is_pruned(&self) -> bool {
        matches!(
            self,
            CandidateStatus::PrunedConfidence | CandidateStatus::PrunedEquivalent
        )
    }
}

impl fmt::Display for CandidateStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CandidateStatus::Active => "active",
            CandidateStatus::PrunedConfidence => "pruned_confidence",
            CandidateStatus::PrunedEquivalent => "pruned_equivalent",
            CandidateStatus::ForcedWinner => "forced_winner",
        };
        f.write_str(s)
    }
}

/// Running Monte-Carlo estimate of one candidate's value.
#[derive(Debug, Clone, PartialEq)]
pub struct CandidateEstimate {
    pub id: usize,
    pub stats: RunningStats,
    pub status: CandidateStatus,
    pub pruned_at_round: Option<u32>,
}

impl CandidateEstimate {
    pub fn new(id: usize) -> Self {
        CandidateEstimate {
            id,
            stats: RunningStats::new(),
            status: CandidateStatus::Active,
            pruned_at_round: None,
        }
    }
}

/// One pruning checkpoint over the current estimates.
///
/// Candidates with fewer than 2 trials are never pruned (their variance is
/// undefined); the best candidate is never pruned. No-op when fewer than two
/// candidates are active. `round` is recorded on newly pruned candidates.
pub fn prune_step(estimates: &mut [CandidateEstimate], z: f64, epsilon: f64, round: u32) {
    let active: Vec<usize> = estimates
        .iter()
        .enumerate()
        .filter(|(_, e)| e.status == CandidateStatus::Active)
        .map(|(i, _)| i)
        .collect();
    if active.len() < 2 {
        return;
    }
    // Best by mean, lowest id on ties.
    let best = active
        .iter()
        .copied()
        .fold(active[0], |acc, i| {
            if estimates[i].stats.mean() > estimates[acc].stats.mean() {
                i
            } else {
                acc
            }
        });
    let Some(se_best) = estimates[best].stats.standard_error() else {
        return;
    };
    let lcb_best = estimates[best].stats.mean() - z * se_best;

    for i in active {
        if i == best {
            continue;
        }
        let est = &mut estimates[i];
        let Some(se) = est.stats.standard_error() else {
            continue;
        };
        let ucb = est.stats.mean() + z * se;
        if ucb < lcb_best + epsilon {
            est.status = if ucb < lcb_best {
                CandidateStatus::PrunedConfidence
            } else {
                CandidateStatus::PrunedEquivalent
            };
            est.pruned_at_round = Some(round);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Estimate with a given mean and standard error, via a synthetic
    /// two-point sample: se = sqrt(var/n) with n = 2, var = 2*d^2 where the
    /// samples are mean +/- d, so d = se.
    fn est(id: usize, mean: f64, se: f64) -> CandidateEstimate {
        let mut e = CandidateEstimate::new(id);
        e.stats.push(mean - se);
        e.stats.push(mean + se);
        assert!((e.stats.standard_error().unwrap() - se).abs() < 1e-12);
        e
    }

    #[test]
    fn clear_separation_prunes_on_confidence() {
        let mut ests = vec![est(0, 0.5, 0.01), est(1, 0.4, 0.01)];
        prune_step(&mut ests, 3.0, 0.0, 1);
        assert_eq!(ests[0].status, CandidateStatus::Active);
        assert_eq!(ests[1].status, CandidateStatus::PrunedConfidence);
        assert_eq!(ests[1].pruned_at_round, Some(1));
    }

    #[test]
    fn identical_stats_prune_nothing() {
        let mut ests = vec![est(0, 0.4, 0.02), est(1, 0.4, 0.02)];
        prune_step(&mut ests, 3.0, 0.0, 1);
        assert!(ests.iter().all(|e| e.status == CandidateStatus::Active));
    }

    #[test]
    fn near_equal_pruned_as_equivalent() {
        // Fully separated intervals prune on confidence even when the margin
        // would also cover them: UCB(1) = 0.486 < LCB(0) = 0.494.
        let mut ests = vec![est(0, 0.50, 0.002), est(1, 0.48, 0.002)];
        prune_step(&mut ests, 3.0, 0.05, 1);
        assert_eq!(ests[1].status, CandidateStatus::PrunedConfidence);

        // Overlapping intervals inside the margin prune as equivalent:
        // UCB(1) = 0.52 >= LCB(0) = 0.47, and 0.52 < 0.47 + 0.08.
        let mut ests = vec![est(0, 0.50, 0.01), est(1, 0.49, 0.01)];
        prune_step(&mut ests, 3.0, 0.08, 2);
        assert_eq!(ests[1].status, CandidateStatus::PrunedEquivalent);
        assert_eq!(ests[1].pruned_at_round, Some(2));
    }

    #[test]
    fn best_is_never_pruned_and_single_active_is_noop() {
        let mut ests = vec![est(0, 0.5, 0.0), est(1, 0.5, 0.0)];
        prune_step(&mut ests, 0.0, 0.0, 1);
        // Zero widths, equal means: candidate 0 is best (lowest id), 1 has
        // ucb = lcb_best, not strictly below.
        assert!(ests.iter().all(|e| e.status == CandidateStatus::Active));

        let mut one = vec![est(0, 0.1, 0.01)];
        prune_step(&mut one, 3.0, 0.0, 1);
        assert_eq!(one[0].status, CandidateStatus::Active);
    }

    #[test]
    fn under_two_trials_is_untouchable() {
        let mut a = CandidateEstimate::new(0);
        a.stats.push(1.0);
        let mut ests = vec![est(1, 5.0, 0.001), a];
        prune_step(&mut ests, 4.0, 0.0, 1);
        assert_eq!(ests[1].status, CandidateStatus::Active);
    }
}
