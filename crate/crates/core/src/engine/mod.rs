//! Generic rollout decision engine.
//!
//! Given a state with several candidate afterstates, the engine estimates
//! each candidate's value under a base policy by running seeded Monte-Carlo
//! trials, prunes candidates that are statistically out of the running (or
//! equivalent to the leader) at fixed round boundaries, and returns the
//! candidate with the best estimated mean together with full accounting.
//!
//! Determinism contract: the returned report is a pure function of
//! (state, model, policy, config). Trials draw randomness only from their
//! per-trial stream, results are merged in (candidate, trial) order, and
//! pruning happens only at round boundaries, so worker count and scheduling
//! cannot influence any field.

mod config;
mod prune;
mod seed;
mod trial;

pub use config::{ConfigError, DecisionConfig, Termination, DEFAULT_PLY_CAP};
pub use prune::{prune_step, CandidateEstimate, CandidateStatus};
pub use seed::{mix, schedule_trial_seed, splitmix64, trial_rng, TrialRng};
pub use trial::{run_trial, TrialOutcome};

use rayon::prelude::*;
use std::time::Instant;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum EngineError {
    #[error("state has no candidate actions")]
    NoCandidates,
    #[error(transparent)]
    ConfigInvalid(#[from] ConfigError),
    #[error("truncated termination requires a task evaluator")]
    EvaluatorMissing,
}

/// A pluggable task. Implementations must be safely shareable read-only
/// across workers; all mutation happens on cloned afterstates.
pub trait TaskModel: Sync {
    /// A state in which a decision is being made.
    type DecisionState;
    /// A position after the deciding player's action, from which trials run.
    type AfterState: Clone + Send + Sync;

    /// Candidate afterstates of a decision state. Deterministic for a given
    /// state; order does not matter (the engine sorts by candidate key).
    fn candidates(&self, state: &Self::DecisionState) -> Vec<Self::AfterState>;

    /// Canonical encoding of an afterstate; sorting these assigns candidate
    /// ids and breaks every tie deterministically.
    fn candidate_key(&self, after: &Self::AfterState) -> Vec<u8>;

    /// Sample one chance event and advance by one ply under `policy`.
    /// Never called on a terminal afterstate.
    fn advance(
        &self,
        after: &Self::AfterState,
        policy: &dyn BasePolicy<Self::AfterState>,
        rng: &mut TrialRng,
    ) -> Self::AfterState;

    /// Terminal value signed for the deciding player, or `None` mid-game.
    fn terminal_value(&self, after: &Self::AfterState) -> Option<f64>;

    /// Equity estimate for truncated trials, signed for the deciding player.
    fn estimate_equity(&self, _after: &Self::AfterState, _rng: &mut TrialRng) -> Option<f64> {
        None
    }

    fn supports_truncation(&self) -> bool {
        false
    }

    /// Declared bounds on terminal values.
    fn value_range(&self) -> (f64, f64);
}

/// A base policy: given a state, the legal options, and a random stream,
/// pick one option (by index). Must be pure given those inputs and must not
/// index outside the options.
pub trait BasePolicy<S>: Sync {
    fn choose(&self, state: &S, options: &[S], rng: &mut TrialRng) -> usize;
}

impl<S, P: BasePolicy<S> + ?Sized> BasePolicy<S> for &P {
    fn choose(&self, state: &S, options: &[S], rng: &mut TrialRng) -> usize {
        (**self).choose(state, options, rng)
    }
}

/// Full accounting of one rollout decision.
#[derive(Debug, Clone, PartialEq)]
pub struct DecisionReport {
    /// Candidate id with the best estimated mean among unpruned candidates.
    pub chosen: usize,
    pub candidates: Vec<CandidateEstimate>,
    pub rounds: u32,
    pub total_trials: u64,
    pub total_plies: u64,
    /// Trials that ended at the ply cap or at a truncation depth.
    pub truncated_trials: u64,
    /// Timing only; excluded from determinism comparisons.
    pub wall_secs: f64,
    pub config: DecisionConfig,
}

impl DecisionReport {
    /// Mean simulated trial depth.
    pub fn mean_depth(&self) -> f64 {
        if self.total_trials == 0 {
            0.0
        } else {
            self.total_plies as f64 / self.total_trials as f64
        }
    }
}

/// A decision together with the sorted candidate afterstates the report's
/// ids refer to.
#[derive(Debug, Clone)]
pub struct Decision<S> {
    pub candidates: Vec<S>,
    pub report: DecisionReport,
}

impl<S> Decision<S> {
    pub fn chosen_state(&self) -> &S {
        &self.candidates[self.report.chosen]
    }
}

/// Estimate every candidate of `state` under `policy` and return the argmax.
///
/// A single candidate is returned immediately with zero trials. Trials are
/// allocated round-robin over active candidates only; pruned candidates
/// receive no further work, which is where the CPU saving comes from.
pub fn decide<M, P>(
    state: &M::DecisionState,
    model: &M,
    policy: &P,
    config: &DecisionConfig,
    workers: usize,
) -> Result<Decision<M::AfterState>, EngineError>
where
    M: TaskModel,
    P: BasePolicy<M::AfterState> + ?Sized,
{
    let start = Instant::now();
    config.validate(model.value_range())?;
    if matches!(config.termination, Termination::Truncated { .. }) && !model.supports_truncation()
    {
        return Err(EngineError::EvaluatorMissing);
    }

    let mut keyed: Vec<(Vec<u8>, M::AfterState)> = model
        .candidates(state)
        .into_iter()
        .map(|c| (model.candidate_key(&c), c))
        .collect();
    if keyed.is_empty() {
        return Err(EngineError::NoCandidates);
    }
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    let candidates: Vec<M::AfterState> = keyed.into_iter().map(|(_, c)| c).collect();

    let n = candidates.len();
    let mut estimates: Vec<CandidateEstimate> = (0..n).map(CandidateEstimate::new).collect();
    let mut rounds = 0u32;
    let mut total_trials = 0u64;
    let mut total_plies = 0u64;
    let mut truncated_trials = 0u64;

    if n == 1 {
        estimates[0].status = CandidateStatus::ForcedWinner;
        return Ok(Decision {
            candidates,
            report: DecisionReport {
                chosen: 0,
                candidates: estimates,
                rounds,
                total_trials,
                total_plies,
                truncated_trials,
                wall_secs: start.elapsed().as_secs_f64(),
                config: config.clone(),
            },
        });
    }

    let pool = if workers > 1 {
        Some(
            rayon::ThreadPoolBuilder::new()
                .num_threads(workers)
                .build()
                .expect("worker pool"),
        )
    } else {
        None
    };

    let mut trials_done = 0u32;
    while trials_done < config.max_trials_per_candidate {
        let active: Vec<usize> = estimates
            .iter()
            .filter(|e| e.status == CandidateStatus::Active)
            .map(|e| e.id)
            .collect();
        if active.len() == 1 {
            estimates[active[0]].status = CandidateStatus::ForcedWinner;
            break;
        }
        let batch = config
            .batch_size
            .min(config.max_trials_per_candidate - trials_done);
        rounds += 1;

        let jobs: Vec<(usize, u64)> = active
            .iter()
            .flat_map(|&c| (0..batch).map(move |k| (c, (trials_done + k) as u64)))
            .collect();
        let run_one = |&(c, t): &(usize, u64)| -> Result<TrialOutcome, EngineError> {
            let seed = schedule_trial_seed(config.master_seed, c as u32, t);
            let mut rng = trial_rng(seed);
            run_trial(&candidates[c], model, policy, &config.termination, &mut rng)
        };
        let outcomes: Vec<TrialOutcome> = match &pool {
            Some(pool) => {
                pool.install(|| jobs.par_iter().map(run_one).collect::<Result<Vec<_>, _>>())?
            }
            None => jobs.iter().map(run_one).collect::<Result<Vec<_>, _>>()?,
        };
        // Merge in (candidate, trial) order: `jobs` is already ordered.
        for (&(c, _), outcome) in jobs.iter().zip(&outcomes) {
            estimates[c].stats.push(outcome.value);
            total_trials += 1;
            total_plies += outcome.plies as u64;
            if outcome.truncated {
                truncated_trials += 1;
            }
        }
        trials_done += batch;

        // Checkpoints only at full-batch round boundaries; pruning after the
        // final round cannot change the argmax.
        if trials_done < config.max_trials_per_candidate && batch == config.batch_size {
            prune_step(&mut estimates, config.z, config.epsilon, rounds);
        }
    }

    let chosen = estimates
        .iter()
        .filter(|e| !e.status.is_pruned())
        .fold(None::<&CandidateEstimate>, |best, e| match best {
            Some(b) if b.stats.mean() >= e.stats.mean() => Some(b),
            _ => Some(e),
        })
        .map(|e| e.id)
        .expect("at least one unpruned candidate");

    Ok(Decision {
        candidates,
        report: DecisionReport {
            chosen,
            candidates: estimates,
            rounds,
            total_trials,
            total_plies,
            truncated_trials,
            wall_secs: start.elapsed().as_secs_f64(),
            config: config.clone(),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Minimal deterministic task: candidates carry fixed values; a trial
    /// terminates immediately with that value.
    struct FixedValueTask;

    impl TaskModel for FixedValueTask {
        type DecisionState = Vec<f64>;
        type AfterState = (u32, f64);

        fn candidates(&self, state: &Vec<f64>) -> Vec<(u32, f64)> {
            state.iter().enumerate().map(|(i, &v)| (i as u32, v)).collect()
        }

        fn candidate_key(&self, after: &(u32, f64)) -> Vec<u8> {
            after.0.to_be_bytes().to_vec()
        }

        fn advance(
            &self,
            _after: &(u32, f64),
            _policy: &dyn BasePolicy<(u32, f64)>,
            _rng: &mut TrialRng,
        ) -> (u32, f64) {
            unreachable!("fixed-value afterstates are terminal")
        }

        fn terminal_value(&self, after: &(u32, f64)) -> Option<f64> {
            Some(after.1)
        }

        fn value_range(&self) -> (f64, f64) {
            (-3.0, 3.0)
        }
    }

    struct NoPolicy;
    impl BasePolicy<(u32, f64)> for NoPolicy {
        fn choose(&self, _: &(u32, f64), _: &[(u32, f64)], _: &mut TrialRng) -> usize {
            0
        }
    }

    #[test]
    fn single_candidate_is_forced_with_zero_trials() {
        let d = decide(
            &vec![0.5],
            &FixedValueTask,
            &NoPolicy,
            &DecisionConfig::new(100, 10, 7),
            1,
        )
        .unwrap();
        assert_eq!(d.report.chosen, 0);
        assert_eq!(d.report.total_trials, 0);
        assert_eq!(d.report.rounds, 0);
        assert_eq!(
            d.report.candidates[0].status,
            CandidateStatus::ForcedWinner
        );
    }

    #[test]
    fn zero_variance_separation_prunes_loser_in_round_one() {
        let d = decide(
            &vec![1.0, -1.0],
            &FixedValueTask,
            &NoPolicy,
            &DecisionConfig::new(100, 10, 7),
            1,
        )
        .unwrap();
        assert_eq!(d.report.chosen, 0);
        assert_eq!(
            d.report.candidates[1].status,
            CandidateStatus::PrunedConfidence
        );
        assert_eq!(d.report.candidates[1].pruned_at_round, Some(1));
        assert_eq!(
            d.report.candidates[0].status,
            CandidateStatus::ForcedWinner
        );
        // One round for each candidate, then the survivor stops early.
        assert_eq!(d.report.total_trials, 20);
    }

    #[test]
    fn argmax_soundness_on_zero_variance_values() {
        let values = vec![-0.2, 0.9, 0.3, 0.89, -2.5];
        for max_trials in [1, 3, 50] {
            let mut config = DecisionConfig::new(max_trials, max_trials.min(2), 123);
            config.batch_size = config.batch_size.min(max_trials);
            let d = decide(&values, &FixedValueTask, &NoPolicy, &config, 1).unwrap();
            assert_eq!(d.report.chosen, 1, "max_trials={max_trials}");
        }
    }

    #[test]
    fn no_candidates_is_an_error() {
        let r = decide(
            &vec![],
            &FixedValueTask,
            &NoPolicy,
            &DecisionConfig::new(10, 5, 0),
            1,
        );
        assert_eq!(r.unwrap_err(), EngineError::NoCandidates);
    }

    #[test]
    fn invalid_config_is_an_error() {
        let r = decide(
            &vec![1.0, 2.0],
            &FixedValueTask,
            &NoPolicy,
            &DecisionConfig::new(5, 10, 0),
            1,
        );
        assert!(matches!(r.unwrap_err(), EngineError::ConfigInvalid(_)));
    }

    #[test]
    fn truncation_without_evaluator_is_an_error() {
        let mut config = DecisionConfig::new(10, 5, 0);
        config.termination = Termination::Truncated {
            k_plies: 3,
            evaluator: "none".into(),
        };
        let r = decide(&vec![1.0, 2.0], &FixedValueTask, &NoPolicy, &config, 1);
        assert_eq!(r.unwrap_err(), EngineError::EvaluatorMissing);
    }

    #[test]
    fn tie_breaks_to_lowest_candidate_id() {
        let d = decide(
            &vec![0.7, 0.7, 0.7],
            &FixedValueTask,
            &NoPolicy,
            &DecisionConfig::new(4, 2, 9),
            1,
        )
        .unwrap();
        assert_eq!(d.report.chosen, 0);
    }
}
