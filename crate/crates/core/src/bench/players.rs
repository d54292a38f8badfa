//! Players for matches and grading: plain base policies and rollout-wrapped
//! players, plus the textual player-spec grammar shared by the CLI and the
//! Python bindings.
//!
//! Spec grammar: `random`, `pip`, `linear:<weights-path>`, an optional
//! `+noise=<std>` suffix on evaluator-backed specs, and a `rollout:` prefix
//! wrapping any base spec, e.g. `rollout:pip` or `rollout:linear:w.bgw+noise=0.1`.

use crate::backgammon::{afterstates, BackgammonTask, Board, DiceRoll};
use crate::engine::{decide, trial_rng, BasePolicy, DecisionConfig, Termination};
use crate::eval::{
    load_weights, Evaluator, GreedyPolicy, NoisyEvaluator, PipEvaluator, RandomPolicy,
};
use std::path::PathBuf;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SpecError {
    #[error("bad player spec '{spec}': {what}")]
    Parse { spec: String, what: String },
    #[error("player spec '{spec}': {source}")]
    Weights {
        spec: String,
        source: crate::eval::WeightsIoError,
    },
}

/// A move chooser for full games. `decision_seed` scopes all randomness of
/// one decision (policy noise, rollout trials), so games are reproducible
/// and schedule-independent.
pub trait MatchPlayer: Send + Sync {
    fn id(&self) -> String;
    fn choose_move(&self, board: &Board, roll: DiceRoll, decision_seed: u64) -> Board;
}

/// Direct base-policy player (no search).
pub struct PolicyPlayer {
    policy: Box<dyn BasePolicy<Board> + Send>,
    name: String,
}

impl PolicyPlayer {
    pub fn new(policy: Box<dyn BasePolicy<Board> + Send>, name: String) -> Self {
        PolicyPlayer { policy, name }
    }
}

impl MatchPlayer for PolicyPlayer {
    fn id(&self) -> String {
        self.name.clone()
    }

    fn choose_move(&self, board: &Board, roll: DiceRoll, decision_seed: u64) -> Board {
        let options = afterstates(board, roll);
        let mut rng = trial_rng(decision_seed);
        let index = self.policy.choose(board, &options, &mut rng);
        options[index]
    }
}

/// Rollout controls shared by rollout players wherever they appear.
#[derive(Debug, Clone, PartialEq)]
pub struct RolloutParams {
    pub max_trials_per_candidate: u32,
    pub batch_size: u32,
    pub z: f64,
    pub epsilon: f64,
    /// `None` plays trials to completion under `max_plies`; `Some(k)`
    /// truncates after k plies and consults the base evaluator.
    pub truncate_plies: Option<u32>,
    pub max_plies: u32,
    /// Workers for the decision's own trial pool. Matches parallelize over
    /// games instead, so this stays 1 there.
    pub workers: usize,
}

impl Default for RolloutParams {
    fn default() -> Self {
        RolloutParams {
            max_trials_per_candidate: 100,
            batch_size: 25,
            z: 3.0,
            epsilon: 0.0,
            truncate_plies: None,
            max_plies: crate::engine::DEFAULT_PLY_CAP,
            workers: 1,
        }
    }
}

/// Monte-Carlo player: every move runs a full rollout decision over the
/// base policy.
pub struct RolloutPlayer {
    base_policy: Box<dyn BasePolicy<Board> + Send>,
    evaluator: Option<Arc<dyn Evaluator>>,
    params: RolloutParams,
    name: String,
}

impl RolloutPlayer {
    pub fn new(
        base_policy: Box<dyn BasePolicy<Board> + Send>,
        evaluator: Option<Arc<dyn Evaluator>>,
        params: RolloutParams,
        name: String,
    ) -> Self {
        RolloutPlayer {
            base_policy,
            evaluator,
            params,
            name,
        }
    }

    pub fn decision_config(&self, master_seed: u64) -> DecisionConfig {
        DecisionConfig {
            max_trials_per_candidate: self.params.max_trials_per_candidate,
            batch_size: self.params.batch_size,
            z: self.params.z,
            epsilon: self.params.epsilon,
            termination: match self.params.truncate_plies {
                Some(k) => Termination::Truncated {
                    k_plies: k,
                    evaluator: self
                        .evaluator
                        .as_ref()
                        .map(|e| e.id())
                        .unwrap_or_else(|| "missing".into()),
                },
                None => Termination::ToCompletion {
                    max_plies: self.params.max_plies,
                },
            },
            master_seed,
        }
    }
}

impl MatchPlayer for RolloutPlayer {
    fn id(&self) -> String {
        self.name.clone()
    }

    fn choose_move(&self, board: &Board, roll: DiceRoll, decision_seed: u64) -> Board {
        let mut task = BackgammonTask::new(board.to_move());
        if let Some(e) = &self.evaluator {
            task = task.with_evaluator(Arc::clone(e));
        }
        let config = self.decision_config(decision_seed);
        let decision = decide(
            &(*board, roll),
            &task,
            self.base_policy.as_ref(),
            &config,
            self.params.workers,
        )
        .expect("rollout decision failed");
        *decision.chosen_state()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum BaseSpec {
    Random,
    Pip,
    Linear(PathBuf),
}

/// Parsed player spec.
#[derive(Debug, Clone, PartialEq)]
pub struct PlayerSpec {
    pub base: BaseSpec,
    pub noise_std: f64,
    pub rollout: bool,
    text: String,
}

impl PlayerSpec {
    pub fn parse(spec: &str) -> Result<PlayerSpec, SpecError> {
        let text = spec.to_string();
        let mut rest = spec;
        let rollout = if let Some(r) = rest.strip_prefix("rollout:") {
            rest = r;
            true
        } else {
            false
        };
        let (rest, noise_std) = match rest.rsplit_once("+noise=") {
            Some((head, std)) => {
                let std: f64 = std.parse().map_err(|_| SpecError::Parse {
                    spec: text.clone(),
                    what: format!("noise std '{std}' is not a number"),
                })?;
                if !(std >= 0.0 && std.is_finite()) {
                    return Err(SpecError::Parse {
                        spec: text.clone(),
                        what: "noise std must be a non-negative real".into(),
                    });
                }
                (head, std)
            }
            None => (rest, 0.0),
        };
        let base = match rest {
            "random" => BaseSpec::Random,
            "pip" => BaseSpec::Pip,
            other => match other.strip_prefix("linear:") {
                Some(path) if !path.is_empty() => BaseSpec::Linear(PathBuf::from(path)),
                _ => {
                    return Err(SpecError::Parse {
                        spec: text,
                        what: format!(
                            "unknown base policy '{other}' (expected random, pip, or linear:<path>)"
                        ),
                    })
                }
            },
        };
        if base == BaseSpec::Random && noise_std > 0.0 {
            return Err(SpecError::Parse {
                spec: text,
                what: "noise applies to evaluator-backed policies only".into(),
            });
        }
        Ok(PlayerSpec {
            base,
            noise_std,
            rollout,
            text,
        })
    }

    pub fn text(&self) -> &str {
        &self.text
    }

    /// The base policy's evaluator, noise-wrapped if requested. `None` for
    /// the random policy.
    pub fn build_evaluator(&self) -> Result<Option<Arc<dyn Evaluator>>, SpecError> {
        let plain: Arc<dyn Evaluator> = match &self.base {
            BaseSpec::Random => return Ok(None),
            BaseSpec::Pip => Arc::new(PipEvaluator),
            BaseSpec::Linear(path) => {
                let evaluator = load_weights(path).map_err(|source| SpecError::Weights {
                    spec: self.text.clone(),
                    source,
                })?;
                Arc::new(evaluator)
            }
        };
        if self.noise_std > 0.0 {
            Ok(Some(Arc::new(NoisyEvaluator::new(plain, self.noise_std))))
        } else {
            Ok(Some(plain))
        }
    }

    /// The base policy itself (greedy over the evaluator, or random).
    pub fn build_policy(&self) -> Result<Box<dyn BasePolicy<Board> + Send>, SpecError> {
        Ok(match self.build_evaluator()? {
            None => Box::new(RandomPolicy),
            Some(evaluator) => Box::new(GreedyPolicy::new(evaluator)),
        })
    }

    pub fn build_player(&self, params: &RolloutParams) -> Result<Box<dyn MatchPlayer>, SpecError> {
        let policy = self.build_policy()?;
        Ok(if self.rollout {
            let evaluator = self.build_evaluator()?;
            Box::new(RolloutPlayer::new(
                policy,
                evaluator,
                params.clone(),
                self.text.clone(),
            ))
        } else {
            Box::new(PolicyPlayer::new(policy, self.text.clone()))
        })
    }
}
