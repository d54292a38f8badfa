//! A single Monte-Carlo trial: play an afterstate forward under the base
//! policy until the game ends, a ply cap fires, or a truncation depth is
//! reached.

use super::config::Termination;
use super::seed::TrialRng;
use super::{BasePolicy, EngineError, TaskModel};

/// Result of one trial, signed for the deciding player.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialOutcome {
    pub value: f64,
    pub plies: u32,
    /// True when the value is not an exact terminal outcome (ply cap hit,
    /// or an evaluator estimate in truncated mode).
    pub truncated: bool,
}

pub fn run_trial<M, P>(
    afterstate: &M::AfterState,
    model: &M,
    policy: &P,
    termination: &Termination,
    rng: &mut TrialRng,
) -> Result<TrialOutcome, EngineError>
where
    M: TaskModel,
    P: BasePolicy<M::AfterState> + ?Sized,
{
    match termination {
        Termination::ToCompletion { max_plies } => {
            let mut current = afterstate.clone();
            let mut plies = 0u32;
            loop {
                if let Some(value) = model.terminal_value(&current) {
                    return Ok(TrialOutcome {
                        value,
                        plies,
                        truncated: false,
                    });
                }
                if plies >= *max_plies {
                    return Ok(TrialOutcome {
                        value: 0.0,
                        plies,
                        truncated: true,
                    });
                }
                current = model.advance(&current, &policy, rng);
                plies += 1;
            }
        }
        Termination::Truncated { k_plies, .. } => {
            let mut current = afterstate.clone();
            let mut plies = 0u32;
            while plies < *k_plies {
                if let Some(value) = model.terminal_value(&current) {
                    return Ok(TrialOutcome {
                        value,
                        plies,
                        truncated: false,
                    });
                }
                current = model.advance(&current, &policy, rng);
                plies += 1;
            }
            if let Some(value) = model.terminal_value(&current) {
                return Ok(TrialOutcome {
                    value,
                    plies,
                    truncated: false,
                });
            }
            let value = model
                .estimate_equity(&current, rng)
                .ok_or(EngineError::EvaluatorMissing)?;
            Ok(TrialOutcome {
                value,
                plies,
                truncated: true,
            })
        }
    }
}
