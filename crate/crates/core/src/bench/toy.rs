//! Exactly solvable "dice race" task, used as the engine's statistical
//! oracle: from distance d, each step rolls one die and moves that far
//! toward the finish; the terminal value is the candidate's fixed bonus
//! minus a per-step cost. The expectation is computable in closed form by
//! dynamic programming, so rollout estimates can be checked exactly.

use crate::engine::{BasePolicy, TaskModel, TrialRng};
use rand::Rng;

pub const MAX_DISTANCE: u8 = 30;

/// One racing candidate: remaining distance, a fixed terminal bonus, and
/// steps already taken.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToyAfter {
    pub distance: u8,
    pub bonus: f64,
    pub steps: u32,
}

impl ToyAfter {
    pub fn new(distance: u8, bonus: f64) -> Self {
        assert!(distance <= MAX_DISTANCE);
        ToyAfter {
            distance,
            bonus,
            steps: 0,
        }
    }
}

/// Decision state: the candidate afterstates on offer.
#[derive(Debug, Clone, PartialEq)]
pub struct ToyDecision {
    pub options: Vec<ToyAfter>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiceRace {
    pub step_cost: f64,
}

impl DiceRace {
    pub fn new(step_cost: f64) -> Self {
        DiceRace { step_cost }
    }

    /// Zero-variance variant: trial outcomes equal the candidate bonus.
    pub fn deterministic() -> Self {
        DiceRace { step_cost: 0.0 }
    }
}

impl TaskModel for DiceRace {
    type DecisionState = ToyDecision;
    type AfterState = ToyAfter;

    fn candidates(&self, state: &ToyDecision) -> Vec<ToyAfter> {
        state.options.clone()
    }

    fn candidate_key(&self, after: &ToyAfter) -> Vec<u8> {
        // (distance, bonus) in natural order; the bonus bits are flipped
        // into a lexicographically sortable form.
        let bits = after.bonus.to_bits();
        let sortable = if bits >> 63 == 1 { !bits } else { bits | (1 << 63) };
        let mut key = vec![after.distance];
        key.extend_from_slice(&sortable.to_be_bytes());
        key
    }

    fn advance(
        &self,
        after: &ToyAfter,
        _policy: &dyn BasePolicy<ToyAfter>,
        rng: &mut TrialRng,
    ) -> ToyAfter {
        let die: u8 = rng.random_range(1..=6);
        ToyAfter {
            distance: after.distance.saturating_sub(die),
            bonus: after.bonus,
            steps: after.steps + 1,
        }
    }

    fn terminal_value(&self, after: &ToyAfter) -> Option<f64> {
        if after.distance == 0 {
            Some(after.bonus - self.step_cost * after.steps as f64)
        } else {
            None
        }
    }

    fn value_range(&self) -> (f64, f64) {
        (-10.0, 10.0)
    }
}

/// Expected number of steps to finish from `distance`, by bottom-up
/// dynamic programming over the recurrence
/// `E[d] = 1 + (1/6) * sum_k E[max(0, d - k)]`.
pub fn exact_steps_expectation(distance: u8) -> f64 {
    assert!(distance <= MAX_DISTANCE);
    let mut table = [0.0f64; MAX_DISTANCE as usize + 1];
    for d in 1..=distance as usize {
        let mut sum = 0.0;
        for die in 1..=6usize {
            sum += table[d.saturating_sub(die)];
        }
        table[d] = 1.0 + sum / 6.0;
    }
    table[distance as usize]
}

/// Exact expected trial value of a candidate afterstate.
pub fn toy_exact_value(task: &DiceRace, after: &ToyAfter) -> f64 {
    after.bonus - task.step_cost * (after.steps as f64 + exact_steps_expectation(after.distance))
}
