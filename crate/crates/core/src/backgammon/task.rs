//! Backgammon as a pluggable rollout task.

use super::board::{Board, Side};
use super::dice::DiceRoll;
use super::movegen::{afterstates, legal_afterstates};
use crate::engine::{BasePolicy, TaskModel, TrialRng};
use crate::eval::Evaluator;
use std::sync::Arc;

/// Adapts the backgammon rules to the engine. Values are signed for
/// `decider`, the player choosing among candidates at the decision root.
pub struct BackgammonTask {
    decider: Side,
    evaluator: Option<Arc<dyn Evaluator>>,
}

impl BackgammonTask {
    pub fn new(decider: Side) -> Self {
        BackgammonTask {
            decider,
            evaluator: None,
        }
    }

    /// Attaches the equity estimator used by truncated trials.
    pub fn with_evaluator(mut self, evaluator: Arc<dyn Evaluator>) -> Self {
        self.evaluator = Some(evaluator);
        self
    }

    pub fn decider(&self) -> Side {
        self.decider
    }

    fn sign(&self) -> f64 {
        match self.decider {
            Side::White => 1.0,
            Side::Black => -1.0,
        }
    }
}

impl TaskModel for BackgammonTask {
    type DecisionState = (Board, DiceRoll);
    type AfterState = Board;

    fn candidates(&self, state: &(Board, DiceRoll)) -> Vec<Board> {
        let (board, roll) = state;
        debug_assert_eq!(board.to_move(), self.decider);
        debug_assert!(!board.is_terminal());
        legal_afterstates(board, *roll)
            .afterstates()
            .copied()
            .collect()
    }

    fn candidate_key(&self, after: &Board) -> Vec<u8> {
        after.canonical_key().to_vec()
    }

    fn advance(
        &self,
        after: &Board,
        policy: &dyn BasePolicy<Board>,
        rng: &mut TrialRng,
    ) -> Board {
        let roll = DiceRoll::sample(rng);
        let options = afterstates(after, roll);
        let index = policy.choose(after, &options, rng);
        options[index]
    }

    fn terminal_value(&self, after: &Board) -> Option<f64> {
        after
            .terminal_value()
            .map(|points| self.sign() * points as f64)
    }

    /// Truncated trials evaluate the reached position as an afterstate of
    /// the player who made the last ply, matching the convention the
    /// evaluators are trained under, then sign the estimate for the decider.
    fn estimate_equity(&self, after: &Board, rng: &mut TrialRng) -> Option<f64> {
        let evaluator = self.evaluator.as_ref()?;
        let just_moved = after.to_move().other();
        let value = evaluator.equity(after, just_moved, rng);
        Some(if just_moved == self.decider {
            value
        } else {
            -value
        })
    }

    fn supports_truncation(&self) -> bool {
        self.evaluator.is_some()
    }

    fn value_range(&self) -> (f64, f64) {
        (-3.0, 3.0)
    }
}
