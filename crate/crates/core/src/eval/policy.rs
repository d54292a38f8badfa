//! Base policies over candidate afterstates.

use super::evaluator::Evaluator;
use crate::backgammon::Board;
use crate::engine::{BasePolicy, TrialRng};
use rand::Rng;

/// Uniformly random choice among the legal options.
#[derive(Debug, Clone, Copy, Default)]
pub struct RandomPolicy;

impl<S: Sync> BasePolicy<S> for RandomPolicy {
    fn choose(&self, _state: &S, options: &[S], rng: &mut TrialRng) -> usize {
        rng.random_range(0..options.len())
    }
}

/// One-ply greedy policy: picks the afterstate the evaluator likes best for
/// the side that just moved. Options arrive in canonical order, so ties
/// break to the canonically smallest afterstate.
#[derive(Debug, Clone)]
pub struct GreedyPolicy<E> {
    pub evaluator: E,
}

impl<E: Evaluator> GreedyPolicy<E> {
    pub fn new(evaluator: E) -> Self {
        GreedyPolicy { evaluator }
    }
}

impl<E: Evaluator> BasePolicy<Board> for GreedyPolicy<E> {
    fn choose(&self, _state: &Board, options: &[Board], rng: &mut TrialRng) -> usize {
        debug_assert!(!options.is_empty());
        // Afterstates carry the opponent to move; the mover is the other side.
        let mover = options[0].to_move().other();
        let mut best = 0;
        let mut best_value = f64::NEG_INFINITY;
        for (i, option) in options.iter().enumerate() {
            let v = self.evaluator.equity(option, mover, rng);
            if v > best_value {
                best_value = v;
                best = i;
            }
        }
        best
    }
}
