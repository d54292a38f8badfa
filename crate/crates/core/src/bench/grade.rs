//! Equity-loss grading of a player's move decisions against a
//! rollout-labeled test set.

use super::players::MatchPlayer;
use super::testset::{TestSet, TestSetEntry};
use crate::backgammon::{afterstates, Board};
use crate::engine::mix;
use rayon::prelude::*;
use thiserror::Error;

const GRADE_LANE: u64 = 0x6772_6164;

#[derive(Debug, Error, PartialEq)]
pub enum GradeError {
    #[error(
        "entry {entry}: stored candidates do not match move generation (stale testset?)"
    )]
    CandidateMismatch { entry: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct GradeReport {
    pub player: String,
    /// Oracle that labeled the test set; gradings of that same player are
    /// self-graded and should be read with suspicion.
    pub oracle_policy: String,
    pub entries: u32,
    /// Average equity loss per decision, in points-per-game units.
    pub avg_loss: f64,
    /// Per-entry losses in test-set order.
    pub losses: Vec<f64>,
}

impl GradeReport {
    /// Ratio of a base player's loss to this (improved) player's loss.
    pub fn ratio_against_base(&self, base: &GradeReport) -> f64 {
        base.avg_loss / self.avg_loss
    }

    pub fn is_self_graded(&self) -> bool {
        self.player == self.oracle_policy
    }
}

/// Grades every entry: the player picks a move (with a decision seed derived
/// from the entry content, so grading is invariant under entry reordering),
/// and the loss is the oracle equity gap to the best candidate.
pub fn grade_testset(
    player: &dyn MatchPlayer,
    testset: &TestSet,
    workers: usize,
) -> Result<GradeReport, GradeError> {
    let grade_one = |(i, entry): (usize, &TestSetEntry)| -> Result<f64, GradeError> {
        let regenerated = afterstates(&entry.position, entry.roll);
        if regenerated.len() != entry.candidates.len()
            || regenerated
                .iter()
                .zip(&entry.candidates)
                .any(|(a, (b, _))| a != b)
        {
            return Err(GradeError::CandidateMismatch { entry: i });
        }
        let seed = entry_decision_seed(entry);
        let choice = player.choose_move(&entry.position, entry.roll, seed);
        let chosen_equity = entry
            .candidates
            .iter()
            .find(|(b, _)| *b == choice)
            .map(|(_, e)| *e)
            .ok_or(GradeError::CandidateMismatch { entry: i })?;
        Ok(entry.best_equity() - chosen_equity)
    };

    let indexed: Vec<(usize, &TestSetEntry)> = testset.entries.iter().enumerate().collect();
    let losses: Vec<f64> = if workers > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .expect("grading worker pool");
        pool.install(|| {
            indexed
                .par_iter()
                .map(|e| grade_one(*e))
                .collect::<Result<Vec<_>, _>>()
        })?
    } else {
        indexed
            .iter()
            .map(|e| grade_one(*e))
            .collect::<Result<Vec<_>, _>>()?
    };

    // Permutation-invariant mean: sum in value order, not entry order.
    let mut ordered = losses.clone();
    ordered.sort_by(f64::total_cmp);
    let avg_loss = if ordered.is_empty() {
        0.0
    } else {
        ordered.iter().sum::<f64>() / ordered.len() as f64
    };

    Ok(GradeReport {
        player: player.id(),
        oracle_policy: testset.oracle_policy.clone(),
        entries: losses.len() as u32,
        avg_loss,
        losses,
    })
}

/// Decision seed derived from the entry content alone.
fn entry_decision_seed(entry: &TestSetEntry) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325; // FNV-1a
    let mut eat = |byte: u8| {
        h ^= byte as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    };
    for b in entry.position.canonical_key() {
        eat(b);
    }
    eat(entry.roll.d1());
    eat(entry.roll.d2());
    mix(h, GRADE_LANE)
}

/// The player that answers every entry with the oracle's own argmax; useful
/// as a grading identity check.
pub struct OracleArgmaxPlayer<'a> {
    pub testset: &'a TestSet,
}

impl MatchPlayer for OracleArgmaxPlayer<'_> {
    fn id(&self) -> String {
        format!("oracle-argmax({})", self.testset.oracle_policy)
    }

    fn choose_move(&self, board: &Board, roll: crate::backgammon::DiceRoll, _seed: u64) -> Board {
        let entry = self
            .testset
            .entries
            .iter()
            .find(|e| e.position == *board && e.roll == roll)
            .expect("position not in testset");
        entry
            .candidates
            .iter()
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .map(|(b, _)| *b)
            .unwrap()
    }
}
