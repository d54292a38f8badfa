//! Benchmark harness: head-to-head matches in points per game, rollout-
//! labeled test sets with equity-loss grading, and the exactly solvable toy
//! task used as the engine's statistical oracle.

mod game;
mod grade;
mod match_play;
mod players;
mod testset;
pub mod toy;

pub use game::{play_game, GameRecord};
pub use grade::{grade_testset, GradeError, GradeReport, OracleArgmaxPlayer};
pub use match_play::{play_match, GameLog, MatchConfig, MatchResult, SideTally};
pub use players::{
    BaseSpec, MatchPlayer, PlayerSpec, PolicyPlayer, RolloutParams, RolloutPlayer, SpecError,
};
pub use testset::{
    generate_testset, load_testset, save_testset, testset_from_str, testset_to_string, TestSet,
    TestSetConfig, TestSetEntry, TestSetError,
};
