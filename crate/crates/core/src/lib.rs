//! Monte-Carlo rollout decision engine with a backgammon testbed.
//!
//! The crate is organized around a generic rollout engine ([`engine`]) that
//! improves any base policy on a simulatable task by estimating the value of
//! each candidate action from seeded Monte-Carlo trials, pruning hopeless
//! candidates statistically, and picking the argmax. The [`backgammon`]
//! module supplies a complete cubeless backgammon implementation of the task
//! interface, [`eval`] provides base players of graded strength (random,
//! pip-count greedy, TD-trained linear evaluators), and [`bench`] hosts the
//! two evaluation protocols (head-to-head matches in points per game, and
//! equity-loss grading against a rollout-labeled test set).
//!
//! All randomness flows through explicit 64-bit seeds and counter-derived
//! per-trial streams, so every result is reproducible and independent of
//! worker count.

pub mod backgammon;
pub mod bench;
pub mod engine;
pub mod eval;
pub mod stats;
