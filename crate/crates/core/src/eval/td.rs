//! TD(lambda) self-play training of linear evaluators.
//!
//! Both sides share one weight vector. Every afterstate is evaluated from
//! the mover's perspective (the encoding is perspective-canonical), and each
//! side carries its own eligibility trace: a side's afterstate value is
//! trained toward the value of that same side's next afterstate, and toward
//! the signed terminal points when the game ends. Training is sequential
//! and fully determined by the seed.

use super::evaluator::{EvalError, LinearEvaluator, Provenance};
use super::features::{encode_into, Encoding};
use crate::backgammon::{afterstates, opening_roll, Board, DiceRoll, Side, STARTING};
use crate::engine::{mix, trial_rng};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum TrainError {
    #[error("invalid train config: {0}")]
    Invalid(String),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrainConfig {
    pub episodes: u64,
    /// Learning rate, in (0, 1].
    pub alpha: f64,
    /// Eligibility decay, in [0, 1].
    pub lambda: f64,
    pub seed: u64,
    pub encoding: Encoding,
    /// Recorded for building deliberately weakened (noisy) players from the
    /// trained evaluator; training itself is noise-free.
    pub noise_std: f64,
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig {
            episodes: 20_000,
            alpha: 0.1,
            lambda: 0.7,
            seed: 0,
            encoding: Encoding::Raw,
            noise_std: 0.0,
        }
    }
}

impl TrainConfig {
    pub fn validate(&self) -> Result<(), TrainError> {
        if !(self.alpha > 0.0 && self.alpha <= 1.0) {
            return Err(TrainError::Invalid(format!(
                "alpha must be in (0, 1], got {}",
                self.alpha
            )));
        }
        if !(0.0..=1.0).contains(&self.lambda) {
            return Err(TrainError::Invalid(format!(
                "lambda must be in [0, 1], got {}",
                self.lambda
            )));
        }
        if !(self.noise_std >= 0.0 && self.noise_std.is_finite()) {
            return Err(TrainError::Invalid(format!(
                "noise_std must be a non-negative real, got {}",
                self.noise_std
            )));
        }
        Ok(())
    }
}

/// Per-episode training diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TracePoint {
    pub episode: u64,
    pub mean_abs_td_error: f64,
    pub plies: u32,
    /// Final points from White's perspective; 0 when the episode hit the
    /// safety ply cap.
    pub points: i8,
}

#[derive(Debug, Clone)]
pub struct TrainReport {
    pub evaluator: LinearEvaluator,
    pub trace: Vec<TracePoint>,
}

/// One TD(lambda) update.
///
/// `eligibility <- lambda * eligibility + features`, then
/// `weights <- weights + alpha * (target - value) * eligibility`.
/// Returns the TD error `target - value`.
pub fn td_step(
    weights: &mut [f64],
    features: &[f64],
    value: f64,
    target: f64,
    eligibility: &mut [f64],
    alpha: f64,
    lambda: f64,
) -> Result<f64, EvalError> {
    if features.len() != weights.len() || eligibility.len() != weights.len() {
        return Err(EvalError::DimensionMismatch {
            encoding: "td-step",
            expected: weights.len(),
            found: features.len().max(eligibility.len()),
        });
    }
    let delta = target - value;
    for i in 0..weights.len() {
        eligibility[i] = lambda * eligibility[i] + features[i];
        weights[i] += alpha * delta * eligibility[i];
    }
    Ok(delta)
}

// Self-play games between weak early nets can wander; bound the episode.
const EPISODE_PLY_CAP: u32 = 5000;

/// Trains a linear evaluator by greedy self-play under the current weights.
pub fn train_td(config: &TrainConfig) -> Result<TrainReport, TrainError> {
    config.validate()?;
    let enc = config.encoding;
    let dim = enc.len() + 1;
    let mut weights = vec![0.0; dim];
    let mut trace = Vec::with_capacity(config.episodes.min(1 << 20) as usize);

    let mut feature_buf = vec![0.0; dim];
    for episode in 0..config.episodes {
        let mut rng = trial_rng(mix(config.seed, episode));
        let (first, mut roll) = opening_roll(&mut rng);
        let mut board = STARTING.with_to_move(first);

        let mut last_features: [Option<Vec<f64>>; 2] = [None, None];
        let mut eligibility = [vec![0.0; dim], vec![0.0; dim]];
        let mut abs_err_sum = 0.0;
        let mut updates = 0u32;
        let mut plies = 0u32;
        let mut points = 0i8;

        loop {
            let mover = board.to_move();
            let options = afterstates(&board, roll);

            // Greedy pick under current weights, mover's perspective.
            let mut best = 0;
            let mut best_value = f64::NEG_INFINITY;
            for (i, option) in options.iter().enumerate() {
                let v = raw_value(&weights, option, mover, enc, &mut feature_buf);
                if v > best_value {
                    best_value = v;
                    best = i;
                }
            }
            let chosen = options[best];
            let mut chosen_features = vec![0.0; dim];
            encode_into(&chosen, mover, enc, &mut chosen_features[..dim - 1]);
            chosen_features[dim - 1] = 1.0;

            // Bootstrap the mover's previous afterstate toward this one.
            if let Some(prev) = last_features[mover.index()].take() {
                let value = dot(&weights, &prev);
                let delta = td_step(
                    &mut weights,
                    &prev,
                    value,
                    best_value,
                    &mut eligibility[mover.index()],
                    config.alpha,
                    config.lambda,
                )?;
                abs_err_sum += delta.abs();
                updates += 1;
            }
            last_features[mover.index()] = Some(chosen_features);
            board = chosen;
            plies += 1;

            if let Some(pts) = board.terminal_value() {
                points = pts;
                for side in [Side::White, Side::Black] {
                    if let Some(f) = last_features[side.index()].take() {
                        let target = match side {
                            Side::White => pts as f64,
                            Side::Black => -pts as f64,
                        };
                        let value = dot(&weights, &f);
                        let delta = td_step(
                            &mut weights,
                            &f,
                            value,
                            target,
                            &mut eligibility[side.index()],
                            config.alpha,
                            config.lambda,
                        )?;
                        abs_err_sum += delta.abs();
                        updates += 1;
                    }
                }
                break;
            }
            if plies >= EPISODE_PLY_CAP {
                break;
            }
            roll = DiceRoll::sample(&mut rng);
        }

        trace.push(TracePoint {
            episode,
            mean_abs_td_error: abs_err_sum / updates.max(1) as f64,
            plies,
            points,
        });
    }

    let evaluator = LinearEvaluator::new(
        weights,
        enc,
        Provenance {
            seed: config.seed,
            episodes: config.episodes,
            alpha: config.alpha,
            lambda: config.lambda,
            noise_std: config.noise_std,
        },
    )?;
    Ok(TrainReport { evaluator, trace })
}

fn raw_value(
    weights: &[f64],
    board: &Board,
    perspective: Side,
    enc: Encoding,
    buf: &mut [f64],
) -> f64 {
    let n = enc.len();
    encode_into(board, perspective, enc, &mut buf[..n]);
    let mut sum = weights[n];
    for i in 0..n {
        sum += weights[i] * buf[i];
    }
    sum
}

fn dot(weights: &[f64], features: &[f64]) -> f64 {
    weights
        .iter()
        .zip(features)
        .map(|(w, f)| w * f)
        .sum::<f64>()
}
