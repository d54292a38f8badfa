//! Equity evaluators: fixed heuristics and trainable linear nets over board
//! features, plus a Gaussian noise wrapper for deliberately weakened players.

use super::features::{encode_into, Encoding};
use crate::backgammon::{Board, Side};
use crate::engine::TrialRng;
use rand_distr::{Distribution, StandardNormal};
use thiserror::Error;

/// Output clamp: equities live in points units.
pub const EQUITY_MIN: f64 = -3.0;
pub const EQUITY_MAX: f64 = 3.0;

#[derive(Debug, Error, PartialEq)]
pub enum EvalError {
    #[error("weight vector length {found} does not match encoding '{encoding}' (expected {expected})")]
    DimensionMismatch {
        encoding: &'static str,
        expected: usize,
        found: usize,
    },
}

/// Maps positions to equity estimates from a given perspective.
///
/// The random stream is consumed only by noisy evaluators, per evaluation,
/// so results stay deterministic given the stream.
pub trait Evaluator: Send + Sync {
    fn equity(&self, board: &Board, perspective: Side, rng: &mut TrialRng) -> f64;
    fn id(&self) -> String;
}

impl<E: Evaluator + ?Sized> Evaluator for Box<E> {
    fn equity(&self, board: &Board, perspective: Side, rng: &mut TrialRng) -> f64 {
        (**self).equity(board, perspective, rng)
    }
    fn id(&self) -> String {
        (**self).id()
    }
}

impl<E: Evaluator + ?Sized> Evaluator for std::sync::Arc<E> {
    fn equity(&self, board: &Board, perspective: Side, rng: &mut TrialRng) -> f64 {
        (**self).equity(board, perspective, rng)
    }
    fn id(&self) -> String {
        (**self).id()
    }
}

/// Training provenance carried inside weight files.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Provenance {
    pub seed: u64,
    pub episodes: u64,
    pub alpha: f64,
    pub lambda: f64,
    pub noise_std: f64,
}

/// Linear evaluator: weights over a feature encoding plus a bias term,
/// output clamped to [-3, +3].
#[derive(Debug, Clone, PartialEq)]
pub struct LinearEvaluator {
    weights: Vec<f64>,
    encoding: Encoding,
    pub provenance: Provenance,
}

impl LinearEvaluator {
    /// `weights` holds one weight per feature plus the bias last.
    pub fn new(
        weights: Vec<f64>,
        encoding: Encoding,
        provenance: Provenance,
    ) -> Result<Self, EvalError> {
        if weights.len() != encoding.len() + 1 {
            return Err(EvalError::DimensionMismatch {
                encoding: encoding.id(),
                expected: encoding.len() + 1,
                found: weights.len(),
            });
        }
        Ok(LinearEvaluator {
            weights,
            encoding,
            provenance,
        })
    }

    pub fn zero(encoding: Encoding) -> Self {
        LinearEvaluator {
            weights: vec![0.0; encoding.len() + 1],
            encoding,
            provenance: Provenance::default(),
        }
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn encoding(&self) -> Encoding {
        self.encoding
    }

    /// Clamped linear equity for `perspective`.
    pub fn evaluate(&self, board: &Board, perspective: Side) -> f64 {
        self.raw_value(board, perspective)
            .clamp(EQUITY_MIN, EQUITY_MAX)
    }

    /// Unclamped dot product, used by TD training.
    pub fn raw_value(&self, board: &Board, perspective: Side) -> f64 {
        let mut features = [0.0f64; 54];
        let n = self.encoding.len();
        encode_into(board, perspective, self.encoding, &mut features[..n]);
        let mut sum = self.weights[n]; // bias
        for i in 0..n {
            sum += self.weights[i] * features[i];
        }
        sum
    }
}

impl Evaluator for LinearEvaluator {
    fn equity(&self, board: &Board, perspective: Side, _rng: &mut TrialRng) -> f64 {
        self.evaluate(board, perspective)
    }

    fn id(&self) -> String {
        if self.provenance.episodes > 0 {
            format!(
                "td-{}-e{}s{}",
                self.encoding.id(),
                self.provenance.episodes,
                self.provenance.seed
            )
        } else {
            format!("linear-{}", self.encoding.id())
        }
    }
}

/// Pip-count race evaluator: (opponent pips - own pips) / 167.
#[derive(Debug, Clone, Copy, Default)]
pub struct PipEvaluator;

impl Evaluator for PipEvaluator {
    fn equity(&self, board: &Board, perspective: Side, _rng: &mut TrialRng) -> f64 {
        let own = board.pip_count(perspective) as f64;
        let opp = board.pip_count(perspective.other()) as f64;
        ((opp - own) / 167.0).clamp(EQUITY_MIN, EQUITY_MAX)
    }

    fn id(&self) -> String {
        "pip".to_string()
    }
}

/// Adds Gaussian evaluation noise; `noise_std == 0` draws nothing and is
/// behaviorally identical to the inner evaluator.
#[derive(Debug, Clone)]
pub struct NoisyEvaluator<E> {
    pub inner: E,
    pub noise_std: f64,
}

impl<E: Evaluator> NoisyEvaluator<E> {
    pub fn new(inner: E, noise_std: f64) -> Self {
        assert!(noise_std >= 0.0 && noise_std.is_finite());
        NoisyEvaluator { inner, noise_std }
    }
}

impl<E: Evaluator> Evaluator for NoisyEvaluator<E> {
    fn equity(&self, board: &Board, perspective: Side, rng: &mut TrialRng) -> f64 {
        let base = self.inner.equity(board, perspective, rng);
        if self.noise_std == 0.0 {
            return base;
        }
        let noise: f64 = StandardNormal.sample(rng);
        base + self.noise_std * noise
    }

    fn id(&self) -> String {
        format!("{}+noise{}", self.inner.id(), self.noise_std)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::backgammon::testutil::board;
    use crate::backgammon::STARTING;
    use crate::engine::trial_rng;
    use crate::eval::features::encode_features;

    #[test]
    fn zero_evaluator_scores_zero_everywhere() {
        let e = LinearEvaluator::zero(Encoding::Raw);
        let mut rng = trial_rng(0);
        assert_eq!(e.equity(&STARTING, Side::White, &mut rng), 0.0);
        let b = board(&[(25, 2), (3, 13)], &[(20, 15)], Side::Black);
        assert_eq!(e.equity(&b, Side::Black, &mut rng), 0.0);
    }

    #[test]
    fn pip_evaluator_is_zero_at_start_and_antisymmetric() {
        let mut rng = trial_rng(0);
        assert_eq!(PipEvaluator.equity(&STARTING, Side::White, &mut rng), 0.0);
        let b = board(&[(6, 15)], &[(19, 15)], Side::White);
        let w = PipEvaluator.equity(&b, Side::White, &mut rng);
        let bl = PipEvaluator.equity(&b, Side::Black, &mut rng);
        assert!((w + bl).abs() < 1e-15);
        assert!(w.abs() < 1e-15); // symmetric race
    }

    #[test]
    fn linear_evaluate_matches_explicit_dot_product() {
        let enc = Encoding::RawHit;
        let mut rng = trial_rng(17);
        let weights: Vec<f64> = (0..enc.len() + 1)
            .map(|i| ((i * 37 + 11) % 100) as f64 / 100.0 - 0.5)
            .collect();
        let e = LinearEvaluator::new(weights.clone(), enc, Provenance::default()).unwrap();
        let b = board(&[(13, 3), (5, 1), (24, 2)], &[(6, 2), (8, 1), (20, 3)], Side::White);
        for side in [Side::White, Side::Black] {
            let f = encode_features(&b, side, enc);
            let mut expect = weights[enc.len()];
            for (w, x) in weights.iter().zip(&f.values) {
                expect += w * x;
            }
            let got = e.equity(&b, side, &mut rng);
            assert!((got - expect.clamp(-3.0, 3.0)).abs() < 1e-12);
        }
    }

    #[test]
    fn mirrored_board_swapped_perspective_evaluates_identically() {
        let weights: Vec<f64> = (0..53).map(|i| (i as f64) * 0.01 - 0.2).collect();
        let e = LinearEvaluator::new(weights, Encoding::Raw, Provenance::default()).unwrap();
        let b = board(&[(25, 1), (13, 4), (6, 5)], &[(3, 1), (19, 7)], Side::White);
        let mut rng = trial_rng(0);
        assert_eq!(
            e.equity(&b, Side::White, &mut rng),
            e.equity(&b.mirror(), Side::Black, &mut rng)
        );
    }

    #[test]
    fn dimension_mismatch_rejected() {
        let r = LinearEvaluator::new(vec![0.0; 52], Encoding::Raw, Provenance::default());
        assert_eq!(
            r.unwrap_err(),
            EvalError::DimensionMismatch {
                encoding: "raw",
                expected: 53,
                found: 52
            }
        );
    }

    #[test]
    fn zero_noise_wrapper_is_stream_transparent() {
        let e = NoisyEvaluator::new(PipEvaluator, 0.0);
        let mut rng1 = trial_rng(5);
        let mut rng2 = trial_rng(5);
        let v1 = e.equity(&STARTING, Side::White, &mut rng1);
        let v2 = PipEvaluator.equity(&STARTING, Side::White, &mut rng2);
        assert_eq!(v1, v2);
        // The wrapper consumed nothing from the stream.
        use rand::RngCore;
        assert_eq!(rng1.next_u64(), rng2.next_u64());
    }

    #[test]
    fn noise_is_deterministic_given_stream() {
        let e = NoisyEvaluator::new(PipEvaluator, 0.3);
        let a = e.equity(&STARTING, Side::White, &mut trial_rng(9));
        let b = e.equity(&STARTING, Side::White, &mut trial_rng(9));
        assert_eq!(a, b);
        let c = e.equity(&STARTING, Side::White, &mut trial_rng(10));
        assert_ne!(a, c);
    }
}
