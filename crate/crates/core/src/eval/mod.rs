//! Base players of graded strength: random, pip-greedy, and trainable
//! linear evaluators over board features, usable both as rollout base
//! policies (one-ply greedy over afterstates) and as truncated-rollout
//! equity estimators.

mod evaluator;
mod features;
mod policy;
mod td;
mod weights_io;

pub use evaluator::{
    EvalError, Evaluator, LinearEvaluator, NoisyEvaluator, PipEvaluator, Provenance, EQUITY_MAX,
    EQUITY_MIN,
};
pub use features::{encode_features, encode_into, Encoding, EncodingError, FeatureVector};
pub use policy::{GreedyPolicy, RandomPolicy};
pub use td::{td_step, train_td, TracePoint, TrainConfig, TrainError, TrainReport};
pub use weights_io::{
    load_weights, save_weights, weights_from_str, weights_to_string, WeightsIoError,
};
