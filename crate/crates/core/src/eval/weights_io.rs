//! Versioned text format for evaluator weights.
//!
//! ```text
//! bgw1
//! encoding raw
//! length 53
//! provenance seed=7 episodes=20000 alpha=0.1 lambda=0.7 noise_std=0
//! <one weight per line, full round-trip decimal>
//! ```

use super::evaluator::{LinearEvaluator, Provenance};
use super::features::{Encoding, EncodingError};
use std::fmt::Write as _;
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum WeightsIoError {
    #[error("weights io: {0}")]
    Io(#[from] std::io::Error),
    #[error("weights parse error at line {line}: {what}")]
    Parse { line: usize, what: String },
    #[error("unsupported weights file version '{found}' (expected bgw1)")]
    VersionMismatch { found: String },
    #[error(transparent)]
    Encoding(#[from] EncodingError),
    #[error("weights length {found} does not match declared length {expected}")]
    DimensionMismatch { expected: usize, found: usize },
}

pub fn weights_to_string(evaluator: &LinearEvaluator) -> String {
    let p = &evaluator.provenance;
    let mut s = String::new();
    s.push_str("bgw1\n");
    writeln!(s, "encoding {}", evaluator.encoding().id()).unwrap();
    writeln!(s, "length {}", evaluator.weights().len()).unwrap();
    writeln!(
        s,
        "provenance seed={} episodes={} alpha={} lambda={} noise_std={}",
        p.seed, p.episodes, p.alpha, p.lambda, p.noise_std
    )
    .unwrap();
    for w in evaluator.weights() {
        writeln!(s, "{w}").unwrap();
    }
    s
}

pub fn weights_from_str(text: &str) -> Result<LinearEvaluator, WeightsIoError> {
    let mut lines = text.lines().enumerate();
    let mut next = |what: &str| {
        lines.next().ok_or_else(|| WeightsIoError::Parse {
            line: text.lines().count() + 1,
            what: format!("missing {what}"),
        })
    };

    let (_, version) = next("version line")?;
    if version.trim_end() != "bgw1" {
        return Err(WeightsIoError::VersionMismatch {
            found: version.trim_end().to_string(),
        });
    }
    let (n, enc_line) = next("encoding line")?;
    let encoding = Encoding::parse(field(enc_line, "encoding", n)?)?;
    let (n, len_line) = next("length line")?;
    let length: usize = field(len_line, "length", n)?
        .parse()
        .map_err(|_| WeightsIoError::Parse {
            line: n + 1,
            what: "length is not an integer".into(),
        })?;
    let (n, prov_line) = next("provenance line")?;
    let provenance = parse_provenance(prov_line, n)?;

    let mut weights = Vec::with_capacity(length);
    for (n, line) in lines {
        let line = line.trim_end();
        if line.is_empty() {
            continue;
        }
        let w: f64 = line.parse().map_err(|_| WeightsIoError::Parse {
            line: n + 1,
            what: format!("bad weight '{line}'"),
        })?;
        weights.push(w);
    }
    if weights.len() != length {
        return Err(WeightsIoError::DimensionMismatch {
            expected: length,
            found: weights.len(),
        });
    }
    LinearEvaluator::new(weights, encoding, provenance).map_err(|e| match e {
        super::evaluator::EvalError::DimensionMismatch {
            expected, found, ..
        } => WeightsIoError::DimensionMismatch { expected, found },
    })
}

pub fn save_weights(evaluator: &LinearEvaluator, path: &Path) -> Result<(), WeightsIoError> {
    std::fs::write(path, weights_to_string(evaluator))?;
    Ok(())
}

pub fn load_weights(path: &Path) -> Result<LinearEvaluator, WeightsIoError> {
    let text = std::fs::read_to_string(path)?;
    weights_from_str(&text)
}

fn field<'a>(line: &'a str, key: &str, n: usize) -> Result<&'a str, WeightsIoError> {
    line.strip_prefix(key)
        .and_then(|rest| rest.strip_prefix(' '))
        .map(str::trim_end)
        .ok_or_else(|| WeightsIoError::Parse {
            line: n + 1,
            what: format!("expected '{key} <value>'"),
        })
}

fn parse_provenance(line: &str, n: usize) -> Result<Provenance, WeightsIoError> {
    let body = field(line, "provenance", n)?;
    let mut p = Provenance::default();
    for pair in body.split(' ') {
        let (key, value) = pair.split_once('=').ok_or_else(|| WeightsIoError::Parse {
            line: n + 1,
            what: format!("bad provenance field '{pair}'"),
        })?;
        fn bad(line: usize, pair: &str) -> WeightsIoError {
            WeightsIoError::Parse {
                line,
                what: format!("bad provenance value '{pair}'"),
            }
        }
        match key {
            "seed" => p.seed = value.parse().map_err(|_| bad(n + 1, pair))?,
            "episodes" => p.episodes = value.parse().map_err(|_| bad(n + 1, pair))?,
            "alpha" => p.alpha = value.parse().map_err(|_| bad(n + 1, pair))?,
            "lambda" => p.lambda = value.parse().map_err(|_| bad(n + 1, pair))?,
            "noise_std" => p.noise_std = value.parse().map_err(|_| bad(n + 1, pair))?,
            _ => {} // forward compatible
        }
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> LinearEvaluator {
        let weights: Vec<f64> = (0..53)
            .map(|i| (i as f64 * 0.318309886183790671).sin() * 1.5)
            .collect();
        LinearEvaluator::new(
            weights,
            Encoding::Raw,
            Provenance {
                seed: 7,
                episodes: 123,
                alpha: 0.1,
                lambda: 0.7,
                noise_std: 0.0,
            },
        )
        .unwrap()
    }

    #[test]
    fn round_trip_is_bitwise_exact() {
        let e = sample();
        let text = weights_to_string(&e);
        let back = weights_from_str(&text).unwrap();
        assert_eq!(back.weights(), e.weights());
        assert_eq!(back.encoding(), e.encoding());
        assert_eq!(back.provenance, e.provenance);
        // And stable: formatting again gives the identical file.
        assert_eq!(weights_to_string(&back), text);
    }

    #[test]
    fn wrong_length_is_dimension_mismatch() {
        let e = sample();
        let mut text = weights_to_string(&e);
        text.push_str("0.5\n");
        match weights_from_str(&text) {
            Err(WeightsIoError::DimensionMismatch {
                expected: 53,
                found: 54,
            }) => {}
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unknown_encoding_is_named() {
        let text = weights_to_string(&sample()).replace("encoding raw", "encoding mystery");
        match weights_from_str(&text) {
            Err(WeightsIoError::Encoding(EncodingError::Unknown(id))) => {
                assert_eq!(id, "mystery")
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn version_mismatch_rejected() {
        let text = weights_to_string(&sample()).replace("bgw1", "bgw9");
        assert!(matches!(
            weights_from_str(&text),
            Err(WeightsIoError::VersionMismatch { found }) if found == "bgw9"
        ));
    }

    #[test]
    fn file_round_trip() {
        let dir = std::env::temp_dir().join(format!("bgw-test-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("w.bgw");
        let e = sample();
        save_weights(&e, &path).unwrap();
        let back = load_weights(&path).unwrap();
        assert_eq!(back.weights(), e.weights());
        std::fs::remove_dir_all(&dir).ok();
    }
}
