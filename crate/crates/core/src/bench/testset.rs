//! Rollout-labeled test sets: positions in which every legal play has been
//! rolled out to a fixed trial count with no pruning, for equity-loss
//! grading of players.

use crate::backgammon::{
    afterstates, format_position, opening_roll, parse_position, BackgammonTask, Board, DiceRoll,
    STARTING,
};
use crate::engine::{mix, run_trial, schedule_trial_seed, trial_rng, BasePolicy, Termination};
use crate::stats::RunningStats;
use rayon::prelude::*;
use std::fmt::Write as _;
use std::path::Path;
use thiserror::Error;

const SAMPLE_LANE: u64 = 0x7361_6d70;
const ORACLE_LANE: u64 = 0x6f72_6163;

#[derive(Debug, Error)]
pub enum TestSetError {
    #[error("oracle_trials {0} is below the 1000-trial floor")]
    OracleTrialsTooLow(u32),
    #[error("testset io: {0}")]
    Io(#[from] std::io::Error),
    #[error("testset parse error at line {line}: {what}")]
    Parse { line: usize, what: String },
    #[error("testset position invalid at line {line}: {what}")]
    Position { line: usize, what: String },
}

#[derive(Debug, Clone, PartialEq)]
pub struct TestSetEntry {
    pub position: Board,
    pub roll: DiceRoll,
    /// Candidate afterstates in canonical order with their oracle equities,
    /// signed for the side to move in `position`.
    pub candidates: Vec<(Board, f64)>,
}

impl TestSetEntry {
    pub fn best_equity(&self) -> f64 {
        self.candidates
            .iter()
            .map(|(_, e)| *e)
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TestSet {
    pub oracle_policy: String,
    pub oracle_trials: u32,
    pub seed: u64,
    pub entries: Vec<TestSetEntry>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TestSetConfig {
    pub positions: u32,
    pub oracle_trials: u32,
    pub seed: u64,
    /// Positions are sampled from self-play between these plies.
    pub min_ply: u32,
    pub max_ply: u32,
    pub max_trial_plies: u32,
    pub workers: usize,
}

impl TestSetConfig {
    pub fn new(positions: u32, oracle_trials: u32, seed: u64) -> Self {
        TestSetConfig {
            positions,
            oracle_trials,
            seed,
            min_ply: 6,
            max_ply: 40,
            max_trial_plies: crate::engine::DEFAULT_PLY_CAP,
            workers: 1,
        }
    }
}

/// Samples mid-game positions from `sampler` self-play and rolls out every
/// candidate with `oracle_policy`, no pruning, a fixed trial count per
/// candidate. Forced-move positions (a single candidate) are skipped: they
/// carry no grading signal.
pub fn generate_testset(
    config: &TestSetConfig,
    oracle_policy: &dyn BasePolicy<Board>,
    oracle_policy_id: &str,
    sampler: &dyn BasePolicy<Board>,
) -> Result<TestSet, TestSetError> {
    if config.oracle_trials < 1000 {
        return Err(TestSetError::OracleTrialsTooLow(config.oracle_trials));
    }
    let indexes: Vec<u32> = (0..config.positions).collect();
    let build_entry = |&i: &u32| -> TestSetEntry {
        let (position, roll) = sample_position(config, sampler, i);
        label_entry(config, oracle_policy, i, position, roll)
    };
    let entries: Vec<TestSetEntry> = if config.workers > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.workers)
            .build()
            .expect("testset worker pool");
        pool.install(|| indexes.par_iter().map(build_entry).collect())
    } else {
        indexes.iter().map(build_entry).collect()
    };
    Ok(TestSet {
        oracle_policy: oracle_policy_id.to_string(),
        oracle_trials: config.oracle_trials,
        seed: config.seed,
        entries,
    })
}

fn sample_position(
    config: &TestSetConfig,
    sampler: &dyn BasePolicy<Board>,
    index: u32,
) -> (Board, DiceRoll) {
    for attempt in 0u64.. {
        let seed = mix(
            mix(config.seed, SAMPLE_LANE),
            ((index as u64) << 24) | attempt,
        );
        let mut rng = trial_rng(seed);
        let span = config.max_ply - config.min_ply + 1;
        let target_ply = config.min_ply + (rng.next_u32() % span);
        let (first, mut roll) = opening_roll(&mut rng);
        let mut board = STARTING.with_to_move(first);
        for ply in 0..=target_ply {
            if board.is_terminal() {
                break;
            }
            let options = afterstates(&board, roll);
            if ply == target_ply {
                if options.len() >= 2 {
                    return (board, roll);
                }
                break;
            }
            board = options[sampler.choose(&board, &options, &mut rng)];
            roll = DiceRoll::sample(&mut rng);
        }
    }
    unreachable!("position sampling retries forever");
}

fn label_entry(
    config: &TestSetConfig,
    oracle_policy: &dyn BasePolicy<Board>,
    index: u32,
    position: Board,
    roll: DiceRoll,
) -> TestSetEntry {
    let task = BackgammonTask::new(position.to_move());
    let candidates = afterstates(&position, roll);
    let termination = Termination::ToCompletion {
        max_plies: config.max_trial_plies,
    };
    let entry_seed = mix(mix(config.seed, ORACLE_LANE), index as u64);
    let labeled = candidates
        .into_iter()
        .enumerate()
        .map(|(c, candidate)| {
            let mut stats = RunningStats::new();
            for t in 0..config.oracle_trials {
                let seed = schedule_trial_seed(entry_seed, c as u32, t as u64);
                let outcome = run_trial(
                    &candidate,
                    &task,
                    &oracle_policy,
                    &termination,
                    &mut trial_rng(seed),
                )
                .expect("oracle trial failed");
                stats.push(outcome.value);
            }
            (candidate, stats.mean())
        })
        .collect();
    TestSetEntry {
        position,
        roll,
        candidates: labeled,
    }
}

/// Line-oriented text format, LF-terminated, locale-independent decimals.
pub fn testset_to_string(ts: &TestSet) -> String {
    let mut s = String::new();
    s.push_str("bgts1\n");
    writeln!(s, "oracle_policy {}", ts.oracle_policy).unwrap();
    writeln!(s, "oracle_trials {}", ts.oracle_trials).unwrap();
    writeln!(s, "seed {}", ts.seed).unwrap();
    writeln!(s, "entries {}", ts.entries.len()).unwrap();
    for entry in &ts.entries {
        s.push_str("entry\n");
        writeln!(s, "pos {}", format_position(&entry.position)).unwrap();
        writeln!(s, "roll {} {}", entry.roll.d1(), entry.roll.d2()).unwrap();
        for (board, equity) in &entry.candidates {
            writeln!(s, "candidate {} {}", format_position(board), equity).unwrap();
        }
    }
    s
}

pub fn testset_from_str(text: &str) -> Result<TestSet, TestSetError> {
    let mut lines = text.lines().enumerate().peekable();
    let mut expect = |key: &str| -> Result<(usize, String), TestSetError> {
        let (n, line) = lines.next().ok_or(TestSetError::Parse {
            line: 0,
            what: format!("missing {key}"),
        })?;
        if key.is_empty() {
            return Ok((n, line.to_string()));
        }
        line.strip_prefix(key)
            .and_then(|r| r.strip_prefix(' '))
            .map(|r| (n, r.to_string()))
            .ok_or_else(|| TestSetError::Parse {
                line: n + 1,
                what: format!("expected '{key} ...', found '{line}'"),
            })
    };

    let (n, magic) = expect("")?;
    if magic != "bgts1" {
        return Err(TestSetError::Parse {
            line: n + 1,
            what: format!("expected header 'bgts1', found '{magic}'"),
        });
    }
    let (_, oracle_policy) = expect("oracle_policy")?;
    let (n, trials) = expect("oracle_trials")?;
    let oracle_trials: u32 = trials.parse().map_err(|_| TestSetError::Parse {
        line: n + 1,
        what: "oracle_trials is not an integer".into(),
    })?;
    let (n, seed_text) = expect("seed")?;
    let seed: u64 = seed_text.parse().map_err(|_| TestSetError::Parse {
        line: n + 1,
        what: "seed is not an integer".into(),
    })?;
    let (n, count_text) = expect("entries")?;
    let declared: usize = count_text.parse().map_err(|_| TestSetError::Parse {
        line: n + 1,
        what: "entries is not an integer".into(),
    })?;

    let mut entries = Vec::with_capacity(declared);
    let mut lines = lines.map(|(n, l)| (n, l.to_string())).peekable();
    while let Some((n, line)) = lines.next() {
        if line != "entry" {
            return Err(TestSetError::Parse {
                line: n + 1,
                what: format!("expected 'entry', found '{line}'"),
            });
        }
        let (n, pos_line) = lines.next().ok_or(TestSetError::Parse {
            line: n + 2,
            what: "missing pos line".into(),
        })?;
        let pos_text = pos_line
            .strip_prefix("pos ")
            .ok_or_else(|| TestSetError::Parse {
                line: n + 1,
                what: "expected 'pos <bg1 position>'".into(),
            })?;
        let position = parse_position(pos_text).map_err(|e| TestSetError::Position {
            line: n + 1,
            what: e.to_string(),
        })?;
        let (n, roll_line) = lines.next().ok_or(TestSetError::Parse {
            line: n + 2,
            what: "missing roll line".into(),
        })?;
        let roll = parse_roll(&roll_line, n)?;

        let mut candidates = Vec::new();
        while let Some((_, peeked)) = lines.peek() {
            if !peeked.starts_with("candidate ") {
                break;
            }
            let (n, line) = lines.next().unwrap();
            let body = &line["candidate ".len()..];
            let (board_text, equity_text) =
                body.rsplit_once(' ').ok_or_else(|| TestSetError::Parse {
                    line: n + 1,
                    what: "expected 'candidate <bg1 position> <equity>'".into(),
                })?;
            let board = parse_position(board_text).map_err(|e| TestSetError::Position {
                line: n + 1,
                what: e.to_string(),
            })?;
            let equity: f64 = equity_text.parse().map_err(|_| TestSetError::Parse {
                line: n + 1,
                what: format!("bad equity '{equity_text}'"),
            })?;
            if !(-3.0..=3.0).contains(&equity) {
                return Err(TestSetError::Parse {
                    line: n + 1,
                    what: format!("equity {equity} outside [-3, 3]"),
                });
            }
            candidates.push((board, equity));
        }
        if candidates.is_empty() {
            return Err(TestSetError::Parse {
                line: n + 1,
                what: "entry has no candidates".into(),
            });
        }
        entries.push(TestSetEntry {
            position,
            roll,
            candidates,
        });
    }
    if entries.len() != declared {
        return Err(TestSetError::Parse {
            line: text.lines().count(),
            what: format!("declared {declared} entries, found {}", entries.len()),
        });
    }
    Ok(TestSet {
        oracle_policy,
        oracle_trials,
        seed,
        entries,
    })
}

fn parse_roll(line: &str, n: usize) -> Result<DiceRoll, TestSetError> {
    let bad = |what: String| TestSetError::Parse { line: n + 1, what };
    let body = line
        .strip_prefix("roll ")
        .ok_or_else(|| bad("expected 'roll <d1> <d2>'".into()))?;
    let (a, b) = body
        .split_once(' ')
        .ok_or_else(|| bad("expected two dice".into()))?;
    let d1: u8 = a.parse().map_err(|_| bad(format!("bad die '{a}'")))?;
    let d2: u8 = b.parse().map_err(|_| bad(format!("bad die '{b}'")))?;
    DiceRoll::try_new(d1, d2).ok_or_else(|| bad(format!("dice {d1} {d2} out of range")))
}

pub fn save_testset(ts: &TestSet, path: &Path) -> Result<(), TestSetError> {
    std::fs::write(path, testset_to_string(ts))?;
    Ok(())
}

pub fn load_testset(path: &Path) -> Result<TestSet, TestSetError> {
    testset_from_str(&std::fs::read_to_string(path)?)
}

use rand::RngCore;
