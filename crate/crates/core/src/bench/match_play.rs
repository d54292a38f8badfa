//! Head-to-head match sessions measured in points per game.

use super::game::{play_game, GameRecord};
use super::players::MatchPlayer;
use crate::engine::mix;
use crate::stats::RunningStats;
use rayon::prelude::*;

const GAME_LANE: u64 = 0x6761_6d65;

#[derive(Debug, Clone, PartialEq)]
pub struct MatchConfig {
    pub games: u32,
    pub seed: u64,
    /// Play games in seed pairs with colors swapped and identical dice
    /// streams; a player against itself then scores exactly 0 ppg.
    pub variance_reduction: bool,
    pub max_plies_per_game: u32,
    pub workers: usize,
}

impl MatchConfig {
    pub fn new(games: u32, seed: u64) -> Self {
        MatchConfig {
            games,
            seed,
            variance_reduction: true,
            max_plies_per_game: crate::engine::DEFAULT_PLY_CAP,
            workers: 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SideTally {
    pub wins: u32,
    pub gammons: u32,
    pub backgammons: u32,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GameLog {
    pub game: u32,
    pub seed: u64,
    pub a_is_white: bool,
    pub plies: u32,
    /// Signed points for player A.
    pub points_a: i8,
    pub capped: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MatchResult {
    pub player_a: String,
    pub player_b: String,
    pub games: u32,
    pub total_points_a: i64,
    pub ppg: f64,
    /// Standard error of the ppg mean over independent units (seed pairs
    /// under variance reduction, single games otherwise). NaN below 2 units.
    pub ppg_se: f64,
    pub tally_a: SideTally,
    pub tally_b: SideTally,
    pub capped_games: u32,
    pub logs: Vec<GameLog>,
    pub config: MatchConfig,
}

pub fn play_match(
    player_a: &dyn MatchPlayer,
    player_b: &dyn MatchPlayer,
    config: &MatchConfig,
) -> MatchResult {
    assert!(config.games >= 1, "match needs at least one game");

    let game_plan = |g: u32| -> (u64, bool) {
        // Color alternates every game; under variance reduction the two
        // games of a pair share one seed (and therefore one dice stream).
        let unit = if config.variance_reduction { g / 2 } else { g };
        (mix(mix(config.seed, GAME_LANE), unit as u64), g % 2 == 0)
    };
    let play_one = |g: u32| -> GameRecord {
        let (seed, a_is_white) = game_plan(g);
        let (white, black) = if a_is_white {
            (player_a, player_b)
        } else {
            (player_b, player_a)
        };
        play_game(white, black, seed, config.max_plies_per_game)
    };

    let records: Vec<GameRecord> = if config.workers > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.workers)
            .build()
            .expect("match worker pool");
        pool.install(|| (0..config.games).into_par_iter().map(play_one).collect())
    } else {
        (0..config.games).map(play_one).collect()
    };

    let mut logs = Vec::with_capacity(records.len());
    let mut tally_a = SideTally::default();
    let mut tally_b = SideTally::default();
    let mut capped_games = 0u32;
    let mut total_points_a = 0i64;
    for (g, record) in records.iter().enumerate() {
        let (seed, a_is_white) = game_plan(g as u32);
        debug_assert_eq!(seed, record.seed);
        let points_a = if a_is_white {
            record.points
        } else {
            -record.points
        };
        total_points_a += points_a as i64;
        if record.capped {
            capped_games += 1;
        } else {
            let (winner_tally, magnitude) = if points_a > 0 {
                (&mut tally_a, points_a)
            } else {
                (&mut tally_b, -points_a)
            };
            winner_tally.wins += 1;
            match magnitude {
                2 => winner_tally.gammons += 1,
                3 => winner_tally.backgammons += 1,
                _ => {}
            }
        }
        logs.push(GameLog {
            game: g as u32,
            seed: record.seed,
            a_is_white,
            plies: record.plies,
            points_a,
            capped: record.capped,
        });
    }

    // SE over independent units.
    let mut units = RunningStats::new();
    if config.variance_reduction {
        for pair in logs.chunks(2) {
            let sum: f64 = pair.iter().map(|l| l.points_a as f64).sum();
            units.push(sum / pair.len() as f64);
        }
    } else {
        for log in &logs {
            units.push(log.points_a as f64);
        }
    }
    let ppg = total_points_a as f64 / config.games as f64;
    let ppg_se = units.standard_error().unwrap_or(f64::NAN);

    MatchResult {
        player_a: player_a.id(),
        player_b: player_b.id(),
        games: config.games,
        total_points_a,
        ppg,
        ppg_se,
        tally_a,
        tally_b,
        capped_games,
        logs,
        config: config.clone(),
    }
}
