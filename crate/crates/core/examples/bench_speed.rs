use rollout_core::backgammon::*;
use rollout_core::bench::{play_game, PlayerSpec, RolloutParams};
use rollout_core::engine::*;
use rollout_core::eval::{GreedyPolicy, PipEvaluator};
use std::time::Instant;

fn main() {
    let mut boards = vec![STARTING];
    let mut rng = trial_rng(1);
    for _ in 0..200 {
        boards.push(random_board(&mut rng));
    }
    let t = Instant::now();
    let mut n = 0u64;
    for b in &boards {
        for roll in distinct_rolls() {
            n += afterstates(b, roll).len() as u64;
        }
    }
    let dt = t.elapsed().as_secs_f64();
    println!("movegen: {} calls, {:.2}us/call, {n} afterstates", boards.len() * 21, dt / (boards.len() * 21) as f64 * 1e6);

    let spec = PlayerSpec::parse("pip").unwrap();
    let p = spec.build_player(&RolloutParams::default()).unwrap();
    let t = Instant::now();
    let mut plies = 0u64;
    for seed in 0..40u64 {
        let r = play_game(p.as_ref(), p.as_ref(), seed, 2000);
        plies += r.plies as u64;
    }
    let dt = t.elapsed().as_secs_f64();
    println!("pip game: {:.1} ms/game, {:.2} us/ply, avg {} plies", dt / 40.0 * 1e3, dt / plies as f64 * 1e6, plies / 40);

    let task = BackgammonTask::new(Side::White);
    let policy = GreedyPolicy::new(PipEvaluator);
    let after = afterstates(&STARTING, DiceRoll::new(3, 1))[0];
    let term = Termination::ToCompletion { max_plies: 2000 };
    let t = Instant::now();
    let mut tp = 0u64;
    for s in 0..2000u64 {
        let o = run_trial(&after, &task, &policy, &term, &mut trial_rng(s)).unwrap();
        tp += o.plies as u64;
    }
    let dt = t.elapsed().as_secs_f64();
    println!("pip trial: {:.3} ms/trial, {:.2} us/ply, avg {} plies", dt / 2000.0 * 1e3, dt / tp as f64 * 1e6, tp / 2000);
}
