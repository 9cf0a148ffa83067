use std::path::PathBuf;

use clap::{Args, Subcommand, ValueEnum};
use pentagram::game::{brute_force_optimal, pentagram, NUM_VERTICES};
use pentagram::mpp::quantum_round;
use pentagram::rng::stream;
use pentagram::stats::{wilson_interval, Z_99};
use pentagram::{win_probability, DeterministicStrategy, EdgeId, GameParams, Player};
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{CliError, CliResult};
use crate::{Ctx, Output};

#[derive(Debug, Subcommand, Serialize)]
#[serde(untagged)]
pub enum GameCmd {
    /// Exact classical optimum by exhaustive search, with a witness pair.
    BruteForce(BruteForceArgs),
    /// Play rounds on uniformly random distinct edge pairs.
    Play(PlayArgs),
}

impl GameCmd {
    pub fn name(&self) -> &'static str {
        match self {
            GameCmd::BruteForce(_) => "brute-force",
            GameCmd::Play(_) => "play",
        }
    }
}

#[derive(Debug, Args, Serialize)]
pub struct BruteForceArgs {
    /// Six ±1 values α1,β1,α2,β2,α3,β3.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "1,1,1,1,1,1")]
    pub params: Vec<i8>,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum StrategyKind {
    /// Measure the shared Bell pairs.
    Quantum,
    /// The pair found by `game brute-force`.
    ClassicalWitness,
    /// Both players answer from a labeling file: a JSON array of 10 ±1 values.
    Labeling,
    /// Strategy files given by --alice and --bob.
    Files,
}

#[derive(Debug, Args, Serialize)]
pub struct PlayArgs {
    #[arg(long, value_enum)]
    pub strategy: StrategyKind,
    #[arg(long, default_value_t = 1000)]
    pub rounds: u64,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "1,1,1,1,1,1")]
    pub params: Vec<i8>,
    #[arg(long)]
    pub labeling: Option<PathBuf>,
    #[arg(long)]
    pub alice: Option<PathBuf>,
    #[arg(long)]
    pub bob: Option<PathBuf>,
}

pub fn parse_params(v: &[i8]) -> CliResult<GameParams> {
    let arr: [i8; 6] =
        v.try_into().map_err(|_| CliError::Validation(format!("--params needs 6 values, got {}", v.len())))?;
    Ok(GameParams::new(arr)?)
}

fn strategy_value(s: &DeterministicStrategy) -> Value {
    serde_json::from_str(&s.to_json()).expect("strategy JSON")
}

fn read_strategy(path: &Option<PathBuf>, flag: &str, player: Player) -> CliResult<DeterministicStrategy> {
    let path = path.as_ref().ok_or_else(|| CliError::Validation(format!("--strategy files needs --{flag}")))?;
    let s = DeterministicStrategy::from_json(&std::fs::read_to_string(path)?)?;
    if s.player != player {
        return Err(CliError::Validation(format!("{} holds a strategy for player {}", path.display(), s.player)));
    }
    Ok(s)
}

fn read_labeling(path: &Option<PathBuf>) -> CliResult<[i8; NUM_VERTICES]> {
    let path = path.as_ref().ok_or_else(|| CliError::Validation("--strategy labeling needs --labeling".into()))?;
    let v: Vec<i8> = serde_json::from_str(&std::fs::read_to_string(path)?)?;
    v.try_into().map_err(|v: Vec<i8>| CliError::Validation(format!("labeling needs 10 values, got {}", v.len())))
}

pub fn run(cmd: &GameCmd, ctx: &Ctx) -> CliResult<Output> {
    match cmd {
        GameCmd::BruteForce(a) => brute_force(a),
        GameCmd::Play(a) => play(a, ctx),
    }
}

fn brute_force(a: &BruteForceArgs) -> CliResult<Output> {
    let p = parse_params(&a.params)?;
    let opt = brute_force_optimal(&p);
    let recomputed = win_probability(&opt.alice, &opt.bob, &p);
    if recomputed != opt.wins {
        return Err(CliError::Internal(format!("witness scores {recomputed}, search reported {}", opt.wins)));
    }
    Ok(Output::Result(json!({
        "max_prob": opt.wins.to_string(),
        "max_prob_decimal": opt.wins.as_f64(),
        "alice_strategies_evaluated": opt.evaluated,
        "witness": { "alice": strategy_value(&opt.alice), "bob": strategy_value(&opt.bob) },
        "witness_win_probability": recomputed.to_string(),
    })))
}

fn random_pair<R: Rng>(rng: &mut R) -> (EdgeId, EdgeId) {
    let x = rng.random_range(0..5u8);
    let y = (x + rng.random_range(1..5u8)) % 5;
    (EdgeId::new(x).expect("edge"), EdgeId::new(y).expect("edge"))
}

fn play(a: &PlayArgs, ctx: &Ctx) -> CliResult<Output> {
    let p = parse_params(&a.params)?;
    let classical = match a.strategy {
        StrategyKind::Quantum => None,
        StrategyKind::ClassicalWitness => {
            let opt = brute_force_optimal(&p);
            Some((opt.alice, opt.bob))
        }
        StrategyKind::Labeling => {
            let l = read_labeling(&a.labeling)?;
            Some((DeterministicStrategy::from_labeling(Player::A, &l)?, DeterministicStrategy::from_labeling(Player::B, &l)?))
        }
        StrategyKind::Files => Some((read_strategy(&a.alice, "alice", Player::A)?, read_strategy(&a.bob, "bob", Player::B)?)),
    };
    let pg = pentagram();
    let wins: u64 = (0..a.rounds)
        .into_par_iter()
        .map(|i| -> CliResult<u64> {
            let mut rng = stream(ctx.seed, i);
            let (x, y) = random_pair(&mut rng);
            let (z, w) = match &classical {
                None => quantum_round(x, y, &p, &mut rng)?,
                Some((al, bo)) => (al.answer(x), bo.answer(y)),
            };
            Ok(u64::from(pg.referee(x, y, &z, &w, &p)?))
        })
        .try_reduce(|| 0, |a, b| Ok(a + b))?;
    let mut result = json!({
        "rounds": a.rounds,
        "wins": wins,
        "win_rate": (a.rounds > 0).then(|| wins as f64 / a.rounds as f64),
        "ci99": (a.rounds > 0).then(|| wilson_interval(wins, a.rounds, Z_99)),
    });
    if let Some((al, bo)) = &classical {
        result["exact_win_probability"] = json!(win_probability(al, bo, &p).to_string());
    }
    Ok(Output::Result(result))
}
