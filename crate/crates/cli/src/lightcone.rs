use clap::{Args, Subcommand, ValueEnum};
use pentagram::game::brute_force_optimal;
use pentagram::lightcone::{
    best_local_strategy_on_s, constant_circuit, eval_adversary, identity_circuit, prob_e, prop5_lower_bound,
    random_nc0_circuit_with, strategy_circuit, ClassicalCircuit, Lightcones, RandomCircuitSpec,
};
use pentagram::rng::stream;
use pentagram::GameParams;
use serde::Serialize;
use serde_json::json;

use crate::error::{CliError, CliResult};
use crate::report::inline_or_file;
use crate::{Ctx, Output};

#[derive(Debug, Subcommand, Serialize)]
#[serde(untagged)]
pub enum LightconeCmd {
    /// Size, depth, fan-in and lightcone statistics of a circuit.
    Analyze(AnalyzeArgs),
    /// Exact probability of the disjoint-lightcone event over S.
    ProbE(CircuitArgs),
    /// Success rate of a circuit on inputs from S, overall and given E.
    Adversary(AdversaryArgs),
    /// Write a circuit file: a random layered circuit or a built-in adversary.
    Generate(GenerateArgs),
}

impl LightconeCmd {
    pub fn name(&self) -> &'static str {
        match self {
            LightconeCmd::Analyze(_) => "analyze",
            LightconeCmd::ProbE(_) => "prob-e",
            LightconeCmd::Adversary(_) => "adversary",
            LightconeCmd::Generate(_) => "generate",
        }
    }
}

#[derive(Debug, Args, Serialize)]
pub struct AnalyzeArgs {
    /// Circuit JSON, inline or as a file.
    #[arg(long)]
    pub circuit: String,
    /// Block count, for the E-event statistics.
    #[arg(long)]
    pub n: Option<usize>,
}

#[derive(Debug, Args, Serialize)]
pub struct CircuitArgs {
    #[arg(long)]
    pub circuit: String,
    #[arg(long)]
    pub n: usize,
}

#[derive(Debug, Args, Serialize)]
pub struct AdversaryArgs {
    #[arg(long)]
    pub circuit: String,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 10_000)]
    pub samples: u64,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CircuitKind {
    /// Layered circuit with uniform wiring and truth tables.
    Random,
    /// Outputs copy inputs.
    Identity,
    Constant0,
    Constant1,
    /// Each block plays the exhaustive-search game witness.
    GameWitness,
    /// Each block plays the best local strategy on S.
    LocalOptimum,
}

#[derive(Debug, Args, Serialize)]
pub struct GenerateArgs {
    #[arg(long, value_enum)]
    pub kind: CircuitKind,
    #[arg(long)]
    pub n: usize,
    /// Fan-in (random circuits).
    #[arg(long = "B", default_value_t = 2)]
    #[serde(rename = "B")]
    pub b: usize,
    /// Depth (random circuits).
    #[arg(long = "D", default_value_t = 1)]
    #[serde(rename = "D")]
    pub d: usize,
    /// Extra uniform random wires (random circuits).
    #[arg(long, default_value_t = 0)]
    pub random_wires: usize,
}

fn load(arg: &str) -> CliResult<ClassicalCircuit> {
    Ok(ClassicalCircuit::from_json(&inline_or_file(arg)?)?)
}

fn ratio_json(numer: u64, denom: u64) -> serde_json::Value {
    json!({ "exact": format!("{numer}/{denom}"), "decimal": numer as f64 / denom as f64 })
}

pub fn run(cmd: &LightconeCmd, ctx: &Ctx) -> CliResult<Output> {
    match cmd {
        LightconeCmd::Analyze(a) => {
            let c = load(&a.circuit)?;
            let cones = Lightcones::compute(&c);
            let sizes: Vec<usize> =
                (0..c.num_inputs()).map(|i| cones.of_input(i).map(<[u32]>::len)).collect::<Result<_, _>>()?;
            let mut result = json!({
                "inputs": c.num_inputs(),
                "random_wires": c.num_random(),
                "gates": c.gates().len(),
                "outputs": c.num_outputs(),
                "depth": c.depth(),
                "max_fan_in": c.max_fan_in(),
                "lightcone_max": sizes.iter().max().copied().unwrap_or(0),
                "lightcone_mean": if sizes.is_empty() { 0.0 } else { sizes.iter().sum::<usize>() as f64 / sizes.len() as f64 },
            });
            if let Some(n) = a.n {
                let p = prob_e(&cones, n)?;
                result["prob_e"] = ratio_json(*p.numer(), *p.denom());
                let b = c.max_fan_in().max(2);
                result["prop5_lower_bound"] = json!(prop5_lower_bound(n, b, c.depth()));
            }
            Ok(Output::Result(result))
        }
        LightconeCmd::ProbE(a) => {
            let c = load(&a.circuit)?;
            let p = prob_e(&Lightcones::compute(&c), a.n)?;
            Ok(Output::Result(json!({ "prob_e": ratio_json(*p.numer(), *p.denom()) })))
        }
        LightconeCmd::Adversary(a) => {
            let c = load(&a.circuit)?;
            let r = eval_adversary(&c, a.n, a.samples, ctx.seed)?;
            Ok(Output::Result(serde_json::to_value(r)?))
        }
        LightconeCmd::Generate(a) => {
            if a.n < 2 {
                return Err(CliError::Validation(format!("need n >= 2 blocks, got {}", a.n)));
            }
            let c = match a.kind {
                CircuitKind::Random => {
                    let spec = RandomCircuitSpec { n: a.n, b: a.b, d: a.d, random_wires: a.random_wires };
                    random_nc0_circuit_with(spec, &mut stream(ctx.seed, 0))?
                }
                CircuitKind::Identity => identity_circuit(a.n),
                CircuitKind::Constant0 => constant_circuit(a.n, false),
                CircuitKind::Constant1 => constant_circuit(a.n, true),
                CircuitKind::GameWitness => {
                    let opt = brute_force_optimal(&GameParams::ONES);
                    strategy_circuit(a.n, &opt.alice, &opt.bob)
                }
                CircuitKind::LocalOptimum => {
                    let opt = best_local_strategy_on_s();
                    strategy_circuit(a.n, &opt.alice, &opt.bob)
                }
            };
            let mut s = c.to_json();
            s.push('\n');
            Ok(Output::Artifact(s))
        }
    }
}
