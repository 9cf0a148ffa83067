use clap::{Args, Subcommand};
use pentagram::mpp::{
    extract_params, run_mpp, sample_s, sample_skl, verify_game_relation, verify_support, Backend, MppInput, MppOutput,
    SubsetIndex,
};
use pentagram::rng::stream;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{CliError, CliResult};
use crate::report::inline_or_file;
use crate::{Ctx, Output};

#[derive(Debug, Subcommand, Serialize)]
#[serde(untagged)]
pub enum MppCmd {
    /// Draw inputs uniformly from S (or from S_{k,l} with --k and --l).
    Sample(SampleArgs),
    /// Run the circuit and report outputs with the extracted parameters.
    Run(RunArgs),
    /// Check outputs with the game-relation and support verifiers.
    Verify(VerifyArgs),
}

impl MppCmd {
    pub fn name(&self) -> &'static str {
        match self {
            MppCmd::Sample(_) => "sample",
            MppCmd::Run(_) => "run",
            MppCmd::Verify(_) => "verify",
        }
    }
}

#[derive(Debug, Args, Serialize)]
pub struct SampleArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 1)]
    pub samples: u64,
    #[arg(long, requires = "l")]
    pub k: Option<usize>,
    #[arg(long, requires = "k")]
    pub l: Option<usize>,
}

#[derive(Debug, Args, Serialize)]
pub struct RunArgs {
    /// Block count; inputs are sampled from S unless --input is given.
    #[arg(long, required_unless_present = "input")]
    pub n: Option<usize>,
    /// A 6n-bit input string, its JSON form, or a file holding either.
    #[arg(long)]
    pub input: Option<String>,
    /// stabilizer or statevector (n <= 3).
    #[arg(long, default_value_t = Backend::Stabilizer)]
    pub backend: Backend,
    #[arg(long, default_value_t = 1)]
    pub samples: u64,
}

#[derive(Debug, Args, Serialize)]
pub struct VerifyArgs {
    /// Input, inline or as a file.
    #[arg(long, requires = "output", conflicts_with = "report")]
    pub input: Option<String>,
    /// Output, inline or as a file.
    #[arg(long, requires = "input")]
    pub output: Option<String>,
    /// A JSON report from `mpp run`; every record is verified.
    #[arg(long, required_unless_present = "input")]
    pub report: Option<String>,
}

pub fn run(cmd: &MppCmd, ctx: &Ctx) -> CliResult<Output> {
    match cmd {
        MppCmd::Sample(a) => sample(a, ctx),
        MppCmd::Run(a) => run_circuit(a, ctx),
        MppCmd::Verify(a) => verify(a),
    }
}

fn instance_value(x: &MppInput) -> Value {
    match x.instance_data() {
        Ok((idx, xk, yl)) => json!({ "k": idx.k, "l": idx.l, "x_k": xk.id(), "y_l": yl.id() }),
        Err(_) => Value::Null,
    }
}

fn sample(a: &SampleArgs, ctx: &Ctx) -> CliResult<Output> {
    let idx = match (a.k, a.l) {
        (Some(k), Some(l)) => {
            let idx = SubsetIndex::new(k, l)?;
            if l > a.n {
                return Err(CliError::Validation(format!("l={l} exceeds n={}", a.n)));
            }
            Some(idx)
        }
        _ => None,
    };
    let records = (0..a.samples)
        .map(|i| -> CliResult<Value> {
            let mut rng = stream(ctx.seed, i);
            let x = match idx {
                Some(idx) => sample_skl(a.n, idx, &mut rng)?,
                None => sample_s(a.n, &mut rng)?,
            };
            Ok(json!({ "input": x.to_bitstring(), "instance": instance_value(&x) }))
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok(Output::Result(json!({ "records": records })))
}

fn run_circuit(a: &RunArgs, ctx: &Ctx) -> CliResult<Output> {
    let fixed = match &a.input {
        Some(s) => {
            let x = MppInput::parse(&inline_or_file(s)?)?;
            if let Some(n) = a.n {
                if n != x.n {
                    return Err(CliError::Validation(format!("--n {n} but the input has {} blocks", x.n)));
                }
            }
            Some(x)
        }
        None => None,
    };
    let n = fixed.as_ref().map_or_else(|| a.n.expect("clap requires --n"), |x| x.n);
    let records = (0..a.samples)
        .into_par_iter()
        .map(|i| -> CliResult<Value> {
            let mut rng = stream(ctx.seed, i);
            let x = match &fixed {
                Some(x) => x.clone(),
                None => sample_s(n, &mut rng)?,
            };
            let z = run_mpp(&x, a.backend, &mut rng)?;
            let params = match x.subset_index() {
                Some(idx) => {
                    let p = extract_params(&z, idx.k, idx.l)?;
                    json!({ "alpha": (0..3).map(|j| p.alpha(j)).collect::<Vec<_>>(),
                            "beta": (0..3).map(|j| p.beta(j)).collect::<Vec<_>>() })
                }
                None => Value::Null,
            };
            Ok(json!({
                "input": x.to_bitstring(),
                "instance": instance_value(&x),
                "output": z.to_bitstring(),
                "params": params,
            }))
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok(Output::Result(json!({ "backend": a.backend, "n": n, "records": records })))
}

fn verdict(x: &MppInput, z: &MppOutput) -> CliResult<Value> {
    if x.n != z.n {
        return Err(CliError::Validation(format!("input has {} blocks but output has {}", x.n, z.n)));
    }
    Ok(json!({
        "input": x.to_bitstring(),
        "output": z.to_bitstring(),
        "game_relation": verify_game_relation(x, z)?,
        "support": verify_support(x, z)?,
    }))
}

fn verify(a: &VerifyArgs) -> CliResult<Output> {
    let pairs: Vec<(MppInput, MppOutput)> = match (&a.input, &a.output, &a.report) {
        (Some(i), Some(o), _) => {
            vec![(MppInput::parse(&inline_or_file(i)?)?, MppOutput::parse(&inline_or_file(o)?)?)]
        }
        (_, _, Some(r)) => {
            let v: Value = serde_json::from_str(&inline_or_file(r)?)?;
            let records = v["result"]["records"]
                .as_array()
                .ok_or_else(|| CliError::Validation("report has no result.records array".into()))?;
            records
                .iter()
                .map(|rec| -> CliResult<_> {
                    let field = |k: &str| {
                        rec[k].as_str().ok_or_else(|| CliError::Validation(format!("record without string {k:?}")))
                    };
                    Ok((MppInput::parse(field("input")?)?, MppOutput::parse(field("output")?)?))
                })
                .collect::<CliResult<_>>()?
        }
        _ => return Err(CliError::Validation("give --input and --output, or --report".into())),
    };
    let records = pairs.par_iter().map(|(x, z)| verdict(x, z)).collect::<CliResult<Vec<_>>>()?;
    let all = |k: &str| records.iter().all(|r| r[k] == Value::Bool(true));
    Ok(Output::Result(json!({
        "game_relation_all": all("game_relation"),
        "support_all": all("support"),
        "records": records,
    })))
}
