use clap::{Args, Subcommand};
use pentagram::lightcone::{bound_eq1, bound_eq3};
use serde::Serialize;
use serde_json::json;

use crate::error::CliResult;
use crate::Output;

#[derive(Debug, Subcommand, Serialize)]
#[serde(untagged)]
pub enum BoundCmd {
    /// ½·log_B[n/216·(p − 19/20)], defined for 19/20 < p ≤ 1.
    Eq1(BoundArgs),
    /// ½·log_B[n/80·(p − 8/9)], defined for 8/9 < p ≤ 1.
    Eq3(BoundArgs),
}

impl BoundCmd {
    pub fn name(&self) -> &'static str {
        match self {
            BoundCmd::Eq1(_) => "eq1",
            BoundCmd::Eq3(_) => "eq3",
        }
    }
}

#[derive(Debug, Args, Serialize)]
pub struct BoundArgs {
    /// Number of blocks.
    #[arg(long)]
    pub n: f64,
    /// Gate fan-in.
    #[arg(long = "B")]
    #[serde(rename = "B")]
    pub b: f64,
    /// Success probability of the classical circuit.
    #[arg(long)]
    pub p: f64,
}

pub fn run(cmd: &BoundCmd) -> CliResult<Output> {
    let (name, value) = match cmd {
        BoundCmd::Eq1(a) => ("eq1", bound_eq1(a.n, a.b, a.p)?),
        BoundCmd::Eq3(a) => ("eq3", bound_eq3(a.n, a.b, a.p)?),
    };
    Ok(Output::Result(json!({ "bound": name, "min_depth": value })))
}
