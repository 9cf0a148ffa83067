//! Bounded fan-in classical circuits, their lightcones, and the depth bounds
//! that follow from lightcone disjointness.
//!
//! A circuit reads `inputs` data wires and `random` uniformly random wires.
//! For the MPP layout, data input `3(j-1) + i` is bit `i` of `x_j` and
//! `3(n + j - 1) + i` is bit `i` of `y_j`; outputs follow the `z‖w` layout.

mod adversary;
mod bounds;
mod cone;
mod random;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use adversary::{
    best_local_strategy_on_s, constant_circuit, eval_adversary, identity_circuit, strategy_circuit, AdversaryReport,
    LocalOptimum,
};
pub use bounds::{bound_eq1, bound_eq3, prop5_lower_bound};
pub use cone::{
    correlated_all, correlated_exact, event_e, prob_e, prob_e_naive, Lightcones, CORRELATION_INPUT_CAP,
};
pub use random::{random_nc0_circuit, random_nc0_circuit_with, RandomCircuitSpec};

/// A wire: a data input, a random input, or a gate output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Wire {
    Input(usize),
    Random(usize),
    Gate(usize),
}

impl fmt::Display for Wire {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Wire::Input(i) => write!(f, "i{i}"),
            Wire::Random(i) => write!(f, "r{i}"),
            Wire::Gate(i) => write!(f, "g{i}"),
        }
    }
}

impl FromStr for Wire {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad wire reference {s:?}"));
        let (kind, num) = s.split_at(s.char_indices().nth(1).map_or(s.len(), |(i, _)| i));
        let idx: usize = num.parse().map_err(|_| bad())?;
        match kind {
            "i" => Ok(Wire::Input(idx)),
            "r" => Ok(Wire::Random(idx)),
            "g" => Ok(Wire::Gate(idx)),
            _ => Err(bad()),
        }
    }
}

/// A gate with a truth table: output = `table[Σ_m bit(in[m]) << m]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassicalGate {
    pub inputs: Vec<Wire>,
    pub table: Vec<bool>,
}

impl ClassicalGate {
    pub fn new(inputs: Vec<Wire>, table: Vec<bool>) -> Result<Self> {
        if inputs.is_empty() {
            return Err(Error::InvalidInput("gate with no inputs".into()));
        }
        if inputs.len() > 16 || table.len() != 1 << inputs.len() {
            return Err(Error::InvalidInput(format!(
                "gate with fan-in {} needs a table of {} entries, got {}",
                inputs.len(),
                1usize << inputs.len().min(16),
                table.len()
            )));
        }
        Ok(Self { inputs, table })
    }

    pub fn fan_in(&self) -> usize {
        self.inputs.len()
    }
}

/// Gates are stored in topological order: a gate reads only inputs and
/// earlier gates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassicalCircuit {
    inputs: usize,
    random: usize,
    gates: Vec<ClassicalGate>,
    outputs: Vec<Wire>,
}

#[derive(Serialize, Deserialize)]
struct GateJson {
    id: String,
    #[serde(rename = "in")]
    inputs: Vec<String>,
    table: Vec<u8>,
}

#[derive(Serialize, Deserialize)]
struct CircuitJson {
    inputs: usize,
    #[serde(default, skip_serializing_if = "is_zero")]
    random: usize,
    gates: Vec<GateJson>,
    outputs: Vec<String>,
}

fn is_zero(v: &usize) -> bool {
    *v == 0
}

impl ClassicalCircuit {
    pub fn new(inputs: usize, random: usize, gates: Vec<ClassicalGate>, outputs: Vec<Wire>) -> Result<Self> {
        let c = Self { inputs, random, gates, outputs };
        c.validate()?;
        Ok(c)
    }

    fn check_wire(&self, w: Wire, limit_gate: usize) -> Result<()> {
        let ok = match w {
            Wire::Input(i) => i < self.inputs,
            Wire::Random(i) => i < self.random,
            Wire::Gate(g) => g < limit_gate,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidInput(format!("wire {w} is undefined or breaks topological order")))
        }
    }

    fn validate(&self) -> Result<()> {
        for (g, gate) in self.gates.iter().enumerate() {
            for &w in &gate.inputs {
                self.check_wire(w, g)?;
            }
        }
        for &w in &self.outputs {
            self.check_wire(w, self.gates.len())?;
        }
        Ok(())
    }

    pub fn num_inputs(&self) -> usize {
        self.inputs
    }

    pub fn num_random(&self) -> usize {
        self.random
    }

    pub fn num_outputs(&self) -> usize {
        self.outputs.len()
    }

    pub fn gates(&self) -> &[ClassicalGate] {
        &self.gates
    }

    pub fn outputs(&self) -> &[Wire] {
        &self.outputs
    }

    pub fn max_fan_in(&self) -> usize {
        self.gates.iter().map(ClassicalGate::fan_in).max().unwrap_or(0)
    }

    /// Layer of each gate: 1 + the deepest gate it reads (inputs are layer 0).
    pub fn gate_layers(&self) -> Vec<usize> {
        let mut layer = Vec::with_capacity(self.gates.len());
        for gate in &self.gates {
            let l = gate
                .inputs
                .iter()
                .map(|w| match w {
                    Wire::Gate(g) => layer[*g],
                    _ => 0,
                })
                .max()
                .unwrap_or(0);
            layer.push(l + 1);
        }
        layer
    }

    /// Longest input-to-output path counted in gates.
    pub fn depth(&self) -> usize {
        self.gate_layers().into_iter().max().unwrap_or(0)
    }

    /// Evaluate on one assignment.
    pub fn eval(&self, inputs: &[bool], random: &[bool]) -> Result<Vec<bool>> {
        if inputs.len() != self.inputs || random.len() != self.random {
            return Err(Error::InvalidInput(format!(
                "circuit takes {}+{} bits, got {}+{}",
                self.inputs,
                self.random,
                inputs.len(),
                random.len()
            )));
        }
        let mut vals = Vec::with_capacity(self.gates.len());
        let read = |w: Wire, vals: &[bool]| match w {
            Wire::Input(i) => inputs[i],
            Wire::Random(i) => random[i],
            Wire::Gate(g) => vals[g],
        };
        for gate in &self.gates {
            let idx = gate.inputs.iter().enumerate().fold(0usize, |acc, (m, &w)| acc | (usize::from(read(w, &vals)) << m));
            vals.push(gate.table[idx]);
        }
        Ok(self.outputs.iter().map(|&w| read(w, &vals)).collect())
    }

    /// Evaluate 64 assignments at once; each word holds one lane per assignment.
    pub fn eval_words(&self, inputs: &[u64], random: &[u64]) -> Vec<u64> {
        assert_eq!(inputs.len(), self.inputs);
        assert_eq!(random.len(), self.random);
        let mut vals: Vec<u64> = Vec::with_capacity(self.gates.len());
        let read = |w: Wire, vals: &[u64]| match w {
            Wire::Input(i) => inputs[i],
            Wire::Random(i) => random[i],
            Wire::Gate(g) => vals[g],
        };
        for gate in &self.gates {
            let ins: Vec<u64> = gate.inputs.iter().map(|&w| read(w, &vals)).collect();
            let mut out = 0u64;
            for (t, &bit) in gate.table.iter().enumerate() {
                if !bit {
                    continue;
                }
                let mut sel = !0u64;
                for (m, &v) in ins.iter().enumerate() {
                    sel &= if t >> m & 1 == 1 { v } else { !v };
                }
                out |= sel;
            }
            vals.push(out);
        }
        self.outputs.iter().map(|&w| read(w, &vals)).collect()
    }

    pub fn to_json(&self) -> String {
        let j = CircuitJson {
            inputs: self.inputs,
            random: self.random,
            gates: self
                .gates
                .iter()
                .enumerate()
                .map(|(g, gate)| GateJson {
                    id: format!("g{g}"),
                    inputs: gate.inputs.iter().map(Wire::to_string).collect(),
                    table: gate.table.iter().map(|&b| u8::from(b)).collect(),
                })
                .collect(),
            outputs: self.outputs.iter().map(Wire::to_string).collect(),
        };
        serde_json::to_string(&j).expect("circuit serialization is infallible")
    }

    /// Parse the JSON form. Gate ids are arbitrary strings; references to
    /// gates must point to gates listed earlier.
    pub fn from_json(s: &str) -> Result<Self> {
        let j: CircuitJson = serde_json::from_str(s)?;
        let mut ids: HashMap<String, usize> = HashMap::new();
        let resolve = |name: &str, ids: &HashMap<String, usize>| -> Result<Wire> {
            if let Some(&g) = ids.get(name) {
                return Ok(Wire::Gate(g));
            }
            match name.parse::<Wire>()? {
                Wire::Gate(_) => Err(Error::InvalidInput(format!("gate {name:?} is undefined or not yet defined"))),
                w => Ok(w),
            }
        };
        let mut gates = Vec::with_capacity(j.gates.len());
        for (g, gj) in j.gates.iter().enumerate() {
            let inputs = gj.inputs.iter().map(|w| resolve(w, &ids)).collect::<Result<Vec<_>>>()?;
            if gj.table.iter().any(|&b| b > 1) {
                return Err(Error::Parse(format!("gate {} table entries must be 0 or 1", gj.id)));
            }
            gates.push(ClassicalGate::new(inputs, gj.table.iter().map(|&b| b == 1).collect())?);
            if ids.insert(gj.id.clone(), g).is_some() {
                return Err(Error::Parse(format!("duplicate gate id {:?}", gj.id)));
            }
        }
        let outputs = j.outputs.iter().map(|w| resolve(w, &ids)).collect::<Result<Vec<_>>>()?;
        Self::new(j.inputs, j.random, gates, outputs)
    }
}
