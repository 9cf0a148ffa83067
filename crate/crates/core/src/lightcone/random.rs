use rand::seq::SliceRandom;
use rand::Rng;

use super::{ClassicalCircuit, ClassicalGate, Wire};
use crate::error::{Error, Result};

/// Shape of a random layered circuit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomCircuitSpec {
    /// Block count; the circuit has `6n` data inputs and outputs.
    pub n: usize,
    /// Fan-in of every gate.
    pub b: usize,
    /// Number of gate layers.
    pub d: usize,
    /// Uniform random input wires.
    pub random_wires: usize,
}

/// Layered circuit with `6n` gates per layer and fan-in exactly `B`.
///
/// Each gate's first wire comes from the previous layer (the inputs, for
/// layer 1), which makes the depth exactly `D`. The other `B − 1` distinct
/// wires are uniform over the previous layer, the data inputs, and the
/// random wires. Truth tables are uniform; outputs are a random permutation
/// of the last layer.
pub fn random_nc0_circuit_with<R: Rng + ?Sized>(spec: RandomCircuitSpec, rng: &mut R) -> Result<ClassicalCircuit> {
    let RandomCircuitSpec { n, b, d, random_wires } = spec;
    if b < 2 || d < 1 || n < 1 {
        return Err(Error::InvalidInput(format!("need B >= 2, D >= 1, n >= 1; got B={b}, D={d}, n={n}")));
    }
    if b > 16 {
        return Err(Error::InvalidInput(format!("fan-in {b} exceeds the truth-table limit 16")));
    }
    let width = 6 * n;
    let base: Vec<Wire> = (0..width).map(Wire::Input).chain((0..random_wires).map(Wire::Random)).collect();
    if base.len() < b {
        return Err(Error::InvalidInput("fewer wires than the fan-in".into()));
    }
    let mut gates = Vec::with_capacity(width * d);
    let mut prev: Vec<Wire> = base.clone();
    for layer in 0..d {
        let start = gates.len();
        let pool: Vec<Wire> = if layer == 0 { base.clone() } else { prev.iter().chain(&base).copied().collect() };
        for _ in 0..width {
            let mut ins = vec![prev[rng.random_range(0..prev.len())]];
            while ins.len() < b {
                let w = pool[rng.random_range(0..pool.len())];
                if !ins.contains(&w) {
                    ins.push(w);
                }
            }
            let table = (0..1usize << b).map(|_| rng.random::<bool>()).collect();
            gates.push(ClassicalGate::new(ins, table)?);
        }
        prev = (start..gates.len()).map(Wire::Gate).collect();
    }
    prev.shuffle(rng);
    ClassicalCircuit::new(width, random_wires, gates, prev)
}

pub fn random_nc0_circuit<R: Rng + ?Sized>(n: usize, b: usize, d: usize, rng: &mut R) -> Result<ClassicalCircuit> {
    random_nc0_circuit_with(RandomCircuitSpec { n, b, d, random_wires: 0 }, rng)
}
