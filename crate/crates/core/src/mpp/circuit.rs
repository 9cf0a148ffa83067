use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{BlockCode, MppInput, MppOutput, QubitGrid};
use crate::clifford::{clifford_from_z_images, CliffordOp};
use crate::error::{Error, Result};
use crate::game::pentagram;
use crate::gates::{circuit_depth, inverse_circuit, Gate};
use crate::statevector::{StateVector, MAX_QUBITS};
use crate::tableau::StabilizerState;

/// Largest block count the statevector backend accepts (`6n` qubits).
pub const STATEVECTOR_MAX_BLOCKS: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    #[default]
    Stabilizer,
    Statevector,
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Backend::Stabilizer => "stabilizer",
            Backend::Statevector => "statevector",
        })
    }
}

impl FromStr for Backend {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "stabilizer" => Ok(Backend::Stabilizer),
            "statevector" => Ok(Backend::Statevector),
            other => Err(Error::Parse(format!("unknown backend {other:?}"))),
        }
    }
}

/// `U(c)`: the basis change whose `Z_j` images are the rank-`j` vertex
/// observables of edge `c`, `j = 1..3`. Idle codes give the identity.
pub fn u_gate(code: BlockCode) -> &'static CliffordOp {
    static CACHE: OnceLock<Vec<CliffordOp>> = OnceLock::new();
    let table = CACHE.get_or_init(|| {
        (0..8u8)
            .map(|v| match BlockCode(v).edge() {
                None => CliffordOp::identity(3),
                Some(e) => {
                    let obs = pentagram().edge_observables(e);
                    clifford_from_z_images(&obs[..3]).expect("pentagram edges give valid targets")
                }
            })
            .collect()
    });
    &table[code.value() as usize]
}

/// Whether `V(y, x)` takes its Bell-measurement branch.
pub fn v_swaps(y: BlockCode, x: BlockCode) -> bool {
    (y.is_idle() && x.is_idle()) || x == y
}

fn v_gates(y: BlockCode, x: BlockCode) -> Vec<Gate> {
    if !v_swaps(y, x) {
        return Vec::new();
    }
    let mut gates = inverse_circuit(u_gate(y).gates());
    let shift = [3, 4, 5];
    gates.extend(inverse_circuit(u_gate(x).gates()).iter().map(|g| g.remap(&shift)));
    for i in 0..3 {
        gates.push(Gate::Cnot(i, i + 3));
        gates.push(Gate::H(i));
    }
    gates
}

/// `V(y, x)` on six qubits: `y`'s column is qubits 0..3, `x`'s is 3..6.
pub fn v_gate(y: BlockCode, x: BlockCode) -> CliffordOp {
    CliffordOp::from_gates(6, v_gates(y, x))
}

/// The gate plan for one input. All qubits start in `|0⟩` and are measured
/// in the computational basis after the gates.
#[derive(Debug, Clone, PartialEq)]
pub struct MppCircuit {
    pub input: MppInput,
    pub gates: Vec<Gate>,
}

impl MppCircuit {
    pub fn grid(&self) -> QubitGrid {
        QubitGrid { n: self.input.n }
    }

    pub fn num_qubits(&self) -> usize {
        6 * self.input.n
    }

    pub fn depth(&self) -> usize {
        circuit_depth(self.num_qubits(), &self.gates)
    }

    /// Map per-qubit measurement bits to the `z‖w` output layout.
    pub fn output_from_qubits(&self, qubit_bits: &[bool]) -> MppOutput {
        let g = self.grid();
        let n = self.input.n;
        let mut bits = Vec::with_capacity(6 * n);
        for j in 1..=n {
            bits.extend(g.column(2 * j - 1).map(|q| qubit_bits[q]));
        }
        for j in 1..=n {
            bits.extend(g.column(2 * j).map(|q| qubit_bits[q]));
        }
        MppOutput::from_packed(bits).expect("6n bits")
    }

    /// Inverse of [`output_from_qubits`](Self::output_from_qubits).
    pub fn qubits_from_output(&self, z: &MppOutput) -> Vec<bool> {
        let g = self.grid();
        let mut out = vec![false; self.num_qubits()];
        for j in 1..=self.input.n {
            for (s, q) in g.column(2 * j - 1).into_iter().enumerate() {
                out[q] = z.z_bits(j)[s];
            }
            for (s, q) in g.column(2 * j).into_iter().enumerate() {
                out[q] = z.w_bits(j)[s];
            }
        }
        out
    }
}

pub fn build_mpp_circuit(input: &MppInput) -> MppCircuit {
    let n = input.n;
    let g = QubitGrid { n };
    let mut gates = Vec::new();
    for j in 1..=n {
        for s in 1..=3 {
            let (a, b) = (g.index(s, 2 * j - 1), g.index(s, 2 * j));
            gates.push(Gate::H(a));
            gates.push(Gate::Cnot(a, b));
        }
    }
    for j in 1..=n {
        let left = g.column(2 * j - 1);
        gates.extend(u_gate(input.x_block(j)).gates().iter().map(|gt| gt.remap(&left)));
        let right = g.column(2 * j);
        gates.extend(u_gate(input.y_block(j)).gates().iter().map(|gt| gt.remap(&right)));
    }
    for j in 1..n {
        let (a, b) = (g.column(2 * j), g.column(2 * j + 1));
        let map = [a[0], a[1], a[2], b[0], b[1], b[2]];
        gates.extend(v_gates(input.y_block(j), input.x_block(j + 1)).iter().map(|gt| gt.remap(&map)));
    }
    MppCircuit { input: input.clone(), gates }
}

fn check_statevector_size(n: usize) -> Result<()> {
    if n > STATEVECTOR_MAX_BLOCKS || 6 * n > MAX_QUBITS {
        return Err(Error::SizeCap { what: "statevector block count", got: n, cap: STATEVECTOR_MAX_BLOCKS });
    }
    Ok(())
}

/// One sample from the output distribution of the circuit for `input`.
pub fn run_mpp<R: Rng + ?Sized>(input: &MppInput, backend: Backend, rng: &mut R) -> Result<MppOutput> {
    let c = build_mpp_circuit(input);
    let qubit_bits: Vec<bool> = match backend {
        Backend::Stabilizer => {
            let mut st = StabilizerState::new(c.num_qubits());
            st.apply_all(&c.gates);
            (0..c.num_qubits()).map(|q| st.measure(q, rng)).collect()
        }
        Backend::Statevector => {
            check_statevector_size(input.n)?;
            let mut sv = StateVector::zero(c.num_qubits())?;
            for g in &c.gates {
                sv.apply(g);
            }
            let idx = sv.sample(rng);
            (0..c.num_qubits()).map(|q| idx >> q & 1 == 1).collect()
        }
    };
    Ok(c.output_from_qubits(&qubit_bits))
}

/// Exact output distribution via the statevector backend.
pub fn output_distribution(input: &MppInput) -> Result<HashMap<MppOutput, f64>> {
    check_statevector_size(input.n)?;
    let c = build_mpp_circuit(input);
    let mut sv = StateVector::zero(c.num_qubits())?;
    for g in &c.gates {
        sv.apply(g);
    }
    Ok(sv
        .distribution()
        .into_iter()
        .map(|(idx, p)| {
            let bits: Vec<bool> = (0..c.num_qubits()).map(|q| idx >> q & 1 == 1).collect();
            (c.output_from_qubits(&bits), p)
        })
        .collect())
}
