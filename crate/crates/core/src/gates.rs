//! The Clifford gate set `{H, S, CNOT, CZ, X, Z}` and its action on Pauli
//! words by conjugation.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pauli::{Pauli, PauliWord};

/// One gate. A circuit is a `Vec<Gate>` applied left to right.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Gate {
    H(usize),
    S(usize),
    Cnot(usize, usize),
    Cz(usize, usize),
    X(usize),
    Z(usize),
}

impl Gate {
    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            Gate::H(q) | Gate::S(q) | Gate::X(q) | Gate::Z(q) => vec![q],
            Gate::Cnot(a, b) | Gate::Cz(a, b) => vec![a, b],
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Gate::H(_) => "H",
            Gate::S(_) => "S",
            Gate::Cnot(..) => "CNOT",
            Gate::Cz(..) => "CZ",
            Gate::X(_) => "X",
            Gate::Z(_) => "Z",
        }
    }

    /// Relabel qubits through `map` (local index -> register index).
    pub fn remap(&self, map: &[usize]) -> Gate {
        match *self {
            Gate::H(q) => Gate::H(map[q]),
            Gate::S(q) => Gate::S(map[q]),
            Gate::X(q) => Gate::X(map[q]),
            Gate::Z(q) => Gate::Z(map[q]),
            Gate::Cnot(a, b) => Gate::Cnot(map[a], map[b]),
            Gate::Cz(a, b) => Gate::Cz(map[a], map[b]),
        }
    }

    pub fn max_qubit(&self) -> usize {
        self.qubits().into_iter().max().unwrap_or(0)
    }

    /// `P -> G P G†` in place.
    pub fn conjugate(&self, p: &mut PauliWord) {
        let flip = |p: &mut PauliWord, cond: bool| {
            if cond {
                p.flip_sign();
            }
        };
        match *self {
            Gate::H(q) => {
                let (x, z) = (p.x_bit(q), p.z_bit(q));
                flip(p, x && z);
                p.set(q, Pauli::from_bits(z, x));
            }
            Gate::S(q) => {
                let (x, z) = (p.x_bit(q), p.z_bit(q));
                flip(p, x && z);
                p.set(q, Pauli::from_bits(x, z ^ x));
            }
            Gate::Cnot(c, t) => {
                let (xc, zc, xt, zt) = (p.x_bit(c), p.z_bit(c), p.x_bit(t), p.z_bit(t));
                flip(p, xc && zt && !(xt ^ zc));
                p.set(t, Pauli::from_bits(xt ^ xc, zt));
                p.set(c, Pauli::from_bits(xc, zc ^ zt));
            }
            Gate::Cz(a, b) => {
                let (xa, za, xb, zb) = (p.x_bit(a), p.z_bit(a), p.x_bit(b), p.z_bit(b));
                flip(p, xa && xb && (za ^ zb));
                p.set(a, Pauli::from_bits(xa, za ^ xb));
                p.set(b, Pauli::from_bits(xb, zb ^ xa));
            }
            Gate::X(q) => flip(p, p.z_bit(q)),
            Gate::Z(q) => flip(p, p.x_bit(q)),
        }
    }

    /// Gates whose product is the inverse of this gate.
    pub fn inverse(&self) -> Vec<Gate> {
        match *self {
            // S† = S·Z; both diagonal so order is irrelevant.
            Gate::S(q) => vec![Gate::Z(q), Gate::S(q)],
            g => vec![g],
        }
    }
}

/// The inverse circuit: reversed order, each gate inverted.
pub fn inverse_circuit(gates: &[Gate]) -> Vec<Gate> {
    gates.iter().rev().flat_map(Gate::inverse).collect()
}

/// `P -> U P U†` for the circuit `U` (gates applied in order).
pub fn conjugate_through(gates: &[Gate], p: &PauliWord) -> PauliWord {
    let mut out = p.clone();
    for g in gates {
        g.conjugate(&mut out);
    }
    out
}

/// Greedy as-soon-as-possible layering; returns the number of layers.
pub fn circuit_depth(num_qubits: usize, gates: &[Gate]) -> usize {
    let mut level = vec![0usize; num_qubits];
    let mut depth = 0;
    for g in gates {
        let qs = g.qubits();
        let l = qs.iter().map(|&q| level[q]).max().unwrap_or(0) + 1;
        for q in qs {
            level[q] = l;
        }
        depth = depth.max(l);
    }
    depth
}

#[derive(Serialize, Deserialize)]
struct GateRecord {
    g: String,
    q: Vec<usize>,
}

impl Serialize for Gate {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GateRecord { g: self.name().to_string(), q: self.qubits() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Gate {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rec = GateRecord::deserialize(d)?;
        gate_from_record(&rec.g, &rec.q).map_err(serde::de::Error::custom)
    }
}

fn gate_from_record(name: &str, q: &[usize]) -> Result<Gate> {
    let arity = |k: usize| {
        if q.len() == k {
            Ok(())
        } else {
            Err(Error::Parse(format!("gate {name} takes {k} qubits, got {}", q.len())))
        }
    };
    let g = match name {
        "H" => arity(1).map(|_| Gate::H(q[0]))?,
        "S" => arity(1).map(|_| Gate::S(q[0]))?,
        "X" => arity(1).map(|_| Gate::X(q[0]))?,
        "Z" => arity(1).map(|_| Gate::Z(q[0]))?,
        "CNOT" | "CX" => arity(2).map(|_| Gate::Cnot(q[0], q[1]))?,
        "CZ" => arity(2).map(|_| Gate::Cz(q[0], q[1]))?,
        other => return Err(Error::Parse(format!("unknown gate {other:?}"))),
    };
    if let Gate::Cnot(a, b) | Gate::Cz(a, b) = g {
        if a == b {
            return Err(Error::Parse(format!("gate {name} on repeated qubit {a}")));
        }
    }
    Ok(g)
}

/// Parse a circuit from its JSON list form `[{"g":"H","q":[0]}, ...]`.
pub fn circuit_from_json(s: &str) -> Result<Vec<Gate>> {
    Ok(serde_json::from_str(s)?)
}

pub fn circuit_to_json(gates: &[Gate]) -> String {
    serde_json::to_string(gates).expect("gate serialization is infallible")
}
