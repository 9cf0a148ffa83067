//! Clifford operators as gate sequences with their Heisenberg images, and
//! synthesis of a Clifford from prescribed images of `Z_1..Z_k`.

use crate::error::{Error, Result};
use crate::gates::{conjugate_through, inverse_circuit, Gate};
use crate::pauli::{Pauli, PauliWord};

/// A Clifford unitary `C` on `n` qubits.
///
/// `x_images[j] = C† X_j C` and `z_images[j] = C† Z_j C`: measuring `Z_j`
/// after `C` is the same as measuring `z_images[j]` before it.
#[derive(Debug, Clone, PartialEq)]
pub struct CliffordOp {
    n: usize,
    gates: Vec<Gate>,
    x_images: Vec<PauliWord>,
    z_images: Vec<PauliWord>,
}

impl CliffordOp {
    pub fn identity(n: usize) -> Self {
        Self::from_gates(n, Vec::new())
    }

    pub fn from_gates(n: usize, gates: Vec<Gate>) -> Self {
        assert!(gates.iter().all(|g| g.max_qubit() < n), "gate outside register");
        let inv = inverse_circuit(&gates);
        let x_images = (0..n).map(|j| conjugate_through(&inv, &PauliWord::single(n, j, Pauli::X))).collect();
        let z_images = (0..n).map(|j| conjugate_through(&inv, &PauliWord::single(n, j, Pauli::Z))).collect();
        Self { n, gates, x_images, z_images }
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn x_image(&self, j: usize) -> &PauliWord {
        &self.x_images[j]
    }

    pub fn z_image(&self, j: usize) -> &PauliWord {
        &self.z_images[j]
    }

    /// `C† P C`.
    pub fn pull_back(&self, p: &PauliWord) -> PauliWord {
        conjugate_through(&inverse_circuit(&self.gates), p)
    }

    /// `C P C†`.
    pub fn push_forward(&self, p: &PauliWord) -> PauliWord {
        conjugate_through(&self.gates, p)
    }

    pub fn inverse(&self) -> CliffordOp {
        CliffordOp::from_gates(self.n, inverse_circuit(&self.gates))
    }

    /// Acts as the identity under conjugation (equal up to global phase).
    pub fn is_identity(&self) -> bool {
        (0..self.n).all(|j| {
            self.x_images[j] == PauliWord::single(self.n, j, Pauli::X)
                && self.z_images[j] == PauliWord::single(self.n, j, Pauli::Z)
        })
    }

    /// Whether the image table is symplectic: images of `X_j`, `Z_j`
    /// anticommute pairwise and everything else commutes.
    pub fn is_symplectic(&self) -> bool {
        for a in 0..self.n {
            for b in 0..self.n {
                let xz = self.x_images[a].symplectic_parity(&self.z_images[b]);
                if xz != u32::from(a == b) {
                    return false;
                }
                if self.x_images[a].symplectic_parity(&self.x_images[b]) != 0
                    || self.z_images[a].symplectic_parity(&self.z_images[b]) != 0
                {
                    return false;
                }
            }
        }
        true
    }

    /// `other` after `self` (as circuits: `self` then `other`).
    pub fn then(&self, other: &CliffordOp) -> Result<CliffordOp> {
        if self.n != other.n {
            return Err(Error::SizeMismatch(self.n, other.n));
        }
        let mut gates = self.gates.clone();
        gates.extend_from_slice(&other.gates);
        Ok(CliffordOp::from_gates(self.n, gates))
    }

    /// `self ⊗ other`, `other` on the qubits after `self`'s.
    pub fn tensor(&self, other: &CliffordOp) -> CliffordOp {
        let shift: Vec<usize> = (self.n..self.n + other.n).collect();
        let mut gates = self.gates.clone();
        gates.extend(other.gates.iter().map(|g| g.remap(&shift)));
        CliffordOp::from_gates(self.n + other.n, gates)
    }
}

/// GF(2) rank of a set of Pauli words, ignoring phases.
pub fn gf2_rank(words: &[PauliWord]) -> usize {
    let mut rows: Vec<Vec<u64>> = words
        .iter()
        .map(|w| w.x_words().iter().chain(w.z_words()).copied().collect())
        .collect();
    let bits = rows.first().map_or(0, |r| r.len() * 64);
    let mut rank = 0;
    for col in 0..bits {
        let (wi, bi) = (col / 64, col % 64);
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][wi] >> bi & 1 == 1) else {
            continue;
        };
        rows.swap(rank, pivot);
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[wi] >> bi & 1 == 1 {
                row.iter_mut().zip(&pivot_row).for_each(|(a, b)| *a ^= b);
            }
        }
        rank += 1;
    }
    rank
}

/// Synthesize `C` with `C† Z_j C = targets[j]` for `j < k`.
///
/// Targets must share a qubit count `n >= k`, carry phase `±1`, pairwise
/// commute and be independent. The emitted circuit uses only
/// `{H, S, CNOT, CZ, X, Z}`; the images of `X_j` and of `Z_j` for `j >= k` are
/// whatever completion the reduction produces, which is symplectic by
/// construction.
pub fn clifford_from_z_images(targets: &[PauliWord]) -> Result<CliffordOp> {
    let Some(first) = targets.first() else {
        return Err(Error::InvalidTargets("no targets given".into()));
    };
    let n = first.num_qubits();
    validate_targets(targets, n)?;
    let k = targets.len();

    let mut cur: Vec<PauliWord> = targets.to_vec();
    let mut gates: Vec<Gate> = Vec::new();
    let mut used = vec![false; n];
    let mut pivots: Vec<usize> = Vec::with_capacity(k);

    let emit = |g: Gate, cur: &mut [PauliWord], gates: &mut Vec<Gate>| {
        for p in cur.iter_mut() {
            g.conjugate(p);
        }
        gates.push(g);
    };

    for j in 0..k {
        let x_free: Vec<usize> = (0..n).filter(|&q| !used[q] && cur[j].x_bit(q)).collect();
        let q = if !x_free.is_empty() {
            let q = if x_free.contains(&j) { j } else { x_free[0] };
            for &r in x_free.iter().filter(|&&r| r != q) {
                emit(Gate::Cnot(q, r), &mut cur, &mut gates);
            }
            if cur[j].z_bit(q) {
                emit(Gate::S(q), &mut cur, &mut gates);
            }
            for r in (0..n).filter(|&r| r != q) {
                if cur[j].z_bit(r) {
                    emit(Gate::Cz(q, r), &mut cur, &mut gates);
                }
            }
            emit(Gate::H(q), &mut cur, &mut gates);
            q
        } else {
            let z_free: Vec<usize> = (0..n).filter(|&q| !used[q] && cur[j].z_bit(q)).collect();
            if z_free.is_empty() {
                return Err(Error::InvalidTargets(format!("target {j} depends on earlier targets")));
            }
            let q = if z_free.contains(&j) { j } else { z_free[0] };
            for r in (0..n).filter(|&r| r != q) {
                if cur[j].z_bit(r) {
                    emit(Gate::Cnot(r, q), &mut cur, &mut gates);
                }
            }
            q
        };
        if cur[j].phase().sign() == Some(-1) {
            emit(Gate::X(q), &mut cur, &mut gates);
        }
        used[q] = true;
        pivots.push(q);
    }

    // Route pivot qubits onto 0..k.
    for j in 0..k {
        let b = pivots[j];
        if b == j {
            continue;
        }
        for g in [Gate::Cnot(j, b), Gate::Cnot(b, j), Gate::Cnot(j, b)] {
            emit(g, &mut cur, &mut gates);
        }
        for p in pivots.iter_mut() {
            if *p == j {
                *p = b;
            } else if *p == b {
                *p = j;
            }
        }
    }

    let op = CliffordOp::from_gates(n, gates);
    for (j, t) in targets.iter().enumerate() {
        if op.z_image(j) != t {
            return Err(Error::InvalidTargets(format!(
                "internal: synthesized image {} != target {}",
                op.z_image(j),
                t
            )));
        }
    }
    Ok(op)
}

fn validate_targets(targets: &[PauliWord], n: usize) -> Result<()> {
    if targets.len() > n {
        return Err(Error::InvalidTargets(format!("{} targets on {n} qubits", targets.len())));
    }
    for (i, t) in targets.iter().enumerate() {
        if t.num_qubits() != n {
            return Err(Error::SizeMismatch(n, t.num_qubits()));
        }
        if !t.phase().is_real() {
            return Err(Error::InvalidTargets(format!("target {i} ({t}) has phase ±i")));
        }
        if t.is_identity() {
            return Err(Error::InvalidTargets(format!("target {i} is the identity")));
        }
        for (j, u) in targets.iter().enumerate().skip(i + 1) {
            if t.symplectic_parity(u) != 0 {
                return Err(Error::InvalidTargets(format!("targets {i} and {j} anticommute")));
            }
        }
    }
    if gf2_rank(targets) < targets.len() {
        return Err(Error::InvalidTargets("targets are not independent".into()));
    }
    Ok(())
}
