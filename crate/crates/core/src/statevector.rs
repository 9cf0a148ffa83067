//! Dense statevector backend, used as an exact oracle for small circuits.
//!
//! Basis index bit `q` holds qubit `q`.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::gates::Gate;

pub const MAX_QUBITS: usize = 20;

const PROB_EPS: f64 = 1e-12;

#[derive(Debug, Clone)]
pub struct StateVector {
    n: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// Computational basis state `|bits⟩`.
    pub fn basis(bits: &[bool]) -> Result<Self> {
        let n = bits.len();
        if n > MAX_QUBITS {
            return Err(Error::SizeCap { what: "statevector qubit count", got: n, cap: MAX_QUBITS });
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
        let idx = bits.iter().enumerate().fold(0usize, |acc, (q, &b)| acc | (usize::from(b) << q));
        amps[idx] = Complex64::new(1.0, 0.0);
        Ok(Self { n, amps })
    }

    pub fn zero(n: usize) -> Result<Self> {
        Self::basis(&vec![false; n])
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn apply(&mut self, g: &Gate) {
        let sqrt_half = std::f64::consts::FRAC_1_SQRT_2;
        match *g {
            Gate::H(q) => {
                let m = 1 << q;
                for i in 0..self.amps.len() {
                    if i & m == 0 {
                        let (a, b) = (self.amps[i], self.amps[i | m]);
                        self.amps[i] = (a + b) * sqrt_half;
                        self.amps[i | m] = (a - b) * sqrt_half;
                    }
                }
            }
            Gate::S(q) => self.phase_where(|i| i >> q & 1 == 1, Complex64::new(0.0, 1.0)),
            Gate::Z(q) => self.phase_where(|i| i >> q & 1 == 1, Complex64::new(-1.0, 0.0)),
            Gate::Cz(a, b) => self.phase_where(|i| i >> a & 1 == 1 && i >> b & 1 == 1, Complex64::new(-1.0, 0.0)),
            Gate::X(q) => {
                let m = 1 << q;
                for i in 0..self.amps.len() {
                    if i & m == 0 {
                        self.amps.swap(i, i | m);
                    }
                }
            }
            Gate::Cnot(c, t) => {
                let (mc, mt) = (1 << c, 1 << t);
                for i in 0..self.amps.len() {
                    if i & mc != 0 && i & mt == 0 {
                        self.amps.swap(i, i | mt);
                    }
                }
            }
        }
    }

    fn phase_where(&mut self, pred: impl Fn(usize) -> bool, factor: Complex64) {
        for (i, a) in self.amps.iter_mut().enumerate() {
            if pred(i) {
                *a *= factor;
            }
        }
    }

    /// Outcome distribution of measuring every qubit in the Z basis, keyed by
    /// basis index. Outcomes with probability below `1e-12` are dropped.
    pub fn distribution(&self) -> BTreeMap<usize, f64> {
        self.amps
            .iter()
            .enumerate()
            .map(|(i, a)| (i, a.norm_sqr()))
            .filter(|&(_, p)| p > PROB_EPS)
            .collect()
    }

    /// Draw one full measurement outcome (basis index).
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        let u: f64 = rng.random::<f64>() * self.norm_sqr();
        let mut acc = 0.0;
        let mut last = 0;
        for (i, a) in self.amps.iter().enumerate() {
            let p = a.norm_sqr();
            if p > PROB_EPS {
                acc += p;
                last = i;
                if u < acc {
                    return i;
                }
            }
        }
        last
    }

    /// `⟨ψ|P|ψ⟩` for a Pauli word.
    pub fn expectation(&self, p: &crate::pauli::PauliWord) -> Result<f64> {
        if p.num_qubits() != self.n {
            return Err(Error::SizeMismatch(self.n, p.num_qubits()));
        }
        let (mut xmask, mut zmask, mut ycount) = (0usize, 0usize, 0u32);
        for q in 0..self.n {
            if p.x_bit(q) {
                xmask |= 1 << q;
            }
            if p.z_bit(q) {
                zmask |= 1 << q;
            }
            if p.x_bit(q) && p.z_bit(q) {
                ycount += 1;
            }
        }
        // P = i^phase · i^ycount · X^xmask Z^zmask; Z first acts on |i⟩ as a sign.
        let coeff = Complex64::new(0.0, 1.0).powu((p.phase().exponent() as u32 + ycount) % 4);
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, a) in self.amps.iter().enumerate() {
            let sign = if (i & zmask).count_ones() % 2 == 1 { -1.0 } else { 1.0 };
            acc += self.amps[i ^ xmask].conj() * a * sign;
        }
        Ok((acc * coeff).re)
    }
}

/// Run a gate sequence on a basis input.
pub fn statevector_run(gates: &[Gate], input: &[bool]) -> Result<StateVector> {
    let mut sv = StateVector::basis(input)?;
    if let Some(q) = gates.iter().map(Gate::max_qubit).max() {
        if q >= input.len() {
            return Err(Error::InvalidInput(format!("gate on qubit {q} outside {} qubits", input.len())));
        }
    }
    for g in gates {
        sv.apply(g);
    }
    Ok(sv)
}

/// Outcome distribution keyed by bitstrings (character `q` is qubit `q`).
pub fn statevector_distribution(sv: &StateVector) -> BTreeMap<String, f64> {
    sv.distribution()
        .into_iter()
        .map(|(i, p)| (index_to_bits(i, sv.n), p))
        .collect()
}

pub fn index_to_bits(i: usize, n: usize) -> String {
    (0..n).map(|q| if i >> q & 1 == 1 { '1' } else { '0' }).collect()
}
