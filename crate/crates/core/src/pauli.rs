//! Pauli words with exact phases.
//!
//! A word on `n` qubits is stored as two bit-packed masks plus a phase
//! `i^k`. Qubit `q` carries `I`, `X`, `Z` or `Y` according to its
//! `(x, z)` bits `(0,0)`, `(1,0)`, `(0,1)`, `(1,1)`; a set `(1,1)` pair is the
//! Hermitian `Y`, not the product `XZ`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Single-qubit Pauli factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn from_bits(x: bool, z: bool) -> Pauli {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (false, true) => Pauli::Z,
            (true, true) => Pauli::Y,
        }
    }

    pub fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Z => (false, true),
            Pauli::Y => (true, true),
        }
    }

    fn symbol(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

/// Phase `i^k`, `k` in `0..4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Phase(u8);

impl Phase {
    pub const ONE: Phase = Phase(0);
    pub const I: Phase = Phase(1);
    pub const MINUS_ONE: Phase = Phase(2);
    pub const MINUS_I: Phase = Phase(3);

    pub fn from_exponent(k: i64) -> Phase {
        Phase(k.rem_euclid(4) as u8)
    }

    pub fn exponent(self) -> u8 {
        self.0
    }

    pub fn is_real(self) -> bool {
        self.0 % 2 == 0
    }

    /// `+1` or `-1` for real phases.
    pub fn sign(self) -> Option<i8> {
        match self.0 {
            0 => Some(1),
            2 => Some(-1),
            _ => None,
        }
    }
}

impl std::ops::Mul for Phase {
    type Output = Phase;
    fn mul(self, rhs: Phase) -> Phase {
        Phase((self.0 + rhs.0) % 4)
    }
}

pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(64).max(1)
}

/// Exponent of `i` picked up when multiplying `P1 * P2` qubit-wise, summed
/// over one 64-qubit word. Only the `Y = iXZ` bookkeeping contributes; the
/// per-qubit value is in `{-1, 0, 1}`.
#[inline]
pub(crate) fn product_phase_word(x1: u64, z1: u64, x2: u64, z2: u64) -> i64 {
    let y1 = x1 & z1;
    let xo1 = x1 & !z1;
    let zo1 = z1 & !x1;
    let pos = (y1 & z2 & !x2) | (xo1 & z2 & x2) | (zo1 & x2 & !z2);
    let neg = (y1 & x2 & !z2) | (xo1 & z2 & !x2) | (zo1 & x2 & z2);
    pos.count_ones() as i64 - neg.count_ones() as i64
}

/// An `n`-qubit Pauli operator with phase in `{+1, +i, -1, -i}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PauliWord {
    n: usize,
    x: Vec<u64>,
    z: Vec<u64>,
    phase: Phase,
}

impl PauliWord {
    pub fn identity(n: usize) -> Self {
        let w = words_for(n);
        Self { n, x: vec![0; w], z: vec![0; w], phase: Phase::ONE }
    }

    /// `P` acting on qubit `q` of an `n`-qubit register.
    pub fn single(n: usize, q: usize, p: Pauli) -> Self {
        let mut w = Self::identity(n);
        w.set(q, p);
        w
    }

    /// Build from per-qubit factors and a phase.
    pub fn from_factors(factors: &[Pauli], phase: Phase) -> Self {
        let mut w = Self::identity(factors.len());
        for (q, &p) in factors.iter().enumerate() {
            w.set(q, p);
        }
        w.phase = phase;
        w
    }

    pub(crate) fn from_raw(n: usize, x: Vec<u64>, z: Vec<u64>, phase: Phase) -> Self {
        debug_assert_eq!(x.len(), words_for(n));
        Self { n, x, z, phase }
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    pub fn with_phase(mut self, phase: Phase) -> Self {
        self.phase = phase;
        self
    }

    pub fn negated(mut self) -> Self {
        self.flip_sign();
        self
    }

    pub(crate) fn flip_sign(&mut self) {
        self.phase = self.phase * Phase::MINUS_ONE;
    }

    pub fn x_bit(&self, q: usize) -> bool {
        self.x[q / 64] >> (q % 64) & 1 == 1
    }

    pub fn z_bit(&self, q: usize) -> bool {
        self.z[q / 64] >> (q % 64) & 1 == 1
    }

    pub(crate) fn x_words(&self) -> &[u64] {
        &self.x
    }

    pub(crate) fn z_words(&self) -> &[u64] {
        &self.z
    }

    pub fn factor(&self, q: usize) -> Pauli {
        Pauli::from_bits(self.x_bit(q), self.z_bit(q))
    }

    pub fn set(&mut self, q: usize, p: Pauli) {
        assert!(q < self.n, "qubit {q} out of range for {} qubits", self.n);
        let (xb, zb) = p.bits();
        let mask = 1u64 << (q % 64);
        if xb {
            self.x[q / 64] |= mask;
        } else {
            self.x[q / 64] &= !mask;
        }
        if zb {
            self.z[q / 64] |= mask;
        } else {
            self.z[q / 64] &= !mask;
        }
    }

    pub fn factors(&self) -> Vec<Pauli> {
        (0..self.n).map(|q| self.factor(q)).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.x.iter().chain(&self.z).all(|&w| w == 0)
    }

    /// Same Pauli support, ignoring the phase.
    pub fn same_operator(&self, other: &PauliWord) -> bool {
        self.n == other.n && self.x == other.x && self.z == other.z
    }

    pub fn weight(&self) -> usize {
        self.x.iter().zip(&self.z).map(|(x, z)| (x | z).count_ones() as usize).sum()
    }

    /// Exact product `self * other`.
    pub fn mul(&self, other: &PauliWord) -> Result<PauliWord> {
        if self.n != other.n {
            return Err(Error::SizeMismatch(self.n, other.n));
        }
        let mut k = self.phase.exponent() as i64 + other.phase.exponent() as i64;
        let mut x = Vec::with_capacity(self.x.len());
        let mut z = Vec::with_capacity(self.z.len());
        for i in 0..self.x.len() {
            k += product_phase_word(self.x[i], self.z[i], other.x[i], other.z[i]);
            x.push(self.x[i] ^ other.x[i]);
            z.push(self.z[i] ^ other.z[i]);
        }
        Ok(PauliWord { n: self.n, x, z, phase: Phase::from_exponent(k) })
    }

    /// Whether the two operators commute (symplectic inner product is even).
    pub fn commutes(&self, other: &PauliWord) -> Result<bool> {
        if self.n != other.n {
            return Err(Error::SizeMismatch(self.n, other.n));
        }
        Ok(self.symplectic_parity(other) == 0)
    }

    pub(crate) fn symplectic_parity(&self, other: &PauliWord) -> u32 {
        let mut count = 0;
        for i in 0..self.x.len() {
            count += ((self.x[i] & other.z[i]) ^ (self.z[i] & other.x[i])).count_ones();
        }
        count & 1
    }

    /// `self ⊗ other`, with `other`'s qubits appended after `self`'s.
    pub fn tensor(&self, other: &PauliWord) -> PauliWord {
        let mut out = PauliWord::identity(self.n + other.n);
        for q in 0..self.n {
            out.set(q, self.factor(q));
        }
        for q in 0..other.n {
            out.set(self.n + q, other.factor(q));
        }
        out.phase = self.phase * other.phase;
        out
    }

    /// Place this word on the given qubits of a larger register.
    pub fn embed(&self, n: usize, qubits: &[usize]) -> PauliWord {
        assert_eq!(qubits.len(), self.n);
        let mut out = PauliWord::identity(n);
        for (i, &q) in qubits.iter().enumerate() {
            out.set(q, self.factor(i));
        }
        out.phase = self.phase;
        out
    }
}

impl fmt::Display for PauliWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = match self.phase.exponent() {
            0 => "+",
            1 => "+i",
            2 => "-",
            _ => "-i",
        };
        f.write_str(prefix)?;
        for q in 0..self.n {
            write!(f, "{}", self.factor(q).symbol())?;
        }
        Ok(())
    }
}

impl FromStr for PauliWord {
    type Err = Error;

    /// Parses strings such as `"+ZXX"`, `"-iY"` or `"XZ"` (phase defaults to `+`).
    fn from_str(s: &str) -> Result<Self> {
        let (phase, body) = if let Some(rest) = s.strip_prefix("+i") {
            (Phase::I, rest)
        } else if let Some(rest) = s.strip_prefix("-i") {
            (Phase::MINUS_I, rest)
        } else if let Some(rest) = s.strip_prefix('+') {
            (Phase::ONE, rest)
        } else if let Some(rest) = s.strip_prefix('-') {
            (Phase::MINUS_ONE, rest)
        } else {
            (Phase::ONE, s)
        };
        let factors = body
            .chars()
            .map(|c| match c {
                'I' | '_' | '.' => Ok(Pauli::I),
                'X' => Ok(Pauli::X),
                'Y' => Ok(Pauli::Y),
                'Z' => Ok(Pauli::Z),
                other => Err(Error::Parse(format!("bad Pauli symbol {other:?} in {s:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        if factors.is_empty() {
            return Err(Error::Parse(format!("empty Pauli word {s:?}")));
        }
        Ok(PauliWord::from_factors(&factors, phase))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PauliWord {
        s.parse().unwrap()
    }

    #[test]
    fn involution() {
        assert_eq!(p("ZII").mul(&p("ZII")).unwrap(), p("+III"));
    }

    #[test]
    fn single_qubit_products() {
        assert_eq!(p("Z").mul(&p("X")).unwrap(), p("+iY"));
        assert_eq!(p("X").mul(&p("Z")).unwrap(), p("-iY"));
        assert_eq!(p("X").mul(&p("Y")).unwrap(), p("+iZ"));
        assert_eq!(p("Y").mul(&p("X")).unwrap(), p("-iZ"));
        assert_eq!(p("Y").mul(&p("Z")).unwrap(), p("+iX"));
        assert_eq!(p("Y").mul(&p("Y")).unwrap(), p("I"));
    }

    #[test]
    fn pentagram_edge_product_is_minus_identity() {
        let prod = [p("ZXX"), p("XZX"), p("XXZ"), p("ZZZ")]
            .iter()
            .skip(1)
            .fold(p("ZXX"), |acc, q| acc.mul(q).unwrap());
        assert_eq!(prod, p("-III"));
    }

    #[test]
    fn commutation_examples() {
        assert!(p("ZII").commutes(&p("IXI")).unwrap());
        assert!(p("ZXX").commutes(&p("XZX")).unwrap());
        assert!(!p("ZII").commutes(&p("XII")).unwrap());
    }

    #[test]
    fn size_mismatch_is_an_error() {
        assert_eq!(p("ZI").mul(&p("Z")), Err(Error::SizeMismatch(2, 1)));
        assert!(p("ZI").commutes(&p("Z")).is_err());
    }

    #[test]
    fn display_round_trip() {
        for s in ["+ZXX", "-iY", "+iXYZ", "-III"] {
            assert_eq!(p(s).to_string(), s);
        }
        assert!("+ZQ".parse::<PauliWord>().is_err());
    }

    #[test]
    fn words_past_64_qubits() {
        let a = PauliWord::single(130, 129, Pauli::X);
        let b = PauliWord::single(130, 129, Pauli::Z);
        assert_eq!(a.mul(&b).unwrap(), PauliWord::single(130, 129, Pauli::Y).with_phase(Phase::MINUS_I));
        assert!(!a.commutes(&b).unwrap());
        assert_eq!(a.weight(), 1);
    }
}
