//! Stabilizer states in the destabilizer/stabilizer tableau form.
//!
//! Rows `0..n` are destabilizers, rows `n..2n` stabilizers and row `2n` is
//! scratch space. Each row is bit-packed into `u64` words for its X part and
//! Z part, and row products run a word at a time.

use rand::Rng;

use crate::error::{Error, Result};
use crate::gates::Gate;
use crate::pauli::{product_phase_word, words_for, Phase, PauliWord};

/// Outcome of forcing a Z measurement to a given value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// The requested bit contradicts a deterministic outcome.
    Impossible,
    /// The outcome was uniformly random; the state collapsed onto the request.
    Random,
    /// The outcome was already determined and matches the request.
    Deterministic,
}

impl Branch {
    /// Probability of the forced outcome.
    pub fn weight(self) -> f64 {
        match self {
            Branch::Impossible => 0.0,
            Branch::Random => 0.5,
            Branch::Deterministic => 1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilizerState {
    n: usize,
    w: usize,
    x: Vec<u64>,
    z: Vec<u64>,
    // sign bit per row: 0 for +, 1 for -
    r: Vec<u8>,
}

impl StabilizerState {
    /// `|0…0⟩` on `n` qubits.
    pub fn new(n: usize) -> Self {
        let w = words_for(n);
        let rows = 2 * n + 1;
        let mut s = Self { n, w, x: vec![0; rows * w], z: vec![0; rows * w], r: vec![0; rows] };
        for q in 0..n {
            s.x[q * w + q / 64] |= 1 << (q % 64);
            s.z[(n + q) * w + q / 64] |= 1 << (q % 64);
        }
        s
    }

    /// `|bits⟩` for a computational basis string, qubit `q` = `bits[q]`.
    pub fn basis(bits: &[bool]) -> Self {
        let mut s = Self::new(bits.len());
        for (q, &b) in bits.iter().enumerate() {
            if b {
                s.x_gate(q);
            }
        }
        s
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    #[inline]
    fn bit(v: &[u64], w: usize, row: usize, q: usize) -> bool {
        v[row * w + q / 64] >> (q % 64) & 1 == 1
    }

    fn row_word_range(&self, row: usize) -> std::ops::Range<usize> {
        row * self.w..(row + 1) * self.w
    }

    pub fn apply(&mut self, g: &Gate) {
        match *g {
            Gate::H(q) => self.h(q),
            Gate::S(q) => self.s(q),
            Gate::Cnot(c, t) => self.cnot(c, t),
            Gate::Cz(a, b) => self.cz(a, b),
            Gate::X(q) => self.x_gate(q),
            Gate::Z(q) => self.z_gate(q),
        }
    }

    pub fn apply_all(&mut self, gates: &[Gate]) {
        for g in gates {
            self.apply(g);
        }
    }

    pub fn h(&mut self, q: usize) {
        let (wi, m) = (q / 64, 1u64 << (q % 64));
        for row in 0..2 * self.n {
            let i = row * self.w + wi;
            let (xb, zb) = (self.x[i] & m, self.z[i] & m);
            if xb != 0 && zb != 0 {
                self.r[row] ^= 1;
            }
            if (xb != 0) != (zb != 0) {
                self.x[i] ^= m;
                self.z[i] ^= m;
            }
        }
    }

    pub fn s(&mut self, q: usize) {
        let (wi, m) = (q / 64, 1u64 << (q % 64));
        for row in 0..2 * self.n {
            let i = row * self.w + wi;
            let xb = self.x[i] & m;
            if xb != 0 {
                if self.z[i] & m != 0 {
                    self.r[row] ^= 1;
                }
                self.z[i] ^= m;
            }
        }
    }

    pub fn cnot(&mut self, c: usize, t: usize) {
        assert_ne!(c, t);
        let w = self.w;
        for row in 0..2 * self.n {
            let xc = Self::bit(&self.x, w, row, c);
            let zt = Self::bit(&self.z, w, row, t);
            if !xc && !zt {
                continue;
            }
            let xt = Self::bit(&self.x, w, row, t);
            let zc = Self::bit(&self.z, w, row, c);
            if xc && zt && (xt == zc) {
                self.r[row] ^= 1;
            }
            if xc {
                self.x[row * w + t / 64] ^= 1 << (t % 64);
            }
            if zt {
                self.z[row * w + c / 64] ^= 1 << (c % 64);
            }
        }
    }

    pub fn cz(&mut self, a: usize, b: usize) {
        assert_ne!(a, b);
        let w = self.w;
        for row in 0..2 * self.n {
            let xa = Self::bit(&self.x, w, row, a);
            let xb = Self::bit(&self.x, w, row, b);
            if !xa && !xb {
                continue;
            }
            let za = Self::bit(&self.z, w, row, a);
            let zb = Self::bit(&self.z, w, row, b);
            if xa && xb && (za != zb) {
                self.r[row] ^= 1;
            }
            if xb {
                self.z[row * w + a / 64] ^= 1 << (a % 64);
            }
            if xa {
                self.z[row * w + b / 64] ^= 1 << (b % 64);
            }
        }
    }

    pub fn x_gate(&mut self, q: usize) {
        let w = self.w;
        for row in 0..2 * self.n {
            if Self::bit(&self.z, w, row, q) {
                self.r[row] ^= 1;
            }
        }
    }

    pub fn z_gate(&mut self, q: usize) {
        let w = self.w;
        for row in 0..2 * self.n {
            if Self::bit(&self.x, w, row, q) {
                self.r[row] ^= 1;
            }
        }
    }

    /// Row `h` becomes `row_i · row_h`.
    fn rowsum(&mut self, h: usize, i: usize) {
        let w = self.w;
        let mut k: i64 = 2 * (self.r[h] as i64 + self.r[i] as i64);
        for j in 0..w {
            let (xi, zi) = (self.x[i * w + j], self.z[i * w + j]);
            let (xh, zh) = (self.x[h * w + j], self.z[h * w + j]);
            k += product_phase_word(xi, zi, xh, zh);
            self.x[h * w + j] = xh ^ xi;
            self.z[h * w + j] = zh ^ zi;
        }
        // Destabilizer rows may pick up ±i; only the sign of stabilizers matters.
        self.r[h] = (k.rem_euclid(4) / 2) as u8;
    }

    fn random_pivot(&self, q: usize) -> Option<usize> {
        (self.n..2 * self.n).find(|&row| Self::bit(&self.x, self.w, row, q))
    }

    fn deterministic_outcome(&mut self, q: usize) -> bool {
        let scratch = 2 * self.n;
        let range = self.row_word_range(scratch);
        self.x[range.clone()].fill(0);
        self.z[range].fill(0);
        self.r[scratch] = 0;
        for i in 0..self.n {
            if Self::bit(&self.x, self.w, i, q) {
                self.rowsum(scratch, i + self.n);
            }
        }
        self.r[scratch] == 1
    }

    fn collapse(&mut self, q: usize, p: usize, outcome: bool) {
        for i in 0..2 * self.n {
            if i != p && Self::bit(&self.x, self.w, i, q) {
                self.rowsum(i, p);
            }
        }
        let (w, dest) = (self.w, p - self.n);
        self.x.copy_within(p * w..(p + 1) * w, dest * w);
        self.z.copy_within(p * w..(p + 1) * w, dest * w);
        self.r[dest] = self.r[p];
        let range = self.row_word_range(p);
        self.x[range.clone()].fill(0);
        self.z[range].fill(0);
        self.z[p * w + q / 64] |= 1 << (q % 64);
        self.r[p] = outcome as u8;
    }

    /// Measure `Z_q`, collapsing the state. Returns the outcome bit.
    pub fn measure<R: Rng + ?Sized>(&mut self, q: usize, rng: &mut R) -> bool {
        match self.random_pivot(q) {
            Some(p) => {
                let outcome = rng.random::<bool>();
                self.collapse(q, p, outcome);
                outcome
            }
            None => self.deterministic_outcome(q),
        }
    }

    /// The outcome of measuring `Z_q` if it is deterministic.
    pub fn peek(&mut self, q: usize) -> Option<bool> {
        match self.random_pivot(q) {
            Some(_) => None,
            None => Some(self.deterministic_outcome(q)),
        }
    }

    /// Force the outcome of measuring `Z_q` to `bit`.
    ///
    /// On [`Branch::Impossible`] the state is left unchanged.
    pub fn postselect(&mut self, q: usize, bit: bool) -> Branch {
        match self.random_pivot(q) {
            Some(p) => {
                self.collapse(q, p, bit);
                Branch::Random
            }
            None if self.deterministic_outcome(q) == bit => Branch::Deterministic,
            None => Branch::Impossible,
        }
    }

    fn row_word(&self, row: usize) -> PauliWord {
        let range = self.row_word_range(row);
        let phase = if self.r[row] == 1 { Phase::MINUS_ONE } else { Phase::ONE };
        PauliWord::from_raw(self.n, self.x[range.clone()].to_vec(), self.z[range].to_vec(), phase)
    }

    pub fn stabilizers(&self) -> Vec<PauliWord> {
        (self.n..2 * self.n).map(|r| self.row_word(r)).collect()
    }

    pub fn destabilizers(&self) -> Vec<PauliWord> {
        (0..self.n).map(|r| self.row_word(r)).collect()
    }

    /// `+1`/`-1` if `±P` is in the stabilizer group, `0` otherwise.
    pub fn expect(&self, p: &PauliWord) -> Result<i8> {
        if p.num_qubits() != self.n {
            return Err(Error::SizeMismatch(self.n, p.num_qubits()));
        }
        let stabs = self.stabilizers();
        if stabs.iter().any(|s| s.symplectic_parity(p) != 0) {
            return Ok(0);
        }
        let mut acc = PauliWord::identity(self.n);
        for (i, d) in self.destabilizers().iter().enumerate() {
            if d.symplectic_parity(p) != 0 {
                acc = acc.mul(&stabs[i])?;
            }
        }
        debug_assert!(acc.same_operator(p));
        let rel = Phase::from_exponent(acc.phase().exponent() as i64 - p.phase().exponent() as i64);
        Ok(rel.sign().unwrap_or(0))
    }

    /// Check the tableau is a valid symplectic basis with commuting,
    /// Hermitian stabilizers.
    pub fn is_valid(&self) -> bool {
        let d = self.destabilizers();
        let s = self.stabilizers();
        for i in 0..self.n {
            for j in 0..self.n {
                if s[i].symplectic_parity(&s[j]) != 0 || d[i].symplectic_parity(&d[j]) != 0 {
                    return false;
                }
                if d[i].symplectic_parity(&s[j]) != u32::from(i == j) {
                    return false;
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::stream;

    fn p(s: &str) -> PauliWord {
        s.parse().unwrap()
    }

    fn bell() -> StabilizerState {
        let mut s = StabilizerState::new(2);
        s.h(0);
        s.cnot(0, 1);
        s
    }

    #[test]
    fn zero_state_measures_zero() {
        let mut s = StabilizerState::new(1);
        assert!(!s.measure(0, &mut stream(1, 0)));
        assert_eq!(s.postselect(0, true), Branch::Impossible);
        assert_eq!(s.postselect(0, false), Branch::Deterministic);
    }

    #[test]
    fn bell_outcomes_correlate() {
        for i in 0..20 {
            let mut s = bell();
            let mut rng = stream(3, i);
            let a = s.measure(0, &mut rng);
            let b = s.measure(1, &mut rng);
            assert_eq!(a, b);
        }
    }

    #[test]
    fn bell_postselection() {
        let mut s = bell();
        assert_eq!(s.postselect(0, true), Branch::Random);
        assert_eq!(s.postselect(1, false), Branch::Impossible);
        assert_eq!(s.postselect(1, true), Branch::Deterministic);
    }

    #[test]
    fn bell_expectations() {
        let s = bell();
        assert_eq!(s.expect(&p("XX")).unwrap(), 1);
        assert_eq!(s.expect(&p("ZZ")).unwrap(), 1);
        assert_eq!(s.expect(&p("YY")).unwrap(), -1);
        assert_eq!(s.expect(&p("ZI")).unwrap(), 0);
        assert!(s.expect(&p("Z")).is_err());
        assert!(s.is_valid());
    }

    #[test]
    fn hadamard_is_fair() {
        let trials = 10_000;
        let mut ones = 0;
        for i in 0..trials {
            let mut s = StabilizerState::new(1);
            s.h(0);
            ones += s.measure(0, &mut stream(11, i)) as u64;
        }
        let sigma = (trials as f64 * 0.25).sqrt();
        assert!((ones as f64 - trials as f64 / 2.0).abs() < 3.0 * sigma);
    }

    #[test]
    fn s_gate_phases() {
        // S H |0> = |+i>, stabilized by +Y.
        let mut s = StabilizerState::new(1);
        s.h(0);
        s.s(0);
        assert_eq!(s.expect(&p("Y")).unwrap(), 1);
        s.s(0);
        assert_eq!(s.expect(&p("X")).unwrap(), -1);
        s.z_gate(0);
        assert_eq!(s.expect(&p("X")).unwrap(), 1);
    }

    #[test]
    fn wide_register() {
        let n = 150;
        let mut s = StabilizerState::new(n);
        s.h(3);
        s.cnot(3, 140);
        s.cz(140, 149);
        s.x_gate(149);
        assert!(s.is_valid());
        let mut zz = PauliWord::identity(n);
        zz.set(3, crate::pauli::Pauli::Z);
        zz.set(140, crate::pauli::Pauli::Z);
        assert_eq!(s.expect(&zz).unwrap(), 1);
        let mut rng = stream(5, 0);
        let a = s.measure(3, &mut rng);
        assert_eq!(s.measure(140, &mut rng), a);
        assert!(s.measure(149, &mut rng));
    }
}
