//! The magic pentagram problem: a `6n`-qubit constant-depth Clifford circuit
//! that chains `n` copies of the game through entanglement swapping.
//!
//! Input and output layouts: `x₁‖…‖xₙ‖y₁‖…‖yₙ` and `z₁‖…‖zₙ‖w₁‖…‖wₙ`, three
//! bits per block. Output bit `b` stands for the value `(-1)^b`.

mod circuit;
mod round;
mod verify;

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::EdgeId;

pub use circuit::{
    build_mpp_circuit, output_distribution, run_mpp, u_gate, v_gate, Backend, MppCircuit, STATEVECTOR_MAX_BLOCKS,
};
pub use round::{certify_round, prepare_phi, prepare_phi_gates, prepare_phi_statevector, quantum_round, shared_state};
pub use verify::{extract_params, verify_game_relation, verify_support};

/// A 3-bit block code. `000..100` name edges; `101`, `110`, `111` are idle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlockCode(u8);

impl BlockCode {
    pub const IDLE: BlockCode = BlockCode(7);

    pub fn new(v: u8) -> Result<Self> {
        if v < 8 {
            Ok(BlockCode(v))
        } else {
            Err(Error::InvalidInput(format!("block code {v} exceeds 3 bits")))
        }
    }

    pub fn from_edge(e: EdgeId) -> Self {
        BlockCode(e.id())
    }

    pub fn value(self) -> u8 {
        self.0
    }

    pub fn edge(self) -> Option<EdgeId> {
        EdgeId::new(self.0).ok()
    }

    pub fn is_idle(self) -> bool {
        self.edge().is_none()
    }

    /// Most significant bit first.
    pub fn bits(self) -> [bool; 3] {
        [self.0 & 4 != 0, self.0 & 2 != 0, self.0 & 1 != 0]
    }

    pub fn from_bits(b: [bool; 3]) -> Self {
        BlockCode((b[0] as u8) << 2 | (b[1] as u8) << 1 | b[2] as u8)
    }
}

impl fmt::Display for BlockCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&bits_to_string(&self.bits()))
    }
}

impl FromStr for BlockCode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bits = parse_bits(s)?;
        let arr: [bool; 3] = bits
            .try_into()
            .map_err(|_| Error::Parse(format!("block code {s:?} is not 3 bits")))?;
        Ok(BlockCode::from_bits(arr))
    }
}

impl Serialize for BlockCode {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for BlockCode {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub(crate) fn parse_bits(s: &str) -> Result<Vec<bool>> {
    s.trim()
        .chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            other => Err(Error::Parse(format!("unexpected character {other:?} in bit string"))),
        })
        .collect()
}

pub(crate) fn bits_to_string(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

/// `(k, l)` with `1 <= k < l <= n`, naming the instance family `S_{k,l}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SubsetIndex {
    pub k: usize,
    pub l: usize,
}

impl SubsetIndex {
    pub fn new(k: usize, l: usize) -> Result<Self> {
        if k == 0 || k >= l {
            return Err(Error::InvalidInput(format!("need 1 <= k < l, got k={k}, l={l}")));
        }
        Ok(SubsetIndex { k, l })
    }

    /// All pairs for `n` blocks in lexicographic order.
    pub fn all(n: usize) -> impl Iterator<Item = SubsetIndex> {
        (1..=n).flat_map(move |k| (k + 1..=n).map(move |l| SubsetIndex { k, l }))
    }

    pub fn count(n: usize) -> usize {
        n * n.saturating_sub(1) / 2
    }
}

/// Qubit `p_s(t)`, `s` in `1..=3`, `t` in `1..=2n`, sits at `3(t-1) + (s-1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QubitGrid {
    pub n: usize,
}

impl QubitGrid {
    pub fn num_qubits(&self) -> usize {
        6 * self.n
    }

    pub fn index(&self, s: usize, t: usize) -> usize {
        debug_assert!((1..=3).contains(&s) && (1..=2 * self.n).contains(&t));
        3 * (t - 1) + (s - 1)
    }

    /// Qubits of column `t`, rows 1..=3.
    pub fn column(&self, t: usize) -> [usize; 3] {
        [self.index(1, t), self.index(2, t), self.index(3, t)]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MppInput {
    pub n: usize,
    pub x: Vec<BlockCode>,
    pub y: Vec<BlockCode>,
}

impl MppInput {
    pub fn new(x: Vec<BlockCode>, y: Vec<BlockCode>) -> Result<Self> {
        if x.len() != y.len() {
            return Err(Error::InvalidInput(format!("{} x blocks but {} y blocks", x.len(), y.len())));
        }
        if x.len() < 2 {
            return Err(Error::InvalidInput(format!("need n >= 2 blocks, got {}", x.len())));
        }
        Ok(MppInput { n: x.len(), x, y })
    }

    /// Element of `S_{k,l}` with the given active codes.
    pub fn instance(n: usize, idx: SubsetIndex, xk: EdgeId, yl: EdgeId) -> Result<Self> {
        if idx.l > n {
            return Err(Error::InvalidInput(format!("l={} exceeds n={n}", idx.l)));
        }
        let mut x = vec![BlockCode::IDLE; n];
        let mut y = vec![BlockCode::IDLE; n];
        x[idx.k - 1] = BlockCode::from_edge(xk);
        y[idx.l - 1] = BlockCode::from_edge(yl);
        MppInput::new(x, y)
    }

    /// `x_j` for 1-based `j`.
    pub fn x_block(&self, j: usize) -> BlockCode {
        self.x[j - 1]
    }

    pub fn y_block(&self, j: usize) -> BlockCode {
        self.y[j - 1]
    }

    pub fn packed(&self) -> Vec<bool> {
        self.x.iter().chain(&self.y).flat_map(|c| c.bits()).collect()
    }

    pub fn from_packed(bits: &[bool]) -> Result<Self> {
        if bits.len() % 6 != 0 || bits.is_empty() {
            return Err(Error::InvalidInput(format!("input length {} is not a positive multiple of 6", bits.len())));
        }
        let n = bits.len() / 6;
        let codes: Vec<BlockCode> = bits.chunks(3).map(|c| BlockCode::from_bits([c[0], c[1], c[2]])).collect();
        MppInput::new(codes[..n].to_vec(), codes[n..].to_vec())
    }

    pub fn to_bitstring(&self) -> String {
        bits_to_string(&self.packed())
    }

    pub fn from_bitstring(s: &str) -> Result<Self> {
        Self::from_packed(&parse_bits(s)?)
    }

    /// Parse either a bit string or the JSON object form.
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.starts_with('{') {
            let v: MppInput = serde_json::from_str(t)?;
            let checked = MppInput::new(v.x, v.y)?;
            if checked.n != v.n {
                return Err(Error::InvalidInput(format!("declared n={} but {} blocks given", v.n, checked.n)));
            }
            Ok(checked)
        } else {
            Self::from_bitstring(t)
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("input serialization is infallible")
    }

    /// The `(k, l)` with `self ∈ S_{k,l}`, if any.
    pub fn subset_index(&self) -> Option<SubsetIndex> {
        let active = |v: &[BlockCode]| -> Option<usize> {
            let mut it = v.iter().enumerate().filter(|(_, c)| **c != BlockCode::IDLE);
            let (i, c) = it.next()?;
            (it.next().is_none() && !c.is_idle()).then_some(i + 1)
        };
        let (k, l) = (active(&self.x)?, active(&self.y)?);
        SubsetIndex::new(k, l).ok()
    }

    /// Active edges `(x_k, y_l)` and the subset index, or an error if outside `S`.
    pub fn instance_data(&self) -> Result<(SubsetIndex, EdgeId, EdgeId)> {
        let idx = self
            .subset_index()
            .ok_or_else(|| Error::NotInInstanceSet(self.to_bitstring()))?;
        let xk = self.x_block(idx.k).edge().expect("active code");
        let yl = self.y_block(idx.l).edge().expect("active code");
        Ok((idx, xk, yl))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MppOutput {
    pub n: usize,
    bits: Vec<bool>,
}

#[derive(Serialize, Deserialize)]
struct OutputJson {
    n: usize,
    z: Vec<String>,
    w: Vec<String>,
}

impl MppOutput {
    pub fn from_packed(bits: Vec<bool>) -> Result<Self> {
        if bits.len() % 6 != 0 || bits.is_empty() {
            return Err(Error::InvalidInput(format!("output length {} is not a positive multiple of 6", bits.len())));
        }
        Ok(MppOutput { n: bits.len() / 6, bits })
    }

    pub fn zeros(n: usize) -> Self {
        MppOutput { n, bits: vec![false; 6 * n] }
    }

    pub fn packed(&self) -> &[bool] {
        &self.bits
    }

    pub fn to_bitstring(&self) -> String {
        bits_to_string(&self.bits)
    }

    pub fn from_bitstring(s: &str) -> Result<Self> {
        Self::from_packed(parse_bits(s)?)
    }

    /// Bits of `z_j`, 1-based.
    pub fn z_bits(&self, j: usize) -> [bool; 3] {
        let o = 3 * (j - 1);
        [self.bits[o], self.bits[o + 1], self.bits[o + 2]]
    }

    /// Bits of `w_j`, 1-based.
    pub fn w_bits(&self, j: usize) -> [bool; 3] {
        let o = 3 * (self.n + j - 1);
        [self.bits[o], self.bits[o + 1], self.bits[o + 2]]
    }

    /// `(z_j^1, z_j^2, z_j^3)` as `±1`.
    pub fn z(&self, j: usize) -> [i8; 3] {
        self.z_bits(j).map(to_value)
    }

    pub fn w(&self, j: usize) -> [i8; 3] {
        self.w_bits(j).map(to_value)
    }

    pub fn set_z_bit(&mut self, j: usize, i: usize, bit: bool) {
        self.bits[3 * (j - 1) + (i - 1)] = bit;
    }

    pub fn set_w_bit(&mut self, j: usize, i: usize, bit: bool) {
        self.bits[3 * (self.n + j - 1) + (i - 1)] = bit;
    }

    /// Parse either a bit string or the JSON object form.
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        if !t.starts_with('{') {
            return Self::from_bitstring(t);
        }
        let o: OutputJson = serde_json::from_str(t)?;
        if o.z.len() != o.n || o.w.len() != o.n {
            return Err(Error::InvalidInput(format!("declared n={} but {} z and {} w blocks", o.n, o.z.len(), o.w.len())));
        }
        let mut bits = Vec::with_capacity(6 * o.n);
        for block in o.z.iter().chain(&o.w) {
            let b = parse_bits(block)?;
            if b.len() != 3 {
                return Err(Error::Parse(format!("output block {block:?} is not 3 bits")));
            }
            bits.extend(b);
        }
        Self::from_packed(bits)
    }

    pub fn to_json(&self) -> String {
        let o = OutputJson {
            n: self.n,
            z: (1..=self.n).map(|j| bits_to_string(&self.z_bits(j))).collect(),
            w: (1..=self.n).map(|j| bits_to_string(&self.w_bits(j))).collect(),
        };
        serde_json::to_string(&o).expect("output serialization is infallible")
    }
}

pub(crate) fn to_value(b: bool) -> i8 {
    if b {
        -1
    } else {
        1
    }
}

/// Uniform sample from `S_{k,l}`.
pub fn sample_skl<R: Rng + ?Sized>(n: usize, idx: SubsetIndex, rng: &mut R) -> Result<MppInput> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("need n >= 2 blocks, got {n}")));
    }
    let xk = EdgeId::new(rng.random_range(0..5))?;
    let yl = EdgeId::new(rng.random_range(0..5))?;
    MppInput::instance(n, idx, xk, yl)
}

/// Uniform sample from `S`: a uniform pair `(k, l)`, then uniform active codes.
pub fn sample_s<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<MppInput> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("need n >= 2 blocks, got {n}")));
    }
    let mut r = rng.random_range(0..SubsetIndex::count(n));
    let mut k = 1;
    while r >= n - k {
        r -= n - k;
        k += 1;
    }
    let idx = SubsetIndex::new(k, k + 1 + r)?;
    sample_skl(n, idx, rng)
}
