use std::collections::BTreeSet;

use num_rational::Ratio;

use super::{ClassicalCircuit, Wire};
use crate::error::{Error, Result};

/// Largest `inputs + random` count accepted by the exhaustive oracle.
pub const CORRELATION_INPUT_CAP: usize = 24;

/// Syntactic lightcones: output `o` is in the cone of data input `i` iff a
/// path leads from `i` to `o`. Random wires are not tracked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lightcones {
    num_inputs: usize,
    num_outputs: usize,
    deps: Vec<Vec<u32>>,
    cones: Vec<Vec<u32>>,
}

fn merge_sorted(sets: &[&[u32]]) -> Vec<u32> {
    let mut out: Vec<u32> = sets.iter().flat_map(|s| s.iter().copied()).collect();
    out.sort_unstable();
    out.dedup();
    out
}

impl Lightcones {
    pub fn compute(c: &ClassicalCircuit) -> Self {
        let mut gate_deps: Vec<Vec<u32>> = Vec::with_capacity(c.gates().len());
        let single: Vec<[u32; 1]> = (0..c.num_inputs() as u32).map(|i| [i]).collect();
        let wire_deps = |w: Wire, gate_deps: &[Vec<u32>]| -> Vec<u32> {
            match w {
                Wire::Input(i) => single[i].to_vec(),
                Wire::Random(_) => Vec::new(),
                Wire::Gate(g) => gate_deps[g].clone(),
            }
        };
        for gate in c.gates() {
            let parts: Vec<Vec<u32>> = gate.inputs.iter().map(|&w| wire_deps(w, &gate_deps)).collect();
            let refs: Vec<&[u32]> = parts.iter().map(Vec::as_slice).collect();
            gate_deps.push(merge_sorted(&refs));
        }
        let deps: Vec<Vec<u32>> = c.outputs().iter().map(|&w| wire_deps(w, &gate_deps)).collect();
        let mut cones = vec![Vec::new(); c.num_inputs()];
        for (o, d) in deps.iter().enumerate() {
            for &i in d {
                cones[i as usize].push(o as u32);
            }
        }
        Lightcones { num_inputs: c.num_inputs(), num_outputs: c.num_outputs(), deps, cones }
    }

    pub fn num_inputs(&self) -> usize {
        self.num_inputs
    }

    pub fn num_outputs(&self) -> usize {
        self.num_outputs
    }

    /// Outputs in the lightcone of data input `i`, ascending.
    pub fn of_input(&self, i: usize) -> Result<&[u32]> {
        self.cones
            .get(i)
            .map(Vec::as_slice)
            .ok_or_else(|| Error::InvalidInput(format!("input {i} outside {} inputs", self.num_inputs)))
    }

    /// Data inputs output `o` depends on, ascending.
    pub fn dependencies(&self, o: usize) -> &[u32] {
        &self.deps[o]
    }

    /// Union of the lightcones of a set of inputs.
    pub fn of_inputs(&self, inputs: &[usize]) -> Result<BTreeSet<usize>> {
        let mut out = BTreeSet::new();
        for &i in inputs {
            out.extend(self.of_input(i)?.iter().map(|&o| o as usize));
        }
        Ok(out)
    }

    fn check_layout(&self, n: usize) -> Result<()> {
        if self.num_inputs != 6 * n || self.num_outputs != 6 * n {
            return Err(Error::InvalidInput(format!(
                "circuit has {} inputs and {} outputs; the block layout for n={n} needs {}",
                self.num_inputs,
                self.num_outputs,
                6 * n
            )));
        }
        Ok(())
    }
}

fn x_bits(k: usize) -> [usize; 3] {
    let o = 3 * (k - 1);
    [o, o + 1, o + 2]
}

fn y_bits(n: usize, l: usize) -> [usize; 3] {
    let o = 3 * (n + l - 1);
    [o, o + 1, o + 2]
}

/// Event `E_{k,l}`: `L(x_k) ∩ L(y_l) = ∅`, `w_l ∉ L(x_k)`, `z_k ∉ L(y_l)`.
pub fn event_e(cones: &Lightcones, n: usize, k: usize, l: usize) -> Result<bool> {
    cones.check_layout(n)?;
    if k == 0 || k >= l || l > n {
        return Err(Error::InvalidInput(format!("need 1 <= k < l <= n, got k={k}, l={l}, n={n}")));
    }
    let lx = cones.of_inputs(&x_bits(k))?;
    let ly = cones.of_inputs(&y_bits(n, l))?;
    // outputs share the input layout: z_k at x_k's positions, w_l at y_l's
    Ok(lx.is_disjoint(&ly)
        && y_bits(n, l).iter().all(|o| !lx.contains(o))
        && x_bits(k).iter().all(|o| !ly.contains(o)))
}

/// Fraction of pairs `k < l` for which `E_{k,l}` holds, by checking each pair.
pub fn prob_e_naive(cones: &Lightcones, n: usize) -> Result<Ratio<u64>> {
    cones.check_layout(n)?;
    let mut good = 0u64;
    for k in 1..=n {
        for l in k + 1..=n {
            good += u64::from(event_e(cones, n, k, l)?);
        }
    }
    Ok(Ratio::new(good, (n * (n - 1) / 2) as u64))
}

/// Exact `Pr[E]` for uniform inputs from `S`: the fraction of pairs `k < l`
/// with `E_{k,l}`.
///
/// Instead of testing all pairs, this enumerates the pairs that break `E`:
/// every output reading both an `x_k` bit and a `y_l` bit, every `w_l` bit
/// reading `x_k`, and every `z_k` bit reading `y_l`.
pub fn prob_e(cones: &Lightcones, n: usize) -> Result<Ratio<u64>> {
    cones.check_layout(n)?;
    let total = (n * (n - 1) / 2) as u64;
    if total == 0 {
        return Err(Error::InvalidInput("need n >= 2 blocks".into()));
    }
    let key = |k: usize, l: usize| (k * (n + 1) + l) as u64;
    let mut bad: Vec<u64> = Vec::new();
    let half = 3 * n;
    let mut xs: Vec<usize> = Vec::new();
    let mut ys: Vec<usize> = Vec::new();
    for o in 0..cones.num_outputs {
        xs.clear();
        ys.clear();
        for &i in cones.dependencies(o) {
            let i = i as usize;
            if i < half {
                xs.push(i / 3 + 1);
            } else {
                ys.push((i - half) / 3 + 1);
            }
        }
        xs.dedup();
        ys.dedup();
        for &k in &xs {
            for &l in ys.iter().filter(|&&l| l > k) {
                bad.push(key(k, l));
            }
        }
        if o < half {
            // z_k with k = o/3 + 1 must not depend on y_l
            let k = o / 3 + 1;
            bad.extend(ys.iter().filter(|&&l| l > k).map(|&l| key(k, l)));
        } else {
            let l = (o - half) / 3 + 1;
            bad.extend(xs.iter().filter(|&&k| k < l).map(|&k| key(k, l)));
        }
    }
    bad.sort_unstable();
    bad.dedup();
    Ok(Ratio::new(total - bad.len() as u64, total))
}

const LANE_PATTERNS: [u64; 6] = [
    0xAAAA_AAAA_AAAA_AAAA,
    0xCCCC_CCCC_CCCC_CCCC,
    0xF0F0_F0F0_F0F0_F0F0,
    0xFF00_FF00_FF00_FF00,
    0xFFFF_0000_FFFF_0000,
    0xFFFF_FFFF_0000_0000,
];

/// `result[i][j]`: whether flipping data input `i` changes output `j` for
/// some assignment of all other data and random inputs.
pub fn correlated_all(c: &ClassicalCircuit) -> Result<Vec<Vec<bool>>> {
    let total_wires = c.num_inputs() + c.num_random();
    if total_wires > CORRELATION_INPUT_CAP {
        return Err(Error::SizeCap { what: "exhaustive correlation inputs", got: total_wires, cap: CORRELATION_INPUT_CAP });
    }
    let chunks = 1usize << total_wires.saturating_sub(6);
    let word = |q: usize, chunk: usize| -> u64 {
        if q < 6 {
            LANE_PATTERNS[q]
        } else if chunk >> (q - 6) & 1 == 1 {
            !0
        } else {
            0
        }
    };
    let outs: Vec<Vec<u64>> = (0..chunks)
        .map(|chunk| {
            let ins: Vec<u64> = (0..c.num_inputs()).map(|q| word(q, chunk)).collect();
            let rnd: Vec<u64> = (0..c.num_random()).map(|q| word(c.num_inputs() + q, chunk)).collect();
            c.eval_words(&ins, &rnd)
        })
        .collect();
    let mut result = vec![vec![false; c.num_outputs()]; c.num_inputs()];
    for (i, row) in result.iter_mut().enumerate() {
        for (chunk, out) in outs.iter().enumerate() {
            for (j, &w) in out.iter().enumerate() {
                if row[j] {
                    continue;
                }
                let flipped = if i < 6 {
                    let (m, s) = (LANE_PATTERNS[i], 1u32 << i);
                    ((w & m) >> s) | ((w & !m) << s)
                } else {
                    outs[chunk ^ (1 << (i - 6))][j]
                };
                row[j] = w != flipped;
            }
        }
    }
    Ok(result)
}

pub fn correlated_exact(c: &ClassicalCircuit, i: usize, j: usize) -> Result<bool> {
    if i >= c.num_inputs() || j >= c.num_outputs() {
        return Err(Error::InvalidInput(format!("pair ({i}, {j}) outside the circuit")));
    }
    Ok(correlated_all(c)?[i][j])
}
