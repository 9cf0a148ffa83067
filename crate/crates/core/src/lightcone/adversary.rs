use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::cone::{event_e, Lightcones};
use super::{ClassicalCircuit, ClassicalGate, Wire};
use crate::error::{Error, Result};
use crate::game::{e, order, Assignment, DeterministicStrategy, EdgeId, Player, NUM_EDGES};
use crate::mpp::{sample_s, verify_support, MppOutput};
use crate::rng::stream;
use crate::stats::{wilson_interval, Z_99};

/// Outputs copy inputs: `z_j := x_j`, `w_j := y_j`.
pub fn identity_circuit(n: usize) -> ClassicalCircuit {
    ClassicalCircuit::new(6 * n, 0, Vec::new(), (0..6 * n).map(Wire::Input).collect()).expect("valid wiring")
}

/// Every output bit is `bit`. The single gate reads a random wire, so no
/// data input has a lightcone.
pub fn constant_circuit(n: usize, bit: bool) -> ClassicalCircuit {
    let g = ClassicalGate::new(vec![Wire::Random(0)], vec![bit, bit]).expect("valid gate");
    ClassicalCircuit::new(6 * n, 1, vec![g], vec![Wire::Gate(0); 6 * n]).expect("valid wiring")
}

fn block_gates(gates: &mut Vec<ClassicalGate>, first_input: usize, s: &DeterministicStrategy) {
    for rank in 1..=3 {
        let table = (0..8usize)
            .map(|t| {
                // in[m] is code bit m, most significant first
                let code = (t & 1) << 2 | (t >> 1 & 1) << 1 | (t >> 2 & 1);
                EdgeId::new(code as u8).is_ok_and(|edge| s.answer(edge).at_rank(rank) == -1)
            })
            .collect();
        let ins = (0..3).map(|m| Wire::Input(first_input + m)).collect();
        gates.push(ClassicalGate::new(ins, table).expect("fan-in 3 table"));
    }
}

/// Depth-1 circuit in which block `j` plays a fixed game strategy locally:
/// `z_j` is Alice's rank 1..3 answer to `x_j`, `w_j` is Bob's answer to
/// `y_j`; idle codes give zeros.
pub fn strategy_circuit(n: usize, alice: &DeterministicStrategy, bob: &DeterministicStrategy) -> ClassicalCircuit {
    let mut gates = Vec::with_capacity(6 * n);
    for j in 0..n {
        block_gates(&mut gates, 3 * j, alice);
    }
    for j in 0..n {
        block_gates(&mut gates, 3 * (n + j), bob);
    }
    let outputs = (0..6 * n).map(Wire::Gate).collect();
    ClassicalCircuit::new(6 * n, 0, gates, outputs).expect("valid wiring")
}

/// The best pair of local strategies on `S` when the Bell-measurement
/// outputs are all zero (so every parameter is `+1`), out of the 25 equally
/// likely active-code pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalOptimum {
    pub alice: DeterministicStrategy,
    pub bob: DeterministicStrategy,
    pub wins: u32,
}

fn completed(mask: u8, s: EdgeId) -> Assignment {
    let v = |i: u8| if mask >> i & 1 == 1 { -1 } else { 1 };
    Assignment::new([v(0), v(1), v(2), v(0) * v(1) * v(2) * e(s)]).expect("±1")
}

/// Exhaustive search over the `8^5` Alice strategies with completed fourth
/// answers, Bob replying optimally per edge. On `x_k = y_l` the outputs must
/// agree on ranks 1..3.
pub fn best_local_strategy_on_s() -> LocalOptimum {
    let edges = EdgeId::all();
    let score_edge = |alice: &[u8; NUM_EDGES], y: EdgeId| -> (u32, u8) {
        let mut best = (0, 0);
        for wm in 0..8u8 {
            let w = completed(wm, y);
            let mut sc = 0;
            for x in edges {
                let a = completed(alice[x.index()], x);
                let win = if x == y {
                    (1..=3).all(|r| a.at_rank(r) == w.at_rank(r))
                } else {
                    a.at_rank(order(x, y).unwrap()) == w.at_rank(order(y, x).unwrap())
                };
                sc += u32::from(win);
            }
            if sc > best.0 {
                best = (sc, wm);
            }
        }
        best
    };
    let (wins, idx) = (0u32..1 << 15)
        .into_par_iter()
        .map(|idx| {
            let alice: [u8; NUM_EDGES] = std::array::from_fn(|s| (idx >> (3 * s) & 7) as u8);
            (edges.iter().map(|&y| score_edge(&alice, y).0).sum::<u32>(), idx)
        })
        .reduce(|| (0, u32::MAX), |a, b| if a.0 > b.0 || (a.0 == b.0 && a.1 < b.1) { a } else { b });
    let alice: [u8; NUM_EDGES] = std::array::from_fn(|s| (idx >> (3 * s) & 7) as u8);
    let bob: [u8; NUM_EDGES] = std::array::from_fn(|y| score_edge(&alice, edges[y]).1);
    LocalOptimum {
        alice: DeterministicStrategy::new(Player::A, std::array::from_fn(|s| completed(alice[s], edges[s]))),
        bob: DeterministicStrategy::new(Player::B, std::array::from_fn(|s| completed(bob[s], edges[s]))),
        wins,
    }
}

/// Success statistics of a classical circuit on uniform inputs from `S`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AdversaryReport {
    pub n: usize,
    pub samples: u64,
    pub successes: u64,
    pub success_rate: f64,
    pub ci: (f64, f64),
    pub samples_given_e: u64,
    pub successes_given_e: u64,
    pub success_rate_given_e: Option<f64>,
    pub ci_given_e: Option<(f64, f64)>,
    pub depth: usize,
    pub max_fan_in: usize,
}

/// Sample `samples` inputs from `S` (sample `i` uses stream `(seed, i)`),
/// run the circuit with fresh random wires, and score each output by support
/// membership. Intervals are Wilson 99%.
pub fn eval_adversary(c: &ClassicalCircuit, n: usize, samples: u64, seed: u64) -> Result<AdversaryReport> {
    if c.num_inputs() != 6 * n || c.num_outputs() != 6 * n {
        return Err(Error::InvalidInput(format!(
            "circuit has {} inputs and {} outputs; n={n} needs {}",
            c.num_inputs(),
            c.num_outputs(),
            6 * n
        )));
    }
    let cones = Lightcones::compute(c);
    let results: Vec<(bool, bool)> = (0..samples)
        .into_par_iter()
        .map(|i| -> Result<(bool, bool)> {
            let mut rng = stream(seed, i);
            let x = sample_s(n, &mut rng)?;
            let random: Vec<bool> = (0..c.num_random()).map(|_| rng.random()).collect();
            let out = MppOutput::from_packed(c.eval(&x.packed(), &random)?)?;
            let idx = x.subset_index().expect("sampled from S");
            Ok((verify_support(&x, &out)?, event_e(&cones, n, idx.k, idx.l)?))
        })
        .collect::<Result<_>>()?;
    let successes = results.iter().filter(|r| r.0).count() as u64;
    let given_e: Vec<bool> = results.iter().filter(|r| r.1).map(|r| r.0).collect();
    let (se, ne) = (given_e.iter().filter(|&&s| s).count() as u64, given_e.len() as u64);
    Ok(AdversaryReport {
        n,
        samples,
        successes,
        success_rate: if samples > 0 { successes as f64 / samples as f64 } else { 0.0 },
        ci: wilson_interval(successes, samples, Z_99),
        samples_given_e: ne,
        successes_given_e: se,
        success_rate_given_e: (ne > 0).then(|| se as f64 / ne as f64),
        ci_given_e: (ne > 0).then(|| wilson_interval(se, ne, Z_99)),
        depth: c.depth(),
        max_fan_in: c.max_fan_in(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{brute_force_optimal, GameParams};
    use crate::lightcone::prob_e;
    use num_rational::Ratio;

    #[test]
    fn strategy_circuit_reads_codes_msb_first() {
        let alice = DeterministicStrategy::from_masks(Player::A, [1, 2, 4, 0, 7]);
        let bob = DeterministicStrategy::constant(Player::B, Assignment::ONES);
        let c = strategy_circuit(2, &alice, &bob);
        assert_eq!(c.depth(), 1);
        assert_eq!(c.max_fan_in(), 3);
        // x_1 = 001 (edge 1, mask 2: rank 2 is -1), everything else idle
        let mut input = vec![true; 12];
        input[..3].copy_from_slice(&[false, false, true]);
        let out = c.eval(&input, &[]).unwrap();
        assert_eq!(&out[..3], &[false, true, false]);
        assert!(out[3..].iter().all(|&b| !b));
        assert_eq!(prob_e(&Lightcones::compute(&c), 2).unwrap(), Ratio::from_integer(1));
    }

    #[test]
    fn constant_circuits_mostly_fail() {
        let r = eval_adversary(&constant_circuit(4, true), 4, 300, 1).unwrap();
        assert_eq!(r.samples, 300);
        assert!(r.success_rate < 0.5);
        assert_eq!(r.samples_given_e, 300);
    }

    #[test]
    fn local_optimum_on_s() {
        let opt = best_local_strategy_on_s();
        assert_eq!(opt.wins, 23);
        let r = eval_adversary(&strategy_circuit(3, &opt.alice, &opt.bob), 3, 2000, 2).unwrap();
        let (lo, hi) = r.ci;
        assert!(lo <= 23.0 / 25.0 && 23.0 / 25.0 <= hi, "{r:?}");
    }

    #[test]
    fn embedded_game_witness_wins_distinct_pairs() {
        let opt = brute_force_optimal(&GameParams::ONES);
        let c = strategy_circuit(2, &opt.alice, &opt.bob);
        let r = eval_adversary(&c, 2, 2000, 3).unwrap();
        assert!(r.success_rate >= 0.8 - 0.03, "{r:?}");
    }

    #[test]
    fn layout_mismatch() {
        assert!(eval_adversary(&identity_circuit(3), 4, 10, 0).is_err());
    }
}
