//! Acceptance criteria 1–8. Each test prints one `criterion N: PASS|FAIL`
//! line followed by indented diagnostics, then asserts the criterion.

use std::collections::HashMap;
use std::time::Instant;

use num_rational::Ratio;
use pentagram::game::{order, pentagram, NUM_PAIRS};
use pentagram::lightcone::{
    best_local_strategy_on_s, bound_eq1, bound_eq3, constant_circuit, correlated_all, eval_adversary,
    identity_circuit, prob_e, prop5_lower_bound, random_nc0_circuit, random_nc0_circuit_with, strategy_circuit,
    AdversaryReport, ClassicalCircuit, Lightcones, RandomCircuitSpec,
};
use pentagram::mpp::{
    certify_round, output_distribution, quantum_round, run_mpp, sample_s, verify_game_relation, verify_support,
    Backend, MppInput, MppOutput, SubsetIndex,
};
use pentagram::rng::stream;
use pentagram::stats::{total_variation, wilson_half_width, Z_99};
use pentagram::{brute_force_optimal, win_probability, Assignment, DeterministicStrategy, EdgeId, GameParams, Player};
use rayon::prelude::*;

fn report(n: u32, pass: bool, summary: &str) {
    println!("criterion {n}: {} {summary}", if pass { "PASS" } else { "FAIL" });
}

/// All-(+1) labeling (violates only edge 4). Alice flips her edge-4 value at
/// `v* = 4 ∩ g`; Bob flips his edge-`g` values at `v*` and at `u = g ∩ h`.
fn one_pair_losing(g: EdgeId, h: EdgeId) -> (DeterministicStrategy, DeterministicStrategy) {
    let four = EdgeId::new(4).unwrap();
    let mut alice = [Assignment::ONES; 5];
    alice[4] = alice[4].flipped(order(four, g).unwrap());
    let mut bob = [Assignment::ONES; 5];
    bob[g.index()] = bob[g.index()].flipped(order(g, four).unwrap()).flipped(order(g, h).unwrap());
    (DeterministicStrategy::new(Player::A, alice), DeterministicStrategy::new(Player::B, bob))
}

#[test]
fn criterion_1_classical_optimum() {
    let t = Instant::now();
    let opt = brute_force_optimal(&GameParams::ONES);
    let recomputed = win_probability(&opt.alice, &opt.bob, &GameParams::ONES);
    let target = Ratio::new(19u32, NUM_PAIRS);
    let pass = opt.wins.ratio() == target && recomputed == opt.wins;
    report(
        1,
        pass,
        &format!("max_prob={} (target 19/20), witness recomputes to {}, {:.2?}", opt.wins, recomputed, t.elapsed()),
    );
    println!("  alice witness: {}", opt.alice.to_json());
    println!("  bob witness:   {}", opt.bob.to_json());
    for p in [GameParams::new([-1, 1, 1, -1, 1, 1]).unwrap(), GameParams::new([1, -1, -1, 1, -1, -1]).unwrap()] {
        println!("  params {:?}: max_prob={}", p.values(), brute_force_optimal(&p).wins);
    }
    let (g, h) = (EdgeId::new(0).unwrap(), EdgeId::new(1).unwrap());
    let (a, b) = one_pair_losing(g, h);
    println!("  one-pair-losing labeling construction (g=0, u on edge 1): {}", win_probability(&a, &b, &GameParams::ONES));
    assert!(recomputed == opt.wins, "witness does not recompute");
    assert!(pass, "classical optimum is {}, expected 19/20", opt.wins);
}

#[test]
fn criterion_2_quantum_perfection() {
    let edges = EdgeId::all();
    let pairs: Vec<(EdgeId, EdgeId)> =
        edges.iter().flat_map(|&x| edges.iter().filter(move |&&y| y != x).map(move |&y| (x, y))).collect();
    let params: Vec<GameParams> = GameParams::all().collect();
    let trials = 100u64;
    let cells: Vec<(usize, usize)> =
        (0..pairs.len()).flat_map(|i| (0..params.len()).map(move |j| (i, j))).collect();
    let (losses, uncertified): (u64, u64) = cells
        .par_iter()
        .map(|&(i, j)| {
            let (x, y) = pairs[i];
            let p = &params[j];
            let mut rng = stream(2, (i * params.len() + j) as u64);
            let mut lost = 0;
            for _ in 0..trials {
                let (z, w) = quantum_round(x, y, p, &mut rng).unwrap();
                lost += u64::from(!pentagram().referee(x, y, &z, &w, p).unwrap());
            }
            (lost, u64::from(!certify_round(x, y, p).unwrap()))
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    let total = cells.len() as u64 * trials;
    let pass = losses == 0 && uncertified == 0;
    report(
        2,
        pass,
        &format!("{} cells x {trials} trials: {losses}/{total} losses, {uncertified} uncertified cells", cells.len()),
    );
    assert!(pass);
}

#[test]
fn criterion_3_mpp_correctness() {
    let samples = 1000u64;
    let mut pass = true;
    let mut lines = Vec::new();
    for n in [2usize, 8, 64] {
        let t = Instant::now();
        let (rel, sup) = (0..samples)
            .into_par_iter()
            .map(|i| {
                let mut rng = stream(3 + n as u64, i);
                let x = sample_s(n, &mut rng).unwrap();
                let z = run_mpp(&x, Backend::Stabilizer, &mut rng).unwrap();
                (u64::from(verify_game_relation(&x, &z).unwrap()), u64::from(verify_support(&x, &z).unwrap()))
            })
            .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
        let secs = t.elapsed().as_secs_f64();
        let ok = rel == samples && sup == samples && (n != 64 || secs < 60.0);
        pass &= ok;
        lines.push(format!("  n={n}: relation {rel}/{samples}, support {sup}/{samples}, {secs:.2}s"));
    }
    report(3, pass, "both verifiers on 1000 samples from S for n in {2, 8, 64}; n=64 under 60 s");
    lines.iter().for_each(|l| println!("{l}"));
    assert!(pass);
}

fn tv_for(x: &MppInput, samples: u64, seed: u64) -> (f64, f64, usize, bool, bool) {
    let exact = output_distribution(x).unwrap();
    let m = exact.len();
    let uniform = exact.values().all(|&p| (p - 1.0 / m as f64).abs() < 1e-9) && m.is_power_of_two();
    let stab_support = exact.keys().all(|z| verify_support(x, z).unwrap());
    // histogram from the stabilizer backend
    let mut counts: HashMap<MppOutput, u64> = HashMap::new();
    let mut rng = stream(seed, 0);
    for _ in 0..samples {
        *counts.entry(run_mpp(x, Backend::Stabilizer, &mut rng).unwrap()).or_default() += 1;
    }
    let support_eq = stab_support && counts.keys().all(|z| exact.contains_key(z));
    let tv = total_variation(&counts, &exact);
    // an ideal sampler drawing from the exact distribution, same sample size
    let keys: Vec<&MppOutput> = exact.keys().collect();
    let mut ideal: HashMap<MppOutput, u64> = HashMap::new();
    let mut rng = stream(seed, 1);
    for _ in 0..samples {
        use rand::Rng;
        let z = keys[rng.random_range(0..keys.len())].clone();
        *ideal.entry(z).or_default() += 1;
    }
    let floor = total_variation(&ideal, &exact);
    (tv, floor, m, uniform, support_eq)
}

#[test]
fn criterion_4_backend_equivalence() {
    let n = 2;
    let idx = SubsetIndex::new(1, 2).unwrap();
    let inputs: Vec<MppInput> = EdgeId::all()
        .iter()
        .flat_map(|&a| EdgeId::all().map(move |b| MppInput::instance(n, idx, a, b).unwrap()))
        .collect();
    let results: Vec<_> = inputs.par_iter().enumerate().map(|(i, x)| tv_for(x, 100_000, 40 + i as u64)).collect();
    let supports_ok = results.iter().all(|r| r.3 && r.4);
    let worst_tv = results.iter().map(|r| r.0).fold(0.0, f64::max);
    let worst_floor = results.iter().map(|r| r.1).fold(0.0, f64::max);
    let pass = supports_ok && worst_tv <= 0.02;
    report(
        4,
        pass,
        &format!("25 inputs at n=2: supports equal and uniform={supports_ok}, worst TV={worst_tv:.4} (limit 0.02)"),
    );
    for (x, r) in inputs.iter().zip(&results) {
        println!("  {}: |support|=2^{} TV={:.4} ideal-sampler TV={:.4}", x.to_bitstring(), r.2.trailing_zeros(), r.0, r.1);
    }
    println!("  worst TV of an ideal sampler from the exact distribution: {worst_floor:.4}");
    assert!(supports_ok, "supports differ or are not uniform");
    assert!(worst_tv <= 0.02, "TV {worst_tv} > 0.02");
}

#[test]
fn criterion_5_lightcone_bound() {
    let n = 4096;
    let mut pass = true;
    let mut lines = Vec::new();
    for b in [2usize, 3] {
        for d in [1usize, 2] {
            let bound = prop5_lower_bound(n, b, d);
            let probs: Vec<Ratio<u64>> = (0..50u64)
                .into_par_iter()
                .map(|i| {
                    let mut rng = stream(500 + (b * 10 + d) as u64, i);
                    let spec = RandomCircuitSpec { n, b, d, random_wires: (i % 3) as usize * 8 };
                    let c = random_nc0_circuit_with(spec, &mut rng).unwrap();
                    prob_e(&Lightcones::compute(&c), n).unwrap()
                })
                .collect();
            let min = probs.iter().min().unwrap();
            let min_f = *min.numer() as f64 / *min.denom() as f64;
            let ok = bound < 0.0 || probs.iter().all(|p| *p.numer() as f64 / *p.denom() as f64 >= bound);
            pass &= ok;
            lines.push(format!(
                "  B={b} D={d}: bound={bound:.5}{} min prob_E={min_f:.5}",
                if bound < 0.0 { " (vacuous)" } else { "" }
            ));
        }
    }
    report(5, pass, "50 random circuits per (B, D) in {2,3}x{1,2} at n=4096");
    lines.iter().for_each(|l| println!("{l}"));
    assert!(pass);
}

fn adversaries(n: usize) -> Vec<(String, ClassicalCircuit)> {
    let opt = brute_force_optimal(&GameParams::ONES);
    let local = best_local_strategy_on_s();
    let ones = DeterministicStrategy::constant(Player::A, Assignment::ONES);
    let ones_b = DeterministicStrategy::constant(Player::B, Assignment::ONES);
    let mut v = vec![
        ("game-witness".to_string(), strategy_circuit(n, &opt.alice, &opt.bob)),
        ("best-local-on-S".to_string(), strategy_circuit(n, &local.alice, &local.bob)),
        ("constant-0".to_string(), constant_circuit(n, false)),
        ("constant-1".to_string(), constant_circuit(n, true)),
        ("all-ones-labeling".to_string(), strategy_circuit(n, &ones, &ones_b)),
        ("identity".to_string(), identity_circuit(n)),
    ];
    for (i, (b, d, r)) in [(2, 1, 0), (2, 2, 4), (3, 1, 2), (3, 2, 0)].into_iter().enumerate() {
        let c = random_nc0_circuit_with(RandomCircuitSpec { n, b, d, random_wires: r }, &mut stream(600, i as u64))
            .unwrap();
        v.push((format!("random-B{b}-D{d}-r{r}"), c));
    }
    v
}

fn evaluated_adversaries() -> &'static Vec<(String, AdversaryReport)> {
    static CELL: std::sync::OnceLock<Vec<(String, AdversaryReport)>> = std::sync::OnceLock::new();
    CELL.get_or_init(|| {
        let n = 8;
        adversaries(n)
            .into_iter()
            .enumerate()
            .map(|(i, (name, c))| (name, eval_adversary(&c, n, 10_000, 700 + i as u64).unwrap()))
            .collect()
    })
}

#[test]
fn criterion_6_conditional_ceiling() {
    let ceiling = 19.0 / 20.0;
    let mut pass = true;
    let mut lines = Vec::new();
    for (name, r) in evaluated_adversaries() {
        let ok = match r.success_rate_given_e {
            Some(p) => p <= ceiling + wilson_half_width(r.successes_given_e, r.samples_given_e, Z_99),
            None => true,
        };
        pass &= ok;
        lines.push(format!(
            "  {name}: p={:.4} p|E={} over {} E-samples, D={} B={}{}",
            r.success_rate,
            r.success_rate_given_e.map_or("n/a".into(), |p| format!("{p:.4}")),
            r.samples_given_e,
            r.depth,
            r.max_fan_in,
            if ok { "" } else { "  <-- exceeds ceiling" }
        ));
    }
    report(6, pass, "10 adversaries at n=8, 10^4 samples: success|E <= 19/20 + Wilson 99% half-width");
    lines.iter().for_each(|l| println!("{l}"));
    assert!(pass);
}

#[test]
fn criterion_7_bound_formulas() {
    let eq1 = bound_eq1(1e6, 2.0, 1.0).unwrap();
    let eq3 = bound_eq3(6480.0, 2.0, 1.0).unwrap();
    let mut pass = (eq1 - 3.927).abs() <= 1e-3 && (eq3 - 1.585).abs() <= 1e-3;
    let mut lines = vec![format!("  bound_eq1(1e6, 2, 1)={eq1:.4}, bound_eq3(6480, 2, 1)={eq3:.4}")];
    for (name, r) in evaluated_adversaries() {
        let b = r.max_fan_in.max(2) as f64;
        let lhs = b.powi(2 * r.depth as i32);
        // slack: use the lower end of the 99% interval for p
        let rhs = r.n as f64 / 216.0 * (r.ci.0 - 19.0 / 20.0);
        let ok = lhs >= rhs;
        pass &= ok;
        lines.push(format!("  {name}: B^(2D)={lhs} vs n/216*(p_lo - 19/20)={rhs:.4}{}", if ok { "" } else { " VIOLATED" }));
    }
    report(7, pass, "reference values within 0.001; no adversary violates B^(2D) >= n/216*(p - 19/20)");
    lines.iter().for_each(|l| println!("{l}"));
    assert!(pass);
}

#[test]
fn criterion_8_oracle_soundness() {
    let results: Vec<(usize, usize)> = (0..200u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream(800, i);
            let n = 1 + (i % 3) as usize;
            let (b, d) = (2 + (i % 2) as usize, 1 + (i / 2 % 3) as usize);
            let random_wires = ((i / 6 % 3) as usize).min(20 - 6 * n);
            let c = random_nc0_circuit_with(RandomCircuitSpec { n, b, d, random_wires }, &mut rng)
                .or_else(|_| random_nc0_circuit(n, 2, d, &mut rng))
                .unwrap();
            assert!(c.num_inputs() + c.num_random() <= 20);
            let cones = Lightcones::compute(&c);
            let corr = correlated_all(&c).unwrap();
            let mut bad = 0;
            let mut pairs = 0;
            for (i, row) in corr.iter().enumerate() {
                let cone = cones.of_input(i).unwrap();
                for (j, &x) in row.iter().enumerate() {
                    if x {
                        pairs += 1;
                        bad += usize::from(!cone.contains(&(j as u32)));
                    }
                }
            }
            (bad, pairs)
        })
        .collect();
    let bad: usize = results.iter().map(|r| r.0).sum();
    let pairs: usize = results.iter().map(|r| r.1).sum();
    report(8, bad == 0, &format!("200 random circuits with <= 20 inputs: {bad} counterexamples over {pairs} correlated pairs"));
    assert_eq!(bad, 0);
}
