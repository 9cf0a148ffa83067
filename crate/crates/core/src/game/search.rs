//! Exhaustive search over deterministic classical strategies.
//!
//! Alice's `16^5` strategies are enumerated. For fixed Alice answers, Bob's
//! optimal reply decouples per edge: on edge `y` his score depends only on the
//! four values Alice puts on the vertices of `y` (or on Alice being invalid on
//! the partner edge), which is one of `3^4 = 81` situations. Bob's best score
//! per situation is tabulated once.

use rayon::prelude::*;

use super::{e, l_for_observable, order, partner, pentagram, Assignment, EdgeId, GameParams, NUM_EDGES};
use super::{DeterministicStrategy, Player, WinRatio};

const COMBOS: usize = 81;

/// An optimal strategy pair and its score.
#[derive(Debug, Clone, PartialEq)]
pub struct Optimum {
    pub wins: WinRatio,
    pub alice: DeterministicStrategy,
    pub bob: DeterministicStrategy,
    /// Number of Alice strategies enumerated.
    pub evaluated: u64,
}

struct Tables {
    // contrib[x][mask][y]: Alice's state at v(x, y), scaled by 3^(o_y(x) - 1)
    contrib: [[[u8; NUM_EDGES]; 16]; NUM_EDGES],
    best: [[(u8, u8); COMBOS]; NUM_EDGES],
}

fn pow3(k: usize) -> u8 {
    3u8.pow(k as u32)
}

impl Tables {
    fn new(p: &GameParams) -> Self {
        let pg = pentagram();
        let mut contrib = [[[0u8; NUM_EDGES]; 16]; NUM_EDGES];
        for x in EdgeId::all() {
            for mask in 0..16u8 {
                let a = Assignment::from_mask(mask);
                if a.product() != e(x) {
                    continue;
                }
                for y in EdgeId::all().into_iter().filter(|&y| y != x) {
                    let state = if a.at_rank(order(x, y).unwrap()) == 1 { 1 } else { 2 };
                    contrib[x.index()][mask as usize][y.index()] = state * pow3(order(y, x).unwrap() - 1);
                }
            }
        }
        let mut best = [[(0u8, 0u8); COMBOS]; NUM_EDGES];
        for y in EdgeId::all() {
            let targets: [i8; 4] = std::array::from_fn(|r| {
                let x = partner(y, r + 1);
                l_for_observable(&pg.intersection(x, y).unwrap().observable, p)
            });
            for (combo, slot) in best[y.index()].iter_mut().enumerate() {
                let states: [usize; 4] = std::array::from_fn(|r| combo / 3usize.pow(r as u32) % 3);
                let mut top = (0u8, 0u8);
                let mut found = false;
                for wmask in 0..16u8 {
                    let w = Assignment::from_mask(wmask);
                    if w.product() != e(y) {
                        continue;
                    }
                    let score = (0..4)
                        .filter(|&r| {
                            let aval = match states[r] {
                                0 => return false,
                                1 => 1,
                                _ => -1,
                            };
                            aval * w.at_rank(r + 1) == targets[r]
                        })
                        .count() as u8;
                    if !found || score > top.0 {
                        top = (score, wmask);
                        found = true;
                    }
                }
                *slot = top;
            }
        }
        Tables { contrib, best }
    }

    fn combos(&self, masks: &[u8; NUM_EDGES]) -> [usize; NUM_EDGES] {
        let mut c = [0usize; NUM_EDGES];
        for (x, &m) in masks.iter().enumerate() {
            for (y, slot) in c.iter_mut().enumerate() {
                *slot += self.contrib[x][m as usize][y] as usize;
            }
        }
        c
    }

    fn score(&self, masks: &[u8; NUM_EDGES]) -> u32 {
        let c = self.combos(masks);
        (0..NUM_EDGES).map(|y| self.best[y][c[y]].0 as u32).sum()
    }

    fn bob(&self, masks: &[u8; NUM_EDGES]) -> [u8; NUM_EDGES] {
        let c = self.combos(masks);
        std::array::from_fn(|y| self.best[y][c[y]].1)
    }
}

fn decode(idx: u32) -> [u8; NUM_EDGES] {
    std::array::from_fn(|s| (idx >> (4 * s) & 15) as u8)
}

/// Bob's best reply to a fixed Alice strategy.
pub fn best_response(alice: &DeterministicStrategy, p: &GameParams) -> (DeterministicStrategy, WinRatio) {
    let t = Tables::new(p);
    let masks = alice.edges.map(|a| a.mask());
    let bob = DeterministicStrategy::from_masks(Player::B, t.bob(&masks));
    (bob, WinRatio { wins: t.score(&masks) })
}

/// Optimal classical score over all deterministic strategy pairs.
///
/// Ties are broken towards the smallest Alice index (edge `s` answer mask in
/// bits `4s..4s+4`), so the witness is deterministic regardless of threads.
pub fn brute_force_optimal(p: &GameParams) -> Optimum {
    let t = Tables::new(p);
    let total: u32 = 1 << (4 * NUM_EDGES);
    let (wins, idx) = (0..total)
        .into_par_iter()
        .map(|idx| (t.score(&decode(idx)), idx))
        .reduce(|| (0, u32::MAX), |a, b| if a.0 > b.0 || (a.0 == b.0 && a.1 < b.1) { a } else { b });
    let masks = decode(idx);
    Optimum {
        wins: WinRatio { wins },
        alice: DeterministicStrategy::from_masks(Player::A, masks),
        bob: DeterministicStrategy::from_masks(Player::B, t.bob(&masks)),
        evaluated: total as u64,
    }
}

#[cfg(test)]
mod tests {
    use super::super::win_probability;
    use super::*;
    use rand::Rng;

    /// Bob's best reply by enumerating all of Bob's `16^5` strategies.
    fn naive_best_response(alice: &DeterministicStrategy, p: &GameParams) -> u32 {
        (0u32..1 << 20)
            .into_par_iter()
            .map(|idx| {
                let bob = DeterministicStrategy::from_masks(Player::B, decode(idx));
                win_probability(alice, &bob, p).wins
            })
            .max()
            .unwrap()
    }

    #[test]
    fn tabulated_best_response_matches_naive() {
        let mut rng = crate::rng::stream(7, 0);
        let params = [GameParams::ONES, GameParams::new([1, -1, -1, 1, 1, -1]).unwrap()];
        for p in &params {
            for _ in 0..2 {
                let masks: [u8; NUM_EDGES] = std::array::from_fn(|_| rng.random_range(0..16));
                let alice = DeterministicStrategy::from_masks(Player::A, masks);
                let (bob, w) = best_response(&alice, p);
                assert_eq!(win_probability(&alice, &bob, p), w);
                assert_eq!(naive_best_response(&alice, p), w.wins);
            }
        }
    }

    #[test]
    fn witness_scores_as_reported() {
        for p in [GameParams::ONES, GameParams::new([-1, 1, 1, -1, -1, 1]).unwrap()] {
            let opt = brute_force_optimal(&p);
            assert_eq!(opt.evaluated, 1 << 20);
            assert_eq!(win_probability(&opt.alice, &opt.bob, &p), opt.wins);
        }
    }

    #[test]
    fn best_score_dominates_random_pairs() {
        let p = GameParams::ONES;
        let opt = brute_force_optimal(&p);
        let mut rng = crate::rng::stream(11, 0);
        for _ in 0..2000 {
            let a = DeterministicStrategy::from_masks(Player::A, std::array::from_fn(|_| rng.random_range(0..16)));
            let b = DeterministicStrategy::from_masks(Player::B, std::array::from_fn(|_| rng.random_range(0..16)));
            assert!(win_probability(&a, &b, &p) <= opt.wins);
        }
    }
}
