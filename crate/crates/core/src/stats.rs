//! Small statistics helpers used by the experiment harness.

use std::collections::HashMap;
use std::hash::Hash;

/// Two-sided standard normal quantile for 99% confidence.
pub const Z_99: f64 = 2.575_829_303_548_901;

/// Wilson score interval for `successes` out of `trials` at normal quantile `z`.
///
/// Returns `(0.0, 1.0)` for zero trials.
pub fn wilson_interval(successes: u64, trials: u64, z: f64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    ((center - half).max(0.0), (center + half).min(1.0))
}

/// Half-width of the Wilson interval.
pub fn wilson_half_width(successes: u64, trials: u64, z: f64) -> f64 {
    let (lo, hi) = wilson_interval(successes, trials, z);
    (hi - lo) / 2.0
}

/// Total-variation distance between an empirical histogram and a reference
/// distribution. Outcomes missing from either side count with probability 0.
pub fn total_variation<K: Eq + Hash>(counts: &HashMap<K, u64>, reference: &HashMap<K, f64>) -> f64 {
    let total: u64 = counts.values().sum();
    if total == 0 {
        return reference.values().sum::<f64>() / 2.0;
    }
    let total = total as f64;
    let mut sum = 0.0;
    for (k, &p) in reference {
        let q = counts.get(k).copied().unwrap_or(0) as f64 / total;
        sum += (p - q).abs();
    }
    for (k, &c) in counts {
        if !reference.contains_key(k) {
            sum += c as f64 / total;
        }
    }
    sum / 2.0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wilson_contains_point_estimate() {
        let (lo, hi) = wilson_interval(950, 1000, Z_99);
        assert!(lo < 0.95 && 0.95 < hi);
        assert!(hi - lo < 0.05);
        let (lo, hi) = wilson_interval(0, 100, Z_99);
        assert_eq!(lo, 0.0);
        assert!(hi > 0.0 && hi < 0.1);
    }

    #[test]
    fn tv_of_identical_is_zero() {
        let counts: HashMap<u8, u64> = [(0, 50), (1, 50)].into_iter().collect();
        let reference: HashMap<u8, f64> = [(0, 0.5), (1, 0.5)].into_iter().collect();
        assert!(total_variation(&counts, &reference).abs() < 1e-15);
        let skew: HashMap<u8, u64> = [(0, 100)].into_iter().collect();
        assert!((total_variation(&skew, &reference) - 0.5).abs() < 1e-15);
    }
}
