use crate::error::{Error, Result};

const CEILING: f64 = 19.0 / 20.0;
const REFINED_CEILING: f64 = 8.0 / 9.0;

fn check(n: f64, b: f64, p: f64, threshold: f64, name: &str) -> Result<()> {
    if n < 2.0 || b < 2.0 {
        return Err(Error::BoundUndefined(format!("{name} needs n >= 2 and B >= 2, got n={n}, B={b}")));
    }
    if !(p > threshold && p <= 1.0) {
        return Err(Error::BoundUndefined(format!("{name} needs {threshold:.6} < p <= 1, got p={p}")));
    }
    Ok(())
}

/// Depth lower bound `½·log_B[n/216·(p − 19/20)]`.
pub fn bound_eq1(n: f64, b: f64, p: f64) -> Result<f64> {
    check(n, b, p, CEILING, "eq1")?;
    Ok(0.5 * (n / 216.0 * (p - CEILING)).ln() / b.ln())
}

/// Depth lower bound `½·log_B[n/80·(p − 8/9)]`.
pub fn bound_eq3(n: f64, b: f64, p: f64) -> Result<f64> {
    check(n, b, p, REFINED_CEILING, "eq3")?;
    Ok(0.5 * (n / 80.0 * (p - REFINED_CEILING)).ln() / b.ln())
}

/// `1 − 216·B^{2D}/n`; negative values mean the bound is vacuous.
pub fn prop5_lower_bound(n: usize, b: usize, d: usize) -> f64 {
    1.0 - 216.0 * (b as f64).powi(2 * d as i32) / n as f64
}
