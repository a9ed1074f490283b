//! The dimensional-tensorization limit: `l C²_{2,ln,B} → 2/(Π(A)eD)`.

use super::{Axis, Diagnostics, SweepPoint, SweepResult};
use crate::constants::{asymptotic_limit, asymptotic_term, ConstantsError};
use crate::special::Weight;

/// Default grid `l = 2^j`, `j = 2..=20` (reaching past `10^6`).
pub fn default_l_grid() -> Vec<u64> {
    (2..=20).map(|j| 1u64 << j).collect()
}

/// Evaluate `l C²_{2,ln,B}` over the grid and report the relative error
/// against the limit together with its decay diagnostics.
pub fn asymptotic_scan(w: &Weight, l_grid: &[u64]) -> Result<SweepResult, ConstantsError> {
    let target = asymptotic_limit(w);
    let mut points = Vec::with_capacity(l_grid.len());
    for &l in l_grid {
        let value = asymptotic_term(w, l)?;
        points.push(SweepPoint {
            coords: vec![l as f64],
            value,
            margin: (value - target) / target,
            // the formula is closed-form; only rounding enters
            error: 1e-14 * value.abs(),
        });
    }
    let mut result = SweepResult {
        name: format!("asymptotic-scan {w}"),
        axes: vec![Axis::new("l", l_grid.iter().map(|&l| l as f64).collect())],
        points,
        target: Some(target),
        diagnostics: Diagnostics::default(),
        seed: None,
    };
    result.fill_limit_diagnostics();
    Ok(result)
}
