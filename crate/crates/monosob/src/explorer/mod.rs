//! Limit studies and searches: the dimensional-tensorization limit, the
//! `p → 0` geometric-mean limit, deficit profiles over extremal parameters,
//! and randomized violation hunting.

mod asymptotics;
mod fuzz;
mod lambda;
mod pmean;
mod profile;

pub use asymptotics::asymptotic_scan;
pub use fuzz::{fuzz, FuzzConfig, FuzzSummary};
pub use lambda::{shannon_lambda_opt, LambdaOpt};
pub use pmean::{pmean_limit, Measure, Observable};
pub use profile::{deficit_profile, gaussian_limit_diagnostic, ProfileFamily};

use serde::Serialize;

/// One sweep axis; values must be strictly monotone.
#[derive(Debug, Clone, Serialize)]
pub struct Axis {
    pub name: String,
    pub values: Vec<f64>,
}

impl Axis {
    pub fn new(name: impl Into<String>, values: Vec<f64>) -> Self {
        let axis = Axis {
            name: name.into(),
            values,
        };
        assert!(
            axis.values.windows(2).all(|p| p[0] < p[1]),
            "axis '{}' is not strictly monotone",
            axis.name
        );
        axis
    }
}

/// One evaluated grid point.
#[derive(Debug, Clone, Serialize)]
pub struct SweepPoint {
    pub coords: Vec<f64>,
    pub value: f64,
    /// Dimensionless margin where applicable (deficit sweeps), else 0.
    pub margin: f64,
    pub error: f64,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Diagnostics {
    /// Relative error against the limit target, per point.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub relative_errors: Vec<f64>,
    /// Successive ratios `e_{i+1}/e_i` of those errors.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub error_ratios: Vec<f64>,
    /// Index from which the error sequence decreases monotonically to the
    /// end, when it does.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub monotone_from: Option<usize>,
    /// Fitted convergence order from a log-log fit, when meaningful.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fitted_order: Option<f64>,
    /// Grid points where the value sits inside the equality band.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub zero_set: Vec<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// A parameter sweep: grid, per-point values with error bounds, limit
/// target and convergence diagnostics where applicable.
#[derive(Debug, Clone, Serialize)]
pub struct SweepResult {
    pub name: String,
    pub axes: Vec<Axis>,
    pub points: Vec<SweepPoint>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub target: Option<f64>,
    pub diagnostics: Diagnostics,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl SweepResult {
    /// Relative errors against the target, their ratios, and the index from
    /// which they decrease monotonically.
    pub(crate) fn fill_limit_diagnostics(&mut self) {
        let target = match self.target {
            Some(t) if t != 0.0 => t,
            _ => return,
        };
        let errs: Vec<f64> = self
            .points
            .iter()
            .map(|p| ((p.value - target) / target).abs())
            .collect();
        self.diagnostics.error_ratios = errs.windows(2).map(|w| w[1] / w[0]).collect();
        let mut monotone_from = None;
        for start in 0..errs.len() {
            if errs[start..].windows(2).all(|w| w[1] < w[0]) {
                monotone_from = Some(start);
                break;
            }
        }
        self.diagnostics.monotone_from = monotone_from;
        self.diagnostics.relative_errors = errs;
    }
}

/// Least-squares slope of `ln y` against `ln x`.
pub(crate) fn loglog_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.max(1e-300).ln()).collect();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let cov: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let var: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    cov / var
}
