//! The `p → 0` limit of `p`-means:
//! `(∫ |g|^p dμ)^{1/p} → exp(∫ ln|g| dμ)` for a probability measure `μ`.

use super::{loglog_slope, Axis, Diagnostics, SweepPoint, SweepResult};
use crate::funcspace::RadialTail;
use crate::quad::{
    integrate_radial, plain_interval, Estimate, QuadError, QuadratureSpec, RadialIntegrand,
};
use crate::special::Weight;
use std::sync::Arc;

/// The probability measures the limit is studied under. Both are driven by
/// a scalar density; the radial variant is `profile(|x|) x^A dx` on `R^n_A`,
/// normalized internally.
#[derive(Clone)]
pub enum Measure {
    UniformInterval { a: f64, b: f64 },
    RadialDensity {
        weight: Weight,
        profile: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
        tail: RadialTail,
    },
}

/// The observable `g`, matched to the measure's coordinate: a scalar
/// function of `x` on an interval, or of `r = |x|` for a radial density.
#[derive(Clone)]
pub enum Observable {
    Constant(f64),
    Scalar(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
}

impl Observable {
    fn eval(&self, t: f64) -> f64 {
        match self {
            Observable::Constant(c) => *c,
            Observable::Scalar(f) => f(t),
        }
    }
}

impl Measure {
    /// Raw (unnormalized) integral `∫ h dμ_raw`.
    fn integrate(
        &self,
        h: &(dyn Fn(f64) -> f64 + Sync),
        spec: &QuadratureSpec,
    ) -> Result<Estimate, QuadError> {
        match self {
            Measure::UniformInterval { a, b } => plain_interval(h, *a, *b, spec.tols()),
            Measure::RadialDensity {
                weight,
                profile,
                tail,
            } => integrate_radial(
                &RadialIntegrand {
                    profile: &|r: f64| profile(r) * h(r),
                    tail: tail.to_quad(),
                },
                weight,
                spec,
            ),
        }
    }
}

/// Default grid `p = 10^{-j}`, `j = 1..=4`.
pub fn default_p_grid() -> Vec<f64> {
    vec![1e-4, 1e-3, 1e-2, 1e-1]
}

/// Compute the `p`-means of `|g|` under `μ` on the grid, the geometric-mean
/// target, and the fitted convergence order of `|M(p) - target|` in `p`.
pub fn pmean_limit(
    g: &Observable,
    mu: &Measure,
    p_grid: &[f64],
    spec: &QuadratureSpec,
) -> Result<SweepResult, QuadError> {
    let mass = mu.integrate(&|_t| 1.0, spec)?;
    // target: exp(∫ ln|g| dμ); a non-integrable logarithm means the
    // geometric mean degenerates to 0 (exp(-∞))
    let log_integral = mu.integrate(&|t| g.eval(t).abs().max(1e-300).ln(), spec);
    let (target, note) = match log_integral {
        Ok(e) => ((e.value / mass.value).exp(), None),
        Err(QuadError::Divergent(_)) | Err(QuadError::NonFinite { .. }) => {
            (0.0, Some("log-integral diverges: target exp(-∞) = 0".to_string()))
        }
        Err(other) => return Err(other),
    };

    let mut points = Vec::with_capacity(p_grid.len());
    for &p in p_grid {
        let raw = mu.integrate(&|t| g.eval(t).abs().powf(p), spec)?;
        let m_p = raw.div(mass).powf(1.0 / p);
        points.push(SweepPoint {
            coords: vec![p],
            value: m_p.value,
            margin: if target != 0.0 {
                (m_p.value - target) / target
            } else {
                0.0
            },
            error: m_p.error,
        });
    }

    let mut diagnostics = Diagnostics {
        note,
        ..Default::default()
    };
    if target != 0.0 {
        let errs: Vec<f64> = points.iter().map(|pt| (pt.value - target).abs()).collect();
        let ps: Vec<f64> = points.iter().map(|pt| pt.coords[0]).collect();
        if errs.iter().all(|&e| e > 0.0) {
            diagnostics.fitted_order = Some(loglog_slope(&ps, &errs));
        }
        diagnostics.relative_errors = errs.iter().map(|e| e / target).collect();
    }
    Ok(SweepResult {
        name: "pmean-limit".to_string(),
        axes: vec![Axis::new("p", {
            let mut ps: Vec<f64> = p_grid.to_vec();
            ps.sort_by(|a, b| a.partial_cmp(b).unwrap());
            ps
        })],
        points,
        target: Some(target),
        diagnostics,
        seed: None,
    })
}
