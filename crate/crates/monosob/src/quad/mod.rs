//! Weighted numerical integration over `R^n_A` and bounded subdomains.
//!
//! The engine is adaptive Gauss–Kronrod (7–15) with three wrappers:
//!
//! * [`integrate_radial`] — `P(B_1^A) · ∫_0^∞ profile(r) r^{D-1} dr`, the
//!   polar-coordinate reduction for radial integrands;
//! * [`integrate_separable`] — products of one-dimensional weighted
//!   integrals for integrands that factor across coordinates;
//! * [`integrate_cubature`] — iterated adaptive quadrature for everything
//!   else, capped at low dimension.
//!
//! Fractional exponents `A_i` put algebraic factors `t^a` at the origin;
//! the one-dimensional kernel substitutes `t = u^m` with an integer `m`
//! large enough that the transformed integrand has several continuous
//! derivatives at the endpoint. Unbounded tails are folded onto `[0,1]`
//! by the inversion `t = s/v`, so the far field is integrated rather than
//! bounded or guessed (a fixed truncation radius remains available through
//! [`TruncationPolicy::Radius`]).

mod cubature;
mod functionals;
mod kronrod;
mod onedim;
mod radial;
mod separable;

pub use cubature::{integrate_cubature, AxisKind, CubatureDomain};
pub use functionals::{functionals_of, fullspace_functionals_of, FunctionalSet, Need};
pub use radial::{integrate_radial, RadialIntegrand};
pub use separable::{integrate_separable, Factor1D};

pub(crate) use onedim::{plain_interval, weighted_halfline, weighted_interval};
pub(crate) use radial::radial_power;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone)]
pub enum QuadError {
    #[error("failed to reach requested accuracy: best estimate {value} ± {error}")]
    Accuracy { value: f64, error: f64 },
    #[error("integral diverges: {0}")]
    Divergent(String),
    #[error("cubature dimension {dim} exceeds cap {cap}")]
    DimensionCap { dim: usize, cap: usize },
    #[error("operation not supported: {0}")]
    Unsupported(String),
    #[error("integrand produced a non-finite value near {x}")]
    NonFinite { x: f64 },
    #[error("invalid quadrature spec: {0}")]
    InvalidSpec(String),
    #[error(transparent)]
    Function(#[from] crate::funcspace::FuncspaceError),
}

/// How to treat the far field of an unbounded integral.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum TruncationPolicy {
    /// Fold `[s, ∞)` onto `[0, 1]` by inversion and integrate it; no
    /// truncation error at all. The split point comes from the declared
    /// decay of the integrand.
    Auto,
    /// Integrate `[0, R]` only; the reported error includes a probe of the
    /// next octave `[R, 2R]`, so doubling `R` moves the value by less than
    /// the reported error.
    Radius(f64),
}

/// Tolerances and resource limits for one integration request.
#[derive(Debug, Clone, Serialize)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub truncation: TruncationPolicy,
    pub max_subdivisions: usize,
    /// Full cubature is refused above this dimension (radial and separable
    /// structures have no cap).
    pub cubature_dim_cap: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            rel_tol: 1e-10,
            abs_tol: 1e-14,
            truncation: TruncationPolicy::Auto,
            max_subdivisions: 400,
            cubature_dim_cap: 3,
        }
    }
}

impl QuadratureSpec {
    pub fn with_rel_tol(rel_tol: f64) -> Self {
        QuadratureSpec {
            rel_tol,
            abs_tol: (rel_tol * 1e-4).min(1e-14),
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<(), QuadError> {
        if !(self.rel_tol > 0.0) || !(self.abs_tol > 0.0) {
            return Err(QuadError::InvalidSpec(format!(
                "tolerances must be positive: rel={}, abs={}",
                self.rel_tol, self.abs_tol
            )));
        }
        Ok(())
    }

    pub(crate) fn tols(&self) -> Tols {
        Tols {
            rel: self.rel_tol,
            abs: self.abs_tol,
            max_subdiv: self.max_subdivisions,
            truncation: self.truncation,
        }
    }
}

/// Internal per-call tolerance bundle (cubature scales it per level).
#[derive(Debug, Clone, Copy)]
pub(crate) struct Tols {
    pub rel: f64,
    pub abs: f64,
    pub max_subdiv: usize,
    pub truncation: TruncationPolicy,
}

impl Tols {
    pub(crate) fn scaled(&self, factor: f64, max_subdiv: usize) -> Tols {
        Tols {
            rel: self.rel * factor,
            abs: self.abs * factor,
            max_subdiv,
            truncation: self.truncation,
        }
    }
}

/// Declared decay of a one-dimensional integrand on `[0, ∞)`; drives the
/// split point and the endpoint treatment of the inverted far field, and
/// certifies integrability for algebraic tails.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum TailBehavior {
    /// Supported inside `[0, radius]`.
    Compact { radius: f64 },
    /// Decays at least as fast as some `exp(-c t^β)`, `β > 0`; `scale` is
    /// the radius where decay takes over.
    ExpDecay { scale: f64 },
    /// `|g(t)| ~ t^{-decay}` as `t → ∞`.
    Algebraic { decay: f64, scale: f64 },
}

/// A value with a numerical error bound, plus first-order propagation
/// arithmetic for composing functionals into inequality sides.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
}

impl Estimate {
    pub fn new(value: f64, error: f64) -> Self {
        Estimate {
            value,
            error: error.abs(),
        }
    }

    pub fn exact(value: f64) -> Self {
        Estimate { value, error: 0.0 }
    }

    pub fn rel_error(&self) -> f64 {
        self.error / self.value.abs().max(f64::MIN_POSITIVE)
    }

    pub fn scale(self, c: f64) -> Self {
        Estimate::new(self.value * c, self.error * c.abs())
    }

    pub fn add(self, o: Estimate) -> Self {
        Estimate::new(self.value + o.value, self.error + o.error)
    }

    pub fn sub(self, o: Estimate) -> Self {
        Estimate::new(self.value - o.value, self.error + o.error)
    }

    pub fn mul(self, o: Estimate) -> Self {
        Estimate::new(
            self.value * o.value,
            self.value.abs() * o.error + o.value.abs() * self.error,
        )
    }

    pub fn div(self, o: Estimate) -> Self {
        let v = self.value / o.value;
        Estimate::new(
            v,
            self.error / o.value.abs() + v.abs() * o.error / o.value.abs(),
        )
    }

    /// `self^e` with `d(x^e) = e x^{e-1} dx`.
    pub fn powf(self, e: f64) -> Self {
        let v = self.value.powf(e);
        let deriv = if self.value == 0.0 {
            0.0
        } else {
            (e * v / self.value).abs()
        };
        Estimate::new(v, deriv * self.error)
    }

    pub fn ln(self) -> Self {
        Estimate::new(self.value.ln(), self.error / self.value.abs())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn estimate_arithmetic() {
        let a = Estimate::new(2.0, 0.01);
        let b = Estimate::new(3.0, 0.02);
        let p = a.mul(b);
        assert!((p.value - 6.0).abs() < 1e-15);
        assert!((p.error - (2.0 * 0.02 + 3.0 * 0.01)).abs() < 1e-15);
        let r = a.powf(2.0);
        assert!((r.value - 4.0).abs() < 1e-15);
        assert!((r.error - 2.0 * 2.0 * 0.01).abs() < 1e-15);
        let l = a.ln();
        assert!((l.error - 0.005).abs() < 1e-15);
    }

    #[test]
    fn spec_validation() {
        assert!(QuadratureSpec::default().validate().is_ok());
        let bad = QuadratureSpec {
            rel_tol: 0.0,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
    }
}
