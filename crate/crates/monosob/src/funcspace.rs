//! Analytic test-function families with exact values, gradients, and
//! closed-form weighted functionals where they exist.
//!
//! Each [`TestFunction`] owns its ambient [`Weight`]; the families are the
//! ones the inequalities need:
//!
//! * `Gaussian` — `amp · exp(-|x-x₀|²/(4σ))`; with `x₀ = 0` and
//!   `amp = (2σΠ(A))^{-D/4}` it has unit weighted `L²` mass and realizes
//!   equality in the logarithmic Sobolev inequality;
//! * `SobolevExtremal` — `(a + b|x|^{p/(p-1)})^{1-D/p}`, the extremal of the
//!   sharp Sobolev inequality;
//! * `CauchyProfile` — `(1 + σ|x|²)^{-β}`, `β > D/2`, the pre-Gaussian model
//!   with a closed-form weighted mass;
//! * `Bump` — `(1 - |x|²/R²)₊^m`, compactly supported with exact gradient;
//! * `Indicator` — `χ_{B_R^A}`, carrying its total-variation data explicitly
//!   (the weighted perimeter), since numeric differentiation of a jump is
//!   meaningless;
//! * `RadialProfile` — a caller-supplied radial function with derivative;
//! * `TensorProduct` / `Mixture` — products across coordinate blocks and
//!   positive sums of Gaussians.

use crate::quad::TailBehavior;
use crate::special::{ball_geometry, lgamma, log_pi_a, Weight};
use serde::Serialize;
use serde_json::json;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone)]
pub enum FuncspaceError {
    #[error("evaluation on the singular set of an indicator (|x| = {0})")]
    SingularPoint(f64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("dimension mismatch: function lives on R^{expected}, point in R^{got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("integral diverges: {0}")]
    Divergent(String),
    #[error("operation not supported for this family: {0}")]
    Unsupported(String),
}

// ---------------------------------------------------------------------------
// Radial decay descriptors
// ---------------------------------------------------------------------------

/// Decay class of a radial profile `ρ(r)` as `r → ∞`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum RadialTail {
    Compact { radius: f64 },
    /// `|ρ| ≲ exp(-r²/(4σ))`.
    Gauss { sigma: f64 },
    /// `|ρ| ≲ exp(-c r^α)`.
    ExpPow { coeff: f64, power: f64 },
    /// `|ρ| ~ r^{-gamma}`.
    Algebraic { gamma: f64 },
}

impl RadialTail {
    /// Tail of `|ρ|^s`.
    pub fn pow(self, s: f64) -> RadialTail {
        match self {
            RadialTail::Compact { radius } => RadialTail::Compact { radius },
            RadialTail::Gauss { sigma } => RadialTail::Gauss { sigma: sigma / s },
            RadialTail::ExpPow { coeff, power } => RadialTail::ExpPow {
                coeff: coeff * s,
                power,
            },
            RadialTail::Algebraic { gamma } => RadialTail::Algebraic { gamma: gamma * s },
        }
    }

    /// Tail of `|ρ'|` (one extra algebraic power of decay; exponential
    /// classes are unchanged).
    pub fn derivative(self) -> RadialTail {
        match self {
            RadialTail::Algebraic { gamma } => RadialTail::Algebraic { gamma: gamma + 1.0 },
            other => other,
        }
    }

    /// If algebraic, the decay rate.
    pub fn algebraic_rate(self) -> Option<f64> {
        match self {
            RadialTail::Algebraic { gamma } => Some(gamma),
            _ => None,
        }
    }

    pub fn to_quad(self) -> TailBehavior {
        match self {
            RadialTail::Compact { radius } => TailBehavior::Compact { radius },
            RadialTail::Gauss { sigma } => TailBehavior::ExpDecay {
                scale: 4.0 * sigma.sqrt(),
            },
            RadialTail::ExpPow { coeff, power } => TailBehavior::ExpDecay {
                scale: (4.0 / coeff).powf(1.0 / power).max(1.0),
            },
            RadialTail::Algebraic { gamma } => TailBehavior::Algebraic {
                decay: gamma,
                scale: 1.0,
            },
        }
    }
}

// ---------------------------------------------------------------------------
// Families
// ---------------------------------------------------------------------------

/// One Gaussian term of a [`Family::Mixture`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MixtureTerm {
    pub coeff: f64,
    pub center: Vec<f64>,
    pub sigma: f64,
}

#[derive(Clone)]
pub enum Family {
    Gaussian {
        center: Vec<f64>,
        sigma: f64,
        amplitude: f64,
    },
    SobolevExtremal {
        a: f64,
        b: f64,
        p: f64,
    },
    CauchyProfile {
        sigma: f64,
        beta: f64,
    },
    Bump {
        radius: f64,
        order: u32,
    },
    Indicator {
        radius: f64,
    },
    RadialProfile {
        label: String,
        value: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
        deriv: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
        tail: RadialTail,
    },
    TensorProduct {
        factors: Vec<TestFunction>,
    },
    Mixture {
        terms: Vec<MixtureTerm>,
    },
}

impl std::fmt::Debug for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Family::Gaussian {
                center,
                sigma,
                amplitude,
            } => write!(f, "Gaussian(center={center:?}, sigma={sigma}, amp={amplitude})"),
            Family::SobolevExtremal { a, b, p } => {
                write!(f, "SobolevExtremal(a={a}, b={b}, p={p})")
            }
            Family::CauchyProfile { sigma, beta } => {
                write!(f, "CauchyProfile(sigma={sigma}, beta={beta})")
            }
            Family::Bump { radius, order } => write!(f, "Bump(R={radius}, m={order})"),
            Family::Indicator { radius } => write!(f, "Indicator(R={radius})"),
            Family::RadialProfile { label, .. } => write!(f, "RadialProfile({label})"),
            Family::TensorProduct { factors } => write!(f, "TensorProduct(l={})", factors.len()),
            Family::Mixture { terms } => write!(f, "Mixture({} terms)", terms.len()),
        }
    }
}

/// A test function on `(R^n, x^A dx)`: a family plus its ambient weight.
#[derive(Debug, Clone)]
pub struct TestFunction {
    family: Family,
    weight: Weight,
}

fn norm(x: &[f64]) -> f64 {
    x.iter().map(|t| t * t).sum::<f64>().sqrt()
}

impl TestFunction {
    // -- constructors -------------------------------------------------------

    pub fn gaussian(
        weight: Weight,
        center: Vec<f64>,
        sigma: f64,
        amplitude: f64,
    ) -> Result<Self, FuncspaceError> {
        if center.len() != weight.n() {
            return Err(FuncspaceError::DimensionMismatch {
                expected: weight.n(),
                got: center.len(),
            });
        }
        if !(sigma > 0.0) || !amplitude.is_finite() {
            return Err(FuncspaceError::InvalidParameter(format!(
                "gaussian needs sigma > 0 and finite amplitude, got sigma={sigma}, amp={amplitude}"
            )));
        }
        Ok(TestFunction {
            family: Family::Gaussian {
                center,
                sigma,
                amplitude,
            },
            weight,
        })
    }

    /// The centered Gaussian `(2σΠ(A))^{-D/4} e^{-|x|²/(4σ)}` with unit
    /// weighted `L²` mass.
    pub fn normalized_gaussian(weight: Weight, sigma: f64) -> Result<Self, FuncspaceError> {
        if !(sigma > 0.0) {
            return Err(FuncspaceError::InvalidParameter(format!(
                "sigma must be positive, got {sigma}"
            )));
        }
        let d = weight.d();
        let amplitude = (-0.25 * d * ((2.0 * sigma).ln() + log_pi_a(&weight))).exp();
        let center = vec![0.0; weight.n()];
        TestFunction::gaussian(weight, center, sigma, amplitude)
    }

    /// `(a + b|x|^{p/(p-1)})^{1-D/p}`, the Sobolev extremal; `1 < p < D`.
    pub fn sobolev_extremal(weight: Weight, a: f64, b: f64, p: f64) -> Result<Self, FuncspaceError> {
        if !(a > 0.0 && b > 0.0) {
            return Err(FuncspaceError::InvalidParameter(format!(
                "extremal needs a, b > 0, got a={a}, b={b}"
            )));
        }
        if !(1.0 < p && p < weight.d()) {
            return Err(FuncspaceError::InvalidParameter(format!(
                "extremal needs 1 < p < D = {}, got p={p}",
                weight.d()
            )));
        }
        Ok(TestFunction {
            family: Family::SobolevExtremal { a, b, p },
            weight,
        })
    }

    /// `(1 + σ|x|²)^{-β}` with `β > D/2` so the weighted mass is finite.
    pub fn cauchy(weight: Weight, sigma: f64, beta: f64) -> Result<Self, FuncspaceError> {
        if !(sigma > 0.0) {
            return Err(FuncspaceError::InvalidParameter(format!(
                "cauchy needs sigma > 0, got {sigma}"
            )));
        }
        if !(beta > weight.d() / 2.0) {
            return Err(FuncspaceError::Divergent(format!(
                "cauchy profile needs beta > D/2 = {}, got beta={beta}",
                weight.d() / 2.0
            )));
        }
        Ok(TestFunction {
            family: Family::CauchyProfile { sigma, beta },
            weight,
        })
    }

    /// Polynomial bump `(1 - |x|²/R²)₊^m`; `m >= 2` keeps the gradient
    /// continuous across the support boundary.
    pub fn bump(weight: Weight, radius: f64) -> Result<Self, FuncspaceError> {
        TestFunction::bump_with_order(weight, radius, 3)
    }

    pub fn bump_with_order(weight: Weight, radius: f64, order: u32) -> Result<Self, FuncspaceError> {
        if !(radius > 0.0) || order < 2 {
            return Err(FuncspaceError::InvalidParameter(format!(
                "bump needs radius > 0 and order >= 2, got R={radius}, m={order}"
            )));
        }
        Ok(TestFunction {
            family: Family::Bump { radius, order },
            weight,
        })
    }

    pub fn indicator(weight: Weight, radius: f64) -> Result<Self, FuncspaceError> {
        if !(radius > 0.0) {
            return Err(FuncspaceError::InvalidParameter(format!(
                "indicator needs radius > 0, got {radius}"
            )));
        }
        Ok(TestFunction {
            family: Family::Indicator { radius },
            weight,
        })
    }

    pub fn radial_profile(
        weight: Weight,
        label: impl Into<String>,
        value: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
        deriv: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
        tail: RadialTail,
    ) -> Self {
        TestFunction {
            family: Family::RadialProfile {
                label: label.into(),
                value,
                deriv,
                tail,
            },
            weight,
        }
    }

    /// `exp(-c |x|^α)`, the extremal family of the Shannon inequality
    /// (with `c = C_A(α)` it has unit weighted mass).
    pub fn exp_power(weight: Weight, c: f64, alpha: f64) -> Result<Self, FuncspaceError> {
        if !(c > 0.0 && alpha > 0.0) {
            return Err(FuncspaceError::InvalidParameter(format!(
                "exp_power needs c, alpha > 0, got c={c}, alpha={alpha}"
            )));
        }
        let label = format!("exp_power(c={c}, alpha={alpha})");
        Ok(TestFunction::radial_profile(
            weight,
            label,
            Arc::new(move |r: f64| (-c * r.powf(alpha)).exp()),
            Arc::new(move |r: f64| {
                if r == 0.0 && alpha < 1.0 {
                    return 0.0;
                }
                -c * alpha * r.powf(alpha - 1.0) * (-c * r.powf(alpha)).exp()
            }),
            RadialTail::ExpPow {
                coeff: c,
                power: alpha,
            },
        ))
    }

    pub fn mixture(weight: Weight, terms: Vec<MixtureTerm>) -> Result<Self, FuncspaceError> {
        if terms.is_empty() {
            return Err(FuncspaceError::InvalidParameter(
                "mixture needs at least one term".into(),
            ));
        }
        for t in &terms {
            if t.center.len() != weight.n() {
                return Err(FuncspaceError::DimensionMismatch {
                    expected: weight.n(),
                    got: t.center.len(),
                });
            }
            if !(t.coeff > 0.0 && t.sigma > 0.0) {
                return Err(FuncspaceError::InvalidParameter(format!(
                    "mixture terms need positive coeff and sigma, got coeff={}, sigma={}",
                    t.coeff, t.sigma
                )));
            }
        }
        Ok(TestFunction {
            family: Family::Mixture { terms },
            weight,
        })
    }

    pub fn tensor(factors: Vec<TestFunction>) -> Result<Self, FuncspaceError> {
        if factors.is_empty() {
            return Err(FuncspaceError::InvalidParameter(
                "tensor product needs at least one factor".into(),
            ));
        }
        let mut exps = Vec::new();
        for f in &factors {
            exps.extend_from_slice(f.weight.exponents());
        }
        let weight = Weight::new(exps).expect("factor weights are valid");
        Ok(TestFunction {
            family: Family::TensorProduct { factors },
            weight,
        })
    }

    /// The product function `F(z) = ∏_{i=1}^l f(x^i)` on `(R^{ln}, B)` with
    /// `B` the `l`-fold concatenation of `A`; `l = 1` returns the function
    /// itself.
    pub fn tensorize(&self, l: usize) -> Result<Self, FuncspaceError> {
        if l == 0 {
            return Err(FuncspaceError::InvalidParameter("l must be >= 1".into()));
        }
        if l == 1 {
            return Ok(self.clone());
        }
        TestFunction::tensor(vec![self.clone(); l])
    }

    // -- accessors ----------------------------------------------------------

    pub fn weight(&self) -> &Weight {
        &self.weight
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    /// Radius of the support when the family is compactly supported.
    pub fn support_radius(&self) -> Option<f64> {
        match &self.family {
            Family::Bump { radius, .. } | Family::Indicator { radius } => Some(*radius),
            Family::RadialProfile { tail, .. } => match tail {
                RadialTail::Compact { radius } => Some(*radius),
                _ => None,
            },
            _ => None,
        }
    }

    /// Measure and perimeter data of an indicator ball (its BV gradient).
    pub fn indicator_data(&self) -> Option<IndicatorData> {
        match &self.family {
            Family::Indicator { radius } => {
                let g = ball_geometry(&self.weight);
                let d = self.weight.d();
                Some(IndicatorData {
                    radius: *radius,
                    measure: g.measure * radius.powf(d),
                    perimeter: g.perimeter * radius.powf(d - 1.0),
                })
            }
            _ => None,
        }
    }

    // -- evaluation ----------------------------------------------------------

    fn check_dim(&self, got: usize) -> Result<(), FuncspaceError> {
        if got != self.weight.n() {
            return Err(FuncspaceError::DimensionMismatch {
                expected: self.weight.n(),
                got,
            });
        }
        Ok(())
    }

    /// Pointwise value; an indicator signals its boundary sphere as a
    /// singular point.
    pub fn eval(&self, x: &[f64]) -> Result<f64, FuncspaceError> {
        self.check_dim(x.len())?;
        match &self.family {
            Family::Gaussian {
                center,
                sigma,
                amplitude,
            } => {
                let r2: f64 = x
                    .iter()
                    .zip(center)
                    .map(|(xi, ci)| (xi - ci) * (xi - ci))
                    .sum();
                Ok(amplitude * (-r2 / (4.0 * sigma)).exp())
            }
            Family::SobolevExtremal { a, b, p } => {
                let pp = p / (p - 1.0);
                let base = a + b * norm(x).powf(pp);
                Ok(base.powf(1.0 - self.weight.d() / p))
            }
            Family::CauchyProfile { sigma, beta } => {
                let r2: f64 = x.iter().map(|t| t * t).sum();
                Ok((1.0 + sigma * r2).powf(-beta))
            }
            Family::Bump { radius, order } => {
                let u = x.iter().map(|t| t * t).sum::<f64>() / (radius * radius);
                Ok(if u < 1.0 { (1.0 - u).powi(*order as i32) } else { 0.0 })
            }
            Family::Indicator { radius } => {
                let r = norm(x);
                if r == *radius {
                    Err(FuncspaceError::SingularPoint(r))
                } else {
                    Ok(if r < *radius { 1.0 } else { 0.0 })
                }
            }
            Family::RadialProfile { value, .. } => Ok(value(norm(x))),
            Family::TensorProduct { factors } => {
                let mut product = 1.0;
                let mut offset = 0;
                for f in factors {
                    let n = f.weight.n();
                    product *= f.eval(&x[offset..offset + n])?;
                    offset += n;
                }
                Ok(product)
            }
            Family::Mixture { terms } => Ok(terms
                .iter()
                .map(|t| {
                    let r2: f64 = x
                        .iter()
                        .zip(&t.center)
                        .map(|(xi, ci)| (xi - ci) * (xi - ci))
                        .sum();
                    t.coeff * (-r2 / (4.0 * t.sigma)).exp()
                })
                .sum()),
        }
    }

    /// Analytic gradient; matches central finite differences away from the
    /// declared singular set.
    pub fn eval_grad(&self, x: &[f64]) -> Result<Vec<f64>, FuncspaceError> {
        self.check_dim(x.len())?;
        let n = x.len();
        match &self.family {
            Family::Gaussian { center, sigma, .. } => {
                let v = self.eval(x)?;
                Ok(x.iter()
                    .zip(center)
                    .map(|(xi, ci)| -v * (xi - ci) / (2.0 * sigma))
                    .collect())
            }
            Family::SobolevExtremal { a, b, p } => {
                let d = self.weight.d();
                let pp = p / (p - 1.0);
                let r = norm(x);
                if r == 0.0 {
                    return Ok(vec![0.0; n]);
                }
                let base = a + b * r.powf(pp);
                let dr = (1.0 - d / p) * base.powf(-d / p) * b * pp * r.powf(pp - 1.0);
                Ok(x.iter().map(|xi| dr * xi / r).collect())
            }
            Family::CauchyProfile { sigma, beta } => {
                let r2: f64 = x.iter().map(|t| t * t).sum();
                let factor = -2.0 * sigma * beta * (1.0 + sigma * r2).powf(-beta - 1.0);
                Ok(x.iter().map(|xi| factor * xi).collect())
            }
            Family::Bump { radius, order } => {
                let r2: f64 = x.iter().map(|t| t * t).sum();
                let u = r2 / (radius * radius);
                if u >= 1.0 {
                    return Ok(vec![0.0; n]);
                }
                let factor =
                    -2.0 * f64::from(*order) * (1.0 - u).powi(*order as i32 - 1) / (radius * radius);
                Ok(x.iter().map(|xi| factor * xi).collect())
            }
            Family::Indicator { radius } => {
                let r = norm(x);
                if r == *radius {
                    Err(FuncspaceError::SingularPoint(r))
                } else {
                    Ok(vec![0.0; n])
                }
            }
            Family::RadialProfile { deriv, .. } => {
                let r = norm(x);
                if r == 0.0 {
                    return Ok(vec![0.0; n]);
                }
                let dr = deriv(r);
                Ok(x.iter().map(|xi| dr * xi / r).collect())
            }
            Family::TensorProduct { factors } => {
                let mut values = Vec::with_capacity(factors.len());
                let mut grads = Vec::with_capacity(factors.len());
                let mut offset = 0;
                for f in factors {
                    let fn_dim = f.weight.n();
                    let block = &x[offset..offset + fn_dim];
                    values.push(f.eval(block)?);
                    grads.push(f.eval_grad(block)?);
                    offset += fn_dim;
                }
                let mut out = Vec::with_capacity(n);
                for (i, grad) in grads.iter().enumerate() {
                    let others: f64 = values
                        .iter()
                        .enumerate()
                        .filter(|(j, _)| *j != i)
                        .map(|(_, v)| v)
                        .product();
                    out.extend(grad.iter().map(|g| g * others));
                }
                Ok(out)
            }
            Family::Mixture { terms } => {
                let mut out = vec![0.0; n];
                for t in terms {
                    let r2: f64 = x
                        .iter()
                        .zip(&t.center)
                        .map(|(xi, ci)| (xi - ci) * (xi - ci))
                        .sum();
                    let v = t.coeff * (-r2 / (4.0 * t.sigma)).exp();
                    for (o, (xi, ci)) in out.iter_mut().zip(x.iter().zip(&t.center)) {
                        *o += -v * (xi - ci) / (2.0 * t.sigma);
                    }
                }
                Ok(out)
            }
        }
    }

    // -- structure for the functional dispatcher -----------------------------

    /// Radial reduction `f(x) = ρ(|x|)` when the family is radial about the
    /// origin.
    pub fn radial_view(&self) -> Option<RadialView<'_>> {
        let d = self.weight.d();
        match &self.family {
            Family::Gaussian {
                center,
                sigma,
                amplitude,
            } if center.iter().all(|&c| c == 0.0) => {
                let (s, amp) = (*sigma, *amplitude);
                Some(RadialView {
                    profile: Box::new(move |r: f64| amp * (-r * r / (4.0 * s)).exp()),
                    deriv: Some(Box::new(move |r: f64| {
                        -amp * (-r * r / (4.0 * s)).exp() * r / (2.0 * s)
                    })),
                    tail: RadialTail::Gauss { sigma: s },
                })
            }
            Family::SobolevExtremal { a, b, p } => {
                let (a, b, p) = (*a, *b, *p);
                let pp = p / (p - 1.0);
                let expo = 1.0 - d / p;
                Some(RadialView {
                    profile: Box::new(move |r: f64| (a + b * r.powf(pp)).powf(expo)),
                    deriv: Some(Box::new(move |r: f64| {
                        if r == 0.0 {
                            return 0.0;
                        }
                        expo * (a + b * r.powf(pp)).powf(expo - 1.0) * b * pp * r.powf(pp - 1.0)
                    })),
                    tail: RadialTail::Algebraic {
                        gamma: (d - p) / (p - 1.0),
                    },
                })
            }
            Family::CauchyProfile { sigma, beta } => {
                let (s, bt) = (*sigma, *beta);
                Some(RadialView {
                    profile: Box::new(move |r: f64| (1.0 + s * r * r).powf(-bt)),
                    deriv: Some(Box::new(move |r: f64| {
                        -2.0 * s * bt * (1.0 + s * r * r).powf(-bt - 1.0) * r
                    })),
                    tail: RadialTail::Algebraic { gamma: 2.0 * bt },
                })
            }
            Family::Bump { radius, order } => {
                let (rr, m) = (*radius, *order);
                Some(RadialView {
                    profile: Box::new(move |r: f64| {
                        let u = r * r / (rr * rr);
                        if u < 1.0 {
                            (1.0 - u).powi(m as i32)
                        } else {
                            0.0
                        }
                    }),
                    deriv: Some(Box::new(move |r: f64| {
                        let u = r * r / (rr * rr);
                        if u < 1.0 {
                            -2.0 * f64::from(m) * (1.0 - u).powi(m as i32 - 1) * r / (rr * rr)
                        } else {
                            0.0
                        }
                    })),
                    tail: RadialTail::Compact { radius: rr },
                })
            }
            Family::RadialProfile {
                value, deriv, tail, ..
            } => {
                let (v, dv) = (value.clone(), deriv.clone());
                Some(RadialView {
                    profile: Box::new(move |r: f64| v(r)),
                    deriv: Some(Box::new(move |r: f64| dv(r))),
                    tail: *tail,
                })
            }
            Family::Mixture { terms } if terms.iter().all(|t| t.center.iter().all(|&c| c == 0.0)) => {
                let terms = terms.clone();
                let terms2 = terms.clone();
                let sigma_max = terms
                    .iter()
                    .map(|t| t.sigma)
                    .fold(f64::MIN_POSITIVE, f64::max);
                Some(RadialView {
                    profile: Box::new(move |r: f64| {
                        terms
                            .iter()
                            .map(|t| t.coeff * (-r * r / (4.0 * t.sigma)).exp())
                            .sum()
                    }),
                    deriv: Some(Box::new(move |r: f64| {
                        terms2
                            .iter()
                            .map(|t| -t.coeff * (-r * r / (4.0 * t.sigma)).exp() * r / (2.0 * t.sigma))
                            .sum()
                    })),
                    tail: RadialTail::Gauss { sigma: sigma_max },
                })
            }
            _ => None,
        }
    }

    /// The reflected function `x ↦ f(ε ∘ x)` for a sign pattern; `None`
    /// when the family is not closed under reflections.
    pub fn reflect(&self, signs: &[bool]) -> Option<TestFunction> {
        let flip = |c: &[f64]| -> Vec<f64> {
            c.iter()
                .zip(signs)
                .map(|(ci, &s)| if s { -ci } else { *ci })
                .collect()
        };
        match &self.family {
            Family::Gaussian {
                center,
                sigma,
                amplitude,
            } => Some(TestFunction {
                family: Family::Gaussian {
                    center: flip(center),
                    sigma: *sigma,
                    amplitude: *amplitude,
                },
                weight: self.weight.clone(),
            }),
            Family::Mixture { terms } => Some(TestFunction {
                family: Family::Mixture {
                    terms: terms
                        .iter()
                        .map(|t| MixtureTerm {
                            coeff: t.coeff,
                            center: flip(&t.center),
                            sigma: t.sigma,
                        })
                        .collect(),
                },
                weight: self.weight.clone(),
            }),
            // radial families are even in every coordinate
            Family::SobolevExtremal { .. }
            | Family::CauchyProfile { .. }
            | Family::Bump { .. }
            | Family::Indicator { .. }
            | Family::RadialProfile { .. } => Some(self.clone()),
            Family::TensorProduct { .. } => None,
        }
    }

    /// The rescaled function `f_λ(x) = λ^{power} f(λx)`, exact within the
    /// family (Gaussians and mixtures only).
    pub fn dilate(&self, lambda: f64, power: f64) -> Result<TestFunction, FuncspaceError> {
        if !(lambda > 0.0) {
            return Err(FuncspaceError::InvalidParameter(format!(
                "dilation needs lambda > 0, got {lambda}"
            )));
        }
        let scale = lambda.powf(power);
        match &self.family {
            Family::Gaussian {
                center,
                sigma,
                amplitude,
            } => Ok(TestFunction {
                family: Family::Gaussian {
                    center: center.iter().map(|c| c / lambda).collect(),
                    sigma: sigma / (lambda * lambda),
                    amplitude: amplitude * scale,
                },
                weight: self.weight.clone(),
            }),
            Family::Mixture { terms } => Ok(TestFunction {
                family: Family::Mixture {
                    terms: terms
                        .iter()
                        .map(|t| MixtureTerm {
                            coeff: t.coeff * scale,
                            center: t.center.iter().map(|c| c / lambda).collect(),
                            sigma: t.sigma / (lambda * lambda),
                        })
                        .collect(),
                },
                weight: self.weight.clone(),
            }),
            other => Err(FuncspaceError::Unsupported(format!(
                "dilation not closed for {other:?}"
            ))),
        }
    }

    /// Serializable description: family name plus parameter map.
    pub fn descriptor(&self) -> serde_json::Value {
        match &self.family {
            Family::Gaussian {
                center,
                sigma,
                amplitude,
            } => json!({"family": "gaussian", "center": center, "sigma": sigma, "amplitude": amplitude}),
            Family::SobolevExtremal { a, b, p } => {
                json!({"family": "sobolev_extremal", "a": a, "b": b, "p": p})
            }
            Family::CauchyProfile { sigma, beta } => {
                json!({"family": "cauchy", "sigma": sigma, "beta": beta})
            }
            Family::Bump { radius, order } => {
                json!({"family": "bump", "radius": radius, "order": order})
            }
            Family::Indicator { radius } => json!({"family": "indicator", "radius": radius}),
            Family::RadialProfile { label, .. } => {
                json!({"family": "radial_profile", "label": label})
            }
            Family::TensorProduct { factors } => json!({
                "family": "tensor_product",
                "factors": factors.iter().map(|f| f.descriptor()).collect::<Vec<_>>(),
            }),
            Family::Mixture { terms } => json!({"family": "mixture", "terms": terms}),
        }
    }

    /// Closed-form weighted functionals where the family supplies them.
    pub fn closed_forms(&self) -> ClosedForms {
        let w = &self.weight;
        let d = w.d();
        match &self.family {
            Family::Gaussian {
                center,
                sigma,
                amplitude,
            } if center.iter().all(|&c| c == 0.0) => {
                let moment = |s: f64| {
                    gaussian_moment(w, 2.0, s / (4.0 * sigma)).expect("valid parameters")
                };
                let amp = *amplitude;
                let m1 = moment(1.0);
                let m2 = moment(2.0);
                let l1 = amp.abs() * m1.mass;
                let l2 = amp * amp * m2.mass;
                let s2 = amp * amp * m2.moment;
                let s1 = amp.abs() * m1.moment;
                // ln|f| = ln amp - r²/(4σ), so ∫|f|^s ln|f|^s splits into a
                // mass term and a second-moment term.
                ClosedForms {
                    l1_mass: Some(l1),
                    l2_mass: Some(l2),
                    second_moment_l2: Some(s2),
                    grad_l2: Some(s2 / (4.0 * sigma * sigma)),
                    entropy2: Some(2.0 * (amp.abs().ln() * l2 - s2 / (4.0 * sigma))),
                    entropy1: Some(amp.abs().ln() * l1 - s1 / (4.0 * sigma)),
                }
            }
            Family::CauchyProfile { sigma, beta } => {
                let mass = |s: f64| {
                    if beta * s > d / 2.0 {
                        cauchy_integral(w, *sigma, beta * s).ok()
                    } else {
                        None
                    }
                };
                ClosedForms {
                    l1_mass: mass(1.0),
                    l2_mass: mass(2.0),
                    ..Default::default()
                }
            }
            Family::Indicator { .. } => {
                let data = self.indicator_data().expect("indicator");
                ClosedForms {
                    l1_mass: Some(data.measure),
                    l2_mass: Some(data.measure),
                    entropy1: Some(0.0),
                    entropy2: Some(0.0),
                    ..Default::default()
                }
            }
            _ => ClosedForms::default(),
        }
    }
}

/// Radial reduction of a test function: profile, derivative, and tail.
pub struct RadialView<'a> {
    pub profile: Box<dyn Fn(f64) -> f64 + Send + Sync + 'a>,
    pub deriv: Option<Box<dyn Fn(f64) -> f64 + Send + Sync + 'a>>,
    pub tail: RadialTail,
}

/// The BV data of an indicator ball.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct IndicatorData {
    pub radius: f64,
    pub measure: f64,
    pub perimeter: f64,
}

/// Exact values of weighted functionals, when the family provides them.
#[derive(Debug, Clone, Copy, Default, Serialize)]
pub struct ClosedForms {
    pub l1_mass: Option<f64>,
    pub l2_mass: Option<f64>,
    pub entropy1: Option<f64>,
    pub entropy2: Option<f64>,
    pub grad_l2: Option<f64>,
    pub second_moment_l2: Option<f64>,
}

// ---------------------------------------------------------------------------
// Paper closed forms
// ---------------------------------------------------------------------------

/// The two weighted exponential integrals
/// `∫ e^{-t|x|^α} x^A dx = t^{-D/α} Γ(D/α+1)/Γ(D/2+1) · Π(A)^{D/2}` and
/// `∫ e^{-t|x|^α} |x|^α x^A dx = (D/α) t^{-D/α-1} Γ(D/α+1)/Γ(D/2+1) · Π(A)^{D/2}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GaussianMoment {
    pub mass: f64,
    pub moment: f64,
}

pub fn gaussian_moment(w: &Weight, alpha: f64, t: f64) -> Result<GaussianMoment, FuncspaceError> {
    if !(alpha > 0.0 && t > 0.0) {
        return Err(FuncspaceError::InvalidParameter(format!(
            "gaussian_moment needs alpha > 0 and t > 0, got alpha={alpha}, t={t}"
        )));
    }
    let d = w.d();
    let log_factor = lgamma(d / alpha + 1.0) - lgamma(0.5 * d + 1.0) + 0.5 * d * log_pi_a(w);
    let mass = (-(d / alpha) * t.ln() + log_factor).exp();
    Ok(GaussianMoment {
        mass,
        moment: (d / alpha) * mass / t,
    })
}

/// `∫ (1 + σ|x|²)^{-β} x^A dx = (Π(A)/σ)^{D/2} Γ(β - D/2)/Γ(β)` for `β > D/2`.
pub fn cauchy_integral(w: &Weight, sigma: f64, beta: f64) -> Result<f64, FuncspaceError> {
    if !(sigma > 0.0) {
        return Err(FuncspaceError::InvalidParameter(format!(
            "cauchy_integral needs sigma > 0, got {sigma}"
        )));
    }
    let d = w.d();
    if !(beta > d / 2.0) {
        return Err(FuncspaceError::Divergent(format!(
            "cauchy_integral needs beta > D/2 = {}, got beta={beta}",
            d / 2.0
        )));
    }
    Ok((0.5 * d * (log_pi_a(w) - sigma.ln()) + lgamma(beta - 0.5 * d) - lgamma(beta)).exp())
}

// ---------------------------------------------------------------------------
// Half-space functions for the trace inequality
// ---------------------------------------------------------------------------

/// The separable profile in the transverse variable `y ∈ (0, ∞)`.
#[derive(Clone)]
pub struct YProfile {
    pub label: String,
    value: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    deriv: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    tail: RadialTail,
}

impl YProfile {
    pub fn new(
        label: impl Into<String>,
        value: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
        deriv: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
        tail: RadialTail,
    ) -> Self {
        YProfile {
            label: label.into(),
            value,
            deriv,
            tail,
        }
    }

    /// `h(y) = e^{-y²/(4σ)}`.
    pub fn gaussian(sigma: f64) -> Self {
        YProfile {
            label: format!("gaussian(sigma={sigma})"),
            value: Arc::new(move |y: f64| (-y * y / (4.0 * sigma)).exp()),
            deriv: Arc::new(move |y: f64| -(-y * y / (4.0 * sigma)).exp() * y / (2.0 * sigma)),
            tail: RadialTail::Gauss { sigma },
        }
    }

    pub fn value(&self, y: f64) -> f64 {
        (self.value)(y)
    }

    pub fn deriv(&self, y: f64) -> f64 {
        (self.deriv)(y)
    }

    pub fn tail(&self) -> RadialTail {
        self.tail
    }
}

impl std::fmt::Debug for YProfile {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "YProfile({})", self.label)
    }
}

/// A separable function `f(x, y) = g(x) h(y)` on the half-space
/// `R^n_A × (0, ∞)`, the shape the trace inequality is checked on.
#[derive(Debug, Clone)]
pub struct HalfSpaceFunction {
    pub x_part: TestFunction,
    pub y_profile: YProfile,
}

impl HalfSpaceFunction {
    pub fn new(x_part: TestFunction, y_profile: YProfile) -> Self {
        HalfSpaceFunction { x_part, y_profile }
    }

    pub fn descriptor(&self) -> serde_json::Value {
        json!({
            "family": "half_space",
            "x_part": self.x_part.descriptor(),
            "y_profile": self.y_profile.label,
        })
    }
}
