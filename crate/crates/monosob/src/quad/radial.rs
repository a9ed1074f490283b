//! Radial reduction: `∫_{R^n_A} g(|x|) x^A dx = P(B_1^A) ∫_0^∞ g(r) r^{D-1} dr`.

use super::onedim::weighted_halfline;
use super::{Estimate, QuadError, QuadratureSpec, TailBehavior};
use crate::special::{ball_geometry, Weight};

/// A radial profile together with its declared decay.
pub struct RadialIntegrand<'a> {
    pub profile: &'a (dyn Fn(f64) -> f64 + Sync),
    pub tail: TailBehavior,
}

/// `P(B_1^A) · ∫_0^∞ profile(r) r^{D-1} dr`, the weighted integral of a
/// radial function over `R^n_A`.
pub fn integrate_radial(
    integrand: &RadialIntegrand,
    w: &Weight,
    spec: &QuadratureSpec,
) -> Result<Estimate, QuadError> {
    radial_power(integrand, w, 0.0, spec)
}

/// Same with an extra algebraic factor `r^{extra}` (radial moments).
pub(crate) fn radial_power(
    integrand: &RadialIntegrand,
    w: &Weight,
    extra: f64,
    spec: &QuadratureSpec,
) -> Result<Estimate, QuadError> {
    spec.validate()?;
    let a_exp = w.d() - 1.0 + extra;
    if let TailBehavior::Algebraic { decay, .. } = integrand.tail {
        if decay <= a_exp + 1.0 + 1e-12 {
            return Err(QuadError::Divergent(format!(
                "radial integrand decaying like r^-{decay} is not integrable against r^{a_exp}"
            )));
        }
    }
    let inner = weighted_halfline(&integrand.profile, a_exp, integrand.tail, spec.tols())?;
    Ok(inner.scale(ball_geometry(w).perimeter))
}
