//! Separable integrands: products of per-coordinate factors, each handled
//! by one weighted one-dimensional integral. Coordinates with `A_i > 0`
//! integrate over `(0, ∞)`, the rest over all of `R`.

use super::onedim::{full_line, weighted_halfline};
use super::{Estimate, QuadError, QuadratureSpec, TailBehavior};
use crate::special::Weight;

/// One factor of a separable integrand.
pub struct Factor1D<'a> {
    pub f: &'a (dyn Fn(f64) -> f64 + Sync),
    pub tail: TailBehavior,
}

/// `∏_i ∫ f_i(t) |t|^{A_i} dt`, each axis over its part of `R^n_A`, with
/// multiplicative error propagation.
pub fn integrate_separable(
    factors: &[Factor1D],
    w: &Weight,
    spec: &QuadratureSpec,
) -> Result<Estimate, QuadError> {
    spec.validate()?;
    if factors.len() != w.n() {
        return Err(QuadError::Unsupported(format!(
            "expected {} factors for {w}, got {}",
            w.n(),
            factors.len()
        )));
    }
    let tols = spec.tols();
    let mut parts = Vec::with_capacity(factors.len());
    for (i, factor) in factors.iter().enumerate() {
        let a_i = w.exponents()[i];
        let part = if w.half_line(i) {
            weighted_halfline(&factor.f, a_i, factor.tail, tols)?
        } else {
            full_line(&factor.f, a_i, factor.tail, tols)?
        };
        parts.push(part);
    }
    Ok(product_estimate(&parts))
}

/// First-order error propagation for a product of estimates.
pub(crate) fn product_estimate(parts: &[Estimate]) -> Estimate {
    let value: f64 = parts.iter().map(|e| e.value).product();
    let mut error = 0.0;
    for (i, p) in parts.iter().enumerate() {
        let others: f64 = parts
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, q)| q.value.abs().max(q.error))
            .product();
        error += p.error * others;
    }
    Estimate::new(value, error)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1e-300)
    }

    #[test]
    fn plain_gaussian_plane() {
        // ∫_{R²} e^{-x²-y²} dxdy = π
        let w = Weight::unweighted(2);
        let tail = TailBehavior::ExpDecay { scale: 1.0 };
        let g = |t: f64| (-t * t).exp();
        let e = integrate_separable(
            &[Factor1D { f: &g, tail }, Factor1D { f: &g, tail }],
            &w,
            &QuadratureSpec::default(),
        )
        .unwrap();
        assert!(rel(e.value, PI) < 1e-12);
    }

    #[test]
    fn mixed_rates_with_weight() {
        // ∫_0^∞ t e^{-t²} dt · ∫_0^∞ t e^{-2t²} dt = (1/2)(1/4)
        let w = Weight::new(vec![1.0, 1.0]).unwrap();
        let tail = TailBehavior::ExpDecay { scale: 1.0 };
        let f1 = |t: f64| (-t * t).exp();
        let f2 = |t: f64| (-2.0 * t * t).exp();
        let e = integrate_separable(
            &[Factor1D { f: &f1, tail }, Factor1D { f: &f2, tail }],
            &w,
            &QuadratureSpec::default(),
        )
        .unwrap();
        assert!(rel(e.value, 0.125) < 1e-12);
    }

    #[test]
    fn tensor_square_rule() {
        // two equal factors: the product is the square of one factor
        let w1 = Weight::new(vec![0.5]).unwrap();
        let w2 = w1.repeat(2);
        let tail = TailBehavior::ExpDecay { scale: 1.0 };
        let g = |t: f64| (-0.7 * t * t).exp();
        let one = integrate_separable(&[Factor1D { f: &g, tail }], &w1, &QuadratureSpec::default())
            .unwrap();
        let two = integrate_separable(
            &[Factor1D { f: &g, tail }, Factor1D { f: &g, tail }],
            &w2,
            &QuadratureSpec::default(),
        )
        .unwrap();
        assert!(rel(two.value, one.value * one.value) < 1e-11);
    }
}
