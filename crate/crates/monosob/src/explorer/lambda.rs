//! The scaling optimization inside the Shannon inequality: minimize
//! `G(λ) = C_A(α) J(f) λ^{-α} + D ln λ` over `λ > 0`. The closed-form
//! minimizer is `λ_* = (α C_A(α) J / D)^{1/α}`; a golden-section search
//! provides the independent numeric route.

use crate::checkers::{CheckError, Normalizer};
use crate::constants::shannon_c_a;
use crate::funcspace::TestFunction;
use crate::quad::{functionals_of, Need, QuadratureSpec};
use serde::Serialize;
use std::f64::consts::E;

#[derive(Debug, Clone, Copy, Serialize)]
pub struct LambdaOpt {
    /// Closed-form minimizer `λ_* = (α C_A(α) J / D)^{1/α}`.
    pub lambda_star: f64,
    /// `G(λ_*) = (D/α) ln( C_A(α) α e J / D )`.
    pub g_min: f64,
    /// Minimizer found by golden-section search.
    pub numeric_lambda: f64,
    pub numeric_g_min: f64,
    /// The moment `J(f) = ∫|f| |x|^α x^A dx` (after normalization).
    pub j_moment: f64,
}

pub fn shannon_lambda_opt(
    f: &TestFunction,
    alpha: f64,
    spec: &QuadratureSpec,
) -> Result<LambdaOpt, CheckError> {
    if !(alpha > 0.0) {
        return Err(CheckError::Domain(format!(
            "lambda optimization needs alpha > 0, got {alpha}"
        )));
    }
    let w = f.weight();
    let d = w.d();
    let c_a = shannon_c_a(w, alpha)?;
    let fs = functionals_of(
        f,
        &[Need::Mass(1.0), Need::Moment { s: 1.0, alpha }],
        spec,
    )?;
    let norm = Normalizer::new(fs.mass(1.0), 1.0)?;
    let j = norm.scale(fs.moment(1.0, alpha)).value;

    let lambda_star = (alpha * c_a * j / d).powf(1.0 / alpha);
    let g = |lambda: f64| c_a * j * lambda.powf(-alpha) + d * lambda.ln();
    let g_min = (d / alpha) * (c_a * alpha * E * j / d).ln();

    let (numeric_lambda, numeric_g_min) = golden_section(&g, lambda_star / 50.0, lambda_star * 50.0);
    Ok(LambdaOpt {
        lambda_star,
        g_min,
        numeric_lambda,
        numeric_g_min,
        j_moment: j,
    })
}

/// Golden-section minimization on `[lo, hi]` in log coordinates.
fn golden_section(g: &dyn Fn(f64) -> f64, lo: f64, hi: f64) -> (f64, f64) {
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (lo.ln(), hi.ln());
    let mut c = b - phi * (b - a);
    let mut d = a + phi * (b - a);
    let mut gc = g(c.exp());
    let mut gd = g(d.exp());
    for _ in 0..200 {
        if gc < gd {
            b = d;
            d = c;
            gd = gc;
            c = b - phi * (b - a);
            gc = g(c.exp());
        } else {
            a = c;
            c = d;
            gc = gd;
            d = a + phi * (b - a);
            gd = g(d.exp());
        }
        if (b - a).abs() < 1e-12 {
            break;
        }
    }
    let x = (0.5 * (a + b)).exp();
    (x, g(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::Weight;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1e-300)
    }

    #[test]
    fn phi_alpha_has_lambda_star_one() {
        let spec = QuadratureSpec::default();
        for alpha in [1.0, 2.0, 3.0] {
            let w = Weight::new(vec![1.0, 2.0]).unwrap();
            let c = shannon_c_a(&w, alpha).unwrap();
            let f = TestFunction::exp_power(w.clone(), c, alpha).unwrap();
            let opt = shannon_lambda_opt(&f, alpha, &spec).unwrap();
            // J = D/(α C_A) at the extremal, so λ_* = 1
            assert!(rel(opt.j_moment, w.d() / (alpha * c)) < 1e-8);
            assert!(rel(opt.lambda_star, 1.0) < 1e-8, "alpha={alpha}");
            assert!(rel(opt.numeric_lambda, opt.lambda_star) < 1e-6);
            assert!(rel(opt.numeric_g_min, opt.g_min) < 1e-8);
        }
    }

    #[test]
    fn dilation_moves_lambda_star_but_not_g_min() {
        // f → f_μ = μ^D f(μx): J scales by μ^{-α}, λ_* by μ^{-1}, G_min fixed
        let spec = QuadratureSpec::default();
        let w = Weight::new(vec![1.0, 1.0]).unwrap();
        let f = TestFunction::mixture(
            w.clone(),
            vec![crate::funcspace::MixtureTerm {
                coeff: 1.0,
                center: vec![0.2, 0.5],
                sigma: 0.7,
            }],
        )
        .unwrap();
        let alpha = 2.0;
        let base = shannon_lambda_opt(&f, alpha, &spec).unwrap();
        let mu = 2.0;
        let fm = f.dilate(mu, w.d()).unwrap();
        let moved = shannon_lambda_opt(&fm, alpha, &spec).unwrap();
        assert!(rel(moved.j_moment, base.j_moment * mu.powf(-alpha)) < 1e-8);
        assert!(rel(moved.lambda_star, base.lambda_star / mu) < 1e-8);
        assert!((moved.g_min - base.g_min).abs() < 1e-8);
    }

    #[test]
    fn numeric_grid_minimum_matches() {
        let spec = QuadratureSpec::default();
        let w = Weight::new(vec![0.5]).unwrap();
        let f = TestFunction::bump(w, 1.5).unwrap();
        let opt = shannon_lambda_opt(&f, 1.0, &spec).unwrap();
        assert!(rel(opt.numeric_lambda, opt.lambda_star) < 1e-6);
        assert!(opt.numeric_g_min >= opt.g_min - 1e-10);
    }
}
