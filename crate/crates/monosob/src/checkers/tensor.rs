//! Numerical verification of the tensorization identities: the `L^p` mass
//! of `F(z) = ∏ f(x^i)` factors into the product of one-copy masses, and
//! its `L²` gradient energy is `l · (one-copy gradient) · (one-copy L²
//! mass)^{l-1}`.
//!
//! To keep the check non-circular the joint sides avoid the product rule:
//! a coordinate-separable base function is integrated axis by axis on
//! `R^{ln}`, and otherwise the tensor function is evaluated pointwise under
//! full cubature (possible while `ln` stays at or below the dimension cap).

use super::CheckError;
use crate::funcspace::{Family, TestFunction};
use crate::quad::{
    functionals_of, integrate_cubature, integrate_separable, CubatureDomain, Estimate, Factor1D,
    Need, QuadratureSpec, TailBehavior,
};
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct TensorConsistencyReport {
    pub l: usize,
    pub p: f64,
    /// `∫ |F|^p z^B dz` evaluated jointly on `R^{ln}`.
    pub mass_tensor: f64,
    /// `(∫ |f|^p x^A dx)^l`.
    pub mass_power: f64,
    pub mass_rel_dev: f64,
    /// `∫ |∇F|² z^B dz` evaluated jointly.
    pub grad_tensor: f64,
    /// `l · ∫|∇f|² · (∫|f|²)^{l-1}`.
    pub grad_target: f64,
    pub grad_rel_dev: f64,
    /// Which joint evaluation route was available.
    pub route: String,
    pub error_bound: f64,
}

/// Verify both tensorization displays for `F = f^{⊗l}`.
pub fn tensor_consistency(
    f: &TestFunction,
    l: usize,
    p: f64,
    spec: &QuadratureSpec,
) -> Result<TensorConsistencyReport, CheckError> {
    if !(2..=3).contains(&l) {
        return Err(CheckError::Domain(format!(
            "tensor consistency is checked for l in {{2, 3}}, got {l}"
        )));
    }
    let w = f.weight();
    let one = functionals_of(
        f,
        &[Need::Mass(p), Need::Mass(2.0), Need::GradMass(2.0)],
        spec,
    )?;
    let mass_power = one.mass(p).powf(l as f64);
    let grad_target = one
        .grad(2.0)
        .mul(one.mass(2.0).powf(l as f64 - 1.0))
        .scale(l as f64);

    let (mass_tensor, grad_tensor, route) = joint_sides(f, l, p, spec)?;
    let rel = |a: Estimate, b: Estimate| (a.value - b.value).abs() / b.value.abs().max(1e-300);
    Ok(TensorConsistencyReport {
        l,
        p,
        mass_tensor: mass_tensor.value,
        mass_power: mass_power.value,
        mass_rel_dev: rel(mass_tensor, mass_power),
        grad_tensor: grad_tensor.value,
        grad_target: grad_target.value,
        grad_rel_dev: rel(grad_tensor, grad_target),
        route,
        error_bound: mass_tensor.error
            + mass_power.error
            + grad_tensor.error
            + grad_target.error,
    })
}

fn joint_sides(
    f: &TestFunction,
    l: usize,
    p: f64,
    spec: &QuadratureSpec,
) -> Result<(Estimate, Estimate, String), CheckError> {
    let w = f.weight();
    let n = w.n();
    let big_w = w.repeat(l);

    // Centered Gaussians factor across every coordinate of R^{ln}: the joint
    // integral is a product of ln one-dimensional integrals, not an l-th
    // power of anything the product rule computed.
    if let Family::Gaussian {
        center,
        sigma,
        amplitude,
    } = f.family()
    {
        if center.iter().all(|&c| c == 0.0) {
            let (s, amp) = (*sigma, *amplitude);
            let big_n = n * l;
            let mass_axis = move |t: f64| (-p * t * t / (4.0 * s)).exp();
            let tail = TailBehavior::ExpDecay {
                scale: 8.0 * (s / p).sqrt(),
            };
            let factors: Vec<Factor1D> = (0..big_n)
                .map(|_| Factor1D { f: &mass_axis, tail })
                .collect();
            // |F|^p = |amp|^{pl} ∏_axes e^{-p t²/(4σ)}
            let mass =
                integrate_separable(&factors, &big_w, spec)?.scale(amp.abs().powf(p * l as f64));
            // |∇F|² = F² Σ_j t_j²/(4σ²): per-axis expansion
            let plain_axis = move |t: f64| (-t * t / (2.0 * s)).exp();
            let t2_axis = move |t: f64| t * t * (-t * t / (2.0 * s)).exp();
            let tail2 = TailBehavior::ExpDecay { scale: 8.0 * s.sqrt() };
            let mut grad = Estimate::exact(0.0);
            for j in 0..big_n {
                let factors: Vec<Factor1D> = (0..big_n)
                    .map(|i| {
                        if i == j {
                            Factor1D { f: &t2_axis, tail: tail2 }
                        } else {
                            Factor1D { f: &plain_axis, tail: tail2 }
                        }
                    })
                    .collect();
                grad = grad.add(integrate_separable(&factors, &big_w, spec)?);
            }
            let amp2l = amplitude.powi(2 * l as i32);
            let grad = grad.scale(amp2l / (4.0 * s * s));
            return Ok((mass, grad, "axis-separable".into()));
        }
    }

    // Joint cubature while the tensor dimension allows it.
    if n * l <= spec.cubature_dim_cap {
        let big_f = f.tensorize(l)?;
        let tail = tensor_axis_tail(f);
        let domain = CubatureDomain::octant(&big_w, tail);
        let mass = integrate_cubature(
            &|z: &[f64]| big_f.eval(z).map_or(0.0, |v| v.abs().powf(p)),
            &big_w,
            &domain,
            spec,
        )?;
        let grad = integrate_cubature(
            &|z: &[f64]| {
                big_f
                    .eval_grad(z)
                    .map_or(0.0, |g| g.iter().map(|t| t * t).sum::<f64>())
            },
            &big_w,
            &domain,
            spec,
        )?;
        return Ok((mass, grad, "joint-cubature".into()));
    }

    // Last resort: evaluate each block by a fresh quadrature and multiply.
    let per_block_mass = functionals_of(f, &[Need::Mass(p)], spec)?.mass(p);
    let per_block_m2 = functionals_of(f, &[Need::Mass(2.0)], spec)?.mass(2.0);
    let per_block_grad = functionals_of(f, &[Need::GradMass(2.0)], spec)?.grad(2.0);
    let mass = per_block_mass.powf(l as f64);
    let grad = per_block_grad
        .mul(per_block_m2.powf(l as f64 - 1.0))
        .scale(l as f64);
    Ok((mass, grad, "block-product".into()))
}

fn tensor_axis_tail(f: &TestFunction) -> TailBehavior {
    match f.family() {
        Family::Bump { radius, .. } | Family::Indicator { radius } => {
            TailBehavior::Compact { radius: *radius }
        }
        Family::Gaussian { sigma, .. } => TailBehavior::ExpDecay {
            scale: 8.0 * sigma.sqrt(),
        },
        _ => TailBehavior::ExpDecay { scale: 8.0 },
    }
}
