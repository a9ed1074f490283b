//! Bounded-domain inequalities derived from the sharp Trudinger–Moser
//! bound: the refined `L^q` embedding of `W^{1,D}_0(Ω)` and the
//! logarithmic Sobolev form it implies. `Ω = B_R^A` here; the constant
//! `C_0` of the exponential bound is a supplied configuration parameter.

use super::{build_report, CheckError, InequalityId, InequalityReport, Normalizer, ReportParams};
use crate::constants::refined_c_q;
use crate::funcspace::TestFunction;
use crate::quad::{
    functionals_of, integrate_radial, Estimate, Need, QuadratureSpec, RadialIntegrand,
    TailBehavior,
};

struct RefinedSetup {
    cq: f64,
    m_omega: Estimate,
}

fn setup(
    u: &TestFunction,
    q: f64,
    c0: f64,
    omega_radius: f64,
    spec: &QuadratureSpec,
) -> Result<RefinedSetup, CheckError> {
    let w = u.weight();
    if w.d() <= 1.0 {
        return Err(CheckError::Domain(format!(
            "refined embedding needs D > 1, got D = {}",
            w.d()
        )));
    }
    let support = u.support_radius().ok_or_else(|| {
        CheckError::NotAdmissible("test function must be compactly supported inside Ω".into())
    })?;
    if support > omega_radius * (1.0 + 1e-12) {
        return Err(CheckError::NotAdmissible(format!(
            "support radius {support} exceeds the domain radius {omega_radius}"
        )));
    }
    // m(Ω) by quadrature of the constant profile over the ball
    let m_omega = integrate_radial(
        &RadialIntegrand {
            profile: &|_r: f64| 1.0,
            tail: TailBehavior::Compact {
                radius: omega_radius,
            },
        },
        w,
        spec,
    )?;
    let cq = refined_c_q(w, q, c0, m_omega.value)?;
    Ok(RefinedSetup { cq, m_omega })
}

/// Refined embedding `‖u‖_{L^q(Ω)} ≤ C(q) q^{(D-1)/D} ‖∇u‖_{L^D(Ω)}`
/// for `u` compactly supported in `Ω = B_R^A`, `q >= 2`.
pub fn check_refined_sobolev(
    u: &TestFunction,
    q: f64,
    c0: f64,
    omega_radius: f64,
    spec: &QuadratureSpec,
) -> Result<InequalityReport, CheckError> {
    let w = u.weight().clone();
    let d = w.d();
    let s = setup(u, q, c0, omega_radius, spec)?;
    let fs = functionals_of(u, &[Need::Mass(q), Need::GradMass(d)], spec)?;
    let lhs = fs.norm(q);
    let rhs = fs
        .grad_norm(d)
        .scale(s.cq * q.powf((d - 1.0) / d));
    let mut report = build_report(
        InequalityId::RefinedSobolev,
        &w,
        u.descriptor(),
        ReportParams {
            q: Some(q),
            c0: Some(c0),
            ..Default::default()
        },
        lhs,
        rhs,
        None,
    );
    report.error_bound += s.m_omega.error;
    Ok(report)
}

/// Logarithmic Sobolev form on the bounded domain, `q > D`:
/// `∫ |u|^D ln|u|^D x^A ≤ Dq/(q-D) · ln( C(q) q^{(D-1)/D} ‖∇u‖_{L^D} )`
/// for `∫|u|^D x^A = 1`.
pub fn check_tm_logsob(
    u: &TestFunction,
    q: f64,
    c0: f64,
    omega_radius: f64,
    spec: &QuadratureSpec,
) -> Result<InequalityReport, CheckError> {
    let w = u.weight().clone();
    let d = w.d();
    if q <= d {
        return Err(CheckError::Domain(format!(
            "tm-logsob needs q > D = {d}, got q = {q}"
        )));
    }
    let s = setup(u, q, c0, omega_radius, spec)?;
    let fs = functionals_of(
        u,
        &[Need::Mass(d), Need::Entropy(d), Need::GradMass(d)],
        spec,
    )?;
    let norm = Normalizer::new(fs.mass(d), d)?;
    let lhs = norm.entropy(fs.entropy(d));
    let grad_norm = norm.scale(fs.grad(d)).powf(1.0 / d);
    let rhs = grad_norm
        .scale(s.cq * q.powf((d - 1.0) / d))
        .ln()
        .scale(d * q / (q - d));
    Ok(build_report(
        InequalityId::TmLogSob,
        &w,
        u.descriptor(),
        ReportParams {
            q: Some(q),
            c0: Some(c0),
            ..Default::default()
        },
        lhs,
        rhs,
        norm.factor,
    ))
}
