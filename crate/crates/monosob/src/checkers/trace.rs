//! The Sobolev trace inequality on the half-space `R^n_A × (0, ∞)` and its
//! logarithmic form, checked on separable functions `f(x, y) = g(x) h(y)`.

use super::{build_report, CheckError, InequalityId, InequalityReport, Normalizer, ReportParams};
use crate::constants::{sobolev_cp, trace_constants};
use crate::funcspace::HalfSpaceFunction;
use crate::quad::{
    functionals_of, integrate_cubature, weighted_halfline, CubatureDomain, Estimate, Need,
    QuadratureSpec, TailBehavior,
};

/// `∫∫ |∇_{x,y} f|^p x^A dx dy` over the half-space.
fn halfspace_gradient_mass(
    f: &HalfSpaceFunction,
    p: f64,
    spec: &QuadratureSpec,
) -> Result<Estimate, CheckError> {
    let g = &f.x_part;
    let h = &f.y_profile;
    if p == 2.0 {
        // |∇f|² = h²|∇g|² + g²h'²: fully separable
        let fs = functionals_of(g, &[Need::Mass(2.0), Need::GradMass(2.0)], spec)?;
        let h0 = weighted_halfline(
            &|y: f64| h.value(y).powi(2),
            0.0,
            h.tail().pow(2.0).to_quad(),
            spec.tols(),
        )?;
        let h1 = weighted_halfline(
            &|y: f64| h.deriv(y).powi(2),
            0.0,
            h.tail().derivative().pow(2.0).to_quad(),
            spec.tols(),
        )?;
        Ok(fs.grad(2.0).mul(h0).add(fs.mass(2.0).mul(h1)))
    } else {
        // p ≠ 2 does not factor; iterated cubature on (x, y)
        let w_ext = g.weight().extend_zero();
        let tail = TailBehavior::ExpDecay { scale: 8.0 };
        let domain = CubatureDomain::half_space(&w_ext, tail);
        let integrand = move |z: &[f64]| -> f64 {
            let (x, y) = z.split_at(z.len() - 1);
            let y = y[0];
            let gv = g.eval(x).unwrap_or(0.0);
            let gg = g.eval_grad(x).unwrap_or_else(|_| vec![0.0; x.len()]);
            let hv = h.value(y);
            let hd = h.deriv(y);
            let grad_sq =
                hv * hv * gg.iter().map(|t| t * t).sum::<f64>() + gv * gv * hd * hd;
            grad_sq.powf(p / 2.0)
        };
        integrate_cubature(&integrand, &w_ext, &domain, spec).map_err(CheckError::from)
    }
}

/// Sobolev trace inequality:
/// `(∫ |f(x,0)|^q x^A dx)^{1/q} ≤ q^{1/q} C_{p,n+1,A'}^{(D+1-p)(p-1)/(Dp)}
///  (∫∫ |∇_{x,y} f|^p x^A dx dy)^{1/p}` with `q = Dp/(D+1-p)`.
pub fn check_trace(
    f: &HalfSpaceFunction,
    p: f64,
    spec: &QuadratureSpec,
) -> Result<InequalityReport, CheckError> {
    let w = f.x_part.weight().clone();
    let d = w.d();
    if !(1.0 <= p && p < d + 1.0) {
        return Err(CheckError::Domain(format!(
            "trace needs 1 <= p < D+1 = {}, got p = {p}",
            d + 1.0
        )));
    }
    let tc = trace_constants(&w, p)?;
    let h0 = f.y_profile.value(0.0).abs();
    let slice = functionals_of(&f.x_part, &[Need::Mass(tc.q)], spec)?;
    let lhs = slice.norm(tc.q).scale(h0);
    let grad = halfspace_gradient_mass(f, p, spec)?;
    let rhs = grad.powf(1.0 / p).scale(tc.constant);
    Ok(build_report(
        InequalityId::Trace,
        &w,
        f.descriptor(),
        ReportParams {
            p: Some(p),
            q: Some(tc.q),
            ..Default::default()
        },
        lhs,
        rhs,
        None,
    ))
}

/// Logarithmic Sobolev trace inequality, in the form obtained by feeding
/// the trace inequality through Jensen's inequality with the trace slice
/// normalized in `L^p`:
///
/// ```text
/// ∫ |f(x,0)|^p ln|f(x,0)|^p x^A dx
///   ≤ D/(p-1) · ln( q^{(D+1-p)/D} C_{p,n+1,A'}^{(D+1-p)(p-1)/D} ∫∫|∇f|^p )
/// ```
///
/// This is the normalization that makes the Jensen step valid; requires
/// `p > 1`.
pub fn check_trace_logsob(
    f: &HalfSpaceFunction,
    p: f64,
    spec: &QuadratureSpec,
) -> Result<InequalityReport, CheckError> {
    let w = f.x_part.weight().clone();
    let d = w.d();
    if !(1.0 < p && p < d + 1.0) {
        return Err(CheckError::Domain(format!(
            "trace-logsob needs 1 < p < D+1 = {}, got p = {p}",
            d + 1.0
        )));
    }
    let tc = trace_constants(&w, p)?;
    let c = sobolev_cp(&w.extend_zero(), p)?;
    let h0 = f.y_profile.value(0.0).abs();
    if h0 == 0.0 {
        return Err(CheckError::NotAdmissible(
            "trace slice vanishes identically (h(0) = 0)".into(),
        ));
    }
    let fs = functionals_of(&f.x_part, &[Need::Mass(p), Need::Entropy(p)], spec)?;
    // slice functionals of f(·,0) = h(0)·g
    let slice_mass = fs.mass(p).scale(h0.powf(p));
    let slice_entropy = fs
        .entropy(p)
        .add(fs.mass(p).scale((h0.powf(p)).ln()))
        .scale(h0.powf(p));
    let norm = Normalizer::new(slice_mass, p)?;
    let lhs = norm.entropy(slice_entropy);
    let grad = norm.scale(halfspace_gradient_mass(f, p, spec)?);
    let inner = grad
        .scale(tc.q.powf((d + 1.0 - p) / d))
        .scale(c.powf((d + 1.0 - p) * (p - 1.0) / d));
    let rhs = inner.ln().scale(d / (p - 1.0));
    Ok(build_report(
        InequalityId::TraceLogSob,
        &w,
        f.descriptor(),
        ReportParams {
            p: Some(p),
            q: Some(tc.q),
            ..Default::default()
        },
        lhs,
        rhs,
        norm.factor,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::checkers::Verdict;
    use crate::funcspace::{TestFunction, YProfile};
    use crate::special::Weight;
    use std::f64::consts::PI;

    fn w(a: &[f64]) -> Weight {
        Weight::new(a.to_vec()).unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1e-300)
    }

    #[test]
    fn gaussian_trace_unweighted() {
        // f(x,y) = e^{-(|x|²+y²)/2} on R²×(0,∞): all sides closed-form Gaussians
        let spec = QuadratureSpec::default();
        let g = TestFunction::gaussian(w(&[0.0, 0.0]), vec![0.0, 0.0], 0.5, 1.0).unwrap();
        let f = HalfSpaceFunction::new(g, YProfile::gaussian(0.5));
        let r = check_trace(&f, 2.0, &spec).unwrap();
        assert_eq!(r.verdict, Verdict::Holds);
        // oracle: lhs = (∫ e^{-2|x|²} dx)^{1/4} = (π/2)^{1/4}
        assert!(rel(r.lhs, (PI / 2.0).powf(0.25)) < 1e-9);
        // oracle: ∫∫ f²(|x|²+y²) = π·√π/2 + π·√π/4 (computed by hand)
        let grad_expect: f64 = PI * PI.sqrt() / 2.0 + PI * PI.sqrt() / 4.0;
        let c233 = sobolev_cp(&Weight::unweighted(3), 2.0).unwrap();
        let rhs_expect = 4f64.powf(0.25) * c233.powf(0.25) * grad_expect.sqrt();
        assert!(rel(r.rhs, rhs_expect) < 1e-9);
    }

    #[test]
    fn gaussian_trace_weighted() {
        let spec = QuadratureSpec::default();
        let g = TestFunction::gaussian(w(&[1.0, 1.0]), vec![0.0, 0.0], 0.5, 1.0).unwrap();
        let f = HalfSpaceFunction::new(g, YProfile::gaussian(0.5));
        let r = check_trace(&f, 2.0, &spec).unwrap();
        assert!(matches!(r.verdict, Verdict::Holds | Verdict::Equality));
        assert!(r.deficit >= -r.error_bound);
        // q = Dp/(D+1-p) = 8/3 at D=4, p=2
        assert!(rel(r.params.q.unwrap(), 8.0 / 3.0) < 1e-14);
    }

    #[test]
    fn trace_logsob_holds() {
        let spec = QuadratureSpec::default();
        for a in [vec![0.0, 0.0], vec![1.0, 1.0]] {
            let g = TestFunction::gaussian(w(&a), vec![0.0, 0.0], 0.7, 1.0).unwrap();
            let f = HalfSpaceFunction::new(g, YProfile::gaussian(0.4));
            let r = check_trace_logsob(&f, 2.0, &spec).unwrap();
            assert!(
                r.deficit >= -r.error_bound,
                "A={a:?}: deficit {}",
                r.deficit
            );
        }
    }

    #[test]
    fn trace_p_out_of_range() {
        let spec = QuadratureSpec::default();
        let g = TestFunction::gaussian(w(&[0.0]), vec![0.0], 1.0, 1.0).unwrap();
        let f = HalfSpaceFunction::new(g, YProfile::gaussian(1.0));
        // D = 1: p must stay below 2
        assert!(check_trace(&f, 2.0, &spec).is_err());
        assert!(check_trace_logsob(&f, 1.0, &spec).is_err());
    }
}
