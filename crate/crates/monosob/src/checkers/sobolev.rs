//! The sharp Sobolev inequality on `R^n_A` and its whole-space variant.

use super::{build_report, CheckError, InequalityId, InequalityReport, ReportParams};
use crate::constants::{p_star, sobolev_constant, whole_space_k};
use crate::funcspace::{Family, TestFunction};
use crate::quad::{functionals_of, fullspace_functionals_of, Estimate, Need, QuadratureSpec};

/// `(∫|f|^{p*} x^A)^{1/p*} ≤ C_{p,n,A} (∫|∇f|^p x^A)^{1/p}` on `R^n_A`,
/// `1 <= p < D`. At `p = 1` an indicator is admissible through its declared
/// perimeter (the BV extremal of the isoperimetric form).
pub fn check_sobolev(
    f: &TestFunction,
    p: f64,
    spec: &QuadratureSpec,
) -> Result<InequalityReport, CheckError> {
    let w = f.weight();
    let d = w.d();
    if !(1.0 <= p && p < d) {
        return Err(CheckError::Domain(format!(
            "sobolev needs 1 <= p < D = {d}, got p = {p}"
        )));
    }
    if matches!(f.family(), Family::Indicator { .. }) && p != 1.0 {
        return Err(CheckError::NotAdmissible(
            "an indicator has only BV (p = 1) gradient mass".into(),
        ));
    }
    let ps = p_star(w, p)?;
    let c = sobolev_constant(w, p)?;
    let fs = functionals_of(f, &[Need::Mass(ps), Need::GradMass(p)], spec)?;
    let lhs = fs.norm(ps);
    let rhs = fs.grad_norm(p).scale(c);
    Ok(build_report(
        InequalityId::Sobolev,
        w,
        f.descriptor(),
        ReportParams::with_p(p),
        lhs,
        rhs,
        None,
    ))
}

/// The same inequality over all of `R^n` with the full-space weight
/// `|x_1|^{A_1}...|x_n|^{A_n}` and the (non-sharp) constant `K`.
pub fn check_whole_space_sobolev(
    f: &TestFunction,
    p: f64,
    spec: &QuadratureSpec,
) -> Result<InequalityReport, CheckError> {
    let w = f.weight();
    let d = w.d();
    if !(1.0 <= p && p < d) {
        return Err(CheckError::Domain(format!(
            "whole-space sobolev needs 1 <= p < D = {d}, got p = {p}"
        )));
    }
    let ps = p_star(w, p)?;
    let k = whole_space_k(w, p)?;
    let fs = fullspace_functionals_of(f, &[Need::Mass(ps), Need::GradMass(p)], spec)?;
    let lhs = fs.norm(ps);
    let rhs = fs.grad_norm(p).scale(k);
    Ok(build_report(
        InequalityId::WholeSpaceSobolev,
        w,
        f.descriptor(),
        ReportParams::with_p(p),
        lhs,
        rhs,
        None,
    ))
}

/// Scale-invariant ratio `lhs/rhs`, used by dilation-invariance tests.
pub(crate) fn side_ratio(lhs: Estimate, rhs: Estimate) -> f64 {
    lhs.value / rhs.value
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::checkers::Verdict;
    use crate::special::Weight;

    fn w(a: &[f64]) -> Weight {
        Weight::new(a.to_vec()).unwrap()
    }

    #[test]
    fn extremal_reaches_equality_integer_weight() {
        // (a + b|x|^{p'})^{1-D/p} attains C_{p,n,A}
        let spec = QuadratureSpec::default();
        for (a, b) in [(1.0, 1.0), (0.5, 2.0), (2.0, 0.7)] {
            let f = TestFunction::sobolev_extremal(w(&[1.0, 1.0]), a, b, 2.0).unwrap();
            let r = check_sobolev(&f, 2.0, &spec).unwrap();
            assert_eq!(r.verdict, Verdict::Equality, "a={a} b={b}: {r:?}");
            assert!(r.deficit.abs() / r.rhs <= 1e-6);
        }
    }

    #[test]
    fn bump_has_strict_deficit() {
        let spec = QuadratureSpec::default();
        let f = TestFunction::bump(w(&[1.0, 1.0]), 1.0).unwrap();
        let r = check_sobolev(&f, 2.0, &spec).unwrap();
        assert_eq!(r.verdict, Verdict::Holds);
        assert!(r.deficit > 0.0);
    }

    #[test]
    fn gaussian_p1_strict() {
        // C_{1,n,A} is not attained by smooth functions
        let spec = QuadratureSpec::default();
        let f = TestFunction::normalized_gaussian(w(&[1.0, 1.0]), 1.0).unwrap();
        let r = check_sobolev(&f, 1.0, &spec).unwrap();
        assert_eq!(r.verdict, Verdict::Holds);
        assert!(r.deficit > 0.0);
    }

    #[test]
    fn indicator_attains_isoperimetric_equality() {
        // the BV extremal of the p = 1 form
        let spec = QuadratureSpec::default();
        for radius in [1.0, 2.0] {
            let f = TestFunction::indicator(w(&[1.0, 1.0]), radius).unwrap();
            let r = check_sobolev(&f, 1.0, &spec).unwrap();
            assert_eq!(r.verdict, Verdict::Equality);
        }
        // p > 1 with an indicator is refused
        let f = TestFunction::indicator(w(&[1.0, 1.0]), 1.0).unwrap();
        assert!(check_sobolev(&f, 2.0, &spec).is_err());
    }

    #[test]
    fn whole_space_holds_on_off_center_gaussian() {
        let spec = QuadratureSpec::default();
        // A=(2), n=1, p=1: two half-line integrals
        let f = TestFunction::gaussian(w(&[2.0]), vec![0.7], 0.8, 1.0).unwrap();
        let r = check_whole_space_sobolev(&f, 1.0, &spec).unwrap();
        assert!(matches!(r.verdict, Verdict::Holds | Verdict::Equality));
        assert!(r.deficit >= -r.error_bound);
    }

    #[test]
    fn one_octant_support_satisfies_sharper_bound() {
        // an even (radial) function: the whole-space report holds, and the
        // one-octant reduction satisfies the sharper constant C_{p,n,A}
        let spec = QuadratureSpec::default();
        let f = TestFunction::sobolev_extremal(w(&[1.0, 1.0]), 1.0, 1.0, 2.0).unwrap();
        let whole = check_whole_space_sobolev(&f, 2.0, &spec).unwrap();
        assert!(matches!(whole.verdict, Verdict::Holds | Verdict::Equality));
        let octant = check_sobolev(&f, 2.0, &spec).unwrap();
        assert_eq!(octant.verdict, Verdict::Equality);
    }

    #[test]
    fn domain_errors() {
        let spec = QuadratureSpec::default();
        let f = TestFunction::bump(w(&[1.0, 1.0]), 1.0).unwrap();
        assert!(check_sobolev(&f, 0.5, &spec).is_err());
        assert!(check_sobolev(&f, 4.0, &spec).is_err());
    }
}
