//! The entropy-side inequalities: logarithmic Sobolev, Nash, Shannon,
//! Heisenberg, and the `L¹`/`L^p` logarithmic Sobolev variants.

use super::{
    build_report, CheckError, InequalityId, InequalityReport, Normalizer, ReportParams,
};
use crate::constants::{asymptotic_limit, shannon_c_a, sobolev_c1, sobolev_cp};
use crate::funcspace::{Family, TestFunction};
use crate::quad::{functionals_of, Estimate, Need, QuadratureSpec};
use crate::special::pi_a;
use std::f64::consts::E;

fn reject_indicator(f: &TestFunction, space: &str) -> Result<(), CheckError> {
    if matches!(f.family(), Family::Indicator { .. }) {
        return Err(CheckError::NotAdmissible(format!(
            "an indicator is not in {space}"
        )));
    }
    Ok(())
}

/// Sharp logarithmic Sobolev inequality:
/// `∫|f|² ln|f|² x^A ≤ (D/2) ln( 2/(Π(A)eD) ∫|∇f|² x^A )` for unit `L²` mass.
pub fn check_logsob(f: &TestFunction, spec: &QuadratureSpec) -> Result<InequalityReport, CheckError> {
    reject_indicator(f, "H¹ (no square-integrable gradient)")?;
    let w = f.weight();
    let fs = functionals_of(
        f,
        &[Need::Mass(2.0), Need::Entropy(2.0), Need::GradMass(2.0)],
        spec,
    )?;
    let norm = Normalizer::new(fs.mass(2.0), 2.0)?;
    let grad = norm.scale(fs.grad(2.0));
    if !(grad.value > 0.0) {
        return Err(CheckError::Domain(
            "zero gradient energy: constants are not in the space".into(),
        ));
    }
    let lhs = norm.entropy(fs.entropy(2.0));
    let rhs = grad.scale(asymptotic_limit(w)).ln().scale(w.d() / 2.0);
    Ok(build_report(
        InequalityId::LogSob,
        w,
        f.descriptor(),
        ReportParams::default(),
        lhs,
        rhs,
        norm.factor,
    ))
}

/// Nash inequality:
/// `(∫|f|²)^{1+2/D} ≤ 2/(Π(A)eD) · ∫|∇f|² · (∫|f|)^{4/D}`; homogeneous, no
/// normalization needed.
pub fn check_nash(f: &TestFunction, spec: &QuadratureSpec) -> Result<InequalityReport, CheckError> {
    reject_indicator(f, "H¹ ∩ L¹")?;
    let w = f.weight();
    let d = w.d();
    let fs = functionals_of(
        f,
        &[Need::Mass(1.0), Need::Mass(2.0), Need::GradMass(2.0)],
        spec,
    )?;
    let lhs = fs.mass(2.0).powf(1.0 + 2.0 / d);
    let rhs = fs
        .grad(2.0)
        .mul(fs.mass(1.0).powf(4.0 / d))
        .scale(asymptotic_limit(w));
    Ok(build_report(
        InequalityId::Nash,
        w,
        f.descriptor(),
        ReportParams::default(),
        lhs,
        rhs,
        None,
    ))
}

/// Shannon inequality for a unit-mass density:
/// `-∫|f| ln|f| x^A ≤ (D/α) ln( α C_A(α) e / D · ∫|f||x|^α x^A )`.
pub fn check_shannon(
    f: &TestFunction,
    alpha: f64,
    spec: &QuadratureSpec,
) -> Result<InequalityReport, CheckError> {
    if !(alpha > 0.0) {
        return Err(CheckError::Domain(format!(
            "shannon needs alpha > 0, got {alpha}"
        )));
    }
    let w = f.weight();
    let d = w.d();
    let c_a = shannon_c_a(w, alpha)?;
    let fs = functionals_of(
        f,
        &[
            Need::Mass(1.0),
            Need::Entropy(1.0),
            Need::Moment { s: 1.0, alpha },
        ],
        spec,
    )?;
    let norm = Normalizer::new(fs.mass(1.0), 1.0)?;
    let moment = norm.scale(fs.moment(1.0, alpha));
    let lhs = norm.entropy(fs.entropy(1.0)).scale(-1.0);
    let rhs = moment
        .scale(alpha * c_a * E / d)
        .ln()
        .scale(d / alpha);
    Ok(build_report(
        InequalityId::Shannon,
        w,
        f.descriptor(),
        ReportParams::with_alpha(alpha),
        lhs,
        rhs,
        norm.factor,
    ))
}

/// The `L²` form of the Shannon inequality (the Shannon inequality applied
/// to the density `|f|²` with `α = 2`, where `C_A(2) = Π(A)`):
/// `-∫|f|² ln|f|² ≤ (D/2) ln( 2Π(A)e/D · ∫|f|²|x|² )`.
pub fn check_l2_shannon(
    f: &TestFunction,
    spec: &QuadratureSpec,
) -> Result<InequalityReport, CheckError> {
    reject_indicator(f, "L² with finite second moment")?;
    let w = f.weight();
    let d = w.d();
    let fs = functionals_of(
        f,
        &[
            Need::Mass(2.0),
            Need::Entropy(2.0),
            Need::Moment { s: 2.0, alpha: 2.0 },
        ],
        spec,
    )?;
    let norm = Normalizer::new(fs.mass(2.0), 2.0)?;
    let moment = norm.scale(fs.moment(2.0, 2.0));
    let lhs = norm.entropy(fs.entropy(2.0)).scale(-1.0);
    let rhs = moment
        .scale(2.0 * pi_a(w) * E / d)
        .ln()
        .scale(d / 2.0);
    Ok(build_report(
        InequalityId::L2Shannon,
        w,
        f.descriptor(),
        ReportParams::with_alpha(2.0),
        lhs,
        rhs,
        norm.factor,
    ))
}

/// Heisenberg uncertainty:
/// `D²/4 ≤ (∫|f|²|x|² x^A)(∫|∇f|² x^A)` for unit `L²` mass.
pub fn check_heisenberg(
    f: &TestFunction,
    spec: &QuadratureSpec,
) -> Result<InequalityReport, CheckError> {
    reject_indicator(f, "H¹")?;
    let w = f.weight();
    let d = w.d();
    let fs = functionals_of(
        f,
        &[
            Need::Mass(2.0),
            Need::Moment { s: 2.0, alpha: 2.0 },
            Need::GradMass(2.0),
        ],
        spec,
    )?;
    let norm = Normalizer::new(fs.mass(2.0), 2.0)?;
    let lhs = Estimate::exact(d * d / 4.0);
    let rhs = norm
        .scale(fs.moment(2.0, 2.0))
        .mul(norm.scale(fs.grad(2.0)));
    Ok(build_report(
        InequalityId::Heisenberg,
        w,
        f.descriptor(),
        ReportParams::default(),
        lhs,
        rhs,
        norm.factor,
    ))
}

/// Sharp `L¹` logarithmic Sobolev inequality:
/// `∫|f| ln|f| x^A ≤ D ln( C_{1,n,A} ∫|∇f| x^A )` for a unit-mass density.
/// An indicator enters through its declared perimeter and realizes equality.
pub fn check_l1_logsob(
    f: &TestFunction,
    spec: &QuadratureSpec,
) -> Result<InequalityReport, CheckError> {
    let w = f.weight();
    let fs = functionals_of(
        f,
        &[Need::Mass(1.0), Need::Entropy(1.0), Need::GradMass(1.0)],
        spec,
    )?;
    let norm = Normalizer::new(fs.mass(1.0), 1.0)?;
    let tv = norm.scale(fs.grad(1.0));
    if !(tv.value > 0.0) {
        return Err(CheckError::Domain("zero total variation".into()));
    }
    let lhs = norm.entropy(fs.entropy(1.0));
    let rhs = tv.scale(sobolev_c1(w)).ln().scale(w.d());
    Ok(build_report(
        InequalityId::L1LogSob,
        w,
        f.descriptor(),
        ReportParams::with_p(1.0),
        lhs,
        rhs,
        norm.factor,
    ))
}

/// `L^p` logarithmic Sobolev inequality, `1 < p < D`:
/// `∫|f|^p ln|f|^p x^A ≤ (D/p) ln( C_{p,n,A}^p ∫|∇f|^p x^A )` for unit
/// `L^p` mass. Not sharp, but a theorem.
pub fn check_lp_logsob(
    f: &TestFunction,
    p: f64,
    spec: &QuadratureSpec,
) -> Result<InequalityReport, CheckError> {
    let w = f.weight();
    let d = w.d();
    if !(1.0 < p && p < d) {
        return Err(CheckError::Domain(format!(
            "lp-logsob needs 1 < p < D = {d}, got p = {p}"
        )));
    }
    reject_indicator(f, "W^{1,p}")?;
    let cp = sobolev_cp(w, p)?;
    let fs = functionals_of(
        f,
        &[Need::Mass(p), Need::Entropy(p), Need::GradMass(p)],
        spec,
    )?;
    let norm = Normalizer::new(fs.mass(p), p)?;
    let grad = norm.scale(fs.grad(p));
    if !(grad.value > 0.0) {
        return Err(CheckError::Domain("zero gradient energy".into()));
    }
    let lhs = norm.entropy(fs.entropy(p));
    let rhs = grad.scale(cp.powf(p)).ln().scale(d / p);
    Ok(build_report(
        InequalityId::LpLogSob,
        w,
        f.descriptor(),
        ReportParams::with_p(p),
        lhs,
        rhs,
        norm.factor,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::checkers::Verdict;
    use crate::funcspace::MixtureTerm;
    use crate::special::{ball_geometry, Weight};

    fn w(a: &[f64]) -> Weight {
        Weight::new(a.to_vec()).unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1e-300)
    }

    #[test]
    fn logsob_gaussian_equality_all_sigma() {
        let spec = QuadratureSpec::default();
        for a in [vec![1.0, 1.0], vec![0.0, 0.0], vec![2.0, 0.5]] {
            let wt = w(&a);
            for sigma in [0.25, 1.0, 4.0] {
                let f = TestFunction::normalized_gaussian(wt.clone(), sigma).unwrap();
                let r = check_logsob(&f, &spec).unwrap();
                assert_eq!(r.verdict, Verdict::Equality, "{wt} sigma={sigma}: {r:?}");
            }
            // closed-form check of the lhs at σ=1: -(D/2)(ln(2Π)+1)
            let f = TestFunction::normalized_gaussian(wt.clone(), 1.0).unwrap();
            let r = check_logsob(&f, &spec).unwrap();
            let expect = -(wt.d() / 2.0) * ((2.0 * pi_a(&wt)).ln() + 1.0);
            assert!(rel(r.lhs, expect) < 1e-8);
        }
    }

    #[test]
    fn logsob_translate_unweighted_equality_weighted_deficit() {
        let spec = QuadratureSpec::default();
        // A = 0: translates stay extremal
        let w0 = w(&[0.0, 0.0]);
        let amp = (2.0 * std::f64::consts::PI).powf(-0.5);
        let f = TestFunction::gaussian(w0, vec![1.0, 0.0], 1.0, amp).unwrap();
        let r = check_logsob(&f, &spec).unwrap();
        assert_eq!(r.verdict, Verdict::Equality);
        // A = (1,1): the translate loses equality by a concrete margin
        let w1 = w(&[1.0, 1.0]);
        let g = TestFunction::gaussian(w1, vec![0.5, 0.5], 1.0, 1.0).unwrap();
        let r = check_logsob(&g, &spec).unwrap();
        assert_eq!(r.verdict, Verdict::Holds);
        assert!(r.deficit > 1e-3, "deficit = {}", r.deficit);
    }

    #[test]
    fn nash_gaussian_strict_and_scale_invariant() {
        let spec = QuadratureSpec::default();
        let wt = w(&[0.0, 0.0]);
        let f = TestFunction::normalized_gaussian(wt.clone(), 1.0).unwrap();
        let r = check_nash(&f, &spec).unwrap();
        assert_eq!(r.verdict, Verdict::Holds);
        assert!(r.deficit > 0.0, "the Nash constant is not sharp");

        // amplitude scaling c·f: both sides scale by c^{2+4/D}
        let c: f64 = 3.0;
        let amp0 = f.eval(&[0.0, 0.0]).unwrap();
        let cf = TestFunction::gaussian(wt.clone(), vec![0.0, 0.0], 1.0, c * amp0).unwrap();
        let rc = check_nash(&cf, &spec).unwrap();
        let power = c.powf(2.0 + 4.0 / wt.d());
        assert!(rel(rc.lhs, r.lhs * power) < 1e-9);
        assert!(rel(rc.rhs, r.rhs * power) < 1e-9);
        assert!(rel(rc.lhs / rc.rhs, r.lhs / r.rhs) < 1e-10);

        // dilation f_λ(x) = λ^{D/2} f(λx): the ratio is invariant
        let fl = f.dilate(2.0, wt.d() / 2.0).unwrap();
        let rl = check_nash(&fl, &spec).unwrap();
        assert!(rel(rl.lhs / rl.rhs, r.lhs / r.rhs) < 1e-8);
    }

    #[test]
    fn shannon_phi_alpha_equality() {
        let spec = QuadratureSpec::default();
        for alpha in [1.0, 2.0, 3.0] {
            for a in [vec![1.0, 2.0], vec![0.5]] {
                let wt = w(&a);
                let c = shannon_c_a(&wt, alpha).unwrap();
                let f = TestFunction::exp_power(wt.clone(), c, alpha).unwrap();
                let r = check_shannon(&f, alpha, &spec).unwrap();
                assert_eq!(r.verdict, Verdict::Equality, "{wt} alpha={alpha}");
                // lhs = D/α at the extremal
                assert!(rel(r.lhs, wt.d() / alpha) < 1e-7);
            }
        }
    }

    #[test]
    fn l2_shannon_gaussian_equality_with_moment_d() {
        let spec = QuadratureSpec::default();
        let wt = w(&[1.0, 1.0]);
        let f = TestFunction::normalized_gaussian(wt.clone(), 1.0).unwrap();
        let r = check_l2_shannon(&f, &spec).unwrap();
        assert_eq!(r.verdict, Verdict::Equality);
    }

    #[test]
    fn shannon_indicator_strict() {
        let spec = QuadratureSpec::default();
        let wt = w(&[1.0, 1.0]);
        let f = TestFunction::indicator(wt, 1.0).unwrap();
        let r = check_shannon(&f, 2.0, &spec).unwrap();
        assert_eq!(r.verdict, Verdict::Holds);
        // lhs of the normalized indicator is -log of... +log m(B):
        // ∫ (χ/m) ln(χ/m) = -ln m, so -∫ = ln m = ln(1/8) < 0 here
        let m = ball_geometry(f.weight()).measure;
        assert!(rel(r.lhs, m.ln()) < 1e-10);
    }

    #[test]
    fn heisenberg_gaussian_equality_both_sigmas() {
        let spec = QuadratureSpec::default();
        for a in [vec![1.0, 1.0], vec![0.0, 0.0, 0.0]] {
            let wt = w(&a);
            for sigma in [1.0, 2.0] {
                let f = TestFunction::normalized_gaussian(wt.clone(), sigma).unwrap();
                let r = check_heisenberg(&f, &spec).unwrap();
                assert_eq!(r.verdict, Verdict::Equality, "{wt} sigma={sigma}");
                assert!(rel(r.rhs, wt.d() * wt.d() / 4.0) < 1e-8);
            }
        }
    }

    #[test]
    fn heisenberg_mixture_strict() {
        let spec = QuadratureSpec::default();
        let wt = w(&[1.0, 1.0]);
        let f = TestFunction::mixture(
            wt,
            vec![
                MixtureTerm {
                    coeff: 1.0,
                    center: vec![0.0, 0.0],
                    sigma: 0.5,
                },
                MixtureTerm {
                    coeff: 0.7,
                    center: vec![1.0, 0.5],
                    sigma: 1.5,
                },
            ],
        )
        .unwrap();
        let r = check_heisenberg(&f, &spec).unwrap();
        assert_eq!(r.verdict, Verdict::Holds);
        assert!(r.deficit > 0.0);
    }

    #[test]
    fn l1_logsob_indicator_equality_gaussian_strict() {
        let spec = QuadratureSpec::default();
        let wt = w(&[1.0, 1.0]);
        let ind = TestFunction::indicator(wt.clone(), 1.0).unwrap();
        let r = check_l1_logsob(&ind, &spec).unwrap();
        assert_eq!(r.verdict, Verdict::Equality);
        // -ln m = D ln(C₁ P/m) exactly
        let g = ball_geometry(&wt);
        assert!(rel(r.lhs, -(g.measure.ln())) < 1e-10);

        let gauss = TestFunction::normalized_gaussian(wt, 1.0).unwrap();
        let r = check_l1_logsob(&gauss, &spec).unwrap();
        assert_eq!(r.verdict, Verdict::Holds);
        assert!(r.deficit > 0.0, "no W^{{1,1}} function achieves equality");
    }

    #[test]
    fn lp_logsob_holds_on_extremal_and_bump() {
        let spec = QuadratureSpec::default();
        // the extremal lies in L^p only when p² < D: take p = 2, D = 5
        let w5 = w(&[1.0, 2.0]);
        let f = TestFunction::sobolev_extremal(w5.clone(), 1.0, 1.0, 2.0).unwrap();
        let r = check_lp_logsob(&f, 2.0, &spec).unwrap();
        assert!(r.deficit >= -r.error_bound);
        // and the divergent request is detected, not mis-evaluated
        let wt = w(&[1.0, 1.0]);
        let bad = TestFunction::sobolev_extremal(wt.clone(), 1.0, 1.0, 2.5).unwrap();
        assert!(check_lp_logsob(&bad, 2.5, &spec).is_err());

        let p = 2.5;
        let b = TestFunction::bump(wt.clone(), 1.0).unwrap();
        let r = check_lp_logsob(&b, p, &spec).unwrap();
        assert_eq!(r.verdict, Verdict::Holds);
        assert!(r.deficit > 0.0);
        // p = 2 variant and logsob are different theorems; both hold
        let g = TestFunction::normalized_gaussian(wt, 1.0).unwrap();
        let r2 = check_lp_logsob(&g, 2.0, &spec).unwrap();
        let r_log = check_logsob(&g, &spec).unwrap();
        assert!(r2.deficit >= -r2.error_bound);
        assert!(r_log.deficit >= -r_log.error_bound);
    }

    #[test]
    fn logsob_scaling_invariance_of_deficit() {
        // f_λ(x) = λ^{D/2} f(λx) leaves the logsob deficit invariant
        let spec = QuadratureSpec::default();
        let wt = w(&[1.0, 2.0]);
        let f = TestFunction::mixture(
            wt.clone(),
            vec![
                MixtureTerm {
                    coeff: 1.0,
                    center: vec![0.2, 0.4],
                    sigma: 0.8,
                },
                MixtureTerm {
                    coeff: 0.5,
                    center: vec![-0.5, 1.0],
                    sigma: 1.3,
                },
            ],
        )
        .unwrap();
        let base = check_logsob(&f, &spec).unwrap();
        for lambda in [0.5, 2.0] {
            let fl = f.dilate(lambda, wt.d() / 2.0).unwrap();
            let r = check_logsob(&fl, &spec).unwrap();
            assert!(
                (r.deficit - base.deficit).abs() < 1e-8,
                "lambda={lambda}: {} vs {}",
                r.deficit,
                base.deficit
            );
        }
    }

    #[test]
    fn shannon_scaling_invariance_of_deficit() {
        // f_λ(x) = λ^D f(λx) leaves the Shannon deficit invariant
        let spec = QuadratureSpec::default();
        let wt = w(&[1.0, 1.0]);
        let f = TestFunction::mixture(
            wt.clone(),
            vec![MixtureTerm {
                coeff: 1.0,
                center: vec![0.3, 0.1],
                sigma: 0.9,
            }],
        )
        .unwrap();
        let base = check_shannon(&f, 2.0, &spec).unwrap();
        for lambda in [0.5, 2.0] {
            let fl = f.dilate(lambda, wt.d()).unwrap();
            let r = check_shannon(&fl, 2.0, &spec).unwrap();
            assert!((r.deficit - base.deficit).abs() < 1e-8);
        }
    }

    #[test]
    fn entropy_bounds_chain_into_heisenberg() {
        // rhs(logsob) >= lhs >= -rhs(l2-shannon) composes to the product bound:
        // the chained statement is exactly (2/(ΠeD))G · (2Πe/D)V >= 1.
        let spec = QuadratureSpec::default();
        let wt = w(&[1.0, 2.0]);
        let mut state = 7u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for _ in 0..20 {
            let f = TestFunction::mixture(
                wt.clone(),
                vec![
                    MixtureTerm {
                        coeff: 0.2 + next(),
                        center: vec![2.0 * next() - 1.0, 2.0 * next() - 1.0],
                        sigma: 0.4 + next(),
                    },
                    MixtureTerm {
                        coeff: 0.2 + next(),
                        center: vec![2.0 * next() - 1.0, 2.0 * next() - 1.0],
                        sigma: 0.4 + next(),
                    },
                ],
            )
            .unwrap();
            let ls = check_logsob(&f, &spec).unwrap();
            let sh = check_l2_shannon(&f, &spec).unwrap();
            let he = check_heisenberg(&f, &spec).unwrap();
            // the chain: rhs_logsob + rhs_shannon = (D/2) ln((4/D²) G V)
            let d = wt.d();
            let chained = ls.rhs + sh.rhs;
            let direct = (d / 2.0) * ((4.0 / (d * d)) * he.rhs).ln();
            assert!(
                (chained - direct).abs() < 1e-7 * direct.abs().max(1.0),
                "chain identity broke: {chained} vs {direct}"
            );
            // and the chain is nonneg exactly when Heisenberg holds
            assert!(chained >= -1e-9);
            assert!(he.deficit >= -he.error_bound - 1e-9);
        }
    }
}
