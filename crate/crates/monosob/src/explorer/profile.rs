//! Deficit profiles over extremal parameters, and the Gaussian-limit
//! diagnostic for the tensorized Sobolev extremal.

use super::{Axis, Diagnostics, SweepPoint, SweepResult};
use crate::checkers::{check_logsob, check_sobolev, CheckError, InequalityId, Verdict};
use crate::funcspace::{cauchy_integral, TestFunction};
use crate::quad::{integrate_radial, QuadratureSpec, RadialIntegrand, TailBehavior};
use crate::special::{log_pi_a, Weight};

/// Parametric extremal families a deficit profile can sweep.
#[derive(Debug, Clone)]
pub enum ProfileFamily {
    /// Gaussians `(2σΠ(A))^{-D/4} e^{-|x-x₀|²/(4σ)}` over a `σ` grid and a
    /// list of centers (the logarithmic Sobolev extremal family).
    GaussianSigma {
        sigmas: Vec<f64>,
        centers: Vec<Vec<f64>>,
    },
    /// Sobolev extremals `(a + b|x|^{p'})^{1-D/p}` over an `(a, b)` grid.
    ExtremalGrid {
        a_values: Vec<f64>,
        b_values: Vec<f64>,
        p: f64,
    },
}

/// Default `σ` grid: log-spaced over `[1/4, 4]`.
pub fn default_sigma_grid(count: usize) -> Vec<f64> {
    let lo = 0.25f64.ln();
    let hi = 4.0f64.ln();
    (0..count)
        .map(|i| (lo + (hi - lo) * i as f64 / (count - 1) as f64).exp())
        .collect()
}

/// Evaluate the deficit of `inequality` along the family's parameter grid,
/// identify the zero set, and report each point with its error bound.
///
/// For the Gaussian family the sweep confirms the equality structure:
/// translates stay extremal exactly when all exponents vanish, while any
/// positive exponent re-centers the unique extremal at the origin.
pub fn deficit_profile(
    inequality: InequalityId,
    family: &ProfileFamily,
    w: &Weight,
    spec: &QuadratureSpec,
) -> Result<SweepResult, CheckError> {
    match (inequality, family) {
        (InequalityId::LogSob, ProfileFamily::GaussianSigma { sigmas, centers }) => {
            let d = w.d();
            let mut points = Vec::with_capacity(sigmas.len() * centers.len());
            let mut zero_set = Vec::new();
            for (ci, center) in centers.iter().enumerate() {
                for &sigma in sigmas {
                    let amplitude =
                        (-0.25 * d * ((2.0 * sigma).ln() + log_pi_a(w))).exp();
                    let f =
                        TestFunction::gaussian(w.clone(), center.clone(), sigma, amplitude)?;
                    let report = check_logsob(&f, spec)?;
                    let coords = vec![sigma, ci as f64];
                    if report.verdict == Verdict::Equality {
                        zero_set.push(coords.clone());
                    }
                    points.push(SweepPoint {
                        coords,
                        value: report.deficit,
                        margin: report.relative_margin,
                        error: report.error_bound,
                    });
                }
            }
            let mut sigmas_sorted = sigmas.clone();
            sigmas_sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
            Ok(SweepResult {
                name: format!("deficit-profile logsob {w}"),
                axes: vec![
                    Axis::new("sigma", sigmas_sorted),
                    Axis::new("center_index", (0..centers.len()).map(|i| i as f64).collect()),
                ],
                points,
                target: Some(0.0),
                diagnostics: Diagnostics {
                    zero_set,
                    note: Some(format!(
                        "centers: {:?}; translates remain extremal only for A = 0",
                        centers
                    )),
                    ..Default::default()
                },
                seed: None,
            })
        }
        (
            InequalityId::Sobolev,
            ProfileFamily::ExtremalGrid {
                a_values,
                b_values,
                p,
            },
        ) => {
            let mut points = Vec::with_capacity(a_values.len() * b_values.len());
            let mut zero_set = Vec::new();
            for &a in a_values {
                for &b in b_values {
                    let f = TestFunction::sobolev_extremal(w.clone(), a, b, *p)?;
                    let report = check_sobolev(&f, *p, spec)?;
                    let coords = vec![a, b];
                    if report.verdict == Verdict::Equality {
                        zero_set.push(coords.clone());
                    }
                    points.push(SweepPoint {
                        coords,
                        value: report.deficit,
                        margin: report.relative_margin,
                        error: report.error_bound,
                    });
                }
            }
            Ok(SweepResult {
                name: format!("deficit-profile sobolev(p={p}) {w}"),
                axes: vec![
                    Axis::new("a", a_values.clone()),
                    Axis::new("b", b_values.clone()),
                ],
                points,
                target: Some(0.0),
                diagnostics: Diagnostics {
                    zero_set,
                    ..Default::default()
                },
                seed: None,
            })
        }
        _ => Err(CheckError::Domain(format!(
            "no deficit profile for {inequality} over {family:?}"
        ))),
    }
}

/// The Gaussian-limit diagnostic for the slice of the tensorized Sobolev
/// extremal: with `b_l = b̃/l`, the normalized profile
/// `(1 + (b̃/l) r²)^{(2-nl)/2}` converges in `L²` on compact sets to the
/// normalized Gaussian `e^{-n b̃ r²/2}`. Reports the `L²(B_2)` distance for
/// each `l`; it decreases monotonically.
pub fn gaussian_limit_diagnostic(
    n: usize,
    b_tilde: f64,
    l_values: &[u64],
    spec: &QuadratureSpec,
) -> Result<SweepResult, CheckError> {
    let w = Weight::unweighted(n);
    let nf = n as f64;
    // L² normalization of the limit: ∫ e^{-n b̃ r²} dx = (π/(n b̃))^{n/2}
    let c_inf = (std::f64::consts::PI / (nf * b_tilde)).powf(-nf / 4.0);
    let mut points = Vec::with_capacity(l_values.len());
    for &l in l_values {
        let lf = l as f64;
        let sigma = b_tilde / lf;
        let expo = (2.0 - nf * lf) / 2.0;
        let beta = nf * lf - 2.0;
        if beta <= nf / 2.0 {
            return Err(CheckError::Domain(format!(
                "l = {l} too small for the slice to be square integrable"
            )));
        }
        // |ρ_l|² is a Cauchy profile with exponent 2(nl-2)/2 = nl-2
        let mass = cauchy_integral(&w, sigma, beta)?;
        let c_l = mass.powf(-0.5);
        let dist2 = integrate_radial(
            &RadialIntegrand {
                profile: &|r: f64| {
                    let rho = c_l * (1.0 + sigma * r * r).powf(expo);
                    let gauss = c_inf * (-nf * b_tilde * r * r / 2.0).exp();
                    (rho - gauss) * (rho - gauss)
                },
                tail: TailBehavior::Compact { radius: 2.0 },
            },
            &w,
            spec,
        )?;
        points.push(SweepPoint {
            coords: vec![lf],
            value: dist2.value.max(0.0).sqrt(),
            margin: 0.0,
            error: dist2.error.sqrt(),
        });
    }
    Ok(SweepResult {
        name: format!("tensor-slice gaussian limit (n={n}, b̃={b_tilde})"),
        axes: vec![Axis::new("l", l_values.iter().map(|&l| l as f64).collect())],
        points,
        target: Some(0.0),
        diagnostics: Diagnostics {
            note: Some("L²(B_2) distance of the normalized slice to its Gaussian limit".into()),
            ..Default::default()
        },
        seed: None,
    })
}
