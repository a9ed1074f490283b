//! The functional bundle: weighted `L^s` masses, gradient masses, entropies,
//! and radial moments of one test function, with error estimates.
//!
//! Dispatch order: indicators use their declared measure/perimeter data
//! (numeric differentiation of a jump is meaningless); radial families go
//! through the polar reduction; off-center Gaussians and mixtures reduce to
//! per-axis one-dimensional integrals whenever the integrand factors
//! (masses, `L²` gradients, second moments); everything left goes to
//! iterated cubature.

use super::onedim::{full_line, weighted_halfline};
use super::radial::{radial_power, RadialIntegrand};
use super::separable::product_estimate;
use super::{
    integrate_cubature, CubatureDomain, Estimate, QuadError, QuadratureSpec, TailBehavior,
};
use crate::funcspace::{Family, MixtureTerm, TestFunction};
use crate::special::{ball_geometry, Weight};

/// One requested functional of `f`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Need {
    /// `∫ |f|^s x^A dx`.
    Mass(f64),
    /// `∫ |∇f|^p x^A dx`.
    GradMass(f64),
    /// `∫ |f|^s ln(|f|^s) x^A dx`, with `0·ln 0 = 0`.
    Entropy(f64),
    /// `∫ |f|^s |x|^α x^A dx`.
    Moment { s: f64, alpha: f64 },
}

/// The evaluated bundle.
#[derive(Debug, Clone)]
pub struct FunctionalSet {
    entries: Vec<(Need, Estimate)>,
}

impl FunctionalSet {
    pub fn get(&self, need: Need) -> Option<Estimate> {
        self.entries
            .iter()
            .find(|(n, _)| *n == need)
            .map(|(_, e)| *e)
    }

    fn demand(&self, need: Need) -> Estimate {
        self.get(need)
            .unwrap_or_else(|| panic!("functional {need:?} was not requested"))
    }

    pub fn mass(&self, s: f64) -> Estimate {
        self.demand(Need::Mass(s))
    }

    /// `(∫|f|^s)^{1/s}`.
    pub fn norm(&self, s: f64) -> Estimate {
        self.mass(s).powf(1.0 / s)
    }

    pub fn grad(&self, p: f64) -> Estimate {
        self.demand(Need::GradMass(p))
    }

    pub fn grad_norm(&self, p: f64) -> Estimate {
        self.grad(p).powf(1.0 / p)
    }

    pub fn entropy(&self, s: f64) -> Estimate {
        self.demand(Need::Entropy(s))
    }

    pub fn moment(&self, s: f64, alpha: f64) -> Estimate {
        self.demand(Need::Moment { s, alpha })
    }

    pub fn entries(&self) -> &[(Need, Estimate)] {
        &self.entries
    }
}

/// Evaluate the requested functionals of `f` over `R^n_A`.
pub fn functionals_of(
    f: &TestFunction,
    needs: &[Need],
    spec: &QuadratureSpec,
) -> Result<FunctionalSet, QuadError> {
    spec.validate()?;
    let mut entries = Vec::with_capacity(needs.len());
    for &need in needs {
        entries.push((need, one_functional(f, need, spec)?));
    }
    Ok(FunctionalSet { entries })
}

/// The same functionals integrated over all of `R^n` with the full-space
/// weight `|x_1|^{A_1} ... |x_n|^{A_n}`: a sum over the `2^k` reflected
/// copies of `R^n_A`.
pub fn fullspace_functionals_of(
    f: &TestFunction,
    needs: &[Need],
    spec: &QuadratureSpec,
) -> Result<FunctionalSet, QuadError> {
    let w = f.weight();
    let positive: Vec<usize> = (0..w.n()).filter(|&i| w.half_line(i)).collect();
    let mut entries: Vec<(Need, Estimate)> =
        needs.iter().map(|&n| (n, Estimate::exact(0.0))).collect();
    for mask in 0..(1u32 << positive.len()) {
        let mut signs = vec![false; w.n()];
        for (bit, &axis) in positive.iter().enumerate() {
            signs[axis] = mask & (1 << bit) != 0;
        }
        let reflected = f.reflect(&signs).ok_or_else(|| {
            QuadError::Unsupported("family is not closed under reflections".into())
        })?;
        let part = functionals_of(&reflected, needs, spec)?;
        for (need, acc) in entries.iter_mut() {
            *acc = acc.add(part.demand(*need));
        }
    }
    Ok(FunctionalSet { entries })
}

fn one_functional(
    f: &TestFunction,
    need: Need,
    spec: &QuadratureSpec,
) -> Result<Estimate, QuadError> {
    validate_need(need)?;
    if let Family::Indicator { .. } = f.family() {
        return indicator_functional(f, need);
    }
    if let Family::TensorProduct { factors } = f.family() {
        return tensor_functional(factors, need, spec);
    }
    if let Some(view) = f.radial_view() {
        return radial_functional(&view, f.weight(), need, spec);
    }
    match f.family() {
        Family::Gaussian {
            center,
            sigma,
            amplitude,
        } => gaussian_functional(f, center, *sigma, *amplitude, need, spec),
        Family::Mixture { terms } => mixture_functional(f, terms, need, spec),
        _ => cubature_functional(f, need, spec),
    }
}

fn validate_need(need: Need) -> Result<(), QuadError> {
    let ok = match need {
        Need::Mass(s) | Need::Entropy(s) => s > 0.0,
        Need::GradMass(p) => p > 0.0,
        Need::Moment { s, alpha } => s > 0.0 && alpha > 0.0,
    };
    if ok {
        Ok(())
    } else {
        Err(QuadError::Unsupported(format!(
            "nonpositive exponent in {need:?}"
        )))
    }
}

// -- indicator: declared BV data ---------------------------------------------

fn indicator_functional(f: &TestFunction, need: Need) -> Result<Estimate, QuadError> {
    let data = f.indicator_data().expect("indicator family");
    let w = f.weight();
    let d = w.d();
    match need {
        Need::Mass(_) | Need::Entropy(_) => Ok(Estimate::exact(match need {
            // |χ|^s = χ and χ ln χ = 0 on the support
            Need::Mass(_) => data.measure,
            _ => 0.0,
        })),
        Need::GradMass(p) if p == 1.0 => Ok(Estimate::exact(data.perimeter)),
        Need::GradMass(p) => Err(QuadError::Unsupported(format!(
            "indicator gradient has only L¹ (total-variation) mass, requested p={p}"
        ))),
        Need::Moment { alpha, .. } => {
            // ∫_{B_R} |x|^α x^A dx = P(B_1^A) R^{D+α} / (D+α)
            let p1 = ball_geometry(w).perimeter;
            Ok(Estimate::exact(
                p1 * data.radius.powf(d + alpha) / (d + alpha),
            ))
        }
    }
}

// -- radial path ---------------------------------------------------------------

fn radial_functional(
    view: &crate::funcspace::RadialView,
    w: &Weight,
    need: Need,
    spec: &QuadratureSpec,
) -> Result<Estimate, QuadError> {
    let profile = &view.profile;
    match need {
        Need::Mass(s) => radial_power(
            &RadialIntegrand {
                profile: &|r: f64| profile(r).abs().powf(s),
                tail: view.tail.pow(s).to_quad(),
            },
            w,
            0.0,
            spec,
        ),
        Need::Moment { s, alpha } => radial_power(
            &RadialIntegrand {
                profile: &|r: f64| profile(r).abs().powf(s),
                tail: view.tail.pow(s).to_quad(),
            },
            w,
            alpha,
            spec,
        ),
        Need::Entropy(s) => radial_power(
            &RadialIntegrand {
                profile: &|r: f64| {
                    let m = profile(r).abs().powf(s);
                    if m == 0.0 {
                        0.0
                    } else {
                        m * m.ln()
                    }
                },
                tail: view.tail.pow(s).to_quad(),
            },
            w,
            0.0,
            spec,
        ),
        Need::GradMass(p) => {
            let deriv = view.deriv.as_ref().ok_or_else(|| {
                QuadError::Unsupported("radial profile carries no derivative".into())
            })?;
            radial_power(
                &RadialIntegrand {
                    profile: &|r: f64| deriv(r).abs().powf(p),
                    tail: view.tail.derivative().pow(p).to_quad(),
                },
                w,
                0.0,
                spec,
            )
        }
    }
}

// -- off-center Gaussian: per-axis reductions ---------------------------------

/// `∫ poly(t) e^{-s (t-c)²/(4σ)} |t|^{A_i} dt` over axis `i` of `R^n_A`.
fn gauss_axis(
    w: &Weight,
    i: usize,
    c: f64,
    sigma_over_s: f64, // σ/s: the effective per-axis variance parameter
    poly: &(dyn Fn(f64) -> f64 + Sync),
    spec: &QuadratureSpec,
) -> Result<Estimate, QuadError> {
    let a_i = w.exponents()[i];
    let rate = 1.0 / (4.0 * sigma_over_s);
    let g = move |t: f64| poly(t) * (-rate * (t - c) * (t - c)).exp();
    let tail = TailBehavior::ExpDecay {
        scale: c.abs() + 8.0 * sigma_over_s.sqrt().max(0.1),
    };
    if w.half_line(i) {
        weighted_halfline(&g, a_i, tail, spec.tols())
    } else {
        full_line(&g, a_i, tail, spec.tols())
    }
}

fn product_excluding(parts: &[Estimate], skip: usize) -> Estimate {
    let rest: Vec<Estimate> = parts
        .iter()
        .enumerate()
        .filter(|(j, _)| *j != skip)
        .map(|(_, e)| *e)
        .collect();
    product_estimate(&rest)
}

fn gaussian_functional(
    f: &TestFunction,
    center: &[f64],
    sigma: f64,
    amplitude: f64,
    need: Need,
    spec: &QuadratureSpec,
) -> Result<Estimate, QuadError> {
    let w = f.weight();
    let n = w.n();
    let amp = amplitude.abs();
    let plain = |s: f64| -> Result<Vec<Estimate>, QuadError> {
        (0..n)
            .map(|i| gauss_axis(w, i, center[i], sigma / s, &|_t| 1.0, spec))
            .collect()
    };
    match need {
        Need::Mass(s) => Ok(product_estimate(&plain(s)?).scale(amp.powf(s))),
        Need::GradMass(2.0) => {
            // |∇f|² = f² |x-c|²/(4σ²)
            let sm = gaussian_centered_moment(w, center, sigma, 2.0, spec)?;
            Ok(sm.scale(amp * amp / (4.0 * sigma * sigma)))
        }
        Need::Entropy(s) => {
            // ln|f| = ln amp - |x-c|²/(4σ)
            let mass = product_estimate(&plain(s)?).scale(amp.powf(s));
            let sm = gaussian_centered_moment(w, center, sigma, s, spec)?.scale(amp.powf(s));
            Ok(mass
                .scale(amp.ln())
                .sub(sm.scale(1.0 / (4.0 * sigma)))
                .scale(s))
        }
        Need::Moment { s, alpha } if alpha == 2.0 => {
            let parts = plain(s)?;
            let mut total = Estimate::exact(0.0);
            for i in 0..n {
                let axis =
                    gauss_axis(w, i, center[i], sigma / s, &|t: f64| t * t, spec)?;
                total = total.add(axis.mul(product_excluding(&parts, i)));
            }
            Ok(total.scale(amp.powf(s)))
        }
        _ => cubature_functional(f, need, spec),
    }
}

/// `∫ |f/amp|^s |x-c|² x^A dx` for a Gaussian: sum of per-axis second
/// moments about the center.
fn gaussian_centered_moment(
    w: &Weight,
    center: &[f64],
    sigma: f64,
    s: f64,
    spec: &QuadratureSpec,
) -> Result<Estimate, QuadError> {
    let n = w.n();
    let parts: Vec<Estimate> = (0..n)
        .map(|i| gauss_axis(w, i, center[i], sigma / s, &|_t| 1.0, spec))
        .collect::<Result<_, _>>()?;
    let mut total = Estimate::exact(0.0);
    for i in 0..n {
        let c = center[i];
        let axis = gauss_axis(
            w,
            i,
            c,
            sigma / s,
            &move |t: f64| (t - c) * (t - c),
            spec,
        )?;
        total = total.add(axis.mul(product_excluding(&parts, i)));
    }
    Ok(total)
}

// -- mixtures: pairwise separable expansions ----------------------------------

struct PairAxis<'a> {
    w: &'a Weight,
    j: &'a MixtureTerm,
    k: &'a MixtureTerm,
}

impl<'a> PairAxis<'a> {
    /// `∫ poly(t) e^{-(t-μ_j)²/(4σ_j)} e^{-(t-μ_k)²/(4σ_k)} |t|^{A_i} dt`.
    fn integral(
        &self,
        i: usize,
        poly: &(dyn Fn(f64) -> f64 + Sync),
        spec: &QuadratureSpec,
    ) -> Result<Estimate, QuadError> {
        let (aj, ak) = (self.j.center[i], self.k.center[i]);
        let (sj, sk) = (self.j.sigma, self.k.sigma);
        let g = move |t: f64| {
            poly(t)
                * (-(t - aj) * (t - aj) / (4.0 * sj) - (t - ak) * (t - ak) / (4.0 * sk)).exp()
        };
        let a_i = self.w.exponents()[i];
        let tail = TailBehavior::ExpDecay {
            scale: aj.abs().max(ak.abs()) + 8.0 * sj.max(sk).sqrt(),
        };
        if self.w.half_line(i) {
            weighted_halfline(&g, a_i, tail, spec.tols())
        } else {
            full_line(&g, a_i, tail, spec.tols())
        }
    }
}

fn mixture_functional(
    f: &TestFunction,
    terms: &[MixtureTerm],
    need: Need,
    spec: &QuadratureSpec,
) -> Result<Estimate, QuadError> {
    let w = f.weight();
    let n = w.n();
    match need {
        // |f| = f for positive mixtures: a plain sum of separable terms
        Need::Mass(1.0) | Need::Moment { s: 1.0, alpha: 2.0 } => {
            let mut total = Estimate::exact(0.0);
            for t in terms {
                let parts: Vec<Estimate> = (0..n)
                    .map(|i| gauss_axis(w, i, t.center[i], t.sigma, &|_t| 1.0, spec))
                    .collect::<Result<_, _>>()?;
                let contribution = match need {
                    Need::Mass(_) => product_estimate(&parts),
                    _ => {
                        let mut sum = Estimate::exact(0.0);
                        for i in 0..n {
                            let axis = gauss_axis(w, i, t.center[i], t.sigma, &|u: f64| u * u, spec)?;
                            sum = sum.add(axis.mul(product_excluding(&parts, i)));
                        }
                        sum
                    }
                };
                total = total.add(contribution.scale(t.coeff));
            }
            Ok(total)
        }
        // f² expands into pairwise products, each separable
        Need::Mass(2.0) | Need::GradMass(2.0) | Need::Moment { s: 2.0, alpha: 2.0 } => {
            let mut total = Estimate::exact(0.0);
            for (ji, j) in terms.iter().enumerate() {
                for (ki, k) in terms.iter().enumerate() {
                    if ki < ji {
                        continue;
                    }
                    let mult = if ki == ji { 1.0 } else { 2.0 };
                    let pair = PairAxis { w, j, k };
                    let parts: Vec<Estimate> = (0..n)
                        .map(|i| pair.integral(i, &|_t| 1.0, spec))
                        .collect::<Result<_, _>>()?;
                    let inner = match need {
                        Need::Mass(_) => product_estimate(&parts),
                        Need::GradMass(_) => {
                            // ∇g_j·∇g_k = Σ_i (t_i-μ_ji)(t_i-μ_ki)/(4σ_jσ_k) g_j g_k
                            let mut sum = Estimate::exact(0.0);
                            for i in 0..n {
                                let (aj, ak) = (j.center[i], k.center[i]);
                                let denom = 4.0 * j.sigma * k.sigma;
                                let axis = pair.integral(
                                    i,
                                    &move |t: f64| (t - aj) * (t - ak) / denom,
                                    spec,
                                )?;
                                sum = sum.add(axis.mul(product_excluding(&parts, i)));
                            }
                            sum
                        }
                        _ => {
                            let mut sum = Estimate::exact(0.0);
                            for i in 0..n {
                                let axis = pair.integral(i, &|t: f64| t * t, spec)?;
                                sum = sum.add(axis.mul(product_excluding(&parts, i)));
                            }
                            sum
                        }
                    };
                    total = total.add(inner.scale(mult * j.coeff * k.coeff));
                }
            }
            Ok(total)
        }
        _ => cubature_functional(f, need, spec),
    }
}

// -- tensor products: exact product/sum rules ---------------------------------

fn tensor_functional(
    factors: &[TestFunction],
    need: Need,
    spec: &QuadratureSpec,
) -> Result<Estimate, QuadError> {
    match need {
        Need::Mass(s) => {
            let parts: Vec<Estimate> = factors
                .iter()
                .map(|f| one_functional(f, Need::Mass(s), spec))
                .collect::<Result<_, _>>()?;
            Ok(product_estimate(&parts))
        }
        Need::GradMass(2.0) => {
            // |∇F|² = Σ_i |∇f_i|² ∏_{j≠i} f_j²
            let masses: Vec<Estimate> = factors
                .iter()
                .map(|f| one_functional(f, Need::Mass(2.0), spec))
                .collect::<Result<_, _>>()?;
            let mut total = Estimate::exact(0.0);
            for (i, f) in factors.iter().enumerate() {
                let grad = one_functional(f, Need::GradMass(2.0), spec)?;
                total = total.add(grad.mul(product_excluding(&masses, i)));
            }
            Ok(total)
        }
        Need::Entropy(s) => {
            // ln|F|^s = Σ_i ln|f_i|^s
            let masses: Vec<Estimate> = factors
                .iter()
                .map(|f| one_functional(f, Need::Mass(s), spec))
                .collect::<Result<_, _>>()?;
            let mut total = Estimate::exact(0.0);
            for (i, f) in factors.iter().enumerate() {
                let ent = one_functional(f, Need::Entropy(s), spec)?;
                total = total.add(ent.mul(product_excluding(&masses, i)));
            }
            Ok(total)
        }
        Need::Moment { s, alpha } if alpha == 2.0 => {
            // |z|² = Σ_i |x^i|²
            let masses: Vec<Estimate> = factors
                .iter()
                .map(|f| one_functional(f, Need::Mass(s), spec))
                .collect::<Result<_, _>>()?;
            let mut total = Estimate::exact(0.0);
            for (i, f) in factors.iter().enumerate() {
                let m = one_functional(f, Need::Moment { s, alpha: 2.0 }, spec)?;
                total = total.add(m.mul(product_excluding(&masses, i)));
            }
            Ok(total)
        }
        _ => Err(QuadError::Unsupported(format!(
            "{need:?} does not factor across a tensor product"
        ))),
    }
}

// -- cubature fallback ---------------------------------------------------------

fn family_axis_tail(f: &TestFunction) -> TailBehavior {
    match f.family() {
        Family::Gaussian { center, sigma, .. } => TailBehavior::ExpDecay {
            scale: center.iter().fold(0.0f64, |m, c| m.max(c.abs())) + 8.0 * sigma.sqrt(),
        },
        Family::Mixture { terms } => {
            let c_max = terms
                .iter()
                .flat_map(|t| t.center.iter())
                .fold(0.0f64, |m, c| m.max(c.abs()));
            let s_max = terms.iter().map(|t| t.sigma).fold(0.0f64, f64::max);
            TailBehavior::ExpDecay {
                scale: c_max + 8.0 * s_max.sqrt(),
            }
        }
        Family::Bump { radius, .. } | Family::Indicator { radius } => {
            TailBehavior::Compact { radius: *radius }
        }
        _ => TailBehavior::ExpDecay { scale: 8.0 },
    }
}

fn cubature_functional(
    f: &TestFunction,
    need: Need,
    spec: &QuadratureSpec,
) -> Result<Estimate, QuadError> {
    let w = f.weight();
    let domain = CubatureDomain::octant(w, family_axis_tail(f));
    let integrand: Box<dyn Fn(&[f64]) -> f64 + Sync> = match need {
        Need::Mass(s) => Box::new(move |x: &[f64]| f.eval(x).map_or(0.0, |v| v.abs().powf(s))),
        Need::GradMass(p) => Box::new(move |x: &[f64]| {
            f.eval_grad(x).map_or(0.0, |g| {
                g.iter().map(|t| t * t).sum::<f64>().sqrt().powf(p)
            })
        }),
        Need::Entropy(s) => Box::new(move |x: &[f64]| {
            let m = f.eval(x).map_or(0.0, |v| v.abs().powf(s));
            if m == 0.0 {
                0.0
            } else {
                m * m.ln()
            }
        }),
        Need::Moment { s, alpha } => Box::new(move |x: &[f64]| {
            let r = x.iter().map(|t| t * t).sum::<f64>().sqrt();
            f.eval(x).map_or(0.0, |v| v.abs().powf(s) * r.powf(alpha))
        }),
    };
    integrate_cubature(&integrand, w, &domain, spec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::shannon_c_a;
    use crate::funcspace::gaussian_moment;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1e-300)
    }

    fn w(a: &[f64]) -> Weight {
        Weight::new(a.to_vec()).unwrap()
    }

    #[test]
    fn normalized_gaussian_bundle() {
        // lp_norm(2)=1, moment(2,2)=D, grad_lp(2)=D/4 at σ=1
        for a in [vec![1.0, 1.0], vec![0.0, 0.0, 0.0], vec![2.0, 0.5]] {
            let wt = w(&a);
            let d = wt.d();
            let f = TestFunction::normalized_gaussian(wt, 1.0).unwrap();
            let spec = QuadratureSpec::default();
            let fs = functionals_of(
                &f,
                &[
                    Need::Mass(2.0),
                    Need::Moment { s: 2.0, alpha: 2.0 },
                    Need::GradMass(2.0),
                    Need::Entropy(2.0),
                ],
                &spec,
            )
            .unwrap();
            assert!(rel(fs.mass(2.0).value, 1.0) < 1e-9);
            assert!(rel(fs.moment(2.0, 2.0).value, d) < 1e-9);
            assert!(rel(fs.grad(2.0).value, d / 4.0) < 1e-9);
            // entropy2 = -(D/2)(ln(2Π)+1)
            let expect = -(d / 2.0) * ((2.0 * crate::special::pi_a(f.weight())).ln() + 1.0);
            assert!(rel(fs.entropy(2.0).value, expect) < 1e-8);
        }
    }

    #[test]
    fn phi_alpha_bundle() {
        // φ_α with c = C_A(α): mass 1, entropy1 = -D/α, moment(1,α) = D/(αc)
        for (a, alpha) in [(vec![1.0, 2.0], 1.0), (vec![0.5], 2.0), (vec![1.0, 1.0], 3.0)] {
            let wt = w(&a);
            let d = wt.d();
            let c = shannon_c_a(&wt, alpha).unwrap();
            let f = TestFunction::exp_power(wt, c, alpha).unwrap();
            let fs = functionals_of(
                &f,
                &[
                    Need::Mass(1.0),
                    Need::Entropy(1.0),
                    Need::Moment { s: 1.0, alpha },
                ],
                &QuadratureSpec::default(),
            )
            .unwrap();
            assert!(rel(fs.mass(1.0).value, 1.0) < 1e-9);
            assert!(rel(fs.entropy(1.0).value, -d / alpha) < 1e-8);
            assert!(rel(fs.moment(1.0, alpha).value, d / (alpha * c)) < 1e-9);
        }
    }

    #[test]
    fn indicator_bundle() {
        let wt = w(&[1.0, 1.0]);
        let f = TestFunction::indicator(wt, 1.0).unwrap();
        let fs = functionals_of(
            &f,
            &[Need::Mass(1.0), Need::GradMass(1.0), Need::Entropy(1.0)],
            &QuadratureSpec::default(),
        )
        .unwrap();
        assert!(rel(fs.mass(1.0).value, 0.125) < 1e-13);
        assert!(rel(fs.grad(1.0).value, 0.5) < 1e-13);
        assert_eq!(fs.entropy(1.0).value, 0.0);
        // p != 1 gradient is refused
        assert!(functionals_of(&f, &[Need::GradMass(2.0)], &QuadratureSpec::default()).is_err());
    }

    #[test]
    fn off_center_gaussian_matches_cubature() {
        // entropy of an off-center Gaussian: separable reduction vs cubature
        let wt = w(&[1.0, 1.0]);
        let f = TestFunction::gaussian(wt.clone(), vec![0.5, 0.5], 1.0, 0.3).unwrap();
        let spec = QuadratureSpec::with_rel_tol(1e-9);
        let fs = functionals_of(&f, &[Need::Entropy(2.0), Need::Mass(2.0)], &spec).unwrap();
        // independent route: brute cubature of the same integrand
        let direct = integrate_cubature(
            &|x: &[f64]| {
                let v = f.eval(x).unwrap();
                let m = v * v;
                if m == 0.0 {
                    0.0
                } else {
                    m * m.ln()
                }
            },
            &wt,
            &CubatureDomain::octant(&wt, TailBehavior::ExpDecay { scale: 6.0 }),
            &spec,
        )
        .unwrap();
        assert!(
            (fs.entropy(2.0).value - direct.value).abs()
                < 1e-7 * direct.value.abs().max(1.0)
        );
    }

    #[test]
    fn mixture_pairwise_matches_quadrature() {
        let wt = w(&[1.0, 0.0]);
        let f = TestFunction::mixture(
            wt.clone(),
            vec![
                MixtureTerm {
                    coeff: 1.0,
                    center: vec![0.4, -0.2],
                    sigma: 0.7,
                },
                MixtureTerm {
                    coeff: 0.5,
                    center: vec![-0.6, 0.8],
                    sigma: 1.2,
                },
            ],
        )
        .unwrap();
        let spec = QuadratureSpec::with_rel_tol(1e-9);
        let fs = functionals_of(
            &f,
            &[Need::Mass(2.0), Need::GradMass(2.0), Need::Mass(1.0)],
            &spec,
        )
        .unwrap();
        // cubature route for the L² mass
        let direct = integrate_cubature(
            &|x: &[f64]| {
                let v = f.eval(x).unwrap();
                v * v
            },
            &wt,
            &CubatureDomain::octant(&wt, family_axis_tail(&f)),
            &spec,
        )
        .unwrap();
        assert!(rel(fs.mass(2.0).value, direct.value) < 1e-7);
        // gradient route against cubature of |∇f|²
        let direct_grad = integrate_cubature(
            &|x: &[f64]| {
                let g = f.eval_grad(x).unwrap();
                g.iter().map(|t| t * t).sum::<f64>()
            },
            &wt,
            &CubatureDomain::octant(&wt, family_axis_tail(&f)),
            &spec,
        )
        .unwrap();
        assert!(rel(fs.grad(2.0).value, direct_grad.value) < 1e-7);
        assert!(fs.mass(1.0).value > 0.0);
    }

    #[test]
    fn tensor_product_rules() {
        let wt = w(&[1.0]);
        let f = TestFunction::normalized_gaussian(wt, 1.0).unwrap();
        let f3 = f.tensorize(3).unwrap();
        let spec = QuadratureSpec::default();
        let one = functionals_of(&f, &[Need::Mass(2.0), Need::GradMass(2.0)], &spec).unwrap();
        let three = functionals_of(&f3, &[Need::Mass(2.0), Need::GradMass(2.0)], &spec).unwrap();
        assert!(rel(three.mass(2.0).value, one.mass(2.0).value.powi(3)) < 1e-10);
        // unit-mass factors: gradient triples
        assert!(rel(three.grad(2.0).value, 3.0 * one.grad(2.0).value) < 1e-9);
    }

    #[test]
    fn fullspace_is_2k_times_octant_for_even_families() {
        let wt = w(&[1.0, 1.0]);
        let f = TestFunction::bump(wt.clone(), 1.5).unwrap();
        let spec = QuadratureSpec::default();
        let oct = functionals_of(&f, &[Need::Mass(2.0)], &spec).unwrap();
        let full = fullspace_functionals_of(&f, &[Need::Mass(2.0)], &spec).unwrap();
        assert!(rel(full.mass(2.0).value, 4.0 * oct.mass(2.0).value) < 1e-12);
    }

    #[test]
    fn entropy_zero_region_no_nan() {
        // bump is identically zero outside its support: entropy must stay finite
        let wt = w(&[0.0, 0.0]);
        let f = TestFunction::bump(wt, 1.0).unwrap();
        let fs = functionals_of(&f, &[Need::Entropy(2.0)], &QuadratureSpec::default()).unwrap();
        assert!(fs.entropy(2.0).value.is_finite());
    }

    #[test]
    fn scaling_law_for_entropy() {
        // Ent(c f) = c² Ent(f) + c² ln(c²) ||f||₂²
        let wt = w(&[1.0, 1.0]);
        let f = TestFunction::normalized_gaussian(wt.clone(), 1.0).unwrap();
        let c: f64 = 2.0;
        let scaled = TestFunction::gaussian(
            wt,
            vec![0.0, 0.0],
            1.0,
            c * f.eval(&[0.0, 0.0]).unwrap(),
        )
        .unwrap();
        let spec = QuadratureSpec::default();
        let base = functionals_of(&f, &[Need::Entropy(2.0), Need::Mass(2.0)], &spec).unwrap();
        let big = functionals_of(&scaled, &[Need::Entropy(2.0)], &spec).unwrap();
        let expect =
            c * c * base.entropy(2.0).value + c * c * (c * c).ln() * base.mass(2.0).value;
        assert!(rel(big.entropy(2.0).value, expect) < 1e-9);
    }

    #[test]
    fn closed_forms_agree_with_quadrature() {
        // seeded random (family, weight) pairs: closed form vs quadrature
        let mut state = 0xfeedface12345678u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        let spec = QuadratureSpec::default();
        for _ in 0..30 {
            let n = 1 + (next() * 3.0) as usize;
            let a: Vec<f64> = (0..n).map(|_| 4.0 * next()).collect();
            let wt = w(&a);
            let alpha = 0.5 + 3.0 * next();
            let t = 0.3 + 2.0 * next();
            let oracle = gaussian_moment(&wt, alpha, t).unwrap();
            let quad_mass = radial_power(
                &RadialIntegrand {
                    profile: &|r: f64| (-t * r.powf(alpha)).exp(),
                    tail: TailBehavior::ExpDecay {
                        scale: (2.0 / t).powf(1.0 / alpha).max(1.0),
                    },
                },
                &wt,
                0.0,
                &spec,
            )
            .unwrap();
            assert!(
                rel(quad_mass.value, oracle.mass) < 1e-8,
                "mass {} vs {}",
                quad_mass.value,
                oracle.mass
            );
        }
    }
}
