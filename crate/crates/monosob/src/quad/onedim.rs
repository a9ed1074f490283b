//! One-dimensional weighted integrals: the building block for the radial,
//! separable, and cubature paths.
//!
//! Three transforms keep the Gauss–Kronrod kernel on smooth integrands:
//!
//! * algebraic endpoint `t^a` at the origin: substitute `t = c·u^m` with an
//!   integer `m` chosen so the transformed endpoint power `u^{m(a+1)-1}` has
//!   several continuous derivatives;
//! * unbounded tail: split at the declared decay scale `s` and invert the
//!   far field, `∫_s^∞ g(t) t^a dt = s^{a+1} ∫_0^1 g(s/v) v^{-(a+2)} dv`;
//! * algebraic tails get the endpoint substitution again on the inverted
//!   side, with the order read off the declared decay rate.

use super::kronrod::adaptive;
use super::{Estimate, QuadError, TailBehavior, Tols, TruncationPolicy};

/// Smallest integer `m >= 1` such that `m·(e+1) - 1` is comfortably smooth
/// at a `u^{e}`-type endpoint; integer exponents are already smooth.
fn sub_order(e: f64) -> u32 {
    if e < 0.0 {
        return 1;
    }
    if (e - e.round()).abs() < 1e-12 {
        return 1;
    }
    let m = (9.0 / (e + 1.0)).ceil() as u32;
    m.clamp(1, 30)
}

/// `∫_lo^hi g(t) t^a dt` with `0 <= lo < hi`, `a >= 0`.
pub(crate) fn weighted_interval(
    g: &dyn Fn(f64) -> f64,
    a_exp: f64,
    lo: f64,
    hi: f64,
    tols: Tols,
) -> Result<Estimate, QuadError> {
    if hi <= lo {
        return Ok(Estimate::exact(0.0));
    }
    if lo > 0.0 {
        return adaptive(&|t| g(t) * t.powf(a_exp), lo, hi, tols);
    }
    let m = sub_order(a_exp);
    if m == 1 {
        return adaptive(&|t| g(t) * t.powf(a_exp), 0.0, hi, tols);
    }
    // t = hi·u^m:  t^a dt = hi^{a+1} m u^{m(a+1)-1} du
    let mf = f64::from(m);
    let factor = hi.powf(a_exp + 1.0) * mf;
    let u_pow = mf * (a_exp + 1.0) - 1.0;
    let inner = adaptive(
        &|u: f64| {
            if u <= 0.0 {
                return 0.0;
            }
            let t = hi * u.powi(m as i32);
            g(t) * u.powf(u_pow)
        },
        0.0,
        1.0,
        tols,
    )?;
    Ok(inner.scale(factor))
}

/// `∫_s^∞ g(t) t^a dt` by inversion onto `[0, 1]`.
fn far_field(
    g: &dyn Fn(f64) -> f64,
    a_exp: f64,
    s: f64,
    tail: TailBehavior,
    tols: Tols,
) -> Result<Estimate, QuadError> {
    let inv = |v: f64| -> f64 {
        if v <= 0.0 {
            return 0.0;
        }
        let t = s / v;
        let gv = g(t);
        if gv == 0.0 {
            return 0.0;
        }
        gv * v.powf(-(a_exp + 2.0))
    };
    let inner = match tail {
        TailBehavior::Compact { .. } => return Ok(Estimate::exact(0.0)),
        TailBehavior::ExpDecay { .. } => adaptive(&|v| inv(v), 0.0, 1.0, tols)?,
        TailBehavior::Algebraic { decay, .. } => {
            // inverted integrand ~ v^{decay - a - 2}; integrable iff decay > a+1
            let e0 = decay - a_exp - 2.0;
            if e0 <= -1.0 + 1e-12 {
                return Err(QuadError::Divergent(format!(
                    "algebraic tail t^-{decay} against weight t^{a_exp} is not integrable"
                )));
            }
            let m = sub_order(e0);
            if m == 1 {
                adaptive(&|v| inv(v), 0.0, 1.0, tols)?
            } else {
                let mf = f64::from(m);
                adaptive(
                    &|u: f64| {
                        if u <= 0.0 {
                            return 0.0;
                        }
                        let v = u.powi(m as i32);
                        inv(v) * mf * u.powf(mf - 1.0)
                    },
                    0.0,
                    1.0,
                    tols,
                )?
            }
        }
    };
    Ok(inner.scale(s.powf(a_exp + 1.0)))
}

/// `∫_0^∞ g(t) t^a dt` with declared tail behavior.
pub(crate) fn weighted_halfline(
    g: &dyn Fn(f64) -> f64,
    a_exp: f64,
    tail: TailBehavior,
    tols: Tols,
) -> Result<Estimate, QuadError> {
    match tail {
        TailBehavior::Compact { radius } => {
            let r = match tols.truncation {
                TruncationPolicy::Radius(rr) => rr.min(radius),
                TruncationPolicy::Auto => radius,
            };
            weighted_interval(g, a_exp, 0.0, r, tols)
        }
        TailBehavior::ExpDecay { scale } | TailBehavior::Algebraic { scale, .. } => {
            if let TailBehavior::Algebraic { decay, .. } = tail {
                if decay <= a_exp + 1.0 + 1e-12 {
                    return Err(QuadError::Divergent(format!(
                        "algebraic tail t^-{decay} against weight t^{a_exp} is not integrable"
                    )));
                }
            }
            let s = scale.max(1e-3);
            match tols.truncation {
                TruncationPolicy::Auto => {
                    let near = weighted_interval(g, a_exp, 0.0, s, tols)?;
                    let far = far_field(g, a_exp, s, tail, tols)?;
                    Ok(near.add(far))
                }
                TruncationPolicy::Radius(r) => {
                    let main = weighted_interval(g, a_exp, 0.0, r, tols)?;
                    // probe the next octave so the reported error covers it
                    let probe_tols = Tols {
                        rel: 1e-3,
                        abs: tols.abs,
                        ..tols
                    };
                    let probe = weighted_interval(g, a_exp, r, 2.0 * r, probe_tols)?;
                    Ok(Estimate::new(
                        main.value,
                        main.error + probe.value.abs() + probe.error,
                    ))
                }
            }
        }
    }
}

/// `∫_{-∞}^{∞} g(t) |t|^a dt` (both half-lines weighted).
pub(crate) fn full_line(
    g: &dyn Fn(f64) -> f64,
    a_exp: f64,
    tail: TailBehavior,
    tols: Tols,
) -> Result<Estimate, QuadError> {
    let pos = weighted_halfline(g, a_exp, tail, tols)?;
    let neg = weighted_halfline(&|t| g(-t), a_exp, tail, tols)?;
    Ok(pos.add(neg))
}

/// Plain adaptive integration on a finite interval (both endpoints free of
/// weight singularities).
pub(crate) fn plain_interval(
    g: &dyn Fn(f64) -> f64,
    lo: f64,
    hi: f64,
    tols: Tols,
) -> Result<Estimate, QuadError> {
    adaptive(g, lo, hi, tols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::QuadratureSpec;
    use std::f64::consts::PI;

    fn tols() -> Tols {
        QuadratureSpec::default().tols()
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1e-300)
    }

    #[test]
    fn gaussian_halfline() {
        // ∫_0^∞ e^{-t²} dt = √π/2
        let e = weighted_halfline(&|t| (-t * t).exp(), 0.0, TailBehavior::ExpDecay { scale: 1.0 }, tols())
            .unwrap();
        assert!(rel(e.value, PI.sqrt() / 2.0) < 1e-12);
        assert!(e.error < 1e-10 * e.value + 1e-13);
    }

    #[test]
    fn weighted_gaussian_halfline() {
        // ∫_0^∞ t e^{-c t²} dt = 1/(2c)
        for c in [1.0, 2.0, 0.3] {
            let e = weighted_halfline(
                &move |t: f64| (-c * t * t).exp(),
                1.0,
                TailBehavior::ExpDecay { scale: 1.0 },
                tols(),
            )
            .unwrap();
            assert!(rel(e.value, 1.0 / (2.0 * c)) < 1e-12);
        }
    }

    #[test]
    fn fractional_weight_endpoint() {
        // ∫_0^∞ t^a e^{-t} dt = Γ(a+1), fractional a exercises the power sub
        for a in [0.5, 1.7, 3.25] {
            let e = weighted_halfline(
                &|t: f64| (-t).exp(),
                a,
                TailBehavior::ExpDecay { scale: 2.0 },
                tols(),
            )
            .unwrap();
            let expect = crate::special::gamma(a + 1.0).unwrap();
            assert!(rel(e.value, expect) < 1e-11, "a={a}: {} vs {expect}", e.value);
        }
    }

    #[test]
    fn algebraic_tail() {
        // ∫_0^∞ (1+t²)^{-β} dt = √π Γ(β-1/2)/(2Γ(β))
        for beta in [1.0, 2.5, 0.75] {
            let e = weighted_halfline(
                &move |t: f64| (1.0 + t * t).powf(-beta),
                0.0,
                TailBehavior::Algebraic {
                    decay: 2.0 * beta,
                    scale: 1.0,
                },
                tols(),
            )
            .unwrap();
            let expect = PI.sqrt() * crate::special::gamma(beta - 0.5).unwrap()
                / (2.0 * crate::special::gamma(beta).unwrap());
            assert!(rel(e.value, expect) < 1e-10, "beta={beta}");
        }
    }

    #[test]
    fn algebraic_divergence_detected() {
        // ∫ t·(1+t²)^{-1} diverges: decay 2 <= a+1 = 2
        let r = weighted_halfline(
            &|t: f64| (1.0 + t * t).powf(-1.0),
            1.0,
            TailBehavior::Algebraic {
                decay: 2.0,
                scale: 1.0,
            },
            tols(),
        );
        assert!(matches!(r, Err(QuadError::Divergent(_))));
    }

    #[test]
    fn compact_support() {
        // ∫_0^1 t^{1/2}(1-t)² dt = B(3/2, 3) = Γ(3/2)Γ(3)/Γ(9/2)
        let e = weighted_interval(&|t: f64| (1.0 - t).powi(2), 0.5, 0.0, 1.0, tols()).unwrap();
        let expect = crate::special::gamma(1.5).unwrap() * 2.0 / crate::special::gamma(4.5).unwrap();
        assert!(rel(e.value, expect) < 1e-12);
    }

    #[test]
    fn full_line_weighted() {
        // ∫_R |t| e^{-t²} dt = 1
        let e = full_line(
            &|t: f64| (-t * t).exp(),
            1.0,
            TailBehavior::ExpDecay { scale: 1.0 },
            tols(),
        )
        .unwrap();
        assert!(rel(e.value, 1.0) < 1e-12);
    }

    #[test]
    fn truncation_radius_soundness() {
        // fixed-R truncation: doubling R moves the value by less than the
        // reported error
        let g = |t: f64| (-0.5 * t * t).exp();
        let tail = TailBehavior::ExpDecay { scale: 1.0 };
        let mut t1 = tols();
        t1.truncation = TruncationPolicy::Radius(2.0);
        let a = weighted_halfline(&g, 1.0, tail, t1).unwrap();
        let mut t2 = tols();
        t2.truncation = TruncationPolicy::Radius(4.0);
        let b = weighted_halfline(&g, 1.0, tail, t2).unwrap();
        assert!((b.value - a.value).abs() <= a.error);
        // and the auto policy nails the exact value 1/(2·0.5) = 1
        let c = weighted_halfline(&g, 1.0, tail, tols()).unwrap();
        assert!(rel(c.value, 1.0) < 1e-12);
    }

    #[test]
    fn nonfinite_detected() {
        let r = plain_interval(&|t: f64| 1.0 / t, -1.0, 1.0, tols());
        assert!(matches!(
            r,
            Err(QuadError::NonFinite { .. }) | Err(QuadError::Accuracy { .. })
        ));
    }
}
