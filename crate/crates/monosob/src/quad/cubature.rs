//! Iterated adaptive cubature for non-radial, non-separable integrands.
//!
//! Each axis is one weighted one-dimensional integral; the integrand of an
//! outer axis is the inner integral as a function of the outer coordinate.
//! Inner levels run at a tighter tolerance and their allowance is folded
//! into the reported error. Capped at low dimension by the spec.

use super::onedim::{full_line, plain_interval, weighted_halfline, weighted_interval};
use super::{Estimate, QuadError, QuadratureSpec, TailBehavior, Tols};
use crate::special::Weight;
use std::cell::RefCell;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AxisKind {
    /// The whole line, weighted by `|t|^{A_i}`.
    Full,
    /// The half-line `(0, ∞)`.
    Half,
}

#[derive(Debug, Clone)]
pub enum CubatureDomain {
    /// Axis-aligned box; faces with `A_i > 0` must have `lo_i >= 0`.
    Box { lo: Vec<f64>, hi: Vec<f64> },
    /// `B_radius ∩ R^n_A`.
    Ball { radius: f64 },
    /// Unbounded product domain with declared per-axis tails.
    Unbounded {
        axes: Vec<AxisKind>,
        tails: Vec<TailBehavior>,
    },
}

impl CubatureDomain {
    /// `R^n_A`: the half-line axes are the ones with positive exponent.
    pub fn octant(w: &Weight, tail: TailBehavior) -> Self {
        CubatureDomain::Unbounded {
            axes: (0..w.n())
                .map(|i| if w.half_line(i) { AxisKind::Half } else { AxisKind::Full })
                .collect(),
            tails: vec![tail; w.n()],
        }
    }

    /// All of `R^n` (used with the full-space weight `|x_1|^{A_1}...`).
    pub fn full_space(n: usize, tail: TailBehavior) -> Self {
        CubatureDomain::Unbounded {
            axes: vec![AxisKind::Full; n],
            tails: vec![tail; n],
        }
    }

    /// `R^n_A × (0, ∞)`: octant axes for the weight, half-line last axis.
    /// The weight passed to [`integrate_cubature`] must carry a zero
    /// exponent in the last slot.
    pub fn half_space(w_extended: &Weight, tail: TailBehavior) -> Self {
        let n = w_extended.n();
        CubatureDomain::Unbounded {
            axes: (0..n)
                .map(|i| {
                    if i + 1 == n || w_extended.half_line(i) {
                        AxisKind::Half
                    } else {
                        AxisKind::Full
                    }
                })
                .collect(),
            tails: vec![tail; n],
        }
    }
}

struct NestCtx<'a> {
    f: &'a (dyn Fn(&[f64]) -> f64 + Sync),
    w: &'a Weight,
    domain: &'a CubatureDomain,
    tols_by_level: Vec<Tols>,
    failure: RefCell<Option<QuadError>>,
}

fn axis_integral(
    ctx: &NestCtx,
    prefix: &[f64],
    integrand: &dyn Fn(f64) -> f64,
    tols: Tols,
) -> Result<Estimate, QuadError> {
    let axis = prefix.len();
    let a_exp = ctx.w.exponents()[axis];
    match ctx.domain {
        CubatureDomain::Box { lo, hi } => {
            if a_exp > 0.0 {
                weighted_interval(integrand, a_exp, lo[axis], hi[axis], tols)
            } else {
                plain_interval(integrand, lo[axis], hi[axis], tols)
            }
        }
        CubatureDomain::Ball { radius } => {
            let rem2 = radius * radius - prefix.iter().map(|t| t * t).sum::<f64>();
            if rem2 <= 0.0 {
                return Ok(Estimate::exact(0.0));
            }
            let b = rem2.sqrt();
            if ctx.w.half_line(axis) {
                weighted_interval(integrand, a_exp, 0.0, b, tols)
            } else {
                plain_interval(integrand, -b, b, tols)
            }
        }
        CubatureDomain::Unbounded { axes, tails } => match axes[axis] {
            AxisKind::Half => weighted_halfline(integrand, a_exp, tails[axis], tols),
            AxisKind::Full => full_line(integrand, a_exp, tails[axis], tols),
        },
    }
}

fn nest(ctx: &NestCtx, prefix: &[f64]) -> f64 {
    if ctx.failure.borrow().is_some() {
        return 0.0;
    }
    let axis = prefix.len();
    if axis == ctx.w.n() {
        return (ctx.f)(prefix);
    }
    let tols = ctx.tols_by_level[axis];
    let integrand = |t: f64| -> f64 {
        let mut point = Vec::with_capacity(axis + 1);
        point.extend_from_slice(prefix);
        point.push(t);
        nest(ctx, &point)
    };
    match axis_integral(ctx, prefix, &integrand, tols) {
        Ok(e) => e.value,
        Err(err) => {
            let mut slot = ctx.failure.borrow_mut();
            if slot.is_none() {
                *slot = Some(err);
            }
            0.0
        }
    }
}

/// Adaptive cubature of `f(x) · x^A` over the domain intersected with
/// `R^n_A`, for `n` up to the spec's dimension cap.
pub fn integrate_cubature(
    f: &(dyn Fn(&[f64]) -> f64 + Sync),
    w: &Weight,
    domain: &CubatureDomain,
    spec: &QuadratureSpec,
) -> Result<Estimate, QuadError> {
    spec.validate()?;
    let n = w.n();
    if n > spec.cubature_dim_cap {
        return Err(QuadError::DimensionCap {
            dim: n,
            cap: spec.cubature_dim_cap,
        });
    }
    match domain {
        CubatureDomain::Box { lo, hi } => {
            if lo.len() != n || hi.len() != n {
                return Err(QuadError::Unsupported("box bounds do not match dimension".into()));
            }
            for i in 0..n {
                if w.half_line(i) && lo[i] < 0.0 {
                    return Err(QuadError::Unsupported(format!(
                        "box face lo[{i}]={} crosses the weight singularity",
                        lo[i]
                    )));
                }
            }
        }
        CubatureDomain::Ball { radius } => {
            if !(radius > &0.0) {
                return Err(QuadError::Unsupported("ball radius must be positive".into()));
            }
        }
        CubatureDomain::Unbounded { axes, tails } => {
            if axes.len() != n || tails.len() != n {
                return Err(QuadError::Unsupported(
                    "axis kinds/tails do not match dimension".into(),
                ));
            }
        }
    }

    let base = spec.tols();
    let tols_by_level: Vec<Tols> = (0..n)
        .map(|level| {
            if level == 0 {
                base.scaled(0.5, base.max_subdiv)
            } else {
                base.scaled(0.125, 150)
            }
        })
        .collect();
    let ctx = NestCtx {
        f,
        w,
        domain,
        tols_by_level,
        failure: RefCell::new(None),
    };

    let integrand = |t: f64| -> f64 { nest(&ctx, &[t]) };
    let outer = axis_integral(&ctx, &[], &integrand, ctx.tols_by_level[0])?;
    if let Some(err) = ctx.failure.into_inner() {
        return Err(err);
    }
    // allowance for the inner levels running at spec/8
    let inner_allow =
        (n.saturating_sub(1)) as f64 * (0.125 * base.rel * outer.value.abs() + 0.125 * base.abs);
    Ok(Estimate::new(outer.value, outer.error + inner_allow))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1e-300)
    }

    fn w(a: &[f64]) -> Weight {
        Weight::new(a.to_vec()).unwrap()
    }

    #[test]
    fn monomial_over_box() {
        // ∫_{[0,1]²} x²y³ dxdy = (1/3)(1/4)
        let e = integrate_cubature(
            &|_x: &[f64]| 1.0,
            &w(&[2.0, 3.0]),
            &CubatureDomain::Box {
                lo: vec![0.0, 0.0],
                hi: vec![1.0, 1.0],
            },
            &QuadratureSpec::default(),
        )
        .unwrap();
        assert!(rel(e.value, 1.0 / 12.0) < 1e-11);
    }

    #[test]
    fn weighted_ball_measure() {
        // ∫_{B_1 ∩ (0,∞)²} xy dxdy = 1/8
        let e = integrate_cubature(
            &|_x: &[f64]| 1.0,
            &w(&[1.0, 1.0]),
            &CubatureDomain::Ball { radius: 1.0 },
            &QuadratureSpec::default(),
        )
        .unwrap();
        assert!(rel(e.value, 0.125) < 1e-9);
        assert!((e.value - 0.125).abs() <= e.error.max(1e-12));
    }

    #[test]
    fn unweighted_disk() {
        let e = integrate_cubature(
            &|_x: &[f64]| 1.0,
            &w(&[0.0, 0.0]),
            &CubatureDomain::Ball { radius: 1.0 },
            &QuadratureSpec::default(),
        )
        .unwrap();
        assert!(rel(e.value, PI) < 1e-9);
    }

    #[test]
    fn off_center_gaussian_full_space() {
        // translation-invariant closed form: ∫_{R²} e^{-|x-c|²/(4σ)} = 4πσ
        let sigma = 0.7;
        let c = [0.4, -1.1];
        let e = integrate_cubature(
            &move |x: &[f64]| {
                let r2 = (x[0] - c[0]).powi(2) + (x[1] - c[1]).powi(2);
                (-r2 / (4.0 * sigma)).exp()
            },
            &w(&[0.0, 0.0]),
            &CubatureDomain::full_space(2, TailBehavior::ExpDecay { scale: 3.0 }),
            &QuadratureSpec::default(),
        )
        .unwrap();
        assert!(rel(e.value, 4.0 * PI * sigma) < 1e-9);
    }

    #[test]
    fn octant_matches_separable_route() {
        // e^{-(x-0.3)²/2 - (y+0.5)²/3} over R²_A with A=(1,2): two routes
        let wt = w(&[1.0, 2.0]);
        let f = |x: &[f64]| ((-(x[0] - 0.3).powi(2) / 2.0) + (-(x[1] + 0.5).powi(2) / 3.0)).exp();
        let cub = integrate_cubature(
            &f,
            &wt,
            &CubatureDomain::octant(&wt, TailBehavior::ExpDecay { scale: 3.0 }),
            &QuadratureSpec::default(),
        )
        .unwrap();
        let g1 = |t: f64| (-(t - 0.3) * (t - 0.3) / 2.0).exp();
        let g2 = |t: f64| (-(t + 0.5) * (t + 0.5) / 3.0).exp();
        let sep = crate::quad::integrate_separable(
            &[
                crate::quad::Factor1D {
                    f: &g1,
                    tail: TailBehavior::ExpDecay { scale: 3.0 },
                },
                crate::quad::Factor1D {
                    f: &g2,
                    tail: TailBehavior::ExpDecay { scale: 3.0 },
                },
            ],
            &wt,
            &QuadratureSpec::default(),
        )
        .unwrap();
        assert!(rel(cub.value, sep.value) < 1e-9);
    }

    #[test]
    fn dimension_cap_enforced() {
        let wt = Weight::unweighted(4);
        let r = integrate_cubature(
            &|_x: &[f64]| 1.0,
            &wt,
            &CubatureDomain::Ball { radius: 1.0 },
            &QuadratureSpec::default(),
        );
        assert!(matches!(r, Err(QuadError::DimensionCap { dim: 4, cap: 3 })));
    }
}
