//! Seeded randomized violation hunting: admissible test functions from the
//! mixture and bump families, one checker per trial, zero tolerance for
//! `violated-beyond-error`.
//!
//! Determinism: each trial derives its own generator from `(seed, trial)`,
//! so results are independent of evaluation order and reproducible
//! bit-for-bit with the same seed.

use super::super::checkers::{
    check_heisenberg, check_l1_logsob, check_l2_shannon, check_logsob, check_lp_logsob,
    check_nash, check_refined_sobolev, check_shannon, check_sobolev, check_tm_logsob,
    check_trace, check_trace_logsob, check_whole_space_sobolev, CheckError, InequalityId,
    InequalityReport, Verdict,
};
use crate::funcspace::{HalfSpaceFunction, MixtureTerm, TestFunction, YProfile};
use crate::quad::QuadratureSpec;
use crate::special::Weight;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Debug, Clone)]
pub struct FuzzConfig {
    pub inequality: InequalityId,
    pub weight: Weight,
    pub trials: u32,
    pub seed: u64,
    pub p: Option<f64>,
    pub alpha: Option<f64>,
    pub q: Option<f64>,
    pub c0: Option<f64>,
}

impl FuzzConfig {
    pub fn new(inequality: InequalityId, weight: Weight, trials: u32, seed: u64) -> Self {
        FuzzConfig {
            inequality,
            weight,
            trials,
            seed,
            p: None,
            alpha: None,
            q: None,
            c0: None,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FuzzSummary {
    pub inequality: InequalityId,
    pub weight: Vec<f64>,
    pub trials: u32,
    pub seed: u64,
    pub violations: usize,
    pub equalities: usize,
    /// Smallest dimensionless margin seen across the trials.
    pub min_relative_margin: f64,
    pub reports: Vec<InequalityReport>,
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E3779B97F4A7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}

fn trial_rng(seed: u64, trial: u32) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(splitmix64(
        seed ^ (u64::from(trial)).wrapping_mul(0xD1B54A32D192ED03),
    ))
}

fn sample_mixture(rng: &mut ChaCha8Rng, w: &Weight) -> TestFunction {
    let k = rng.gen_range(1..=5usize);
    let terms = (0..k)
        .map(|_| MixtureTerm {
            coeff: rng.gen_range(0.2..2.0),
            center: (0..w.n()).map(|_| rng.gen_range(-2.0..2.0)).collect(),
            sigma: rng.gen_range(0.3..2.0),
        })
        .collect();
    TestFunction::mixture(w.clone(), terms).expect("sampled parameters are valid")
}

fn sample_bump(rng: &mut ChaCha8Rng, w: &Weight, max_radius: f64) -> TestFunction {
    let radius = rng.gen_range(0.5 * max_radius..max_radius);
    let order = rng.gen_range(2..=5u32);
    TestFunction::bump_with_order(w.clone(), radius, order).expect("sampled parameters are valid")
}

fn sample_function(rng: &mut ChaCha8Rng, w: &Weight) -> TestFunction {
    if rng.gen_bool(0.5) {
        sample_mixture(rng, w)
    } else {
        sample_bump(rng, w, 2.5)
    }
}

/// Run `trials` seeded checks of one inequality; deterministic given the
/// seed. Any `violated-beyond-error` verdict counts as a violation and is
/// surfaced in the summary together with the offending descriptor.
pub fn fuzz(cfg: &FuzzConfig, spec: &QuadratureSpec) -> Result<FuzzSummary, CheckError> {
    if cfg.trials == 0 {
        return Err(CheckError::Domain("trials must be >= 1".into()));
    }
    let w = &cfg.weight;
    let mut reports = Vec::with_capacity(cfg.trials as usize);
    for trial in 0..cfg.trials {
        let mut rng = trial_rng(cfg.seed, trial);
        let report = match cfg.inequality {
            InequalityId::Sobolev => {
                let p = cfg.p.unwrap_or(2.0);
                check_sobolev(&sample_function(&mut rng, w), p, spec)?
            }
            InequalityId::LogSob => check_logsob(&sample_function(&mut rng, w), spec)?,
            InequalityId::Nash => check_nash(&sample_function(&mut rng, w), spec)?,
            InequalityId::Shannon => {
                let alpha = cfg.alpha.unwrap_or(2.0);
                check_shannon(&sample_function(&mut rng, w), alpha, spec)?
            }
            InequalityId::L2Shannon => check_l2_shannon(&sample_function(&mut rng, w), spec)?,
            InequalityId::Heisenberg => check_heisenberg(&sample_function(&mut rng, w), spec)?,
            InequalityId::L1LogSob => check_l1_logsob(&sample_function(&mut rng, w), spec)?,
            InequalityId::LpLogSob => {
                let p = cfg.p.unwrap_or(2.5);
                check_lp_logsob(&sample_function(&mut rng, w), p, spec)?
            }
            InequalityId::WholeSpaceSobolev => {
                let p = cfg.p.unwrap_or(2.0);
                check_whole_space_sobolev(&sample_function(&mut rng, w), p, spec)?
            }
            InequalityId::Trace => {
                let p = cfg.p.unwrap_or(2.0);
                let f = HalfSpaceFunction::new(
                    sample_function(&mut rng, w),
                    YProfile::gaussian(rng.gen_range(0.3..2.0)),
                );
                check_trace(&f, p, spec)?
            }
            InequalityId::TraceLogSob => {
                let p = cfg.p.unwrap_or(2.0);
                let f = HalfSpaceFunction::new(
                    sample_function(&mut rng, w),
                    YProfile::gaussian(rng.gen_range(0.3..2.0)),
                );
                check_trace_logsob(&f, p, spec)?
            }
            InequalityId::RefinedSobolev => {
                let q = cfg.q.unwrap_or(4.0);
                let c0 = cfg.c0.unwrap_or(10.0);
                let u = sample_bump(&mut rng, w, 0.9);
                check_refined_sobolev(&u, q, c0, 1.0, spec)?
            }
            InequalityId::TmLogSob => {
                let q = cfg.q.unwrap_or(w.d() + 2.0);
                let c0 = cfg.c0.unwrap_or(10.0);
                let u = sample_bump(&mut rng, w, 0.9);
                check_tm_logsob(&u, q, c0, 1.0, spec)?
            }
        };
        reports.push(report);
    }
    let violations = reports
        .iter()
        .filter(|r| r.verdict == Verdict::ViolatedBeyondError)
        .count();
    let equalities = reports
        .iter()
        .filter(|r| r.verdict == Verdict::Equality)
        .count();
    let min_relative_margin = reports
        .iter()
        .map(|r| r.relative_margin)
        .fold(f64::INFINITY, f64::min);
    Ok(FuzzSummary {
        inequality: cfg.inequality,
        weight: w.exponents().to_vec(),
        trials: cfg.trials,
        seed: cfg.seed,
        violations,
        equalities,
        min_relative_margin,
        reports,
    })
}
