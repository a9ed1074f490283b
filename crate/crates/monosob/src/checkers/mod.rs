//! One operation per inequality: compute both sides, the deficit, and a
//! verdict; certify equality where an extremal family is known.
//!
//! Conventions shared by every checker:
//!
//! * inputs that miss a unit-mass precondition by more than `1e-12` are
//!   renormalized exactly (the masses obey closed scaling laws) and the
//!   factor is recorded in the report;
//! * `deficit = rhs - lhs` on the scale the inequality is stated on, plus a
//!   dimensionless margin `deficit / max(|lhs|, |rhs|)`;
//! * the verdict is `violated-beyond-error` only when the deficit is more
//!   negative than the accumulated numerical error bound plus a fixed
//!   slack; `equality` when the deficit is inside a `1e-6` relative band
//!   (looser than quadrature tolerance, to absorb error compounded across
//!   three or four functionals).

mod entropy;
mod refined;
mod sobolev;
mod tensor;
mod trace;

pub use entropy::{
    check_heisenberg, check_l1_logsob, check_l2_shannon, check_logsob, check_lp_logsob,
    check_nash, check_shannon,
};
pub use refined::{check_refined_sobolev, check_tm_logsob};
pub use sobolev::{check_sobolev, check_whole_space_sobolev};
pub use tensor::{tensor_consistency, TensorConsistencyReport};
pub use trace::{check_trace, check_trace_logsob};

use crate::constants::ConstantsError;
use crate::funcspace::FuncspaceError;
use crate::quad::{Estimate, QuadError};
use crate::special::Weight;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CheckError {
    #[error("parameter out of range: {0}")]
    Domain(String),
    #[error("function not admissible for this inequality: {0}")]
    NotAdmissible(String),
    #[error(transparent)]
    Constants(#[from] ConstantsError),
    #[error(transparent)]
    Quad(#[from] QuadError),
    #[error(transparent)]
    Function(#[from] FuncspaceError),
}

/// Stable identifiers, also the CLI spelling of `--ineq`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum InequalityId {
    #[serde(rename = "sobolev")]
    Sobolev,
    #[serde(rename = "logsob")]
    LogSob,
    #[serde(rename = "nash")]
    Nash,
    #[serde(rename = "shannon")]
    Shannon,
    #[serde(rename = "l2-shannon")]
    L2Shannon,
    #[serde(rename = "heisenberg")]
    Heisenberg,
    #[serde(rename = "l1-logsob")]
    L1LogSob,
    #[serde(rename = "lp-logsob")]
    LpLogSob,
    #[serde(rename = "whole-space")]
    WholeSpaceSobolev,
    #[serde(rename = "trace")]
    Trace,
    #[serde(rename = "trace-logsob")]
    TraceLogSob,
    #[serde(rename = "refined")]
    RefinedSobolev,
    #[serde(rename = "tm-logsob")]
    TmLogSob,
}

impl InequalityId {
    pub const ALL: [InequalityId; 13] = [
        InequalityId::Sobolev,
        InequalityId::LogSob,
        InequalityId::Nash,
        InequalityId::Shannon,
        InequalityId::L2Shannon,
        InequalityId::Heisenberg,
        InequalityId::L1LogSob,
        InequalityId::LpLogSob,
        InequalityId::WholeSpaceSobolev,
        InequalityId::Trace,
        InequalityId::TraceLogSob,
        InequalityId::RefinedSobolev,
        InequalityId::TmLogSob,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            InequalityId::Sobolev => "sobolev",
            InequalityId::LogSob => "logsob",
            InequalityId::Nash => "nash",
            InequalityId::Shannon => "shannon",
            InequalityId::L2Shannon => "l2-shannon",
            InequalityId::Heisenberg => "heisenberg",
            InequalityId::L1LogSob => "l1-logsob",
            InequalityId::LpLogSob => "lp-logsob",
            InequalityId::WholeSpaceSobolev => "whole-space",
            InequalityId::Trace => "trace",
            InequalityId::TraceLogSob => "trace-logsob",
            InequalityId::RefinedSobolev => "refined",
            InequalityId::TmLogSob => "tm-logsob",
        }
    }
}

impl std::fmt::Display for InequalityId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for InequalityId {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        InequalityId::ALL
            .iter()
            .find(|id| id.name() == s)
            .copied()
            .ok_or_else(|| {
                let names: Vec<&str> = InequalityId::ALL.iter().map(|i| i.name()).collect();
                format!(
                    "unknown inequality '{s}'; expected one of {}",
                    names.join(", ")
                )
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "holds")]
    Holds,
    #[serde(rename = "equality")]
    Equality,
    #[serde(rename = "violated-beyond-error")]
    ViolatedBeyondError,
}

/// Parameters the inequality was instantiated with.
#[derive(Debug, Clone, Copy, Default, Serialize, Deserialize)]
pub struct ReportParams {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c0: Option<f64>,
}

impl ReportParams {
    pub fn with_p(p: f64) -> Self {
        ReportParams {
            p: Some(p),
            ..Default::default()
        }
    }
    pub fn with_alpha(alpha: f64) -> Self {
        ReportParams {
            alpha: Some(alpha),
            ..Default::default()
        }
    }
}

/// The outcome of one inequality check.
#[derive(Debug, Clone, Serialize)]
pub struct InequalityReport {
    pub inequality: InequalityId,
    pub weight: Vec<f64>,
    pub function: serde_json::Value,
    pub params: ReportParams,
    pub lhs: f64,
    pub rhs: f64,
    /// `rhs - lhs`; nonnegative (within error) when the theorem holds.
    pub deficit: f64,
    /// `deficit / max(|lhs|, |rhs|)`.
    pub relative_margin: f64,
    pub error_bound: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub normalization: Option<f64>,
    pub verdict: Verdict,
}

pub(crate) const DEFICIT_SLACK: f64 = 1e-9;
pub(crate) const EQUALITY_REL_TOL: f64 = 1e-6;
pub(crate) const EQUALITY_ABS_TOL: f64 = 1e-8;
pub(crate) const UNIT_MASS_TOL: f64 = 1e-12;

pub(crate) fn build_report(
    inequality: InequalityId,
    weight: &Weight,
    function: serde_json::Value,
    params: ReportParams,
    lhs: Estimate,
    rhs: Estimate,
    normalization: Option<f64>,
) -> InequalityReport {
    let deficit = rhs.value - lhs.value;
    let error_bound = lhs.error + rhs.error;
    let scale = lhs.value.abs().max(rhs.value.abs()).max(f64::MIN_POSITIVE);
    let verdict = if deficit < -(error_bound + DEFICIT_SLACK) {
        Verdict::ViolatedBeyondError
    } else if deficit.abs() <= (EQUALITY_REL_TOL * scale).max(EQUALITY_ABS_TOL) {
        Verdict::Equality
    } else {
        Verdict::Holds
    };
    InequalityReport {
        inequality,
        weight: weight.exponents().to_vec(),
        function,
        params,
        lhs: lhs.value,
        rhs: rhs.value,
        deficit,
        relative_margin: deficit / scale,
        error_bound,
        normalization,
        verdict,
    }
}

/// Normalized quantities under the exact scaling laws `X(cf) = c^s X(f)`
/// and `Ent_s(cf) = c^s Ent_s(f) + c^s ln(c^s) M_s(f)`, with `c = M_s^{-1/s}`.
pub(crate) struct Normalizer {
    mass: Estimate,
    /// Recorded factor `c`, when renormalization was actually applied.
    pub factor: Option<f64>,
}

impl Normalizer {
    pub fn new(mass: Estimate, s: f64) -> Result<Self, CheckError> {
        if !(mass.value > 0.0) || !mass.value.is_finite() {
            return Err(CheckError::NotAdmissible(format!(
                "mass ∫|f|^{s} = {} is not positive and finite",
                mass.value
            )));
        }
        let factor = if (mass.value - 1.0).abs() <= UNIT_MASS_TOL {
            None
        } else {
            Some(mass.value.powf(-1.0 / s))
        };
        Ok(Normalizer { mass, factor })
    }

    /// `X(cf) = X/M` for any functional with the same homogeneity as the mass.
    pub fn scale(&self, x: Estimate) -> Estimate {
        x.div(self.mass)
    }

    /// `Ent_s(cf) = (Ent_s - ln(M) M)/M`.
    pub fn entropy(&self, ent: Estimate) -> Estimate {
        ent.sub(self.mass.ln().mul(self.mass)).div(self.mass)
    }
}
