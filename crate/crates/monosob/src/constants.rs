//! Sharp and derived constants of the weighted inequalities, as pure
//! functions of the weight and the exponents.
//!
//! All Gamma-ratio expressions are evaluated in log space: `Γ(lD)` already
//! overflows double precision near `lD ≈ 170`, while the tensorization
//! limit needs `lD ~ 10^6`.

use crate::special::{ball_geometry, lgamma, log_pi_a, pi_a, Weight};
use serde::Serialize;
use std::f64::consts::E;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConstantsError {
    #[error("exponent p={p} out of range: require {require}")]
    ExponentOutOfRange { p: f64, require: &'static str },
    #[error("alpha={0} out of range: require alpha > 0")]
    AlphaOutOfRange(f64),
    #[error("effective dimension D={0} too small: require {1}")]
    DimensionTooSmall(f64, &'static str),
    #[error("parameter {name}={value} out of range: require {require}")]
    ParameterOutOfRange {
        name: &'static str,
        value: f64,
        require: &'static str,
    },
}

/// Critical Sobolev exponent `p_* = Dp/(D-p)` for `1 <= p < D`.
pub fn p_star(w: &Weight, p: f64) -> Result<f64, ConstantsError> {
    let d = w.d();
    if !(1.0 <= p && p < d) {
        return Err(ConstantsError::ExponentOutOfRange {
            p,
            require: "1 <= p < D",
        });
    }
    Ok(d * p / (d - p))
}

/// Sharp constant of the `L^1` (isoperimetric) Sobolev inequality,
/// `C_1 = D^{-1} [2^k Γ(1+D/2) / ∏ Γ((A_i+1)/2)]^{1/D}`.
///
/// Its inverse is the sharp isoperimetric ratio:
/// `C_1^{-1} = P(B_1^A) / m(B_1^A)^{(D-1)/D}`.
pub fn sobolev_c1(w: &Weight) -> f64 {
    let d = w.d();
    // 2^k / ∏Γ((A_i+1)/2) = Π(A)^{-D/2}
    let log_bracket = lgamma(1.0 + 0.5 * d) - 0.5 * d * log_pi_a(w);
    (log_bracket / d - d.ln()).exp()
}

/// Sharp constant `C_{p,n,A}` of the weighted Sobolev inequality, `1 < p < D`.
pub fn sobolev_cp(w: &Weight, p: f64) -> Result<f64, ConstantsError> {
    let d = w.d();
    if !(1.0 < p && p < d) {
        return Err(ConstantsError::ExponentOutOfRange {
            p,
            require: "1 < p < D",
        });
    }
    let pp = p / (p - 1.0);
    let log_cp = sobolev_c1(w).ln()
        + (1.0 - 1.0 / p - 1.0 / d) * d.ln()
        + (1.0 / pp) * ((p - 1.0) / (d - p)).ln()
        + (pp.ln() + lgamma(d) - lgamma(d / p) - lgamma(d / pp)) / d;
    Ok(log_cp.exp())
}

/// `C_{p,n,A}` for the full range `1 <= p < D` (the `p = 1` endpoint is
/// [`sobolev_c1`], which is also the continuous limit of [`sobolev_cp`]).
pub fn sobolev_constant(w: &Weight, p: f64) -> Result<f64, ConstantsError> {
    if p == 1.0 {
        if w.d() <= 1.0 && w.d() <= p {
            return Err(ConstantsError::ExponentOutOfRange {
                p,
                require: "1 <= p < D",
            });
        }
        Ok(sobolev_c1(w))
    } else {
        sobolev_cp(w, p)
    }
}

/// The Shannon constant
/// `C_A(α) = [Γ(D/α+1)/Γ(D/2+1) · Π(A)^{D/2}]^{α/D}`; `C_A(2) = Π(A)`.
pub fn shannon_c_a(w: &Weight, alpha: f64) -> Result<f64, ConstantsError> {
    if !(alpha > 0.0) {
        return Err(ConstantsError::AlphaOutOfRange(alpha));
    }
    let d = w.d();
    let log_inner = lgamma(d / alpha + 1.0) - lgamma(0.5 * d + 1.0) + 0.5 * d * log_pi_a(w);
    Ok((alpha / d * log_inner).exp())
}

/// Sharp Trudinger–Moser growth constant `α_D(A) = D · P(B_1^A)^{1/(D-1)}`.
pub fn tm_alpha_d(w: &Weight) -> Result<f64, ConstantsError> {
    let d = w.d();
    if d <= 1.0 {
        return Err(ConstantsError::DimensionTooSmall(d, "D > 1"));
    }
    let log_p = d.ln() + 0.5 * d * log_pi_a(w) - lgamma(0.5 * d + 1.0);
    Ok((d.ln() + log_p / (d - 1.0)).exp())
}

/// Whole-space Sobolev constant: `2^{1/D} C_{p,n,A}` for `1 <= p < D/2`,
/// `C_{p,n,A}` for `D/2 <= p < D`.
///
/// The second branch is implemented exactly as published. Note that the
/// elementary superadditivity bound `Σ a_i^q <= (Σ a_i)^q` for `q >= 1`
/// would give the factor-free constant in *both* branches; we keep the
/// printed form, which is the more conservative of the two.
pub fn whole_space_k(w: &Weight, p: f64) -> Result<f64, ConstantsError> {
    let d = w.d();
    if !(1.0 <= p && p < d) {
        return Err(ConstantsError::ExponentOutOfRange {
            p,
            require: "1 <= p < D",
        });
    }
    let c = sobolev_constant(w, p)?;
    if p < d / 2.0 {
        Ok(2f64.powf(1.0 / d) * c)
    } else {
        Ok(c)
    }
}

/// Exponent and constant of the weighted Sobolev trace inequality.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TraceConstants {
    /// `q = Dp/(D+1-p)`, the optimal trace exponent.
    pub q: f64,
    /// `q^{1/q} · C_{p,n+1,A'}^{(D+1-p)(p-1)/(Dp)}` with `A' = (A, 0)`.
    pub constant: f64,
}

pub fn trace_constants(w: &Weight, p: f64) -> Result<TraceConstants, ConstantsError> {
    let d = w.d();
    if !(1.0 <= p && p < d + 1.0) {
        return Err(ConstantsError::ExponentOutOfRange {
            p,
            require: "1 <= p < D+1",
        });
    }
    let q = d * p / (d + 1.0 - p);
    // At p = 1 the exponent on C vanishes and the constant is q^{1/q} = 1.
    let constant = if p == 1.0 {
        q.powf(1.0 / q)
    } else {
        let c = sobolev_cp(&w.extend_zero(), p)?;
        let exponent = (d + 1.0 - p) * (p - 1.0) / (d * p);
        q.powf(1.0 / q) * c.powf(exponent)
    };
    Ok(TraceConstants { q, constant })
}

/// The refined embedding prefactor
/// `C(q) = Γ((D-1)q/D + 1)^{1/q} · C_0^{1/q} · m(Ω)^{1/q} · α_D(A)^{-(D-1)/D} · q^{-(D-1)/D}`,
/// so that `C(q) · q^{(D-1)/D}` multiplies the gradient norm.
pub fn refined_c_q(w: &Weight, q: f64, c0: f64, m_omega: f64) -> Result<f64, ConstantsError> {
    if !(q >= 2.0) {
        return Err(ConstantsError::ParameterOutOfRange {
            name: "q",
            value: q,
            require: "q >= 2",
        });
    }
    if !(c0 > 0.0) {
        return Err(ConstantsError::ParameterOutOfRange {
            name: "C0",
            value: c0,
            require: "C0 > 0",
        });
    }
    if !(m_omega > 0.0) {
        return Err(ConstantsError::ParameterOutOfRange {
            name: "m_omega",
            value: m_omega,
            require: "m(Ω) > 0",
        });
    }
    let d = w.d();
    let alpha_d = tm_alpha_d(w)?;
    let theta = (d - 1.0) / d;
    let log_cq =
        (lgamma(theta * q + 1.0) + c0.ln() + m_omega.ln()) / q - theta * (alpha_d.ln() + q.ln());
    Ok(log_cq.exp())
}

/// `lim_{q→∞} C(q) = [(D-1)/(D α_D(A) e)]^{(D-1)/D}`, independent of `C_0`
/// and `m(Ω)`.
pub fn refined_c_q_limit(w: &Weight) -> Result<f64, ConstantsError> {
    let d = w.d();
    let alpha_d = tm_alpha_d(w)?;
    let theta = (d - 1.0) / d;
    Ok(((d - 1.0) / (d * alpha_d * E)).powf(theta))
}

/// The tensorized Sobolev term
/// `l C²_{2,ln,B} = (DΠ(A))^{-1} (lD-2)^{-1} [Γ(lD)/Γ(lD/2)]^{2/(lD)}`
/// for `B = (A, ..., A)` (`l` copies); requires `lD > 2`.
pub fn asymptotic_term(w: &Weight, l: u64) -> Result<f64, ConstantsError> {
    let d = w.d();
    let ld = l as f64 * d;
    if !(ld > 2.0) {
        return Err(ConstantsError::DimensionTooSmall(ld, "lD > 2"));
    }
    let log_term =
        -d.ln() - log_pi_a(w) - (ld - 2.0).ln() + (2.0 / ld) * (lgamma(ld) - lgamma(0.5 * ld));
    Ok(log_term.exp())
}

/// The limit of [`asymptotic_term`] as `l → ∞`: `2/(Π(A) e D)`, the constant
/// inside the logarithmic Sobolev inequality.
pub fn asymptotic_limit(w: &Weight) -> f64 {
    2.0 / (pi_a(w) * E * w.d())
}

// ---------------------------------------------------------------------------
// Constants table
// ---------------------------------------------------------------------------

/// Optional inputs for [`constants_table`].
#[derive(Debug, Clone, Default)]
pub struct TableRequest {
    pub p: Option<f64>,
    pub alpha: Option<f64>,
    pub q: Option<f64>,
    /// Trudinger–Moser constant `C_0`; defaults to 1 when unset.
    pub c0: Option<f64>,
    /// Domain measure for `C(q)`; defaults to `m(B_1^A)` when unset.
    pub m_omega: Option<f64>,
}

/// All applicable constants of one weight, for display and reports.
#[derive(Debug, Clone, Serialize)]
pub struct ConstantsTable {
    pub weight: Weight,
    pub d: f64,
    pub k: usize,
    pub pi_a: f64,
    pub ball_measure: f64,
    pub ball_perimeter: f64,
    pub c1: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha_d: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cp: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p_star: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub whole_space_k: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace_q: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace_constant: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c_a_alpha: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c0: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c_q: Option<f64>,
}

pub fn constants_table(w: &Weight, req: &TableRequest) -> Result<ConstantsTable, ConstantsError> {
    let geom = ball_geometry(w);
    let mut table = ConstantsTable {
        weight: w.clone(),
        d: w.d(),
        k: w.k(),
        pi_a: geom.pi_a,
        ball_measure: geom.measure,
        ball_perimeter: geom.perimeter,
        c1: sobolev_c1(w),
        alpha_d: tm_alpha_d(w).ok(),
        p: None,
        cp: None,
        p_star: None,
        whole_space_k: None,
        trace_q: None,
        trace_constant: None,
        alpha: None,
        c_a_alpha: None,
        q: None,
        c0: None,
        c_q: None,
    };
    if let Some(p) = req.p {
        table.p = Some(p);
        table.cp = Some(sobolev_constant(w, p)?);
        table.p_star = Some(p_star(w, p)?);
        table.whole_space_k = Some(whole_space_k(w, p)?);
        let tc = trace_constants(w, p)?;
        table.trace_q = Some(tc.q);
        table.trace_constant = Some(tc.constant);
    }
    if let Some(alpha) = req.alpha {
        table.alpha = Some(alpha);
        table.c_a_alpha = Some(shannon_c_a(w, alpha)?);
    }
    if let Some(q) = req.q {
        let c0 = req.c0.unwrap_or(1.0);
        let m_omega = req.m_omega.unwrap_or(geom.measure);
        table.q = Some(q);
        table.c0 = Some(c0);
        table.c_q = Some(refined_c_q(w, q, c0, m_omega)?);
    }
    Ok(table)
}

impl ConstantsTable {
    /// Ordered `(name, value)` rows for human-readable printing.
    pub fn rows(&self) -> Vec<(String, f64)> {
        let mut rows = vec![
            ("D".to_string(), self.d),
            ("k".to_string(), self.k as f64),
            ("Pi(A)".to_string(), self.pi_a),
            ("m(B1^A)".to_string(), self.ball_measure),
            ("P(B1^A)".to_string(), self.ball_perimeter),
            ("C_1".to_string(), self.c1),
        ];
        if let Some(v) = self.alpha_d {
            rows.push(("alpha_D".to_string(), v));
        }
        if let (Some(p), Some(cp), Some(ps), Some(k)) =
            (self.p, self.cp, self.p_star, self.whole_space_k)
        {
            rows.push((format!("C_p (p={p})"), cp));
            rows.push(("p_star".to_string(), ps));
            rows.push(("K_whole_space".to_string(), k));
        }
        if let (Some(q), Some(c)) = (self.trace_q, self.trace_constant) {
            rows.push(("trace_q".to_string(), q));
            rows.push(("trace_const".to_string(), c));
        }
        if let (Some(alpha), Some(v)) = (self.alpha, self.c_a_alpha) {
            rows.push((format!("C_A(alpha={alpha})"), v));
        }
        if let (Some(q), Some(v)) = (self.q, self.c_q) {
            rows.push((format!("C(q={q})"), v));
        }
        rows
    }
}
