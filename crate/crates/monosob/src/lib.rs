//! # monosob
//!
//! A desk-scale numerical toolkit for functional inequalities with monomial
//! weights `x^A = |x_1|^{A_1} ... |x_n|^{A_n}` on the region `R^n_A` where
//! coordinates with positive exponent are positive.
//!
//! The crate computes the sharp constants of the weighted Sobolev,
//! logarithmic Sobolev, Nash, Shannon, Heisenberg, trace, and
//! Trudinger–Moser-derived inequalities in closed form (everything funnels
//! through the Gamma function), evaluates the weighted functionals of
//! analytic test-function families by adaptive quadrature, and verifies each
//! inequality numerically: left side, right side, deficit, and a verdict.
//!
//! The central quantity is the *effective dimension* `D = n + A_1 + ... + A_n`,
//! which plays the role of the dimension in every exponent and constant.
//!
//! ## Layout
//!
//! | module | contents |
//! |--------|----------|
//! | [`special`] | weights, log-Gamma, Stirling, Π(A), weighted ball geometry |
//! | [`constants`] | all sharp and derived constants as pure functions |
//! | [`funcspace`] | analytic test-function families and closed-form integrals |
//! | [`quad`] | weighted adaptive quadrature and the functional bundle evaluator |
//! | [`checkers`] | one operation per inequality: lhs, rhs, deficit, verdict |
//! | [`explorer`] | limit studies, deficit sweeps, randomized violation hunting |
//! | [`report`] | JSON Lines / CSV serialization of reports and sweeps |
//! | [`cli`] | the `monosob` command-line front end |
//!
//! ## Quick start
//!
//! ```
//! use monosob::special::Weight;
//! use monosob::funcspace::TestFunction;
//! use monosob::quad::QuadratureSpec;
//! use monosob::checkers::{check_logsob, Verdict};
//!
//! // Weight x*y on the positive quadrant: D = 4, Π(A) = 1/2.
//! let w = Weight::new(vec![1.0, 1.0]).unwrap();
//! let f = TestFunction::normalized_gaussian(w, 1.0).unwrap();
//! let report = check_logsob(&f, &QuadratureSpec::default()).unwrap();
//! assert_eq!(report.verdict, Verdict::Equality);
//! ```
//!
//! Runnable demonstrations of every capability live in `examples/`; the
//! binary exposes the same operations as subcommands (`constants`, `check`,
//! `sweep`, `asymptotics`, `fuzz`, `identities`).

pub mod checkers;
pub mod cli;
pub mod constants;
pub mod explorer;
pub mod funcspace;
pub mod quad;
pub mod report;
pub mod special;

pub use checkers::{InequalityId, InequalityReport, Verdict};
pub use funcspace::TestFunction;
pub use quad::QuadratureSpec;
pub use special::Weight;
