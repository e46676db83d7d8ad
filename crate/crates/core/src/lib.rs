//! Exact-arithmetic toolkit for angular-momentum recoupling.
//!
//! The crate verifies triangle sum rules for su(2) and su_q(2) with exact
//! big-rational arithmetic, and mechanizes the osp(1|2) closure-relation
//! machinery: tau-parities, alpha/gamma coefficients, the homogeneous
//! bivariate polynomial engines with their expansion-coefficient recursions,
//! zero-tensor theorems, integrality/functional-relation conjecture scans,
//! and the super-triangle sum-rule identification apparatus with pluggable
//! 6-j^S value providers.
//!
//! All kernel values are exact: rationals, quadratic surds, or homogeneous
//! polynomials over the two closure variables u = c0 + d0^2 and v = d0^2.
//! Configurable-precision decimal arithmetic is used only where sums of
//! unlike surds make exact addition impossible (provider-dependent residual
//! evaluation).

pub mod exact;
pub mod lab;
pub mod osp;
pub mod redmat;
pub mod su2;
pub mod suq2;

#[cfg(any(test, feature = "test-oracles"))]
pub mod oracle;

mod error;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
