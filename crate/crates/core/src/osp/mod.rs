//! The osp(1|2) core: alpha/gamma coefficients, the homogeneous bivariate
//! polynomial engines and their expansion-coefficient recursions, the
//! unified closure relation, zero-tensor theorems, and conjecture scans.

mod closure;
pub(crate) mod engine;
mod gamma;
mod poly;
pub(crate) mod qpoly;
pub mod reference;
mod scans;
mod triangle;
pub(crate) mod xcoeff;

pub use closure::{closure_unified, ClosureCoefficient};
pub use engine::{poly_p, poly_p_ordered};
pub use gamma::{alpha_norm, gamma_chain_direct, gamma_osp};
pub use poly::BiHomPoly;
pub use qpoly::poly_q;
pub use scans::{
    conjecture1_scan, conjecture2_scan, theorem_zero_checks, Counterexample, ScanReport,
    TheoremFamily,
};
pub use triangle::{supertriangle_bracketed, supertriangle_strict, SuperTriangle};
pub use xcoeff::{x0_closed, x_coeff};
