//! The super-triangle sum-rule laboratory: R/Z polynomials and gamma-chain
//! products, degree bookkeeping, pluggable 6-j^S providers, the preliminary
//! sum-rule residual evaluator, the identification-system emitter, the
//! pseudo-orthogonality checker, and the fixed-sublevel relation checker.

mod degrees;
mod experimental;
mod provider;
mod residual;
mod rpoly;
mod stretched;
mod system;
mod zeng;

pub use degrees::{degrees, phase_phi, DegreeBranch, Degrees};
pub use experimental::ExperimentalProvider;
pub use provider::{
    write_table, FileProvider, ProvidedValue, Provenance, SixJKey, SixJSuperProvider,
    TableProvider,
};
pub use residual::{
    contraction_invariance_check, orthogonality_check, residual_delta_sum_rule, InvarianceRow,
    OrthoRow, OrthoStatus, OrthogonalityReport, ResidualVector,
};
pub use rpoly::{gamma_product, poly_r, GammaProduct, RPoly, ZPoly};
pub use stretched::{stretched_value, StretchedProvider};
pub use system::{emit_identification_system, IdentificationSystem, SystemRow};
pub use zeng::{scalar_factor_modulus, zeng_relation_check, SublevelChoice, ZengReport, ZengRow};

pub use crate::osp::{supertriangle_bracketed, supertriangle_strict};

use crate::exact::{ExactValue, Spin};
use crate::Result;

/// Strict supertriangle pair `(nabla^S, delta^S)`.
///
/// Exact evaluation is restricted to triads whose three defect arguments are
/// integral; triads with half-integral defects raise
/// [`crate::Error::HalfIntegralDefect`]. The bracketed extension used by the
/// closure machinery is exposed as [`supertriangle_bracketed`].
pub fn supertriangles(a: Spin, b: Spin, c: Spin) -> Result<(ExactValue, ExactValue)> {
    let st = supertriangle_strict(a, b, c)?;
    Ok((st.nabla, st.delta))
}
