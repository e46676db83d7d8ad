//! su_q(2) recoupling at exact rational q: q-numbers, the F and Phi series,
//! omega closure coefficients, q-6-j symbols, and the q-triangle sum rule.

mod context;
mod omega;
mod qsixj;
mod sumrule;

pub use context::QContext;
pub use omega::{omega_closed, omega_rec};
pub use qsixj::q_sixj;
pub use sumrule::check_q_sum_rule;
