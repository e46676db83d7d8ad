//! su(2) recoupling: triangle coefficients, Clebsch-Gordan coefficients,
//! 6-j symbols, closure coefficients, and the triangle sum rule.

mod cache;
mod cg;
mod closure;
mod sixj;
mod sumrule;
mod triangle;

pub use cache::{load_sixj_cache, save_sixj_cache, sixj_cache_len};
pub use cg::cg;
pub use closure::{beta_coeff, closure_coeff_su2, gamma_su2};
pub use sixj::{racah_sum, sixj};
pub(crate) use sixj::triads as sixj_triads;
pub use sumrule::check_sum_rule_su2;
pub use triangle::{delta, nabla, tri_delta_sq};
