use crate::exact::{int_part_of_twice, is_triangle, parity_sign, Algebra, Spin};
use crate::{Error, Result};

/// Which parity branch the identification takes for a coupled triad pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DegreeBranch {
    /// Perimeters of different parity: a single `d0` factors both sides and
    /// cancels.
    MixedParity,
    /// Both perimeters integral.
    BothIntegral,
    /// Both perimeters half-integral.
    BothHalfIntegral,
}

/// Degree bookkeeping for one side of the identification at fixed spins.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Degrees {
    pub branch: DegreeBranch,
    /// Branch-adjusted degree of the left-hand product.
    pub omega: i64,
    /// Branch-adjusted degree of the `f`-term, when `f` was supplied.
    pub omega_f: Option<i64>,
}

fn sup3(a: Spin, b: Spin, c: Spin) -> i64 {
    a.max(b).max(c).twice_i()
}

/// Degree bookkeeping for the coupled pair `(a,b,c),(c,d,e)` and optionally
/// one right-hand term at `f`. The branch-adjusted degrees follow the
/// parity-split formulas: in the mixed branch
/// `omega = [a+b+d+e] + 2c - 2 sup(a,b,c) - 2 sup(c,d,e)`, and in the
/// same-parity branches the correction `- tau_c (1 - tau_(a+b+d+e))` (and its
/// `f` analog) applies.
pub fn degrees(a: Spin, b: Spin, c: Spin, d: Spin, e: Spin, f: Option<Spin>) -> Result<Degrees> {
    if !is_triangle(a, b, c, Algebra::Osp) {
        return Err(Error::TriangleViolation(a, b, c));
    }
    if !is_triangle(c, d, e, Algebra::Osp) {
        return Err(Error::TriangleViolation(c, d, e));
    }
    let tau_abc = (a.twice_i() + b.twice_i() + c.twice_i()).rem_euclid(2);
    let tau_cde = (c.twice_i() + d.twice_i() + e.twice_i()).rem_euclid(2);
    let branch = match (tau_abc, tau_cde) {
        (0, 0) => DegreeBranch::BothIntegral,
        (1, 1) => DegreeBranch::BothHalfIntegral,
        _ => DegreeBranch::MixedParity,
    };

    let t_abde = a.twice_i() + b.twice_i() + d.twice_i() + e.twice_i();
    let ip_abde = int_part_of_twice(t_abde);
    let tau_abde = t_abde.rem_euclid(2);

    let correction = |tau_x: i64| match branch {
        DegreeBranch::MixedParity => 0,
        _ => tau_x * (1 - tau_abde),
    };

    let omega = ip_abde + c.twice_i() - sup3(a, b, c) - sup3(c, d, e)
        - correction(c.twice_i().rem_euclid(2));
    let omega_f = f.map(|f| {
        ip_abde + f.twice_i() - sup3(b, d, f) - sup3(a, f, e)
            - correction(f.twice_i().rem_euclid(2))
    });
    Ok(Degrees {
        branch,
        omega,
        omega_f,
    })
}

/// The general identification phase
/// `(-1)^([a+b+d+e] + tau_c (1 - tau_(a+b+d+e)))`.
pub fn phase_phi(a: Spin, b: Spin, d: Spin, e: Spin, c: Spin) -> i64 {
    let t_abde = a.twice_i() + b.twice_i() + d.twice_i() + e.twice_i();
    let exponent = int_part_of_twice(t_abde)
        + (c.twice_i().rem_euclid(2)) * (1 - t_abde.rem_euclid(2));
    parity_sign(exponent)
}
