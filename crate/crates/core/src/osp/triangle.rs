use num_rational::BigRational;

use crate::exact::{factorial, is_triangle, Algebra, ExactValue, Spin};
use crate::{Error, Result};

/// A supertriangle coefficient pair: `nabla` and its exact inverse `delta`.
#[derive(Clone, Debug)]
pub struct SuperTriangle {
    pub nabla: ExactValue,
    pub delta: ExactValue,
}

fn assemble(num_args: [i64; 1], den_args: [i64; 3]) -> SuperTriangle {
    let num = factorial(num_args[0]);
    let den = factorial(den_args[0]) * factorial(den_args[1]) * factorial(den_args[2]);
    let nabla_sq = BigRational::new(num, den);
    SuperTriangle {
        nabla: ExactValue::sqrt_rational(nabla_sq.clone()),
        delta: ExactValue::sqrt_rational(nabla_sq.recip()),
    }
}

/// Supertriangle coefficients
/// `nabla^S(a b c) = sqrt([a+b+c+1/2]! / ((a+b-c)!(a-b+c)!(-a+b+c)!))`
/// with the integral-part bracket on the perimeter term only.
///
/// Exact evaluation is deliberately restricted to triads whose three defect
/// arguments are integral (equivalently, integral perimeter): for
/// half-integral defects the factorials above have no stated exact meaning,
/// and [`Error::HalfIntegralDefect`] is raised. See
/// [`supertriangle_bracketed`] for the total extension used by the closure
/// machinery.
pub fn supertriangle_strict(a: Spin, b: Spin, c: Spin) -> Result<SuperTriangle> {
    if !is_triangle(a, b, c, Algebra::Osp) {
        return Err(Error::TriangleViolation(a, b, c));
    }
    let (ta, tb, tc) = (a.twice_i(), b.twice_i(), c.twice_i());
    if (ta + tb + tc) % 2 != 0 {
        return Err(Error::HalfIntegralDefect(a, b, c));
    }
    let perim_plus = crate::exact::int_part_of_twice(ta + tb + tc + 1);
    Ok(assemble(
        [perim_plus],
        [(ta + tb - tc) / 2, (ta - tb + tc) / 2, (-ta + tb + tc) / 2],
    ))
}

/// Supertriangle coefficients with the integral-part bracket applied to all
/// four factorial arguments.
///
/// On integral-defect triads this agrees with [`supertriangle_strict`]. On
/// half-integral-defect triads it is the unique extension under which the
/// closure relations reproduce the defining tensor products (for instance the
/// fundamental rank-1/2 self-coupling) and the published closed-form closure
/// coefficients at half-integral pseudo-degree.
pub fn supertriangle_bracketed(a: Spin, b: Spin, c: Spin) -> Result<SuperTriangle> {
    if !is_triangle(a, b, c, Algebra::Osp) {
        return Err(Error::TriangleViolation(a, b, c));
    }
    let (ta, tb, tc) = (a.twice_i(), b.twice_i(), c.twice_i());
    let ip = crate::exact::int_part_of_twice;
    Ok(assemble(
        [ip(ta + tb + tc + 1)],
        [ip(ta + tb - tc), ip(ta - tb + tc), ip(-ta + tb + tc)],
    ))
}
