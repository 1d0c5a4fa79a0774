//! Scalar abstraction shared by every numeric module.
//!
//! All norms, multipliers and solvers are written against [`Real`], so the
//! same code runs in `f32` and `f64`. Tolerance defaults scale with the
//! precision of the type.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating point scalar: `f32` or `f64`.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Sum + Debug + Display + Default + Send + Sync + 'static
{
    /// Default relative tolerance for bisection-type solvers.
    fn default_rel_tol() -> Self;

    /// Tolerance used when a computed quantity is compared against an exact identity.
    fn identity_tol() -> Self;
}

impl Real for f64 {
    fn default_rel_tol() -> Self {
        1e-12
    }

    fn identity_tol() -> Self {
        1e-9
    }
}

impl Real for f32 {
    fn default_rel_tol() -> Self {
        1e-5
    }

    fn identity_tol() -> Self {
        1e-3
    }
}

/// Lossy constant conversion; every literal used by the crate fits both types.
#[inline]
pub fn lit<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("literal representable in scalar type")
}

#[inline]
pub fn from_i64<T: Real>(k: i64) -> T {
    T::from_i64(k).expect("integer representable in scalar type")
}

/// `2^{ceil(alpha)}`, the bound constant for fractional differences.
pub fn two_pow_ceil<T: Real>(alpha: T) -> T {
    lit::<T>(2.0).powf(alpha.ceil())
}

/// True when `alpha` is a nonnegative integer (exactly).
pub fn as_integer_order<T: Real>(alpha: T) -> Option<u32> {
    if alpha >= T::zero() && alpha.fract() == T::zero() {
        alpha.to_u32()
    } else {
        None
    }
}
