//! Scalar abstraction shared by every numerical routine in the crate.

use std::fmt::{Debug, Display, LowerExp};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating-point scalar the library is generic over.
///
/// Besides the usual `num-traits` surface, implementors provide the two
/// transcendental kernels that have no portable `Float` method: `ln Γ(x)` and
/// `erfc(x)`. Both `f32` and `f64` route them through `libm`.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + Debug
    + Display
    + LowerExp
    + Default
    + Send
    + Sync
    + 'static
{
    /// Natural log of the gamma function for positive finite arguments.
    fn ln_gamma_kernel(self) -> Self;

    /// Complementary error function.
    fn erfc_kernel(self) -> Self;

    /// Converts an `f64` literal. Exact for `f64`, correctly rounded for `f32`.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    /// Lossy conversion to `f64`, used for error payloads and reporting.
    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f64 {
    #[inline]
    fn ln_gamma_kernel(self) -> Self {
        libm::lgamma(self)
    }

    #[inline]
    fn erfc_kernel(self) -> Self {
        libm::erfc(self)
    }
}

impl Real for f32 {
    #[inline]
    fn ln_gamma_kernel(self) -> Self {
        libm::lgammaf(self)
    }

    #[inline]
    fn erfc_kernel(self) -> Self {
        libm::erfcf(self)
    }
}
