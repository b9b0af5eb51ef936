//! Average bit error rate of square M-QAM over Nakagami-m fading channels.
//!
//! The numerical core is generic over [`Real`] (implemented for `f32` and
//! `f64`); the `*F64` / `*F32` aliases below name the common instantiations.

pub mod aber;
pub mod channel;
pub mod error;
pub mod quad;
pub mod real;
pub mod specfun;

pub use aber::{
    aber_closed, aber_expq_closed, aber_lu_closed, aber_oracle, discrepancy, AberEstimate, AberMethod, BerKind,
    TruncationMode, TruncationPolicy,
};
pub use channel::{ChannelParams, ExpTerm, Modulation, QApproxTag, QApproxVariant};
pub use error::{Error, Result};
pub use quad::{InfiniteMap, QuadratureResult, QuadratureSpec};
pub use real::Real;

pub type ChannelF64 = ChannelParams<f64>;
pub type ChannelF32 = ChannelParams<f32>;
pub type ModulationF64 = Modulation<f64>;
pub type ModulationF32 = Modulation<f32>;
pub type QApproxF64 = QApproxVariant<f64>;
pub type TruncationF64 = TruncationPolicy<f64>;
pub type TruncationF32 = TruncationPolicy<f32>;
pub type QuadratureSpecF64 = QuadratureSpec<f64>;
pub type QuadratureSpecF32 = QuadratureSpec<f32>;
pub type AberMethodF64 = AberMethod<f64>;
