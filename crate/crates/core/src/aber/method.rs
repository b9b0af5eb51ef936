use super::closed::{aber_closed_detailed, aber_expq_closed, aber_lu_closed};
use super::oracle::{aber_oracle, BerKind};
use super::truncation::TruncationPolicy;
use crate::channel::{ChannelParams, Modulation, QApproxVariant};
use crate::error::Result;
use crate::quad::QuadratureSpec;
use crate::real::Real;
use crate::specfun::Accuracy;

/// Average-BER evaluation route.
#[derive(Debug, Clone, PartialEq)]
pub enum AberMethod<T> {
    /// Incomplete beta plus the truncated Appell-F1 series.
    Closed(TruncationPolicy<T>),
    /// Averaged nearest-neighbour approximation.
    LuClosed,
    /// Quadrature of the exact instantaneous BER against the density.
    Oracle(QuadratureSpec<T>),
    /// Exponential-sum Q approximation averaged through the MGF.
    ExpqClosed(QApproxVariant<T>),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AberEstimate<T> {
    pub value: T,
    /// Series terms summed (closed form only, otherwise 0).
    pub terms: usize,
    /// Quadrature error estimate (oracle only).
    pub error_estimate: Option<T>,
}

impl<T: Real> AberMethod<T> {
    pub fn label(&self) -> String {
        match self {
            AberMethod::Closed(t) => t.label(),
            AberMethod::LuClosed => "lu".to_string(),
            AberMethod::Oracle(_) => "oracle".to_string(),
            AberMethod::ExpqClosed(v) => format!("expq({})", v.label()),
        }
    }

    pub fn evaluate(&self, ch: &ChannelParams<T>, modulation: &Modulation<T>) -> Result<AberEstimate<T>> {
        match self {
            AberMethod::Closed(trunc) => {
                let c = aber_closed_detailed(ch, modulation, trunc, &Accuracy::default())?;
                Ok(AberEstimate {
                    value: c.value,
                    terms: c.series.terms_used,
                    error_estimate: None,
                })
            }
            AberMethod::LuClosed => Ok(AberEstimate {
                value: aber_lu_closed(ch, modulation)?,
                terms: 0,
                error_estimate: None,
            }),
            AberMethod::Oracle(spec) => {
                let r = aber_oracle(ch, modulation, &BerKind::Exact, spec)?;
                let value = r.require_converged("aber_oracle")?;
                Ok(AberEstimate {
                    value,
                    terms: 0,
                    error_estimate: Some(r.error_estimate),
                })
            }
            AberMethod::ExpqClosed(v) => Ok(AberEstimate {
                value: aber_expq_closed(ch, modulation, v)?,
                terms: 0,
                error_estimate: None,
            }),
        }
    }
}
