use crate::error::{Error, Result};
use crate::real::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TruncationMode {
    /// Keep series terms `n = 0..=n_max`.
    FixedTerms,
    /// Stop once `|term| < term_tol · |partial sum|`.
    Adaptive,
}

/// How many terms of the correction series to keep.
///
/// `fixed(0)` is the single-term truncation, `fixed(1)` the two-term one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationPolicy<T> {
    pub mode: TruncationMode,
    pub n_max: usize,
    pub term_tol: T,
}

impl<T: Real> TruncationPolicy<T> {
    pub const MAX_TERMS: usize = 200;

    pub fn fixed(n_max: usize) -> Result<Self> {
        let p = Self {
            mode: TruncationMode::FixedTerms,
            n_max,
            term_tol: T::lit(1e-12),
        };
        p.validate()?;
        Ok(p)
    }

    /// Adaptive stop with the hard cap of [`Self::MAX_TERMS`].
    pub fn adaptive(term_tol: T) -> Result<Self> {
        let p = Self {
            mode: TruncationMode::Adaptive,
            n_max: Self::MAX_TERMS,
            term_tol,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_max > Self::MAX_TERMS {
            return Err(Error::domain(
                "TruncationPolicy",
                "n_max",
                self.n_max as f64,
                "0 <= n_max <= 200",
            ));
        }
        if !(self.term_tol >= T::lit(1e-16) && self.term_tol <= T::lit(1e-4)) {
            return Err(Error::domain(
                "TruncationPolicy",
                "term_tol",
                self.term_tol.as_f64(),
                "1e-16 <= term_tol <= 1e-4",
            ));
        }
        Ok(())
    }

    pub fn label(&self) -> String {
        match self.mode {
            TruncationMode::FixedTerms => format!("closed(N={})", self.n_max),
            TruncationMode::Adaptive => "closed(adaptive)".to_string(),
        }
    }
}
