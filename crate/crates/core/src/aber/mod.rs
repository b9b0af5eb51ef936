//! Average bit error rate of square M-QAM over Nakagami-m fading.
//!
//! Four routes are provided: the closed form built from the incomplete beta
//! function and a truncated Appell-F1 series ([`aber_closed`]), the averaged
//! nearest-neighbour approximation ([`aber_lu_closed`]), an exponential-sum
//! Q approximation averaged through the MGF ([`aber_expq_closed`]) and
//! brute-force quadrature ([`aber_oracle`]).

mod closed;
mod lemmas;
mod method;
mod metric;
mod oracle;
mod truncation;

pub use closed::{aber_closed, aber_closed_c0_form, aber_closed_detailed, aber_expq_closed, aber_lu_closed, ClosedForm};
pub use lemmas::{beta_term, lemma2_avg_q, r2_quadrature, r2_series, r2_series_with, R2Series};
pub use method::{AberEstimate, AberMethod};
pub use metric::discrepancy;
pub use oracle::{aber_oracle, average_over_fading, avg_q2_oracle, avg_q_oracle, BerKind};
pub use truncation::{TruncationMode, TruncationPolicy};
