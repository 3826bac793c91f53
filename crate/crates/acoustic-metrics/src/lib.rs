//! Scalar room-acoustics metrics: Schroeder energy decay curves, RT60,
//! EDT, DRR and their absolute errors between predicted and reference
//! RIRs, plus blind RT60, RTE and SRMR on speech.
//!
//! Everything is pure and deterministic: identical inputs give
//! bit-identical outputs.

pub mod blind;
pub mod decay;
pub mod delta;
pub mod drr;
pub mod edc;
pub mod error;
pub mod report;
pub mod srmr;

pub use blind::{blind_rt60, blind_rt60_with, rte, BlindRt60Config};
pub use decay::{edt_from_edc, rt60_from_edc, DecayEstimator, Rt60Estimate};
pub use delta::{fit_analysis_window, prepare_rir, rir_delta, ANALYSIS_WINDOW_SECONDS};
pub use drr::drr;
pub use edc::{edc, Edc, EDC_FLOOR_DB};
pub use error::{MetricsError, Result, Side};
pub use report::{AcousticReport, Rt60Source};
pub use srmr::{srmr, srmr_with, SrmrConfig};
