//! Reverberation time and early decay time from an energy decay curve.

use crate::edc::Edc;
use crate::error::{MetricsError, Result};

/// Which fit range produced an RT60 estimate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecayEstimator {
    /// Fit over [-5, -35] dB.
    T30,
    /// Fallback fit over [-5, -25] dB.
    T20,
}

impl DecayEstimator {
    pub fn as_str(&self) -> &'static str {
        match self {
            DecayEstimator::T30 => "t30",
            DecayEstimator::T20 => "t20",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rt60Estimate {
    pub seconds: f64,
    pub estimator: DecayEstimator,
}

/// Least-squares slope in dB/s over EDC indices `[lo, hi]`.
fn fit_slope(edc: &Edc, lo: usize, hi: usize) -> Option<f64> {
    if hi <= lo {
        return None;
    }
    let n = (hi - lo + 1) as f64;
    let mean_x = (lo..=hi).map(|i| edc.time_at(i)).sum::<f64>() / n;
    let mean_y = edc.values_db[lo..=hi].iter().sum::<f64>() / n;
    let mut num = 0.0;
    let mut den = 0.0;
    for i in lo..=hi {
        let dx = edc.time_at(i) - mean_x;
        num += dx * (edc.values_db[i] - mean_y);
        den += dx * dx;
    }
    if den == 0.0 {
        return None;
    }
    let slope = num / den;
    if slope >= 0.0 {
        None
    } else {
        Some(slope)
    }
}

/// RT60 by line fit over [-5, -35] dB (T30), falling back to [-5, -25]
/// (T20) when the curve never reaches -35 dB. `RT60 = -60 / slope`.
pub fn rt60_from_edc(edc: &Edc) -> Result<Rt60Estimate> {
    let i5 = edc.first_crossing(-5.0).ok_or_else(|| {
        MetricsError::InsufficientDecay("edc never reaches -5 dB".into())
    })?;

    if let Some(i35) = edc.first_crossing(-35.0) {
        if let Some(slope) = fit_slope(edc, i5, i35) {
            return Ok(Rt60Estimate {
                seconds: -60.0 / slope,
                estimator: DecayEstimator::T30,
            });
        }
    }
    if let Some(i25) = edc.first_crossing(-25.0) {
        if let Some(slope) = fit_slope(edc, i5, i25) {
            return Ok(Rt60Estimate {
                seconds: -60.0 / slope,
                estimator: DecayEstimator::T20,
            });
        }
    }
    Err(MetricsError::InsufficientDecay(
        "edc reaches neither a fittable -35 nor -25 dB region".into(),
    ))
}

/// Early decay time: line fit over the [0, -10] dB region, scaled to 60 dB
/// (six times the 10 dB decay time).
pub fn edt_from_edc(edc: &Edc) -> Result<f64> {
    let i10 = edc.first_crossing(-10.0).ok_or_else(|| {
        MetricsError::InsufficientDecay("edc never reaches -10 dB".into())
    })?;
    let slope = fit_slope(edc, 0, i10).ok_or_else(|| {
        MetricsError::InsufficientDecay("no early decay region to fit".into())
    })?;
    Ok(-60.0 / slope)
}
