//! Analytic exponential-decay RIRs, the oracle the metric stack is
//! validated against.

use audio_core::AudioBuffer;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Result, RirError};
use crate::rir::Rir;

/// Amplitude decay rate giving exactly 60 dB of energy decay over t60:
/// `ln(10^6) / 2 = 3 ln 10`.
pub const DECAY_RATE_60DB: f64 = 3.0 * std::f64::consts::LN_10;

/// Gaussian noise shaped by `exp(-3 ln10 * t / t60)`, so the energy
/// envelope falls by exactly 60 dB over `t60` in expectation.
/// Deterministic given `seed`.
pub fn synth_exponential_rir(
    t60: f64,
    duration: f64,
    sample_rate: u32,
    seed: u64,
) -> Result<Rir> {
    if !(t60.is_finite() && t60 > 0.0) {
        return Err(RirError::Config(format!("t60 {t60} must be positive")));
    }
    if !(duration.is_finite() && duration >= t60) {
        return Err(RirError::Config(format!(
            "duration {duration} must be >= t60 {t60}"
        )));
    }
    if sample_rate == 0 {
        return Err(RirError::Config("sample rate must be positive".into()));
    }

    let len = (duration * sample_rate as f64).round() as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rate = DECAY_RATE_60DB / (sample_rate as f64 * t60);
    let samples: Vec<f64> = (0..len)
        .map(|n| {
            let g: f64 = StandardNormal.sample(&mut rng);
            g * (-rate * n as f64).exp()
        })
        .collect();

    Ok(Rir {
        h: AudioBuffer::new(samples, sample_rate),
        room: None,
        direct_delay: None,
    })
}
