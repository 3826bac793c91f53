//! Blind reverberation time estimation from reverberant speech alone.
//!
//! Classical per-band decay-rate method: sound offsets are detected in the
//! log-mel energy, free-decay segments after each offset are fitted with a
//! line, and the median slope across all bands and segments is mapped to
//! RT60 via `-60 / slope`.

use audio_core::{logmel, AudioBuffer, MelConfig, StftConfig};

use crate::error::{MetricsError, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct BlindRt60Config {
    pub n_mels: usize,
    pub fmin: f64,
    pub fmax: f64,
    pub stft: StftConfig,
    /// Moving-average length over frames, applied per band in dB.
    pub smooth_frames: usize,
    /// A decay segment must span at least this many frames.
    pub min_segment_frames: usize,
    /// ... and fall by at least this much from its peak.
    pub min_drop_db: f64,
    /// Offsets must start at least this far above the band noise floor.
    pub peak_above_floor_db: f64,
    /// Rise above the running minimum that ends a segment (next onset).
    pub onset_rise_db: f64,
    /// Margin above the band floor where tracking stops.
    pub floor_guard_db: f64,
    /// The fit starts once the level has fallen this far below the peak,
    /// past the window-smearing plateau right after the offset.
    pub fit_skip_db: f64,
    /// RMS below this is treated as silence.
    pub silence_rms: f64,
}

impl Default for BlindRt60Config {
    fn default() -> Self {
        Self {
            n_mels: 32,
            fmin: 100.0,
            fmax: 8000.0,
            stft: StftConfig::default(),
            smooth_frames: 3,
            min_segment_frames: 5,
            min_drop_db: 6.0,
            peak_above_floor_db: 15.0,
            onset_rise_db: 4.0,
            floor_guard_db: 3.0,
            fit_skip_db: 5.0,
            silence_rms: 1e-6,
        }
    }
}

/// Blind RT60 with default settings. See [`blind_rt60_with`].
pub fn blind_rt60(speech: &AudioBuffer) -> Result<f64> {
    blind_rt60_with(speech, &BlindRt60Config::default())
}

pub fn blind_rt60_with(speech: &AudioBuffer, config: &BlindRt60Config) -> Result<f64> {
    if speech.duration() < 1.0 {
        return Err(MetricsError::Config(format!(
            "need at least 1 s of audio, got {:.3} s",
            speech.duration()
        )));
    }
    let rms = speech.rms();
    if rms < config.silence_rms {
        return Err(MetricsError::Silence(format!("rms {rms:.3e}")));
    }

    // Normalize so the estimator is gain-invariant.
    let normalized = AudioBuffer::new(
        speech.samples.iter().map(|v| v / rms).collect(),
        speech.sample_rate,
    );
    let mel_cfg = MelConfig {
        n_mels: config.n_mels,
        fmin: config.fmin,
        fmax: config.fmax.min(speech.sample_rate as f64 / 2.0),
        log_floor: 1e-6,
        stft: config.stft,
    };
    let feat = logmel(&normalized, &mel_cfg)?;
    let frame_period = feat.frame_period();
    let n_frames = feat.n_frames();
    if n_frames < config.min_segment_frames + 2 {
        return Err(MetricsError::Estimation("too few frames".into()));
    }

    let mut slopes: Vec<f64> = Vec::new();
    let nat_to_db = 10.0 / std::f64::consts::LN_10;
    for band in 0..config.n_mels {
        // Band energy in dB, lightly smoothed.
        let raw: Vec<f64> = (0..n_frames)
            .map(|t| feat.frames[t][band] * nat_to_db)
            .collect();
        let energy = moving_average(&raw, config.smooth_frames);
        let floor = percentile(&energy, 0.05);

        collect_decay_slopes(&energy, floor, frame_period, config, &mut slopes);
    }

    if slopes.is_empty() {
        return Err(MetricsError::Estimation(
            "no free-decay segments detected".into(),
        ));
    }
    let med = median(&mut slopes);
    Ok(-60.0 / med)
}

/// RTE: absolute difference between the blind RT60 of two signals.
pub fn rte(output: &AudioBuffer, reference: &AudioBuffer) -> Result<f64> {
    Ok((blind_rt60(output)? - blind_rt60(reference)?).abs())
}

fn moving_average(x: &[f64], w: usize) -> Vec<f64> {
    if w <= 1 {
        return x.to_vec();
    }
    let half = w / 2;
    (0..x.len())
        .map(|i| {
            let lo = i.saturating_sub(half);
            let hi = (i + half).min(x.len() - 1);
            x[lo..=hi].iter().sum::<f64>() / (hi - lo + 1) as f64
        })
        .collect()
}

fn percentile(x: &[f64], p: f64) -> f64 {
    let mut v = x.to_vec();
    v.sort_by(f64::total_cmp);
    let idx = ((v.len() - 1) as f64 * p).round() as usize;
    v[idx]
}

fn median(x: &mut [f64]) -> f64 {
    x.sort_by(f64::total_cmp);
    let n = x.len();
    if n % 2 == 1 {
        x[n / 2]
    } else {
        0.5 * (x[n / 2 - 1] + x[n / 2])
    }
}

/// Scan one band's dB energy for offset-triggered free decays and push the
/// fitted slope (dB/s) of each accepted segment.
fn collect_decay_slopes(
    energy: &[f64],
    floor: f64,
    frame_period: f64,
    config: &BlindRt60Config,
    slopes: &mut Vec<f64>,
) {
    let n = energy.len();
    let mut t = 1;
    while t + 1 < n {
        let is_peak = energy[t] >= energy[t - 1]
            && energy[t] >= energy[t + 1]
            && energy[t] >= floor + config.peak_above_floor_db;
        if !is_peak {
            t += 1;
            continue;
        }

        // Track the decay until the next onset or the noise floor.
        let peak = t;
        let mut running_min = energy[t];
        let mut end = t;
        for u in t + 1..n {
            if energy[u] > running_min + config.onset_rise_db {
                break;
            }
            if energy[u] < running_min {
                running_min = energy[u];
            }
            end = u;
            if energy[u] <= floor + config.floor_guard_db {
                break;
            }
        }

        // Skip the plateau right after the offset: STFT smearing keeps the
        // level near the peak for a couple of frames and would flatten the
        // fitted slope.
        let fit_start = (peak..=end)
            .find(|&u| energy[u] <= energy[peak] - config.fit_skip_db)
            .unwrap_or(peak);
        let len = end.saturating_sub(fit_start) + 1;
        let drop = energy[fit_start] - running_min;
        if len >= config.min_segment_frames && drop >= config.min_drop_db {
            if let Some(slope) = ls_slope(&energy[fit_start..=end], frame_period) {
                if slope < 0.0 {
                    slopes.push(slope);
                }
            }
        }
        t = end.max(t + 1);
    }
}

fn ls_slope(y: &[f64], dt: f64) -> Option<f64> {
    let n = y.len();
    if n < 2 {
        return None;
    }
    let nf = n as f64;
    let mean_x = dt * (nf - 1.0) / 2.0;
    let mean_y = y.iter().sum::<f64>() / nf;
    let mut num = 0.0;
    let mut den = 0.0;
    for (i, &v) in y.iter().enumerate() {
        let dx = i as f64 * dt - mean_x;
        num += dx * (v - mean_y);
        den += dx * dx;
    }
    if den == 0.0 {
        None
    } else {
        Some(num / den)
    }
}
