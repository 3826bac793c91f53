//! Log-mel features: triangular HTK-scale filterbank over the STFT power
//! spectrum, then natural log with an additive floor.

use crate::buffer::AudioBuffer;
use crate::error::{AudioError, Result};
use crate::stft::{stft, StftConfig};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MelConfig {
    pub n_mels: usize,
    pub fmin: f64,
    pub fmax: f64,
    pub log_floor: f64,
    pub stft: StftConfig,
}

impl Default for MelConfig {
    fn default() -> Self {
        Self {
            n_mels: 64,
            fmin: 0.0,
            fmax: 8000.0,
            log_floor: 1e-5,
            stft: StftConfig::default(),
        }
    }
}

/// Log-compressed mel energies, `n_frames x n_mels`.
#[derive(Debug, Clone)]
pub struct MelFeature {
    pub frames: Vec<Vec<f64>>,
    pub n_mels: usize,
    pub fmin: f64,
    pub fmax: f64,
    pub log_floor: f64,
    pub sample_rate: u32,
    pub hop: usize,
}

impl MelFeature {
    pub fn n_frames(&self) -> usize {
        self.frames.len()
    }

    /// Seconds between consecutive frames.
    pub fn frame_period(&self) -> f64 {
        self.hop as f64 / self.sample_rate as f64
    }
}

pub fn hz_to_mel(f: f64) -> f64 {
    2595.0 * (1.0 + f / 700.0).log10()
}

pub fn mel_to_hz(m: f64) -> f64 {
    700.0 * (10f64.powf(m / 2595.0) - 1.0)
}

/// Triangular mel filterbank, rows `n_mels`, columns `fft_size/2 + 1`.
pub fn mel_filterbank(
    n_mels: usize,
    fft_size: usize,
    sample_rate: u32,
    fmin: f64,
    fmax: f64,
) -> Result<Vec<Vec<f64>>> {
    if n_mels == 0 {
        return Err(AudioError::Config("n_mels must be >= 1".into()));
    }
    if !(fmin >= 0.0 && fmin < fmax && fmax <= sample_rate as f64 / 2.0) {
        return Err(AudioError::Config(format!(
            "mel band range {fmin}..{fmax} invalid for sample rate {sample_rate}"
        )));
    }
    let n_bins = fft_size / 2 + 1;
    let m_lo = hz_to_mel(fmin);
    let m_hi = hz_to_mel(fmax);
    let centers: Vec<f64> = (0..n_mels + 2)
        .map(|j| mel_to_hz(m_lo + (m_hi - m_lo) * j as f64 / (n_mels + 1) as f64))
        .collect();

    let mut bank = vec![vec![0.0f64; n_bins]; n_mels];
    for b in 0..n_mels {
        let (lo, mid, hi) = (centers[b], centers[b + 1], centers[b + 2]);
        for k in 0..n_bins {
            let f = k as f64 * sample_rate as f64 / fft_size as f64;
            let w = if f <= lo || f >= hi {
                0.0
            } else if f <= mid {
                (f - lo) / (mid - lo)
            } else {
                (hi - f) / (hi - mid)
            };
            bank[b][k] = w.max(0.0);
        }
    }
    Ok(bank)
}

/// Mel-band log energies of a signal: `log(filterbank(|STFT|^2) + log_floor)`.
pub fn logmel(buffer: &AudioBuffer, config: &MelConfig) -> Result<MelFeature> {
    let bank = mel_filterbank(
        config.n_mels,
        config.stft.fft_size,
        buffer.sample_rate,
        config.fmin,
        config.fmax,
    )?;
    let spec = stft(buffer, &config.stft)?;
    let frames = spec
        .frames
        .iter()
        .map(|frame| {
            let power: Vec<f64> = frame.iter().map(|v| v.norm_sqr()).collect();
            bank.iter()
                .map(|row| {
                    let e: f64 = row.iter().zip(power.iter()).map(|(w, p)| w * p).sum();
                    (e + config.log_floor).ln()
                })
                .collect()
        })
        .collect();

    Ok(MelFeature {
        frames,
        n_mels: config.n_mels,
        fmin: config.fmin,
        fmax: config.fmax,
        log_floor: config.log_floor,
        sample_rate: buffer.sample_rate,
        hop: config.stft.hop,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn silence_maps_to_log_floor() {
        let cfg = MelConfig::default();
        let feat = logmel(&AudioBuffer::zeros(4000, 16000), &cfg).unwrap();
        let expect = cfg.log_floor.ln();
        for frame in &feat.frames {
            for &v in frame {
                assert_eq!(v, expect);
            }
        }
    }

    #[test]
    fn filterbank_rows_sum_positive_with_monotone_centers() {
        let bank = mel_filterbank(64, 512, 16000, 0.0, 8000.0).unwrap();
        let mut last_peak = -1isize;
        for row in &bank {
            let sum: f64 = row.iter().sum();
            assert!(sum > 0.0, "empty filter row");
            let peak = row
                .iter()
                .enumerate()
                .max_by(|a, b| a.1.total_cmp(b.1))
                .unwrap()
                .0 as isize;
            assert!(peak >= last_peak, "centers not monotone");
            last_peak = peak;
        }
    }

    #[test]
    fn gain_shift_is_additive_in_log_domain() {
        // x10 amplitude = x100 power = +2 ln 10 where energy >> floor.
        let sr = 16000u32;
        let tone: Vec<f64> = (0..8000)
            .map(|i| 0.9 * (2.0 * std::f64::consts::PI * 1000.0 * i as f64 / sr as f64).sin())
            .collect();
        let cfg = MelConfig::default();
        let a = logmel(&AudioBuffer::new(tone.clone(), sr), &cfg).unwrap();
        let b = logmel(
            &AudioBuffer::new(tone.iter().map(|v| v * 10.0).collect(), sr),
            &cfg,
        )
        .unwrap();
        let shift = 2.0 * 10f64.ln();
        let mut checked = 0;
        for (fa, fb) in a.frames.iter().zip(b.frames.iter()) {
            for (&va, &vb) in fa.iter().zip(fb.iter()) {
                // Only bands far above the floor obey the pure shift; at
                // +18 nats the floor term perturbs the ratio by ~1e-8.
                if va > cfg.log_floor.ln() + 18.0 {
                    assert!((vb - va - shift).abs() < 1e-6, "va={va} vb={vb}");
                    checked += 1;
                }
            }
        }
        assert!(checked > 60, "too few bands above floor: {checked}");
    }

    #[test]
    fn invalid_band_edges_rejected() {
        assert!(mel_filterbank(64, 512, 16000, 0.0, 9000.0).is_err());
        assert!(mel_filterbank(64, 512, 16000, 5000.0, 4000.0).is_err());
        assert!(mel_filterbank(0, 512, 16000, 0.0, 8000.0).is_err());
    }

    #[test]
    fn entries_never_below_log_floor() {
        let cfg = MelConfig::default();
        let x: Vec<f64> = (0..5000).map(|i| ((i * i) as f64).sin() * 0.3).collect();
        let feat = logmel(&AudioBuffer::new(x, 16000), &cfg).unwrap();
        let floor = cfg.log_floor.ln();
        for frame in &feat.frames {
            for &v in frame {
                assert!(v >= floor - 1e-12 && v.is_finite());
            }
        }
    }
}
