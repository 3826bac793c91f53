//! Speech-to-reverberation modulation energy ratio.
//!
//! Pipeline: 23-channel gammatone filterbank (125 Hz - 8 kHz, ERB-spaced),
//! per-channel temporal envelope as the magnitude of the analytic signal
//! (frequency-domain Hilbert transform), then an 8-band modulation
//! filterbank with log-spaced centers 4-128 Hz. SRMR is the energy in
//! modulation bands 1-4 over the energy in bands 5-8.

use rustfft::num_complex::Complex64;

use audio_core::fft::{next_pow2, Fft};
use audio_core::AudioBuffer;

use crate::error::{MetricsError, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct SrmrConfig {
    pub n_channels: usize,
    pub fmin: f64,
    pub fmax: f64,
    pub n_mod_bands: usize,
    pub mod_fmin: f64,
    pub mod_fmax: f64,
    /// Envelope analysis frame, samples (zero-padded FFT size as well).
    pub mod_frame: usize,
    pub min_duration: f64,
    pub silence_rms: f64,
}

impl Default for SrmrConfig {
    fn default() -> Self {
        Self {
            n_channels: 23,
            fmin: 125.0,
            fmax: 8000.0,
            n_mod_bands: 8,
            mod_fmin: 4.0,
            mod_fmax: 128.0,
            mod_frame: 8192,
            min_duration: 0.5,
            silence_rms: 1e-6,
        }
    }
}

fn erb_number(f: f64) -> f64 {
    21.4 * (1.0 + 0.00437 * f).log10()
}

fn erb_number_inv(e: f64) -> f64 {
    (10f64.powf(e / 21.4) - 1.0) / 0.00437
}

/// Equivalent rectangular bandwidth at center frequency `f`, Hz.
fn erb_bandwidth(f: f64) -> f64 {
    24.7 * (4.37 * f / 1000.0 + 1.0)
}

/// ERB-spaced gammatone center frequencies.
fn gammatone_centers(n: usize, fmin: f64, fmax: f64) -> Vec<f64> {
    let lo = erb_number(fmin);
    let hi = erb_number(fmax);
    (0..n)
        .map(|i| erb_number_inv(lo + (hi - lo) * i as f64 / (n - 1) as f64))
        .collect()
}

/// 4th-order gammatone magnitude response, peak-normalized.
fn gammatone_gain(f: f64, fc: f64) -> f64 {
    let b = 1.019 * erb_bandwidth(fc);
    let x = (f - fc) / b;
    (1.0 + x * x).powi(-2)
}

/// SRMR with default settings.
pub fn srmr(speech: &AudioBuffer) -> Result<f64> {
    srmr_with(speech, &SrmrConfig::default())
}

pub fn srmr_with(speech: &AudioBuffer, config: &SrmrConfig) -> Result<f64> {
    if speech.duration() < config.min_duration {
        return Err(MetricsError::Config(format!(
            "need at least {} s of audio, got {:.3} s",
            config.min_duration,
            speech.duration()
        )));
    }
    let rms = speech.rms();
    if rms < config.silence_rms {
        return Err(MetricsError::Silence(format!("rms {rms:.3e}")));
    }
    let sr = speech.sample_rate as f64;
    let len = speech.len();

    // Analytic band signals in one pass: FFT, apply gammatone gain and the
    // Hilbert step (double positive frequencies), IFFT per channel.
    let n = next_pow2(len);
    let fft = Fft::new(n);
    let mut base = vec![Complex64::new(0.0, 0.0); n];
    for (i, &v) in speech.samples.iter().enumerate() {
        base[i] = Complex64::new(v, 0.0);
    }
    fft.forward(&mut base);

    let fmax = config.fmax.min(sr / 2.0);
    let centers = gammatone_centers(config.n_channels, config.fmin, fmax);
    let band_edges = modulation_band_edges(config);
    let mut band_energy = vec![0.0f64; config.n_mod_bands];

    let mut chan = vec![Complex64::new(0.0, 0.0); n];
    for &fc in &centers {
        for (j, out) in chan.iter_mut().enumerate() {
            let (gain, analytic) = if j == 0 || j == n / 2 {
                (1.0, 1.0)
            } else if j < n / 2 {
                (1.0, 2.0)
            } else {
                (0.0, 0.0)
            };
            let f = j as f64 * sr / n as f64;
            *out = base[j] * (gain * analytic * gammatone_gain(f, fc));
        }
        fft.inverse(&mut chan);
        let envelope: Vec<f64> = chan[..len].iter().map(|v| v.norm()).collect();
        accumulate_modulation_energy(&envelope, sr, config, &band_edges, &mut band_energy);
    }

    let low: f64 = band_energy[..config.n_mod_bands / 2].iter().sum();
    let high: f64 = band_energy[config.n_mod_bands / 2..].iter().sum();
    if high <= 0.0 {
        return Err(MetricsError::Estimation(
            "no high-band modulation energy".into(),
        ));
    }
    Ok(low / high)
}

/// Geometric band edges around log-spaced centers 4..128 Hz.
fn modulation_band_edges(config: &SrmrConfig) -> Vec<f64> {
    let k = config.n_mod_bands;
    let ratio = (config.mod_fmax / config.mod_fmin).powf(1.0 / (k - 1) as f64);
    let centers: Vec<f64> = (0..k)
        .map(|i| config.mod_fmin * ratio.powi(i as i32))
        .collect();
    let mut edges = Vec::with_capacity(k + 1);
    edges.push(centers[0] / ratio.sqrt());
    for i in 0..k - 1 {
        edges.push((centers[i] * centers[i + 1]).sqrt());
    }
    edges.push(centers[k - 1] * ratio.sqrt());
    edges
}

/// Window the envelope, remove each frame's mean (the modulation filters
/// carry no DC), FFT, and add per-band spectral energy into `band_energy`.
fn accumulate_modulation_energy(
    envelope: &[f64],
    sr: f64,
    config: &SrmrConfig,
    edges: &[f64],
    band_energy: &mut [f64],
) {
    let frame_len = config.mod_frame.min(envelope.len());
    let hop = (frame_len / 4).max(1);
    let fft_size = config.mod_frame;
    let fft = Fft::new(fft_size);

    let hamming: Vec<f64> = (0..frame_len)
        .map(|i| {
            0.54 - 0.46 * (2.0 * std::f64::consts::PI * i as f64 / (frame_len - 1) as f64).cos()
        })
        .collect();

    let mut start = 0usize;
    let mut buf = vec![Complex64::new(0.0, 0.0); fft_size];
    loop {
        let seg = &envelope[start..start + frame_len];
        let mean = seg.iter().sum::<f64>() / frame_len as f64;
        for v in buf.iter_mut() {
            *v = Complex64::new(0.0, 0.0);
        }
        for i in 0..frame_len {
            buf[i] = Complex64::new((seg[i] - mean) * hamming[i], 0.0);
        }
        fft.forward(&mut buf);
        for j in 1..fft_size / 2 {
            let f = j as f64 * sr / fft_size as f64;
            if f < edges[0] || f >= edges[edges.len() - 1] {
                continue;
            }
            let band = edges[1..].iter().position(|&e| f < e).unwrap_or(0);
            band_energy[band] += buf[j].norm_sqr();
        }

        if start + frame_len >= envelope.len() {
            break;
        }
        start = (start + hop).min(envelope.len() - frame_len);
    }
}
