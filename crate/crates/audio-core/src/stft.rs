//! Short-time Fourier transform and its inverse.
//!
//! Frames are centered: frame `t` covers samples `[t*hop, t*hop + fft_size)`
//! of the signal reflect-padded by `fft_size/2` on both sides. The forward
//! transform is unnormalized; the inverse uses weighted overlap-add with the
//! analysis window and per-sample window-energy normalization.

use rustfft::num_complex::Complex64;

use crate::buffer::AudioBuffer;
use crate::error::{AudioError, Result};
use crate::fft::Fft;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WindowKind {
    Hann,
}

impl WindowKind {
    /// Window samples; Hann is the periodic variant so constant overlap-add
    /// holds at hops that divide the window length by 4 or more.
    pub fn samples(&self, len: usize) -> Vec<f64> {
        match self {
            WindowKind::Hann => (0..len)
                .map(|n| 0.5 - 0.5 * (2.0 * std::f64::consts::PI * n as f64 / len as f64).cos())
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StftConfig {
    pub fft_size: usize,
    pub hop: usize,
    pub window: WindowKind,
}

impl Default for StftConfig {
    fn default() -> Self {
        // 512/128 Hann at 16 kHz: 32 ms frames, 8 ms hop.
        Self {
            fft_size: 512,
            hop: 128,
            window: WindowKind::Hann,
        }
    }
}

impl StftConfig {
    pub fn n_bins(&self) -> usize {
        self.fft_size / 2 + 1
    }

    /// Reject configurations that cannot reconstruct: non-power-of-two FFT,
    /// hop not dividing the frame, or a window that fails constant
    /// overlap-add of its square at the stored hop.
    pub fn validate(&self) -> Result<()> {
        if self.fft_size < 2 || !self.fft_size.is_power_of_two() {
            return Err(AudioError::Config(format!(
                "fft_size {} must be a power of two >= 2",
                self.fft_size
            )));
        }
        if self.hop == 0 || self.hop > self.fft_size || self.fft_size % self.hop != 0 {
            return Err(AudioError::Config(format!(
                "hop {} must divide fft_size {}",
                self.hop, self.fft_size
            )));
        }
        let dev = self.cola_deviation();
        if dev > 1e-10 {
            return Err(AudioError::Config(format!(
                "window/hop fails COLA: relative deviation {dev:.3e}"
            )));
        }
        Ok(())
    }

    /// Max relative deviation of the summed squared window from constant,
    /// over one interior hop period.
    pub fn cola_deviation(&self) -> f64 {
        let w = self.window.samples(self.fft_size);
        let shifts = self.fft_size / self.hop;
        // Accumulate sum of w^2 over all shifts at interior positions.
        let mut acc = vec![0.0f64; self.hop];
        for s in 0..shifts {
            for i in 0..self.hop {
                let idx = s * self.hop + i;
                acc[i] += w[idx] * w[idx];
            }
        }
        let mean = acc.iter().sum::<f64>() / acc.len() as f64;
        if mean <= 0.0 {
            return f64::INFINITY;
        }
        acc.iter()
            .map(|v| (v - mean).abs() / mean)
            .fold(0.0, f64::max)
    }
}

/// Complex STFT coefficients, `n_frames x n_bins` with `n_bins = fft_size/2 + 1`.
#[derive(Debug, Clone)]
pub struct Spectrogram {
    pub frames: Vec<Vec<Complex64>>,
    pub fft_size: usize,
    pub hop: usize,
    pub window: WindowKind,
    pub sample_rate: u32,
    /// Length of the signal this came from; used by `istft` to trim.
    pub orig_len: Option<usize>,
}

impl Spectrogram {
    pub fn n_frames(&self) -> usize {
        self.frames.len()
    }

    pub fn n_bins(&self) -> usize {
        self.fft_size / 2 + 1
    }

    pub fn config(&self) -> StftConfig {
        StftConfig {
            fft_size: self.fft_size,
            hop: self.hop,
            window: self.window,
        }
    }
}

/// Index into a reflect-padded view of `x` (mirror without edge repeat).
fn reflect_sample(x: &[f64], idx: isize) -> f64 {
    let len = x.len() as isize;
    if len == 0 {
        return 0.0;
    }
    if len == 1 {
        return x[0];
    }
    let mut i = idx;
    let period = 2 * (len - 1);
    i = i.rem_euclid(period);
    if i >= len {
        i = period - i;
    }
    x[i as usize]
}

/// Forward STFT. Signals shorter than one frame are zero-extended
/// implicitly via centering; no error.
pub fn stft(buffer: &AudioBuffer, config: &StftConfig) -> Result<Spectrogram> {
    config.validate()?;
    let n = config.fft_size;
    let hop = config.hop;
    let pad = n / 2;
    let len = buffer.len();
    let n_frames = len / hop + 1;

    let window = config.window.samples(n);
    let fft = Fft::new(n);
    let mut frames = Vec::with_capacity(n_frames);
    let mut buf = vec![Complex64::new(0.0, 0.0); n];

    for t in 0..n_frames {
        let start = (t * hop) as isize - pad as isize;
        for i in 0..n {
            let v = reflect_sample(&buffer.samples, start + i as isize);
            buf[i] = Complex64::new(v * window[i], 0.0);
        }
        fft.forward(&mut buf);
        frames.push(buf[..n / 2 + 1].to_vec());
    }

    Ok(Spectrogram {
        frames,
        fft_size: n,
        hop,
        window: config.window,
        sample_rate: buffer.sample_rate,
        orig_len: Some(len),
    })
}

/// Inverse STFT via weighted overlap-add.
pub fn istft(spec: &Spectrogram) -> Result<AudioBuffer> {
    spec.config().validate()?;
    let n = spec.fft_size;
    let hop = spec.hop;
    let pad = n / 2;
    let n_frames = spec.n_frames();
    let n_bins = spec.n_bins();

    let padded_len = if n_frames == 0 {
        0
    } else {
        (n_frames - 1) * hop + n
    };
    let mut acc = vec![0.0f64; padded_len];
    let mut wsum = vec![0.0f64; padded_len];
    let window = spec.window.samples(n);
    let fft = Fft::new(n);
    let mut buf = vec![Complex64::new(0.0, 0.0); n];

    for (t, frame) in spec.frames.iter().enumerate() {
        if frame.len() != n_bins {
            return Err(AudioError::Config(format!(
                "frame {t} has {} bins, expected {n_bins}",
                frame.len()
            )));
        }
        // Rebuild the full Hermitian spectrum from the stored half.
        for k in 0..n_bins {
            buf[k] = frame[k];
        }
        for k in 1..n / 2 {
            buf[n - k] = frame[k].conj();
        }
        fft.inverse(&mut buf);
        let base = t * hop;
        for i in 0..n {
            acc[base + i] += buf[i].re * window[i];
            wsum[base + i] += window[i] * window[i];
        }
    }

    for (a, w) in acc.iter_mut().zip(wsum.iter()) {
        if *w > 1e-12 {
            *a /= *w;
        } else {
            *a = 0.0;
        }
    }

    let out_len = spec
        .orig_len
        .unwrap_or_else(|| (n_frames.saturating_sub(1)) * hop);
    let mut out = vec![0.0f64; out_len];
    for i in 0..out_len {
        if pad + i < acc.len() {
            out[i] = acc[pad + i];
        }
    }
    Ok(AudioBuffer::new(out, spec.sample_rate))
}
