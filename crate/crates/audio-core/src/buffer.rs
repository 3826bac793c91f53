/// Mono sampled waveform with its sample rate. Samples are linear
/// amplitude, nominally in [-1, 1] for material that came from a file.
#[derive(Debug, Clone, PartialEq)]
pub struct AudioBuffer {
    pub samples: Vec<f64>,
    pub sample_rate: u32,
}

impl AudioBuffer {
    pub fn new(samples: Vec<f64>, sample_rate: u32) -> Self {
        assert!(sample_rate > 0, "sample rate must be positive");
        Self {
            samples,
            sample_rate,
        }
    }

    /// All-zero buffer of `len` samples.
    pub fn zeros(len: usize, sample_rate: u32) -> Self {
        Self::new(vec![0.0; len], sample_rate)
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Duration in seconds, `len / sample_rate` exactly.
    pub fn duration(&self) -> f64 {
        self.samples.len() as f64 / self.sample_rate as f64
    }

    pub fn rms(&self) -> f64 {
        if self.samples.is_empty() {
            return 0.0;
        }
        let e: f64 = self.samples.iter().map(|s| s * s).sum();
        (e / self.samples.len() as f64).sqrt()
    }

    pub fn energy(&self) -> f64 {
        self.samples.iter().map(|s| s * s).sum()
    }

    /// True when every sample is finite.
    pub fn is_finite(&self) -> bool {
        self.samples.iter().all(|s| s.is_finite())
    }

    /// Crop or zero-pad to exactly `len` samples.
    pub fn fit_to_len(&self, len: usize) -> AudioBuffer {
        let mut s = self.samples.clone();
        s.resize(len, 0.0);
        AudioBuffer::new(s, self.sample_rate)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duration_is_exact() {
        let b = AudioBuffer::zeros(40960, 16000);
        assert_eq!(b.duration(), 2.56);
    }

    #[test]
    fn fit_to_len_pads_and_crops() {
        let b = AudioBuffer::new(vec![1.0, 2.0, 3.0], 16000);
        assert_eq!(b.fit_to_len(5).samples, vec![1.0, 2.0, 3.0, 0.0, 0.0]);
        assert_eq!(b.fit_to_len(2).samples, vec![1.0, 2.0]);
    }

    #[test]
    #[should_panic]
    fn zero_sample_rate_rejected() {
        AudioBuffer::new(vec![], 0);
    }
}
