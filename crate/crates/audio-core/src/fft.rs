//! Thin wrapper around the FFT backend. Plans are created per call site
//! and reused across frames, never shared between threads.

use rustfft::num_complex::Complex64;
use rustfft::{Fft as RustFft, FftPlanner};
use std::sync::Arc;

/// Forward/inverse complex FFT pair of a fixed size.
pub struct Fft {
    size: usize,
    forward: Arc<dyn RustFft<f64>>,
    inverse: Arc<dyn RustFft<f64>>,
}

impl Fft {
    pub fn new(size: usize) -> Self {
        let mut planner = FftPlanner::new();
        Self {
            size,
            forward: planner.plan_fft_forward(size),
            inverse: planner.plan_fft_inverse(size),
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// In-place unnormalized forward transform.
    pub fn forward(&self, buf: &mut [Complex64]) {
        debug_assert_eq!(buf.len(), self.size);
        self.forward.process(buf);
    }

    /// In-place inverse transform, normalized by 1/N.
    pub fn inverse(&self, buf: &mut [Complex64]) {
        debug_assert_eq!(buf.len(), self.size);
        self.inverse.process(buf);
        let scale = 1.0 / self.size as f64;
        for v in buf.iter_mut() {
            *v *= scale;
        }
    }
}

pub fn next_pow2(n: usize) -> usize {
    n.next_power_of_two()
}
