//! The original Allen-Berkley 100 Hz high-pass companion filter.
//!
//! The image-source sum of all-positive impulses carries a nonphysical
//! DC/low-frequency pedestal that inflates late-time energy; the classic
//! method removes it with this filter. It is offered as an explicit
//! post-process and never applied implicitly.

use std::f64::consts::PI;

use crate::rir::Rir;

/// Apply the Allen-Berkley high-pass (cutoff 100 Hz) to a copy of the RIR.
pub fn allen_berkley_highpass(rir: &Rir) -> Rir {
    let fs = rir.h.sample_rate as f64;
    let w = 2.0 * PI * 100.0 / fs;
    let r1 = (-w).exp();
    let b1 = 2.0 * r1 * w.cos();
    let b2 = -r1 * r1;
    let a1 = -(1.0 + r1);

    let mut out = rir.clone();
    let mut y = [0.0f64; 3];
    for x in out.h.samples.iter_mut() {
        y[2] = y[1];
        y[1] = y[0];
        y[0] = b1 * y[1] + b2 * y[2] + *x;
        *x = y[0] + a1 * y[1] + r1 * y[2];
    }
    out
}
