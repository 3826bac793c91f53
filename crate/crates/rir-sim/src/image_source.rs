//! Classic image-source simulation for rectangular rooms.
//!
//! Images are enumerated per axis up to `max_order` reflections, giving
//! exactly `(2*max_order + 1)^3` images before amplitude culling. Each image
//! contributes an impulse of amplitude `(prod reflection coeffs) / (4 pi d)`
//! at delay `d / c`, placed with an 81-tap Blackman-windowed-sinc fractional
//! delay kernel (sidelobes below -60 dB, so DRR at 16 kHz stays clean).

use std::f64::consts::PI;

use audio_core::AudioBuffer;

use crate::error::{Result, RirError};
use crate::rir::Rir;
use crate::room::RoomSpec;

/// Half-width of the fractional-delay kernel; full length is 81 taps.
pub const KERNEL_HALF_TAPS: usize = 40;
/// Images quieter than this relative to the direct path are dropped.
pub const CULL_DB: f64 = -100.0;
/// Default bound on the pre-culling image count.
pub const DEFAULT_IMAGE_CAP: usize = 2_000_000;

/// One mirrored source along a single axis.
#[derive(Debug, Clone, Copy)]
struct AxisImage {
    /// Signed distance contribution along this axis.
    diff: f64,
    /// Product of the reflection coefficients picked up on this axis.
    coeff: f64,
}

/// Enumerate per-axis images of reflection order <= `max_order`.
///
/// The parameterization is `pos = (1-2q) s + 2 n L` with `q` counting the
/// mirror across the near wall; the image reflects `|n-q|` times off the
/// wall at 0 and `|n|` times off the wall at `L`. Differences are formed
/// so that swapping source and receiver yields bit-identical distances.
fn enumerate_axis(
    length: f64,
    src: f64,
    recv: f64,
    beta_lo: f64,
    beta_hi: f64,
    max_order: usize,
) -> Vec<AxisImage> {
    let m = max_order as i64;
    let mut out = Vec::with_capacity(2 * max_order + 1);
    for n in -m..=m {
        for q in 0..=1i64 {
            let order = (n - q).unsigned_abs() + n.unsigned_abs();
            if order > max_order as u64 {
                continue;
            }
            let diff = if q == 0 {
                2.0 * n as f64 * length + (src - recv)
            } else {
                2.0 * n as f64 * length - (src + recv)
            };
            let coeff =
                beta_lo.powi((n - q).unsigned_abs() as i32) * beta_hi.powi(n.unsigned_abs() as i32);
            out.push(AxisImage { diff, coeff });
        }
    }
    out
}

fn blackman_tables() -> ([f64; 81], [f64; 81], [f64; 81], [f64; 81]) {
    let mut c40 = [0.0; 81];
    let mut s40 = [0.0; 81];
    let mut c20 = [0.0; 81];
    let mut s20 = [0.0; 81];
    for (j, u) in (-(KERNEL_HALF_TAPS as i64)..=KERNEL_HALF_TAPS as i64).enumerate() {
        let u = u as f64;
        c40[j] = (PI * u / 40.0).cos();
        s40[j] = (PI * u / 40.0).sin();
        c20[j] = (PI * u / 20.0).cos();
        s20[j] = (PI * u / 20.0).sin();
    }
    (c40, s40, c20, s20)
}

/// Simulate with the default image-count cap.
pub fn simulate_rir(room: &RoomSpec) -> Result<Rir> {
    simulate_rir_with_cap(room, DEFAULT_IMAGE_CAP)
}

/// Image-source simulation with an explicit cap on the enumerated images.
pub fn simulate_rir_with_cap(room: &RoomSpec, image_cap: usize) -> Result<Rir> {
    room.validate()?;

    let per_axis = 2 * room.max_order + 1;
    let total_images = per_axis
        .checked_pow(3)
        .ok_or_else(|| RirError::Resource("image count overflows".into()))?;
    if total_images > image_cap {
        return Err(RirError::Resource(format!(
            "max_order {} enumerates {total_images} images, cap is {image_cap}",
            room.max_order
        )));
    }
    if room.absorption_area() <= 0.0 {
        return Err(RirError::Config(
            "perfectly reflective room: total absorption is zero".into(),
        ));
    }

    let sr = room.sample_rate as f64;
    let c = room.speed_of_sound;
    let betas: Vec<f64> = room.absorption.iter().map(|a| (1.0 - a).sqrt()).collect();

    let xs = enumerate_axis(
        room.dims[0],
        room.source[0],
        room.receiver[0],
        betas[0],
        betas[1],
        room.max_order,
    );
    let ys = enumerate_axis(
        room.dims[1],
        room.source[1],
        room.receiver[1],
        betas[2],
        betas[3],
        room.max_order,
    );
    let zs = enumerate_axis(
        room.dims[2],
        room.source[2],
        room.receiver[2],
        betas[4],
        betas[5],
        room.max_order,
    );

    let d_direct = room.source_receiver_distance();
    let direct_amp = 1.0 / (4.0 * PI * d_direct);
    let cull_threshold = direct_amp * 10f64.powf(CULL_DB / 20.0);

    // Collect surviving impulses first so the output length can cover them.
    let mut impulses: Vec<(f64, f64)> = Vec::new();
    let mut max_delay_samples = 0.0f64;
    for xi in &xs {
        let dx2 = xi.diff * xi.diff;
        for yi in &ys {
            let cxy = xi.coeff * yi.coeff;
            let dxy2 = dx2 + yi.diff * yi.diff;
            for zi in &zs {
                let coeff = cxy * zi.coeff;
                if coeff == 0.0 {
                    continue;
                }
                let d = (dxy2 + zi.diff * zi.diff).sqrt();
                let amp = coeff / (4.0 * PI * d);
                if amp < cull_threshold {
                    continue;
                }
                let delay = d / c * sr;
                if delay > max_delay_samples {
                    max_delay_samples = delay;
                }
                impulses.push((delay, amp));
            }
        }
    }

    // Cover the -80 dB decay point (Sabine: 4/3 T60) or 2 x T60, whichever
    // is longer, and always the furthest kept image plus the kernel tail.
    let t60 = room.sabine_t60();
    let len_decay = (2.0 * t60 * sr).ceil() as usize;
    let len_images = max_delay_samples.ceil() as usize + KERNEL_HALF_TAPS + 1;
    let len = len_decay.max(len_images);

    let mut h = vec![0.0f64; len];
    let (c40, s40, c20, s20) = blackman_tables();
    let half = KERNEL_HALF_TAPS as i64;
    for &(delay, amp) in &impulses {
        let center = delay.round();
        let frac = delay - center; // in [-0.5, 0.5]
        let sin_pi_frac = (PI * frac).sin();
        let (ca, sa) = ((PI * frac / 40.0).cos(), (PI * frac / 40.0).sin());
        let (cb, sb) = ((PI * frac / 20.0).cos(), (PI * frac / 20.0).sin());
        let center = center as i64;
        for (j, tap) in (-half..=half).enumerate() {
            let idx = center + tap;
            if idx < 0 || idx as usize >= len {
                continue;
            }
            let u = tap as f64 - frac;
            // sin(pi(tap - frac)) = -(-1)^tap sin(pi frac)
            let sinc = if u == 0.0 {
                1.0
            } else {
                let sign = if tap & 1 == 0 { -1.0 } else { 1.0 };
                sign * sin_pi_frac / (PI * u)
            };
            // Blackman via angle addition against the integer-tap tables.
            let window = 0.42
                + 0.5 * (c40[j] * ca + s40[j] * sa)
                + 0.08 * (c20[j] * cb + s20[j] * sb);
            h[idx as usize] += amp * sinc * window;
        }
    }

    Ok(Rir {
        h: AudioBuffer::new(h, room.sample_rate),
        room: Some(room.clone()),
        direct_delay: Some(d_direct / c),
    })
}

/// Simulate the room and its source/receiver-swapped twin. In the ideal
/// image-source model the two responses are identical.
pub fn reciprocity_check(room: &RoomSpec) -> Result<(Rir, Rir)> {
    let forward = simulate_rir(room)?;
    let mut swapped = room.clone();
    std::mem::swap(&mut swapped.source, &mut swapped.receiver);
    let backward = simulate_rir(&swapped)?;
    Ok((forward, backward))
}
