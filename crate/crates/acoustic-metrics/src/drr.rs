//! Direct-to-reverberant ratio.

use rir_sim::Rir;

use crate::error::{MetricsError, Result};

/// Half-width of the direct-path window, seconds.
pub const DIRECT_WINDOW_HALF_S: f64 = 0.0025;
/// DRR is clamped to this range to avoid infinities on anechoic RIRs.
pub const DRR_CLAMP_DB: f64 = 80.0;

/// `10 log10(E_direct / E_reverb)` with the direct window spanning
/// +-2.5 ms around the direct arrival (provenance delay when present,
/// otherwise the global peak), clamped to +-80 dB.
pub fn drr(rir: &Rir) -> Result<f64> {
    let h = &rir.h.samples;
    let sr = rir.h.sample_rate as f64;
    let total: f64 = h.iter().map(|v| v * v).sum();
    if !(total.is_finite() && total > 0.0) {
        return Err(MetricsError::Degenerate(
            "zero or non-finite total energy".into(),
        ));
    }

    let direct_idx = match rir.direct_delay {
        Some(t) => (t * sr).round() as usize,
        None => {
            h.iter()
                .enumerate()
                .max_by(|a, b| a.1.abs().total_cmp(&b.1.abs()))
                .map(|(i, _)| i)
                .unwrap_or(0)
        }
    };
    let half = (DIRECT_WINDOW_HALF_S * sr).round() as usize;
    let lo = direct_idx.saturating_sub(half);
    let hi = (direct_idx + half).min(h.len().saturating_sub(1));

    let e_direct: f64 = h[lo..=hi].iter().map(|v| v * v).sum();
    let e_reverb: f64 = h[hi + 1..].iter().map(|v| v * v).sum();

    if e_reverb <= 0.0 {
        return Ok(DRR_CLAMP_DB);
    }
    if e_direct <= 0.0 {
        return Ok(-DRR_CLAMP_DB);
    }
    Ok((10.0 * (e_direct / e_reverb).log10()).clamp(-DRR_CLAMP_DB, DRR_CLAMP_DB))
}

#[cfg(test)]
mod tests {
    use super::*;
    use audio_core::AudioBuffer;
    use rir_sim::{simulate_rir, RoomSpec};

    #[test]
    fn impulse_plus_tail_gives_exact_ratio() {
        // Unit impulse at 100, tail of total energy 0.1 placed past the
        // +-2.5 ms window: DRR = 10 log10(1/0.1) = 10 dB exactly.
        let sr = 16000u32;
        let mut h = vec![0.0f64; 2000];
        h[100] = 1.0;
        let tail_start = 100 + 41; // window half-width is 40 samples
        let tail_len = 1000;
        let per = (0.1f64 / tail_len as f64).sqrt();
        for v in h.iter_mut().skip(tail_start).take(tail_len) {
            *v = per;
        }
        let mut rir = Rir::new(AudioBuffer::new(h, sr));
        rir.direct_delay = Some(100.0 / sr as f64);
        let got = drr(&rir).unwrap();
        assert!((got - 10.0).abs() < 1e-9, "drr {got}");
    }

    #[test]
    fn anechoic_room_clamps_to_plus_80() {
        let room = RoomSpec::uniform([6.0, 5.0, 3.0], 1.0, [1.5, 2.0, 1.2], [4.0, 3.0, 1.6]);
        let rir = simulate_rir(&room).unwrap();
        assert_eq!(drr(&rir).unwrap(), DRR_CLAMP_DB);
    }

    #[test]
    fn invariant_to_global_scaling() {
        let room = RoomSpec::uniform([5.0, 4.0, 3.0], 0.3, [1.0, 1.0, 1.0], [3.5, 2.8, 1.9]);
        let mut rir = simulate_rir(&room).unwrap();
        let a = drr(&rir).unwrap();
        for v in rir.h.samples.iter_mut() {
            *v *= 10.0;
        }
        let b = drr(&rir).unwrap();
        assert!((a - b).abs() < 1e-9);
    }

    #[test]
    fn zero_rir_is_degenerate() {
        let rir = Rir::new(AudioBuffer::zeros(100, 16000));
        assert!(matches!(drr(&rir), Err(MetricsError::Degenerate(_))));
    }

    #[test]
    fn peak_detection_used_without_provenance() {
        let sr = 16000u32;
        let mut h = vec![0.0f64; 4000];
        h[500] = 1.0;
        for (i, v) in h.iter_mut().enumerate().skip(600) {
            *v = 0.01 * (-(i as f64) / 2000.0).exp();
        }
        // Oracle around the peak at 500 with the +-40 sample window.
        let e_direct: f64 = h[460..=540].iter().map(|v| v * v).sum();
        let e_reverb: f64 = h[541..].iter().map(|v| v * v).sum();
        let expected = 10.0 * (e_direct / e_reverb).log10();

        let rir = Rir::new(AudioBuffer::new(h.clone(), sr));
        // direct_delay is None: the peak at 500 must be found.
        let got = drr(&rir).unwrap();
        assert!((got - expected).abs() < 1e-9, "drr {got} expected {expected}");
    }
}
