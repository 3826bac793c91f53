//! Schroeder energy decay curves.

use rir_sim::Rir;

use crate::error::{MetricsError, Result};

/// Values below this are clamped; stands in for the -inf tail after the
/// last nonzero sample.
pub const EDC_FLOOR_DB: f64 = -120.0;

/// Energy decay curve in dB over time, normalized to 0 dB at `t0`.
#[derive(Debug, Clone, PartialEq)]
pub struct Edc {
    pub values_db: Vec<f64>,
    pub sample_rate: u32,
    /// Time origin in seconds.
    pub t0: f64,
}

impl Edc {
    pub fn len(&self) -> usize {
        self.values_db.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values_db.is_empty()
    }

    /// Time of sample `i` in seconds.
    pub fn time_at(&self, i: usize) -> f64 {
        self.t0 + i as f64 / self.sample_rate as f64
    }

    /// Index of the first value at or below `level_db`.
    pub fn first_crossing(&self, level_db: f64) -> Option<usize> {
        self.values_db.iter().position(|&v| v <= level_db)
    }
}

/// Schroeder backward integration:
/// `EDC(t) = 10 log10( sum_{n>=t} h[n]^2 / sum_n h[n]^2 )`, clamped at
/// [`EDC_FLOOR_DB`].
pub fn edc(rir: &Rir) -> Result<Edc> {
    let h = &rir.h.samples;
    if h.is_empty() {
        return Err(MetricsError::Degenerate("empty rir".into()));
    }
    let mut tail = vec![0.0f64; h.len()];
    let mut acc = 0.0f64;
    for i in (0..h.len()).rev() {
        acc += h[i] * h[i];
        tail[i] = acc;
    }
    let total = tail[0];
    if !(total.is_finite() && total > 0.0) {
        return Err(MetricsError::Degenerate(format!(
            "rir energy {total} is not positive and finite"
        )));
    }
    let values_db = tail
        .iter()
        .map(|&e| {
            if e <= 0.0 {
                EDC_FLOOR_DB
            } else {
                (10.0 * (e / total).log10()).max(EDC_FLOOR_DB)
            }
        })
        .collect();
    Ok(Edc {
        values_db,
        sample_rate: rir.h.sample_rate,
        t0: 0.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use audio_core::AudioBuffer;
    use rir_sim::synth_exponential_rir;

    fn rir_from(samples: Vec<f64>) -> Rir {
        Rir::new(AudioBuffer::new(samples, 16000))
    }

    #[test]
    fn starts_at_zero_db_and_never_increases() {
        let rir = synth_exponential_rir(0.4, 0.8, 16000, 3).unwrap();
        let curve = edc(&rir).unwrap();
        assert_eq!(curve.values_db[0], 0.0);
        for w in curve.values_db.windows(2) {
            assert!(w[1] <= w[0] + 1e-9);
        }
    }

    #[test]
    fn single_impulse_drops_to_floor_immediately() {
        let mut samples = vec![0.0; 100];
        samples[0] = 1.0;
        let curve = edc(&rir_from(samples)).unwrap();
        assert_eq!(curve.values_db[0], 0.0);
        for &v in &curve.values_db[1..] {
            assert_eq!(v, EDC_FLOOR_DB);
        }
    }

    #[test]
    fn exponential_rir_gives_straight_line_at_minus_120_db_per_s() {
        // t60 = 0.5 s -> energy slope -60/0.5 = -120 dB/s. Fit the
        // (-5, -35) dB region; construction tolerance is +-6 dB/s.
        let rir = synth_exponential_rir(0.5, 1.5, 16000, 11).unwrap();
        let curve = edc(&rir).unwrap();
        let i5 = curve.first_crossing(-5.0).unwrap();
        let i35 = curve.first_crossing(-35.0).unwrap();
        let pts: Vec<(f64, f64)> = (i5..=i35)
            .map(|i| (curve.time_at(i), curve.values_db[i]))
            .collect();
        let n = pts.len() as f64;
        let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
        let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
        let slope = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum::<f64>()
            / pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum::<f64>();
        assert!((slope - (-120.0)).abs() < 6.0, "slope {slope}");
    }

    #[test]
    fn zero_energy_rir_is_degenerate() {
        assert!(matches!(
            edc(&rir_from(vec![0.0; 64])),
            Err(MetricsError::Degenerate(_))
        ));
    }

    #[test]
    fn scale_invariant() {
        let rir = synth_exponential_rir(0.3, 0.6, 16000, 5).unwrap();
        let mut scaled = rir.clone();
        for v in scaled.h.samples.iter_mut() {
            *v *= 10.0;
        }
        let a = edc(&rir).unwrap();
        let b = edc(&scaled).unwrap();
        for (x, y) in a.values_db.iter().zip(b.values_db.iter()) {
            assert!((x - y).abs() < 1e-9);
        }
    }
}
