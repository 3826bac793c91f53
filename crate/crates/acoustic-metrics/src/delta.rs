//! Absolute parameter errors between a predicted and a reference RIR.

use rir_sim::Rir;

use crate::decay::{edt_from_edc, rt60_from_edc, Rt60Estimate};
use crate::drr::drr;
use crate::edc::edc;
use crate::error::{MetricsError, Result, Side};
use crate::report::{AcousticReport, Rt60Source};

/// All RIR-level metrics are computed on fixed windows of this length.
pub const ANALYSIS_WINDOW_SECONDS: f64 = 2.56;

/// Half-width of the fractional-delay kernel used by the simulator; the
/// onset trim backs off this far so the direct pulse stays intact.
const ONSET_BACKOFF: usize = 40;

/// Crop or zero-pad an RIR to the fixed analysis window.
pub fn fit_analysis_window(rir: &Rir) -> Rir {
    let len = (ANALYSIS_WINDOW_SECONDS * rir.h.sample_rate as f64).round() as usize;
    Rir {
        h: rir.h.fit_to_len(len),
        room: rir.room.clone(),
        direct_delay: rir.direct_delay,
    }
}

/// First sample within 20 dB of the global peak, backed off by the kernel
/// half-width. Zero for an all-zero signal.
fn onset_index(h: &[f64]) -> usize {
    let peak = h.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if peak <= 0.0 {
        return 0;
    }
    let thresh = peak * 0.1;
    h.iter()
        .position(|v| v.abs() >= thresh)
        .unwrap_or(0)
        .saturating_sub(ONSET_BACKOFF)
}

/// Standard measurement preparation: align the time origin to the direct
/// arrival (the decay fits would otherwise see the propagation-delay
/// plateau), then crop or pad to the fixed window.
pub fn prepare_rir(rir: &Rir) -> Rir {
    let onset = onset_index(&rir.h.samples);
    let trimmed = Rir {
        h: audio_core::AudioBuffer::new(
            rir.h.samples[onset..].to_vec(),
            rir.h.sample_rate,
        ),
        room: rir.room.clone(),
        direct_delay: rir
            .direct_delay
            .map(|t| (t - onset as f64 / rir.h.sample_rate as f64).max(0.0)),
    };
    fit_analysis_window(&trimmed)
}

struct SideAnalysis {
    rt60: Rt60Estimate,
    edt: f64,
    drr: f64,
}

fn analyze(rir: &Rir, side: Side) -> Result<SideAnalysis> {
    let wrap = |e: MetricsError| MetricsError::SideFailed {
        side,
        source: Box::new(e),
    };
    let windowed = prepare_rir(rir);
    let curve = edc(&windowed).map_err(wrap)?;
    Ok(SideAnalysis {
        rt60: rt60_from_edc(&curve).map_err(wrap)?,
        edt: edt_from_edc(&curve).map_err(wrap)?,
        drr: drr(&windowed).map_err(wrap)?,
    })
}

/// Absolute RT60/EDT/DRR errors between two RIRs, both analyzed on fixed
/// 2.56 s windows. The report carries the predicted side's absolute values
/// alongside the deltas.
pub fn rir_delta(predicted: &Rir, reference: &Rir) -> Result<AcousticReport> {
    if predicted.h.sample_rate != reference.h.sample_rate {
        return Err(MetricsError::Config(format!(
            "sample rate mismatch {} vs {}",
            predicted.h.sample_rate, reference.h.sample_rate
        )));
    }
    let p = analyze(predicted, Side::Predicted)?;
    let r = analyze(reference, Side::Reference)?;
    Ok(AcousticReport {
        rt60: Some(p.rt60.seconds),
        edt: Some(p.edt),
        drr: Some(p.drr),
        delta_rt60: Some((p.rt60.seconds - r.rt60.seconds).abs()),
        delta_edt: Some((p.edt - r.edt).abs()),
        delta_drr: Some((p.drr - r.drr).abs()),
        rt60_source: Some(Rt60Source::Oracle),
        rt60_estimator: Some(p.rt60.estimator.as_str().to_string()),
        ..Default::default()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use audio_core::AudioBuffer;
    use rir_sim::synth_exponential_rir;

    #[test]
    fn identity_pair_has_zero_deltas() {
        let rir = synth_exponential_rir(0.5, 1.2, 16000, 21).unwrap();
        let report = rir_delta(&rir, &rir).unwrap();
        assert_eq!(report.delta_rt60, Some(0.0));
        assert_eq!(report.delta_edt, Some(0.0));
        assert_eq!(report.delta_drr, Some(0.0));
        report.assert_invariants();
    }

    #[test]
    fn synthetic_pair_deltas_match_construction() {
        // t60 0.4 vs 0.6: estimator tolerance compounds to [0.17, 0.23] s.
        let a = synth_exponential_rir(0.4, 1.2, 16000, 31).unwrap();
        let b = synth_exponential_rir(0.6, 1.5, 16000, 32).unwrap();
        let report = rir_delta(&a, &b).unwrap();
        let d = report.delta_rt60.unwrap();
        assert!((0.17..=0.23).contains(&d), "delta rt60 {d}");
    }

    #[test]
    fn failing_side_is_named() {
        let good = synth_exponential_rir(0.5, 1.2, 16000, 33).unwrap();
        let mut impulse = vec![0.0; 4000];
        impulse[0] = 1.0;
        let bad = Rir::new(AudioBuffer::new(impulse, 16000));
        match rir_delta(&bad, &good) {
            Err(MetricsError::SideFailed { side, .. }) => assert_eq!(side, Side::Predicted),
            other => panic!("expected side failure, got {other:?}"),
        }
        match rir_delta(&good, &bad) {
            Err(MetricsError::SideFailed { side, .. }) => assert_eq!(side, Side::Reference),
            other => panic!("expected side failure, got {other:?}"),
        }
    }

    #[test]
    fn window_pads_and_crops_to_2_56_s() {
        let short = synth_exponential_rir(0.2, 0.5, 16000, 1).unwrap();
        assert_eq!(fit_analysis_window(&short).h.len(), 40960);
        let long = synth_exponential_rir(0.2, 4.0, 16000, 1).unwrap();
        assert_eq!(fit_analysis_window(&long).h.len(), 40960);
    }
}
