//! Flat per-item metric record; serializes to a flat JSON object with
//! snake_case keys, absent metrics omitted.

use serde::{Deserialize, Serialize};

/// Where an RT60 number came from: a blind estimate on speech or a
/// Schroeder fit on a known RIR.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rt60Source {
    Blind,
    Oracle,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct AcousticReport {
    /// Reverberation time, seconds.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rt60: Option<f64>,
    /// Early decay time, seconds.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub edt: Option<f64>,
    /// Direct-to-reverberant ratio, dB.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub drr: Option<f64>,
    /// Reverberation time error vs a reference signal, seconds.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rte: Option<f64>,
    /// Speech-to-reverberation modulation energy ratio, dimensionless.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub srmr: Option<f64>,
    /// |RT60_predicted - RT60_reference|, seconds.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta_rt60: Option<f64>,
    /// |EDT_predicted - EDT_reference|, seconds.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta_edt: Option<f64>,
    /// |DRR_predicted - DRR_reference|, dB.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta_drr: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rt60_source: Option<Rt60Source>,
    /// Fit range used for the oracle RT60 ("t30" or "t20").
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rt60_estimator: Option<String>,
}

impl AcousticReport {
    /// Panics if any present field violates its range invariant; used by
    /// tests and the harness before serialization.
    pub fn assert_invariants(&self) {
        if let Some(v) = self.rt60 {
            assert!(v > 0.0 && v.is_finite(), "rt60 {v}");
        }
        if let Some(v) = self.edt {
            assert!(v > 0.0 && v.is_finite(), "edt {v}");
        }
        if let Some(v) = self.drr {
            assert!((-80.0..=80.0).contains(&v), "drr {v}");
        }
        for (name, v) in [
            ("rte", self.rte),
            ("delta_rt60", self.delta_rt60),
            ("delta_edt", self.delta_edt),
        ] {
            if let Some(v) = v {
                assert!(v >= 0.0 && v.is_finite(), "{name} {v}");
            }
        }
        if let Some(v) = self.delta_drr {
            assert!(v >= 0.0 && v.is_finite(), "delta_drr {v}");
        }
        if let Some(v) = self.srmr {
            assert!(v >= 0.0 && v.is_finite(), "srmr {v}");
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn serializes_flat_with_absent_fields_omitted() {
        let report = AcousticReport {
            rt60: Some(0.5),
            srmr: Some(4.2),
            rt60_source: Some(Rt60Source::Blind),
            ..Default::default()
        };
        let json = serde_json::to_value(&report).unwrap();
        assert_eq!(json["rt60"], 0.5);
        assert_eq!(json["srmr"], 4.2);
        assert_eq!(json["rt60_source"], "blind");
        assert!(json.get("edt").is_none());
        assert!(json.get("delta_rt60").is_none());
    }
}
