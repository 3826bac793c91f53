use audio_core::AudioBuffer;

use crate::room::RoomSpec;

/// Room impulse response with optional provenance.
#[derive(Debug, Clone)]
pub struct Rir {
    pub h: AudioBuffer,
    /// Geometry the response was simulated from, when known.
    pub room: Option<RoomSpec>,
    /// Direct-path propagation time in seconds, when known.
    pub direct_delay: Option<f64>,
}

impl Rir {
    pub fn new(h: AudioBuffer) -> Self {
        Self {
            h,
            room: None,
            direct_delay: None,
        }
    }

    pub fn sample_rate(&self) -> u32 {
        self.h.sample_rate
    }

    pub fn energy(&self) -> f64 {
        self.h.energy()
    }
}
