use serde::{Deserialize, Serialize};

use crate::error::{Result, RirError};

/// Minimum distance from any wall for sources and receivers, meters.
pub const WALL_MARGIN: f64 = 0.1;
/// Minimum source-receiver separation, meters.
pub const MIN_SEPARATION: f64 = 0.05;

/// Rectangular (shoebox) room with one source and one receiver.
///
/// `absorption` holds one coefficient per surface in the order
/// `[x=0, x=Lx, y=0, y=Ly, z=0, z=Lz]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RoomSpec {
    pub dims: [f64; 3],
    pub absorption: [f64; 6],
    pub source: [f64; 3],
    pub receiver: [f64; 3],
    pub max_order: usize,
    pub speed_of_sound: f64,
    pub sample_rate: u32,
}

impl RoomSpec {
    /// Room with the same absorption on all six surfaces and the default
    /// speed of sound (343 m/s), sample rate (16 kHz) and order (40).
    pub fn uniform(dims: [f64; 3], alpha: f64, source: [f64; 3], receiver: [f64; 3]) -> Self {
        Self {
            dims,
            absorption: [alpha; 6],
            source,
            receiver,
            max_order: 40,
            speed_of_sound: 343.0,
            sample_rate: 16000,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for d in self.dims {
            if !(d.is_finite() && d > 0.0) {
                return Err(RirError::Config(format!("non-positive room dim {d}")));
            }
        }
        for a in self.absorption {
            if !(0.0..=1.0).contains(&a) {
                return Err(RirError::Config(format!("absorption {a} outside [0, 1]")));
            }
        }
        for (name, p) in [("source", self.source), ("receiver", self.receiver)] {
            for i in 0..3 {
                if !(p[i] >= WALL_MARGIN && p[i] <= self.dims[i] - WALL_MARGIN) {
                    return Err(RirError::Config(format!(
                        "{name} not inside room with {WALL_MARGIN} m margin"
                    )));
                }
            }
        }
        if self.source_receiver_distance() < MIN_SEPARATION {
            return Err(RirError::Config(format!(
                "source and receiver closer than {MIN_SEPARATION} m"
            )));
        }
        if !(self.speed_of_sound.is_finite() && self.speed_of_sound > 0.0) {
            return Err(RirError::Config("speed of sound must be positive".into()));
        }
        if self.sample_rate == 0 {
            return Err(RirError::Config("sample rate must be positive".into()));
        }
        Ok(())
    }

    pub fn source_receiver_distance(&self) -> f64 {
        let mut d2 = 0.0;
        for i in 0..3 {
            let d = self.source[i] - self.receiver[i];
            d2 += d * d;
        }
        d2.sqrt()
    }

    pub fn volume(&self) -> f64 {
        self.dims[0] * self.dims[1] * self.dims[2]
    }

    /// Wall areas matching the `absorption` surface order.
    pub fn surface_areas(&self) -> [f64; 6] {
        let [lx, ly, lz] = self.dims;
        [
            ly * lz,
            ly * lz,
            lx * lz,
            lx * lz,
            lx * ly,
            lx * ly,
        ]
    }

    pub fn total_surface(&self) -> f64 {
        self.surface_areas().iter().sum()
    }

    /// Total absorption area `sum(S_i * alpha_i)` in sabins.
    pub fn absorption_area(&self) -> f64 {
        self.surface_areas()
            .iter()
            .zip(self.absorption.iter())
            .map(|(s, a)| s * a)
            .sum()
    }

    /// Sabine reverberation time `0.161 V / A`.
    pub fn sabine_t60(&self) -> f64 {
        0.161 * self.volume() / self.absorption_area()
    }

    /// Eyring reverberation time `0.161 V / (-S ln(1 - mean_alpha))`,
    /// the better statistical prediction at moderate-to-high absorption.
    pub fn eyring_t60(&self) -> f64 {
        let s = self.total_surface();
        let mean_alpha = self.absorption_area() / s;
        0.161 * self.volume() / (-s * (1.0 - mean_alpha).ln())
    }
}
