//! Signal plumbing shared by the whole toolkit: WAV I/O, STFT/ISTFT,
//! fast convolution and log-mel features.
//!
//! Everything here is a pure function on immutable inputs; there is no
//! shared mutable state and all operations are safe to call from many
//! threads at once. Internal processing is in `f64`.

pub mod buffer;
pub mod conv;
pub mod error;
pub mod fft;
pub mod mel;
pub mod stft;
pub mod wav;

pub use buffer::AudioBuffer;
pub use conv::convolve;
pub use error::{AudioError, Result};
pub use mel::{logmel, MelConfig, MelFeature};
pub use stft::{istft, stft, Spectrogram, StftConfig, WindowKind};
pub use wav::{read_wav, read_wav_channel, write_wav, WavEncoding};
