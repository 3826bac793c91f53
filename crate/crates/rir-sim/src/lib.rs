//! Ground-truth room impulse response generation: shoebox image-source
//! simulation, analytic exponential-decay RIRs, and randomized corpus
//! sampling with known acoustic parameters.

pub mod corpus;
pub mod error;
pub mod highpass;
pub mod image_source;
pub mod rir;
pub mod room;
pub mod synth;

pub use corpus::{item_seed, sample_corpus, sample_room, CorpusConfig};
pub use error::{Result, RirError};
pub use highpass::allen_berkley_highpass;
pub use image_source::{reciprocity_check, simulate_rir, simulate_rir_with_cap};
pub use rir::Rir;
pub use room::RoomSpec;
pub use synth::synth_exponential_rir;
