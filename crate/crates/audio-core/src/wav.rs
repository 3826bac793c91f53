//! WAV file reading and writing. PCM 16-bit and IEEE float 32-bit only;
//! everything else is rejected rather than silently converted.

use std::path::Path;

use crate::buffer::AudioBuffer;
use crate::error::{AudioError, Result};

/// Sample encoding used by [`write_wav`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WavEncoding {
    Pcm16,
    Float32,
}

/// Largest value representable by pcm16 after the 1/32768 scaling.
pub const PCM16_MAX: f64 = 32767.0 / 32768.0;

fn map_hound(err: hound::Error) -> AudioError {
    match err {
        hound::Error::IoError(e) => AudioError::Io(e),
        hound::Error::Unsupported => {
            AudioError::Unsupported("encoding not supported by wav reader".into())
        }
        other => AudioError::Format(other.to_string()),
    }
}

/// Read channel 0 of a WAV file. See [`read_wav_channel`].
pub fn read_wav<P: AsRef<Path>>(path: P) -> Result<AudioBuffer> {
    read_wav_channel(path, 0)
}

/// Read one channel of a RIFF/WAVE file as floating amplitude.
///
/// PCM 16-bit samples are scaled by 1/32768; IEEE float 32-bit samples are
/// taken as-is. Other encodings produce [`AudioError::Unsupported`].
pub fn read_wav_channel<P: AsRef<Path>>(path: P, channel: usize) -> Result<AudioBuffer> {
    let mut reader = hound::WavReader::open(path).map_err(map_hound)?;
    let spec = reader.spec();
    let channels = spec.channels as usize;
    if channel >= channels {
        return Err(AudioError::Config(format!(
            "channel {channel} requested but file has {channels}"
        )));
    }

    let samples: Vec<f64> = match (spec.sample_format, spec.bits_per_sample) {
        (hound::SampleFormat::Int, 16) => reader
            .samples::<i16>()
            .enumerate()
            .filter(|(i, _)| i % channels == channel)
            .map(|(_, s)| s.map(|v| v as f64 / 32768.0).map_err(map_hound))
            .collect::<Result<_>>()?,
        (hound::SampleFormat::Float, 32) => reader
            .samples::<f32>()
            .enumerate()
            .filter(|(i, _)| i % channels == channel)
            .map(|(_, s)| s.map(|v| v as f64).map_err(map_hound))
            .collect::<Result<_>>()?,
        (fmt, bits) => {
            return Err(AudioError::Unsupported(format!(
                "{bits}-bit {fmt:?} wav; only 16-bit PCM and 32-bit float are read"
            )))
        }
    };

    if !samples.iter().all(|s| s.is_finite()) {
        return Err(AudioError::Format("file contains non-finite samples".into()));
    }
    Ok(AudioBuffer::new(samples, spec.sample_rate))
}

/// Write a buffer out as mono WAV.
///
/// `Pcm16` clips to [-1, 1 - 2^-15] and quantizes with round-half-away-
/// from-zero; `Float32` narrows each sample to `f32`.
pub fn write_wav<P: AsRef<Path>>(
    buffer: &AudioBuffer,
    path: P,
    encoding: WavEncoding,
) -> Result<()> {
    let spec = hound::WavSpec {
        channels: 1,
        sample_rate: buffer.sample_rate,
        bits_per_sample: match encoding {
            WavEncoding::Pcm16 => 16,
            WavEncoding::Float32 => 32,
        },
        sample_format: match encoding {
            WavEncoding::Pcm16 => hound::SampleFormat::Int,
            WavEncoding::Float32 => hound::SampleFormat::Float,
        },
    };
    let mut writer = hound::WavWriter::create(path, spec).map_err(map_hound)?;
    match encoding {
        WavEncoding::Pcm16 => {
            for &s in &buffer.samples {
                let clipped = s.clamp(-1.0, PCM16_MAX);
                // f64::round is round-half-away-from-zero.
                let q = (clipped * 32768.0).round() as i32;
                let q = q.clamp(i16::MIN as i32, i16::MAX as i32) as i16;
                writer.write_sample(q).map_err(map_hound)?;
            }
        }
        WavEncoding::Float32 => {
            for &s in &buffer.samples {
                writer.write_sample(s as f32).map_err(map_hound)?;
            }
        }
    }
    writer.finalize().map_err(map_hound)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use tempfile::tempdir;

    #[test]
    fn pcm16_sample_scaling_is_exact() {
        let dir = tempdir().unwrap();
        let path = dir.path().join("a.wav");
        let spec = hound::WavSpec {
            channels: 1,
            sample_rate: 16000,
            bits_per_sample: 16,
            sample_format: hound::SampleFormat::Int,
        };
        let mut w = hound::WavWriter::create(&path, spec).unwrap();
        w.write_sample(16384i16).unwrap();
        w.finalize().unwrap();

        let buf = read_wav(&path).unwrap();
        assert_eq!(buf.samples, vec![0.5]);
        assert_eq!(buf.sample_rate, 16000);
    }

    #[test]
    fn float32_file_roundtrips_bit_exactly() {
        let dir = tempdir().unwrap();
        let p1 = dir.path().join("a.wav");
        let p2 = dir.path().join("b.wav");
        let vals: Vec<f64> = (0..1000)
            .map(|i| ((i as f32) * 0.01f32).sin() as f64)
            .collect();
        write_wav(&AudioBuffer::new(vals, 16000), &p1, WavEncoding::Float32).unwrap();
        let a = read_wav(&p1).unwrap();
        write_wav(&a, &p2, WavEncoding::Float32).unwrap();
        let b = read_wav(&p2).unwrap();
        assert_eq!(a.samples, b.samples);
    }

    #[test]
    fn duration_2_56s_at_16k_is_40960_samples() {
        let dir = tempdir().unwrap();
        let path = dir.path().join("a.wav");
        let buf = AudioBuffer::zeros(40960, 16000);
        write_wav(&buf, &path, WavEncoding::Pcm16).unwrap();
        let back = read_wav(&path).unwrap();
        assert_eq!(back.len(), 40960);
        assert_eq!(back.duration(), 2.56);
    }

    #[test]
    fn pcm16_clips_out_of_range() {
        let dir = tempdir().unwrap();
        let path = dir.path().join("a.wav");
        let buf = AudioBuffer::new(vec![2.0, -2.0], 16000);
        write_wav(&buf, &path, WavEncoding::Pcm16).unwrap();
        let back = read_wav(&path).unwrap();
        assert_eq!(back.samples[0], PCM16_MAX);
        assert_eq!(back.samples[1], -1.0);
    }

    #[test]
    fn pcm16_quantization_error_bounded_by_one_lsb() {
        let dir = tempdir().unwrap();
        let path = dir.path().join("a.wav");
        let vals: Vec<f64> = (0..4096)
            .map(|i| ((i as f64 * 0.127).sin() * 0.99))
            .collect();
        let buf = AudioBuffer::new(vals.clone(), 16000);
        write_wav(&buf, &path, WavEncoding::Pcm16).unwrap();
        let back = read_wav(&path).unwrap();
        for (a, b) in vals.iter().zip(back.samples.iter()) {
            assert!((a - b).abs() <= 1.0 / 32768.0);
        }
    }

    #[test]
    fn second_channel_can_be_selected() {
        let dir = tempdir().unwrap();
        let path = dir.path().join("st.wav");
        let spec = hound::WavSpec {
            channels: 2,
            sample_rate: 16000,
            bits_per_sample: 16,
            sample_format: hound::SampleFormat::Int,
        };
        let mut w = hound::WavWriter::create(&path, spec).unwrap();
        for i in 0..4 {
            w.write_sample((i * 2) as i16).unwrap(); // ch 0
            w.write_sample((i * 2 + 1) as i16).unwrap(); // ch 1
        }
        w.finalize().unwrap();
        let ch0 = read_wav_channel(&path, 0).unwrap();
        let ch1 = read_wav_channel(&path, 1).unwrap();
        assert_eq!(ch0.samples[1], 2.0 / 32768.0);
        assert_eq!(ch1.samples[1], 3.0 / 32768.0);
        assert!(read_wav_channel(&path, 2).is_err());
    }

    #[test]
    fn malformed_header_is_a_format_error() {
        let dir = tempdir().unwrap();
        let path = dir.path().join("bad.wav");
        std::fs::write(&path, b"RIFFxxxxNOTWAVE").unwrap();
        match read_wav(&path) {
            Err(AudioError::Format(_)) | Err(AudioError::Unsupported(_)) => {}
            other => panic!("expected format error, got {other:?}"),
        }
    }

    #[test]
    fn unsupported_bit_depth_is_rejected() {
        let dir = tempdir().unwrap();
        let path = dir.path().join("u8.wav");
        let spec = hound::WavSpec {
            channels: 1,
            sample_rate: 16000,
            bits_per_sample: 8,
            sample_format: hound::SampleFormat::Int,
        };
        let mut w = hound::WavWriter::create(&path, spec).unwrap();
        w.write_sample(10i8).unwrap();
        w.finalize().unwrap();
        match read_wav(&path) {
            Err(AudioError::Unsupported(_)) => {}
            other => panic!("expected unsupported error, got {other:?}"),
        }
    }
}
