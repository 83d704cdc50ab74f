//! Audio decoding. The core only understands RIFF/WAV with 8- or 16-bit
//! integer PCM; other containers plug in through [`AudioDecoder`].

use std::path::Path;

use hound::{SampleFormat, WavReader};

use crate::error::{AuditError, Result};

/// Mono samples in `[-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct DecodedAudio {
    pub samples: Vec<f32>,
    pub sample_rate: u32,
}

impl DecodedAudio {
    pub fn duration_s(&self) -> f64 {
        self.samples.len() as f64 / self.sample_rate as f64
    }
}

pub trait AudioDecoder: Send + Sync {
    fn decode(&self, path: &Path) -> Result<DecodedAudio>;

    /// Duration without necessarily decoding every sample.
    fn duration_s(&self, path: &Path) -> Result<f64> {
        self.decode(path).map(|a| a.duration_s())
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct WavDecoder;

fn decode_err(path: &Path, reason: impl ToString) -> AuditError {
    AuditError::Decode {
        path: path.to_path_buf(),
        reason: reason.to_string(),
    }
}

fn open(path: &Path) -> Result<WavReader<std::io::BufReader<std::fs::File>>> {
    let reader = WavReader::open(path).map_err(|e| match e {
        hound::Error::IoError(io) => AuditError::io(path, io),
        other => decode_err(path, other),
    })?;
    let spec = reader.spec();
    if spec.sample_format != SampleFormat::Int
        || !(spec.bits_per_sample == 8 || spec.bits_per_sample == 16)
    {
        return Err(decode_err(
            path,
            format!(
                "unsupported encoding: {:?} {}-bit (only 8/16-bit integer PCM)",
                spec.sample_format, spec.bits_per_sample
            ),
        ));
    }
    if spec.channels == 0 || spec.sample_rate == 0 {
        return Err(decode_err(path, "zero channels or sample rate"));
    }
    Ok(reader)
}

impl AudioDecoder for WavDecoder {
    fn decode(&self, path: &Path) -> Result<DecodedAudio> {
        let mut reader = open(path)?;
        let spec = reader.spec();
        let scale = if spec.bits_per_sample == 8 {
            128.0
        } else {
            32768.0
        };
        let channels = usize::from(spec.channels);
        let interleaved: Vec<i16> = reader
            .samples::<i16>()
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| decode_err(path, e))?;
        if !interleaved.len().is_multiple_of(channels) {
            return Err(decode_err(path, "truncated final frame"));
        }
        let samples = interleaved
            .chunks_exact(channels)
            .map(|frame| {
                let sum: f32 = frame.iter().map(|&s| f32::from(s) / scale).sum();
                sum / channels as f32
            })
            .collect();
        Ok(DecodedAudio {
            samples,
            sample_rate: spec.sample_rate,
        })
    }

    fn duration_s(&self, path: &Path) -> Result<f64> {
        let reader = open(path)?;
        Ok(f64::from(reader.duration()) / f64::from(reader.spec().sample_rate))
    }
}

/// Writes mono 16-bit PCM; used by fixtures and tests.
pub fn write_wav_i16(path: &Path, samples: &[f32], sample_rate: u32) -> Result<()> {
    let spec = hound::WavSpec {
        channels: 1,
        sample_rate,
        bits_per_sample: 16,
        sample_format: SampleFormat::Int,
    };
    let mut w = hound::WavWriter::create(path, spec).map_err(|e| decode_err(path, e))?;
    for &s in samples {
        let v = (s.clamp(-1.0, 1.0) * 32767.0).round() as i16;
        w.write_sample(v).map_err(|e| decode_err(path, e))?;
    }
    w.finalize().map_err(|e| decode_err(path, e))
}
