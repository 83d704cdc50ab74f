//! Per-utterance and per-corpus audio statistics: energy-based speech
//! segmentation, segmentation-based SNR, duration percentiles and usable
//! hours.

use serde::{Deserialize, Serialize};

use crate::error::{AuditError, Result};

/// Energy detector settings. All levels are `10·log10` power values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct VadConfig {
    pub frame_ms: f64,
    pub hop_ms: f64,
    /// Margin above the estimated noise floor, in dB.
    pub relative_margin_db: f64,
    /// Frames must also exceed this level, in dBFS.
    pub absolute_floor_dbfs: f64,
    pub min_speech_ms: f64,
    pub max_gap_ms: f64,
    /// Percentile of frame levels taken as the noise floor.
    pub noise_floor_percentile: f64,
}

impl Default for VadConfig {
    fn default() -> Self {
        VadConfig {
            frame_ms: 25.0,
            hop_ms: 10.0,
            relative_margin_db: 12.0,
            absolute_floor_dbfs: -60.0,
            min_speech_ms: 100.0,
            max_gap_ms: 150.0,
            noise_floor_percentile: 0.20,
        }
    }
}

impl VadConfig {
    pub fn validate(&self) -> Result<()> {
        let finite = [
            self.frame_ms,
            self.hop_ms,
            self.relative_margin_db,
            self.absolute_floor_dbfs,
            self.min_speech_ms,
            self.max_gap_ms,
            self.noise_floor_percentile,
        ]
        .iter()
        .all(|v| v.is_finite());
        if !finite {
            return Err(AuditError::config("vad: all values must be finite"));
        }
        if !(self.hop_ms > 0.0 && self.frame_ms >= self.hop_ms) {
            return Err(AuditError::config("vad: need frame_ms >= hop_ms > 0"));
        }
        if !(self.noise_floor_percentile > 0.0 && self.noise_floor_percentile < 1.0) {
            return Err(AuditError::config(
                "vad: noise_floor_percentile must be in (0, 1)",
            ));
        }
        if self.relative_margin_db <= 0.0 {
            return Err(AuditError::config(
                "vad: relative_margin_db must be positive",
            ));
        }
        if self.min_speech_ms < 0.0 || self.max_gap_ms < 0.0 {
            return Err(AuditError::config(
                "vad: min_speech_ms and max_gap_ms must be non-negative",
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VadSegmentation {
    /// Smoothed per-frame decisions, `true` = speech.
    pub frame_decisions: Vec<bool>,
    pub speech_s: f64,
    pub total_s: f64,
    pub speech_proportion: f64,
    /// Disjoint, sorted `(start_s, end_s)` speech spans.
    pub segments: Vec<(f64, f64)>,
    pub frame_len: usize,
    pub hop_len: usize,
    pub sample_rate: u32,
}

/// A speech/non-speech segmenter. The energy detector is the default; a
/// learned detector can implement the same trait.
pub trait SpeechSegmenter: Send + Sync {
    fn segment(&self, samples: &[f32], sample_rate: u32) -> Result<VadSegmentation>;
}

#[derive(Debug, Clone, Default)]
pub struct EnergyVad {
    pub config: VadConfig,
}

impl SpeechSegmenter for EnergyVad {
    fn segment(&self, samples: &[f32], sample_rate: u32) -> Result<VadSegmentation> {
        segment_speech(samples, sample_rate, &self.config)
    }
}

const POWER_FLOOR: f64 = 1e-20;

fn frame_powers(samples: &[f32], frame_len: usize, hop_len: usize) -> Vec<f64> {
    let n_frames = 1 + (samples.len() - frame_len) / hop_len;
    (0..n_frames)
        .map(|i| {
            let frame = &samples[i * hop_len..i * hop_len + frame_len];
            frame
                .iter()
                .map(|&x| f64::from(x) * f64::from(x))
                .sum::<f64>()
                / frame_len as f64
        })
        .collect()
}

fn power_db(p: f64) -> f64 {
    10.0 * p.max(POWER_FLOOR).log10()
}

/// Runs of equal values as `(start, end_exclusive, value)`.
fn runs(decisions: &[bool]) -> Vec<(usize, usize, bool)> {
    let mut out = Vec::new();
    let mut start = 0;
    for i in 1..=decisions.len() {
        if i == decisions.len() || decisions[i] != decisions[start] {
            out.push((start, i, decisions[start]));
            start = i;
        }
    }
    out
}

/// Fills interior non-speech gaps shorter than `max_gap_frames`, then
/// removes speech islands shorter than `min_speech_frames`.
fn smooth(raw: &[bool], max_gap_ms: f64, min_speech_ms: f64, hop_ms: f64) -> Vec<bool> {
    let mut d = raw.to_vec();
    let r = runs(&d);
    for (k, &(s, e, v)) in r.iter().enumerate() {
        let interior = k > 0 && k + 1 < r.len();
        if !v && interior && ((e - s) as f64) * hop_ms < max_gap_ms {
            d[s..e].iter_mut().for_each(|x| *x = true);
        }
    }
    for (s, e, v) in runs(&d) {
        if v && ((e - s) as f64) * hop_ms < min_speech_ms {
            d[s..e].iter_mut().for_each(|x| *x = false);
        }
    }
    d
}

/// Labels frames as speech when their RMS level clears
/// `max(noise_floor + margin, absolute_floor)`, then smooths the decisions.
///
/// Frame `i` is attributed the time slot centred on the frame centre, one hop
/// wide; the first and last slots are stretched to cover `[0, total_s]`.
pub fn segment_speech(
    samples: &[f32],
    sample_rate: u32,
    config: &VadConfig,
) -> Result<VadSegmentation> {
    config.validate()?;
    if sample_rate < 8000 {
        return Err(AuditError::InvalidAudio(format!(
            "sample rate {sample_rate} Hz is below 8000 Hz"
        )));
    }
    if let Some(pos) = samples.iter().position(|x| !x.is_finite()) {
        return Err(AuditError::InvalidAudio(format!(
            "non-finite sample at index {pos}"
        )));
    }
    let sr = f64::from(sample_rate);
    let frame_len = ((config.frame_ms * sr / 1000.0).round() as usize).max(1);
    let hop_len = ((config.hop_ms * sr / 1000.0).round() as usize).max(1);
    if samples.len() < frame_len {
        return Err(AuditError::TooShortAudio {
            samples: samples.len(),
            frame: frame_len,
        });
    }

    let levels: Vec<f64> = frame_powers(samples, frame_len, hop_len)
        .into_iter()
        .map(power_db)
        .collect();
    let mut sorted = levels.clone();
    sorted.sort_by(f64::total_cmp);
    let noise_floor = percentile_sorted(&sorted, config.noise_floor_percentile);
    let threshold = (noise_floor + config.relative_margin_db).max(config.absolute_floor_dbfs);
    let raw: Vec<bool> = levels.iter().map(|&l| l > threshold).collect();
    let hop_ms = hop_len as f64 * 1000.0 / sr;
    let decisions = smooth(&raw, config.max_gap_ms, config.min_speech_ms, hop_ms);

    let total_s = samples.len() as f64 / sr;
    let n = decisions.len();
    let slot_start = |i: usize| -> f64 {
        if i == 0 {
            0.0
        } else if i >= n {
            total_s
        } else {
            let centre = i * hop_len + frame_len / 2;
            ((centre as f64 - hop_len as f64 / 2.0) / sr).clamp(0.0, total_s)
        }
    };
    let segments: Vec<(f64, f64)> = runs(&decisions)
        .into_iter()
        .filter(|r| r.2)
        .map(|(s, e, _)| (slot_start(s), slot_start(e)))
        .collect();
    let speech_s = segments.iter().fold(0.0, |acc, (s, e)| acc + (e - s));
    Ok(VadSegmentation {
        frame_decisions: decisions,
        speech_s,
        total_s,
        speech_proportion: if total_s > 0.0 {
            (speech_s / total_s).clamp(0.0, 1.0)
        } else {
            0.0
        },
        segments,
        frame_len,
        hop_len,
        sample_rate,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SnrEstimate {
    Db(f64),
    NoSpeech,
    NoNoiseReference,
    /// Non-speech frames are digitally silent, the ratio is unbounded.
    SilentNoiseReference,
}

impl SnrEstimate {
    pub fn db(&self) -> Option<f64> {
        match self {
            SnrEstimate::Db(v) => Some(*v),
            _ => None,
        }
    }
}

/// `10·log10(mean speech-frame power / mean non-speech-frame power)`.
pub fn snr_from_frame_powers(powers: &[f64], speech: &[bool]) -> SnrEstimate {
    let (mut sp, mut ns, mut np, mut nn) = (0.0, 0usize, 0.0, 0usize);
    for (&p, &is_speech) in powers.iter().zip(speech) {
        if is_speech {
            sp += p;
            ns += 1;
        } else {
            np += p;
            nn += 1;
        }
    }
    if ns == 0 {
        return SnrEstimate::NoSpeech;
    }
    if nn == 0 {
        return SnrEstimate::NoNoiseReference;
    }
    let noise = np / nn as f64;
    if noise <= 0.0 {
        return SnrEstimate::SilentNoiseReference;
    }
    SnrEstimate::Db(10.0 * ((sp / ns as f64) / noise).log10())
}

/// SNR of `samples` using the frame layout and decisions of `segmentation`.
pub fn estimate_snr(
    samples: &[f32],
    sample_rate: u32,
    segmentation: &VadSegmentation,
) -> Result<SnrEstimate> {
    if sample_rate != segmentation.sample_rate || samples.len() < segmentation.frame_len {
        return Err(AuditError::InvalidInput(
            "segmentation does not belong to these samples".to_string(),
        ));
    }
    let powers = frame_powers(samples, segmentation.frame_len, segmentation.hop_len);
    if powers.len() != segmentation.frame_decisions.len() {
        return Err(AuditError::InvalidInput(
            "segmentation does not belong to these samples".to_string(),
        ));
    }
    Ok(snr_from_frame_powers(
        &powers,
        &segmentation.frame_decisions,
    ))
}

/// Linear interpolation between order statistics (inclusive method).
/// `sorted` must be ascending and non-empty.
pub fn percentile_sorted(sorted: &[f64], q: f64) -> f64 {
    debug_assert!(!sorted.is_empty());
    let pos = q.clamp(0.0, 1.0) * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    let frac = pos - lo as f64;
    sorted[lo] + (sorted[hi] - sorted[lo]) * frac
}

pub fn median(values: &[f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    Some(percentile_sorted(&v, 0.5))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DurationStats {
    pub n: usize,
    pub median_s: f64,
    pub p99_s: f64,
    pub mean_s: f64,
    pub min_s: f64,
    pub max_s: f64,
    pub under_10s_fraction: f64,
    pub total_hours: f64,
}

pub fn duration_stats(durations: &[f64]) -> Result<DurationStats> {
    if durations.is_empty() {
        return Err(AuditError::EmptyInput("no durations"));
    }
    if let Some(bad) = durations.iter().find(|d| !(d.is_finite() && **d > 0.0)) {
        return Err(AuditError::InvalidInput(format!(
            "duration {bad} is not finite and positive"
        )));
    }
    let mut sorted = durations.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len();
    let total: f64 = sorted.iter().sum();
    Ok(DurationStats {
        n,
        median_s: percentile_sorted(&sorted, 0.5),
        p99_s: percentile_sorted(&sorted, 0.99),
        mean_s: total / n as f64,
        min_s: sorted[0],
        max_s: sorted[n - 1],
        under_10s_fraction: sorted.iter().filter(|&&d| d < 10.0).count() as f64 / n as f64,
        total_hours: total / 3600.0,
    })
}

/// Hours of audio that are actually speech.
pub fn usable_hours(total_hours: f64, speech_proportion: f64) -> Result<f64> {
    if !(total_hours.is_finite() && total_hours >= 0.0) {
        return Err(AuditError::InvalidInput(format!(
            "total_hours {total_hours} must be >= 0"
        )));
    }
    if !(0.0..=1.0).contains(&speech_proportion) {
        return Err(AuditError::InvalidInput(format!(
            "speech_proportion {speech_proportion} must be in [0, 1]"
        )));
    }
    Ok(total_hours * speech_proportion)
}
