use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::manifest::UtteranceRecord;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpeakerStats {
    pub unique_speakers: usize,
    pub total_hours: f64,
    pub avg_hours_per_speaker: f64,
    pub top_speaker_share: f64,
    pub single_speaker: bool,
}

/// Hours per speaker over records that have both a speaker id and a duration.
pub fn per_speaker_hours(records: &[UtteranceRecord]) -> BTreeMap<String, f64> {
    let mut hours: BTreeMap<String, f64> = BTreeMap::new();
    for r in records {
        if let (Some(spk), Some(d)) = (&r.speaker_id, r.duration_s) {
            *hours.entry(spk.clone()).or_default() += d / 3600.0;
        }
    }
    hours
}

/// Speaker diversity. `None` when no record carries both a speaker id and a
/// duration.
pub fn speaker_stats(records: &[UtteranceRecord]) -> Option<SpeakerStats> {
    let hours = per_speaker_hours(records);
    if hours.is_empty() {
        return None;
    }
    let total_hours: f64 = hours.values().sum();
    let top = hours.values().copied().fold(0.0, f64::max);
    let unique_speakers = hours.len();
    Some(SpeakerStats {
        unique_speakers,
        total_hours,
        avg_hours_per_speaker: total_hours / unique_speakers as f64,
        top_speaker_share: if total_hours > 0.0 {
            top / total_hours
        } else {
            1.0
        },
        single_speaker: unique_speakers == 1,
    })
}
