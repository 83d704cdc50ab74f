//! Quality flags derived from report metrics.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::AuditReport;
use crate::error::{AuditError, Result};
use crate::variety::{VarietyCategory, VarietyClass};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FlagCode {
    ShortUtterances,
    ExtremeShortUtterances,
    LowSpeechProportion,
    SingleSpeaker,
    SpeakerConcentration,
    TemplateRepetition,
    DualScriptPrompts,
    MixedOrthography,
    ScriptMismatch,
    DictionaryDump,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Severity {
    Warn,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QualityFlag {
    pub code: FlagCode,
    pub severity: Severity,
    /// Metric values and the thresholds they were compared against.
    pub evidence: BTreeMap<String, f64>,
}

/// Cutoffs for every flag. The defaults mirror published observations on
/// public corpora; they are starting points, not norms.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FlagThresholds {
    /// Median utterance duration below this marks a short-utterance corpus.
    pub short_median_s: f64,
    /// Extreme case: median below this and p99 below `extreme_short_p99_s`.
    pub extreme_short_median_s: f64,
    pub extreme_short_p99_s: f64,
    /// Corpus-level speech share below this is flagged.
    pub low_speech_proportion: f64,
    pub speaker_top_share: f64,
    pub speaker_avg_hours: f64,
    /// Number of template clusters that triggers the flag; 0 disables it.
    pub template_min_clusters: usize,
    pub dual_script_fraction: f64,
    pub dictionary_dump_max_median_words: f64,
    /// Minimum of max(exact duplicates, stripped duplicates, dual-script share).
    pub dictionary_dump_min_redundancy: f64,
    /// Share of marked sentences that are minority-class or mixed.
    pub mixed_orthography_share: f64,
    pub script_min_conformance: f64,
    /// Flags raised with `fail` severity; all others are warnings.
    pub fail_on: Vec<FlagCode>,
}

impl Default for FlagThresholds {
    fn default() -> Self {
        FlagThresholds {
            short_median_s: 4.0,
            extreme_short_median_s: 3.0,
            extreme_short_p99_s: 7.0,
            low_speech_proportion: 0.5,
            speaker_top_share: 0.5,
            speaker_avg_hours: 1.0,
            template_min_clusters: 1,
            dual_script_fraction: 0.1,
            dictionary_dump_max_median_words: 3.0,
            dictionary_dump_min_redundancy: 0.2,
            mixed_orthography_share: 0.05,
            script_min_conformance: 0.95,
            fail_on: vec![
                FlagCode::ExtremeShortUtterances,
                FlagCode::LowSpeechProportion,
                FlagCode::SingleSpeaker,
                FlagCode::DictionaryDump,
                FlagCode::ScriptMismatch,
            ],
        }
    }
}

impl FlagThresholds {
    pub fn validate(&self) -> Result<()> {
        let non_negative = [
            ("short_median_s", self.short_median_s),
            ("extreme_short_median_s", self.extreme_short_median_s),
            ("extreme_short_p99_s", self.extreme_short_p99_s),
            ("speaker_avg_hours", self.speaker_avg_hours),
            (
                "dictionary_dump_max_median_words",
                self.dictionary_dump_max_median_words,
            ),
        ];
        for (name, v) in non_negative {
            if !(v.is_finite() && v >= 0.0) {
                return Err(AuditError::config(format!(
                    "threshold {name} = {v} must be finite and >= 0"
                )));
            }
        }
        let fractions = [
            ("low_speech_proportion", self.low_speech_proportion),
            ("speaker_top_share", self.speaker_top_share),
            ("dual_script_fraction", self.dual_script_fraction),
            (
                "dictionary_dump_min_redundancy",
                self.dictionary_dump_min_redundancy,
            ),
            ("mixed_orthography_share", self.mixed_orthography_share),
            ("script_min_conformance", self.script_min_conformance),
        ];
        for (name, v) in fractions {
            if !(0.0..=1.0).contains(&v) {
                return Err(AuditError::config(format!(
                    "threshold {name} = {v} must be within [0, 1]"
                )));
            }
        }
        Ok(())
    }

    fn severity(&self, code: FlagCode) -> Severity {
        if self.fail_on.contains(&code) {
            Severity::Fail
        } else {
            Severity::Warn
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct FlagOutcome {
    pub flags: Vec<QualityFlag>,
    /// Checks skipped for lack of a metric.
    pub notices: Vec<String>,
}

fn evidence<const N: usize>(pairs: [(&str, f64); N]) -> BTreeMap<String, f64> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

/// Evaluates every threshold against the metrics embedded in `report`.
/// Only `report`'s metric fields are read, so re-running this on a
/// deserialized report reproduces its flags.
pub fn apply_flags(report: &AuditReport, t: &FlagThresholds) -> Result<FlagOutcome> {
    t.validate()?;
    let mut out = FlagOutcome::default();
    let mut raise = |code: FlagCode, ev: BTreeMap<String, f64>| {
        out.flags.push(QualityFlag {
            code,
            severity: t.severity(code),
            evidence: ev,
        });
    };
    let mut notices = Vec::new();

    match &report.duration_stats {
        Some(d) => {
            if d.median_s < t.short_median_s {
                raise(
                    FlagCode::ShortUtterances,
                    evidence([
                        ("median_s", d.median_s),
                        ("threshold.short_median_s", t.short_median_s),
                    ]),
                );
            }
            if d.median_s < t.extreme_short_median_s && d.p99_s < t.extreme_short_p99_s {
                raise(
                    FlagCode::ExtremeShortUtterances,
                    evidence([
                        ("median_s", d.median_s),
                        ("p99_s", d.p99_s),
                        ("threshold.extreme_short_median_s", t.extreme_short_median_s),
                        ("threshold.extreme_short_p99_s", t.extreme_short_p99_s),
                    ]),
                );
            }
        }
        None => notices.push("duration checks skipped: no durations".to_string()),
    }

    match &report.speech_proportion_stats {
        Some(s) => {
            if s.speech_proportion < t.low_speech_proportion {
                raise(
                    FlagCode::LowSpeechProportion,
                    evidence([
                        ("speech_proportion", s.speech_proportion),
                        ("threshold.low_speech_proportion", t.low_speech_proportion),
                    ]),
                );
            }
        }
        None => notices.push("speech proportion check skipped: no decoded audio".to_string()),
    }

    match &report.speaker_stats {
        Some(s) if s.single_speaker => raise(
            FlagCode::SingleSpeaker,
            evidence([
                ("unique_speakers", s.unique_speakers as f64),
                ("total_hours", s.total_hours),
            ]),
        ),
        Some(s) => {
            if s.top_speaker_share > t.speaker_top_share
                || s.avg_hours_per_speaker > t.speaker_avg_hours
            {
                raise(
                    FlagCode::SpeakerConcentration,
                    evidence([
                        ("unique_speakers", s.unique_speakers as f64),
                        ("top_speaker_share", s.top_speaker_share),
                        ("avg_hours_per_speaker", s.avg_hours_per_speaker),
                        ("threshold.speaker_top_share", t.speaker_top_share),
                        ("threshold.speaker_avg_hours", t.speaker_avg_hours),
                    ]),
                );
            }
        }
        None => notices.push("speaker checks skipped: no speaker ids with durations".to_string()),
    }

    if t.template_min_clusters > 0 && report.template_clusters.len() >= t.template_min_clusters {
        let covered: usize = report.template_clusters.iter().map(|c| c.size).sum();
        let largest = report
            .template_clusters
            .iter()
            .map(|c| c.size)
            .max()
            .unwrap_or(0);
        let n = report
            .prompt_shape_stats
            .as_ref()
            .map_or(report.record_count, |p| p.n)
            .max(1);
        raise(
            FlagCode::TemplateRepetition,
            evidence([
                ("clusters", report.template_clusters.len() as f64),
                ("largest_cluster", largest as f64),
                ("covered_fraction", covered as f64 / n as f64),
                (
                    "threshold.template_min_clusters",
                    t.template_min_clusters as f64,
                ),
            ]),
        );
    }

    match &report.prompt_shape_stats {
        Some(p) => {
            if p.dual_script_fraction >= t.dual_script_fraction && p.dual_script_fraction > 0.0 {
                raise(
                    FlagCode::DualScriptPrompts,
                    evidence([
                        ("dual_script_fraction", p.dual_script_fraction),
                        ("threshold.dual_script_fraction", t.dual_script_fraction),
                    ]),
                );
            }
            let redundancy = p
                .exact_duplicate_fraction
                .max(p.script_stripped_duplicate_fraction)
                .max(p.dual_script_fraction);
            if p.median_word_count <= t.dictionary_dump_max_median_words
                && redundancy >= t.dictionary_dump_min_redundancy
                && redundancy > 0.0
            {
                raise(
                    FlagCode::DictionaryDump,
                    evidence([
                        ("median_word_count", p.median_word_count),
                        ("exact_duplicate_fraction", p.exact_duplicate_fraction),
                        (
                            "script_stripped_duplicate_fraction",
                            p.script_stripped_duplicate_fraction,
                        ),
                        ("dual_script_fraction", p.dual_script_fraction),
                        (
                            "threshold.dictionary_dump_max_median_words",
                            t.dictionary_dump_max_median_words,
                        ),
                        (
                            "threshold.dictionary_dump_min_redundancy",
                            t.dictionary_dump_min_redundancy,
                        ),
                    ]),
                );
            }
        }
        None => notices.push("prompt checks skipped: no transcripts".to_string()),
    }

    for (i, ct) in report.variety_tallies.iter().enumerate() {
        let a = ct.tally.count(VarietyCategory::ClassA);
        let b = ct.tally.count(VarietyCategory::ClassB);
        let mixed = ct.tally.count(VarietyCategory::Mixed);
        let marked = a + b + mixed;
        if marked == 0 {
            continue;
        }
        let minority = match ct.expected_class {
            Some(VarietyClass::ClassA) => b,
            Some(VarietyClass::ClassB) => a,
            None => a.min(b),
        };
        let share = (minority + mixed) as f64 / marked as f64;
        if share >= t.mixed_orthography_share {
            raise(
                FlagCode::MixedOrthography,
                evidence([
                    ("classifier_index", i as f64),
                    ("minority_count", minority as f64),
                    ("mixed_count", mixed as f64),
                    ("marked_count", marked as f64),
                    ("minority_share", share),
                    (
                        "threshold.mixed_orthography_share",
                        t.mixed_orthography_share,
                    ),
                ]),
            );
        }
    }

    if let Some(c) = &report.script_conformance {
        if c.fraction < t.script_min_conformance {
            raise(
                FlagCode::ScriptMismatch,
                evidence([
                    ("conformance", c.fraction),
                    ("offender_count", c.offender_count as f64),
                    ("threshold.script_min_conformance", t.script_min_conformance),
                ]),
            );
        }
    }

    out.flags.sort_by_key(|f| f.code);
    out.notices = notices;
    Ok(out)
}
