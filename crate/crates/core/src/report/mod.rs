//! The audit report and its renderings.

mod data_statement;
mod flags;
mod render;
mod speaker;

use serde::{Deserialize, Serialize};

use crate::audio_metrics::DurationStats;
use crate::manifest::RejectReport;
use crate::text_metrics::{PromptShapeStats, TemplateCluster};
use crate::variety::script::ScriptConformance;
use crate::variety::{VarietyClass, VarietyTally};

pub use data_statement::{
    digraphia_entry, emit_data_statement, DigraphiaEntry, DIGRAPHIA_INVENTORY,
};
pub use flags::{apply_flags, FlagCode, FlagOutcome, FlagThresholds, QualityFlag, Severity};
pub use render::{emit_report, render_markdown, ReportFormat};
pub use speaker::{per_speaker_hours, speaker_stats, SpeakerStats};

pub const SCHEMA_VERSION: u32 = 1;

/// Speech share measured with the energy detector. Only speech versus
/// non-speech is separated; `other_proportion` stays null until a detector
/// that distinguishes music or noise classes is plugged in.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpeechProportionStats {
    pub method: String,
    pub measured_utterances: usize,
    pub failed_utterances: usize,
    pub total_audio_s: f64,
    pub speech_s: f64,
    /// Total speech time over total audio time.
    pub speech_proportion: f64,
    pub median_utterance_proportion: f64,
    pub other_proportion: Option<f64>,
    pub snr_method: String,
    pub snr_measured_utterances: usize,
    pub median_snr_db: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UsableHours {
    pub hours: f64,
    /// Always true: the figure scales total hours by the measured speech
    /// share, which assumes the share is uniform across the corpus.
    pub estimated: bool,
    pub total_hours: f64,
    pub speech_proportion: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassifierTally {
    pub expected_class: Option<VarietyClass>,
    pub tally: VarietyTally,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditReport {
    pub schema_version: u32,
    pub tool_version: String,
    /// SHA-256 of the canonical JSON form of the configuration.
    pub config_fingerprint: String,
    pub locale: String,
    pub record_count: usize,
    pub rejects: RejectReport,
    pub unresolved_durations: usize,
    pub duration_stats: Option<DurationStats>,
    pub speech_proportion_stats: Option<SpeechProportionStats>,
    pub usable_hours: Option<UsableHours>,
    pub speaker_stats: Option<SpeakerStats>,
    pub prompt_shape_stats: Option<PromptShapeStats>,
    pub template_clusters: Vec<TemplateCluster>,
    pub variety_tallies: Vec<ClassifierTally>,
    pub script_conformance: Option<ScriptConformance>,
    /// Thresholds the flags were computed with.
    pub thresholds: FlagThresholds,
    pub flags: Vec<QualityFlag>,
    pub notices: Vec<String>,
}

impl AuditReport {
    /// An empty report with no metrics.
    pub fn new(locale: impl Into<String>, config_fingerprint: impl Into<String>) -> Self {
        AuditReport {
            schema_version: SCHEMA_VERSION,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            config_fingerprint: config_fingerprint.into(),
            locale: locale.into(),
            record_count: 0,
            rejects: RejectReport::default(),
            unresolved_durations: 0,
            duration_stats: None,
            speech_proportion_stats: None,
            usable_hours: None,
            speaker_stats: None,
            prompt_shape_stats: None,
            template_clusters: Vec::new(),
            variety_tallies: Vec::new(),
            script_conformance: None,
            thresholds: FlagThresholds::default(),
            flags: Vec::new(),
            notices: Vec::new(),
        }
    }

    pub fn has_failures(&self) -> bool {
        self.flags.iter().any(|f| f.severity == Severity::Fail)
    }

    /// Recomputes flags from the embedded metrics and thresholds.
    pub fn recompute_flags(&mut self) -> crate::Result<()> {
        let outcome = apply_flags(self, &self.thresholds)?;
        self.flags = outcome.flags;
        for n in outcome.notices {
            if !self.notices.contains(&n) {
                self.notices.push(n);
            }
        }
        Ok(())
    }
}
