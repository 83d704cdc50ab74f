//! Quality auditing for speech datasets: manifest parsing, duration and
//! speech-content metrics, prompt and orthography checks, WER, and reports.

pub mod audio;
pub mod audio_metrics;
pub mod audit;
pub mod error;
pub mod manifest;
pub mod report;
mod sampling;
pub mod text;
pub mod text_metrics;
pub mod variety;
pub mod wer;

pub use audio::{AudioDecoder, DecodedAudio, WavDecoder};
pub use audio_metrics::{
    duration_stats, estimate_snr, segment_speech, usable_hours, DurationStats, EnergyVad,
    SnrEstimate, SpeechSegmenter, VadConfig, VadSegmentation,
};
pub use audit::{run_audit, run_audit_with, AuditConfig, ClassifierConfig, DEFAULT_CONFIG_TOML};
pub use error::{AuditError, Result};
pub use manifest::{
    attach_durations, parse_manifest, parse_manifest_with, ColumnMap, ColumnRole, DatasetManifest,
    DurationSource, ManifestOptions, SourceKind, UtteranceRecord,
};
pub use report::{
    apply_flags, emit_data_statement, emit_report, speaker_stats, AuditReport, FlagCode,
    FlagThresholds, QualityFlag, ReportFormat, Severity, SpeakerStats,
};
pub use text::TokenizeMode;
pub use text_metrics::{
    detect_templates, prompt_shape_stats, PromptShapeStats, TemplateCluster, TemplateConfig,
};
pub use variety::lexicon::{MarkerLexicon, MatchMode, VarietyClass};
pub use variety::script::{
    check_script_expectation, detect_script, ScriptConformance, ScriptProfile, ScriptVerdict,
};
pub use variety::{
    classify_cantonese, classify_corpus, classify_two_way, VarietyCategory, VarietyTally,
    VarietyVerdict,
};
pub use wer::{align, corpus_wer, AlignmentResult, CorpusWer};
