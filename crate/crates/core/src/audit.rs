//! Audit configuration and the end-to-end driver.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::audio::{AudioDecoder, WavDecoder};
use crate::audio_metrics::{
    duration_stats, estimate_snr, median, segment_speech, usable_hours, VadConfig,
};
use crate::error::{AuditError, Result};
use crate::manifest::{
    attach_durations_with, parse_manifest_with, ColumnMap, DurationSource, ManifestOptions,
    SourceKind,
};
use crate::report::{
    speaker_stats, AuditReport, ClassifierTally, FlagThresholds, ReportFormat,
    SpeechProportionStats, UsableHours,
};
use crate::text_metrics::{detect_templates, prompt_shape_stats, TemplateConfig};
use crate::variety::lexicon::MarkerLexicon;
use crate::variety::script::{check_script_expectation, DEFAULT_MIXED_THRESHOLD};
use crate::variety::{classify_corpus, VarietyClass};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DurationMode {
    /// Read WAV headers under `audio_root`.
    #[default]
    Decode,
    /// Read `clip<TAB>duration_ms` from `durations.sidecar`.
    Sidecar,
    /// No durations; duration and speaker-hour metrics are skipped.
    None,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DurationConfig {
    pub source: DurationMode,
    pub sidecar: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassifierConfig {
    /// Built-in lexicon id (`no`, `ar`, `yue`, ...) or a name for `lexicon`.
    pub id: String,
    /// Lexicon file; overrides the built-in lexicon.
    #[serde(default)]
    pub lexicon: Option<PathBuf>,
    /// The class the dataset claims to be in, if any.
    #[serde(default)]
    pub expected_class: Option<VarietyClass>,
}

impl ClassifierConfig {
    pub fn load_lexicon(&self) -> Result<MarkerLexicon> {
        match &self.lexicon {
            Some(path) => MarkerLexicon::load(path),
            None => MarkerLexicon::builtin(&self.id).ok_or_else(|| {
                AuditError::config(format!(
                    "unknown classifier id `{}` and no lexicon file given",
                    self.id
                ))
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputConfig {
    /// Report destination; stdout when absent.
    pub path: Option<PathBuf>,
    pub format: ReportFormat,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AuditConfig {
    pub manifest: Option<PathBuf>,
    pub source_kind: SourceKind,
    pub locale: Option<String>,
    pub column_map: Option<ColumnMap>,
    pub audio_root: Option<PathBuf>,
    /// Run the speech detector and SNR estimate over every clip. Needs
    /// `audio_root`.
    pub measure_audio: bool,
    pub durations: DurationConfig,
    pub vad: VadConfig,
    pub templates: TemplateConfig,
    pub thresholds: FlagThresholds,
    pub classifiers: Vec<ClassifierConfig>,
    /// Script name the transcripts should be written in, e.g. `Cyrillic`.
    pub expected_script: Option<String>,
    pub script_mixed_threshold: f64,
    pub output: OutputConfig,
    pub parallelism: usize,
    pub seed: u64,
}

impl Default for AuditConfig {
    fn default() -> Self {
        AuditConfig {
            manifest: None,
            source_kind: SourceKind::default(),
            locale: None,
            column_map: None,
            audio_root: None,
            measure_audio: true,
            durations: DurationConfig::default(),
            vad: VadConfig::default(),
            templates: TemplateConfig::default(),
            thresholds: FlagThresholds::default(),
            classifiers: Vec::new(),
            expected_script: None,
            script_mixed_threshold: DEFAULT_MIXED_THRESHOLD,
            output: OutputConfig::default(),
            parallelism: 1,
            seed: 0,
        }
    }
}

/// Commented configuration equal to [`AuditConfig::default`].
pub const DEFAULT_CONFIG_TOML: &str = r#"# speechaudit configuration

# Manifest to audit; can also be given on the command line.
# manifest = "validated.tsv"

# common_voice_tsv, fleurs_tsv or generic_csv
source_kind = "common_voice_tsv"

# Locale of the manifest. Rows whose locale column disagrees are rejected.
# locale = "nn-NO"

# Directory that audio paths in the manifest are relative to.
# audio_root = "clips"

# Run the speech detector and SNR estimate on every clip (needs audio_root).
measure_audio = true

# Worker threads. Output does not depend on this value.
parallelism = 1

# Seed for every sampled quantity.
seed = 0

# Script the transcripts are expected to use, e.g. "Cyrillic" or "Latn".
# expected_script = "Cyrillic"

# Share of letters outside the dominant script that marks a sentence as mixed.
script_mixed_threshold = 0.1

# Override the column names of the manifest.
# [column_map]
# client_id = "speaker_id"
# path = "audio_path"
# sentence = "transcript"

[durations]
# decode (WAV headers under audio_root), sidecar or none
source = "decode"
# Tab-separated clip name and duration in milliseconds.
# sidecar = "clip_durations.tsv"

[vad]
frame_ms = 25.0
hop_ms = 10.0
# Speech threshold above the estimated noise floor.
relative_margin_db = 12.0
# Frames quieter than this are never speech.
absolute_floor_dbfs = -60.0
min_speech_ms = 100.0
max_gap_ms = 150.0
noise_floor_percentile = 0.2

[templates]
k_prefix = 4
min_cluster = 20
min_similarity = 0.7
similarity_sample = 50

# Defaults follow observations on public corpora; tune them for your data.
[thresholds]
# Several read-speech corpora have median clips under 4 s.
short_median_s = 4.0
# Extreme case: a 2.45 s median with almost nothing above 7 s.
extreme_short_median_s = 3.0
extreme_short_p99_s = 7.0
# One corpus was 48.3% speech; curated parliamentary speech is 89% or more.
low_speech_proportion = 0.5
# The worst multi-speaker corpora averaged 1.20 h per speaker.
speaker_top_share = 0.5
speaker_avg_hours = 1.0
template_min_clusters = 1
# Prompts like "竹南鎮（Tik-lâm-tìn）" carry a romanization in parentheses.
dual_script_fraction = 0.1
# Word lists: short prompts that repeat once scripts are stripped.
dictionary_dump_max_median_words = 3.0
dictionary_dump_min_redundancy = 0.2
mixed_orthography_share = 0.05
script_min_conformance = 0.95
fail_on = [
    "ExtremeShortUtterances",
    "LowSpeechProportion",
    "SingleSpeaker",
    "DictionaryDump",
    "ScriptMismatch",
]

# Variety classifiers. Built-in ids: no, ar, yue.
# [[classifiers]]
# id = "no"
# expected_class = "ClassA"
#
# [[classifiers]]
# id = "custom"
# lexicon = "markers.txt"

[output]
# json or markdown
format = "json"
# path = "report.json"
"#;

impl AuditConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let cfg: AuditConfig =
            toml::from_str(text).map_err(|e| AuditError::config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| AuditError::io(path, e))?;
        Self::from_toml_str(&text)
    }

    pub fn validate(&self) -> Result<()> {
        if self.parallelism == 0 {
            return Err(AuditError::config("parallelism must be at least 1"));
        }
        if !(0.0..=1.0).contains(&self.script_mixed_threshold) {
            return Err(AuditError::config(
                "script_mixed_threshold must be within [0, 1]",
            ));
        }
        self.vad.validate()?;
        self.thresholds.validate()?;
        if self.templates.k_prefix == 0 || self.templates.min_cluster < 2 {
            return Err(AuditError::config(
                "templates need k_prefix >= 1 and min_cluster >= 2",
            ));
        }
        if !(0.0..=1.0).contains(&self.templates.min_similarity) {
            return Err(AuditError::config(
                "templates.min_similarity must be within [0, 1]",
            ));
        }
        for c in &self.classifiers {
            if let Some(path) = &c.lexicon {
                if !path.is_file() {
                    return Err(AuditError::config(format!(
                        "lexicon file {} does not exist",
                        path.display()
                    )));
                }
            }
        }
        if self.durations.source == DurationMode::Sidecar && self.durations.sidecar.is_none() {
            return Err(AuditError::config(
                "durations.source = \"sidecar\" needs durations.sidecar",
            ));
        }
        if self.durations.source == DurationMode::Decode && self.audio_root.is_none() {
            return Err(AuditError::config(
                "durations.source = \"decode\" needs audio_root",
            ));
        }
        Ok(())
    }

    /// Hex SHA-256 of the configuration's canonical JSON form. Settings
    /// that cannot change the report (thread count, output destination) are
    /// left out.
    pub fn fingerprint(&self) -> String {
        let canonical = AuditConfig {
            parallelism: 1,
            output: OutputConfig::default(),
            ..self.clone()
        };
        let json = serde_json::to_vec(&canonical).expect("config serializes");
        hex::encode(Sha256::digest(&json))
    }
}

struct ClipMeasurement {
    total_s: f64,
    speech_s: f64,
    snr_db: Option<f64>,
}

/// Runs the full audit with the built-in WAV decoder.
pub fn run_audit(config: &AuditConfig) -> Result<AuditReport> {
    run_audit_with(config, &WavDecoder)
}

/// Runs the full audit. Work is spread over `config.parallelism` threads;
/// results are merged in manifest order so the report does not depend on
/// the thread count.
pub fn run_audit_with(config: &AuditConfig, decoder: &dyn AudioDecoder) -> Result<AuditReport> {
    config.validate()?;
    let manifest_path = config
        .manifest
        .as_deref()
        .ok_or_else(|| AuditError::config("no manifest given"))?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.parallelism)
        .build()
        .map_err(|e| AuditError::config(format!("thread pool: {e}")))?;
    pool.install(|| audit_in_pool(config, manifest_path, decoder))
}

fn audit_in_pool(
    config: &AuditConfig,
    manifest_path: &Path,
    decoder: &dyn AudioDecoder,
) -> Result<AuditReport> {
    let options = ManifestOptions {
        column_map: config.column_map.clone(),
        locale: config.locale.clone(),
    };
    let mut manifest = parse_manifest_with(manifest_path, config.source_kind, &options)?;
    if manifest.records.is_empty() {
        return Err(AuditError::EmptyManifest(manifest_path.to_path_buf()));
    }

    let mut report = AuditReport::new(manifest.locale.clone(), config.fingerprint());
    report.record_count = manifest.records.len();
    report.rejects = std::mem::take(&mut manifest.rejects);
    report.thresholds = config.thresholds.clone();

    let duration_source = match config.durations.source {
        DurationMode::Decode => config.audio_root.clone().map(DurationSource::DecodeAudio),
        DurationMode::Sidecar => config
            .durations
            .sidecar
            .clone()
            .map(DurationSource::SidecarTsv),
        DurationMode::None => None,
    };
    if let Some(source) = duration_source {
        let (m, dr) = attach_durations_with(manifest, &source, decoder)?;
        manifest = m;
        report.unresolved_durations = dr.unresolved.len();
        if !dr.unresolved.is_empty() {
            report.notices.push(format!(
                "{} records without a resolvable duration",
                dr.unresolved.len()
            ));
        }
    }
    let durations: Vec<f64> = manifest
        .records
        .iter()
        .filter_map(|r| r.duration_s)
        .collect();
    if !durations.is_empty() {
        report.duration_stats = Some(duration_stats(&durations)?);
    }

    if config.measure_audio {
        match &config.audio_root {
            Some(root) => {
                report.speech_proportion_stats = measure_audio(
                    config,
                    root,
                    &manifest.records,
                    decoder,
                    &mut report.notices,
                );
            }
            None => report
                .notices
                .push("audio measurements skipped: no audio_root".to_string()),
        }
    }
    if let (Some(d), Some(p)) = (&report.duration_stats, &report.speech_proportion_stats) {
        report.usable_hours = Some(UsableHours {
            hours: usable_hours(d.total_hours, p.speech_proportion)?,
            estimated: true,
            total_hours: d.total_hours,
            speech_proportion: p.speech_proportion,
        });
    }

    report.speaker_stats = speaker_stats(&manifest.records);

    let transcripts: Vec<&str> = manifest
        .records
        .iter()
        .map(|r| r.transcript.as_str())
        .collect();
    report.prompt_shape_stats = Some(prompt_shape_stats(&transcripts)?);
    report.template_clusters = detect_templates(&transcripts, &config.templates, config.seed);

    for c in &config.classifiers {
        let lexicon = c.load_lexicon()?;
        let tally = classify_corpus(&transcripts, &lexicon)?;
        report.variety_tallies.push(ClassifierTally {
            expected_class: c.expected_class,
            tally,
        });
    }

    if let Some(script) = &config.expected_script {
        report.script_conformance = Some(check_script_expectation(
            &transcripts,
            script,
            config.script_mixed_threshold,
            config.seed,
        )?);
    }

    report.recompute_flags()?;
    Ok(report)
}

fn measure_audio(
    config: &AuditConfig,
    root: &Path,
    records: &[crate::manifest::UtteranceRecord],
    decoder: &dyn AudioDecoder,
    notices: &mut Vec<String>,
) -> Option<SpeechProportionStats> {
    let results: Vec<std::result::Result<ClipMeasurement, String>> = records
        .par_iter()
        .map(|r| {
            let audio = decoder
                .decode(&root.join(&r.audio_path))
                .map_err(|e| e.to_string())?;
            let seg = segment_speech(&audio.samples, audio.sample_rate, &config.vad)
                .map_err(|e| e.to_string())?;
            let snr =
                estimate_snr(&audio.samples, audio.sample_rate, &seg).map_err(|e| e.to_string())?;
            Ok(ClipMeasurement {
                total_s: seg.total_s,
                speech_s: seg.speech_s,
                snr_db: snr.db(),
            })
        })
        .collect();

    let mut failures: BTreeMap<String, usize> = BTreeMap::new();
    let mut measured = Vec::new();
    for res in results {
        match res {
            Ok(m) => measured.push(m),
            Err(reason) => *failures.entry(reason).or_default() += 1,
        }
    }
    let failed: usize = failures.values().sum();
    if failed > 0 {
        notices.push(format!("{failed} clips could not be measured"));
    }
    if measured.is_empty() {
        notices.push("speech proportion unavailable: no clip could be measured".to_string());
        return None;
    }
    let total_audio_s: f64 = measured.iter().map(|m| m.total_s).sum();
    let speech_s: f64 = measured.iter().map(|m| m.speech_s).sum();
    let per_clip: Vec<f64> = measured
        .iter()
        .map(|m| {
            if m.total_s > 0.0 {
                m.speech_s / m.total_s
            } else {
                0.0
            }
        })
        .collect();
    let snrs: Vec<f64> = measured.iter().filter_map(|m| m.snr_db).collect();
    Some(SpeechProportionStats {
        method: "energy_vad".to_string(),
        measured_utterances: measured.len(),
        failed_utterances: failed,
        total_audio_s,
        speech_s,
        speech_proportion: if total_audio_s > 0.0 {
            (speech_s / total_audio_s).clamp(0.0, 1.0)
        } else {
            0.0
        },
        median_utterance_proportion: median(&per_clip).unwrap_or(0.0),
        other_proportion: None,
        snr_method: "vad_frame_power_ratio".to_string(),
        snr_measured_utterances: snrs.len(),
        median_snr_db: median(&snrs),
    })
}
