//! Dataset manifests: Common Voice TSVs, headerless FLEURS TSVs and generic
//! CSVs, parsed into a uniform stream of [`UtteranceRecord`]s.

use std::collections::{BTreeMap, HashMap};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::audio::{AudioDecoder, WavDecoder};
use crate::error::{AuditError, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UtteranceRecord {
    pub utterance_id: String,
    pub speaker_id: Option<String>,
    pub audio_path: String,
    pub transcript: String,
    pub locale: String,
    pub duration_s: Option<f64>,
    /// Unrecognized columns, in file order.
    pub extra: Vec<(String, String)>,
}

impl UtteranceRecord {
    pub fn extra_value(&self, key: &str) -> Option<&str> {
        self.extra
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SourceKind {
    #[default]
    CommonVoiceTsv,
    FleursTsv,
    GenericCsv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ColumnRole {
    UtteranceId,
    SpeakerId,
    AudioPath,
    Transcript,
    Locale,
}

/// Header name (or zero-based position for headerless files) to role.
pub type ColumnMap = BTreeMap<String, ColumnRole>;

const FLEURS_COLUMNS: [&str; 7] = [
    "id",
    "file_name",
    "raw_transcription",
    "transcription",
    "characters",
    "num_samples",
    "gender",
];

impl SourceKind {
    pub fn default_column_map(self) -> ColumnMap {
        let pairs: &[(&str, ColumnRole)] = match self {
            SourceKind::CommonVoiceTsv => &[
                ("client_id", ColumnRole::SpeakerId),
                ("path", ColumnRole::AudioPath),
                ("sentence", ColumnRole::Transcript),
                ("locale", ColumnRole::Locale),
            ],
            SourceKind::FleursTsv => &[("1", ColumnRole::AudioPath), ("2", ColumnRole::Transcript)],
            SourceKind::GenericCsv => &[
                ("utterance_id", ColumnRole::UtteranceId),
                ("speaker_id", ColumnRole::SpeakerId),
                ("audio_path", ColumnRole::AudioPath),
                ("transcript", ColumnRole::Transcript),
                ("locale", ColumnRole::Locale),
            ],
        };
        pairs.iter().map(|(k, r)| (k.to_string(), *r)).collect()
    }

    fn required_roles(self) -> &'static [ColumnRole] {
        match self {
            SourceKind::CommonVoiceTsv => &[
                ColumnRole::SpeakerId,
                ColumnRole::AudioPath,
                ColumnRole::Transcript,
            ],
            SourceKind::FleursTsv | SourceKind::GenericCsv => {
                &[ColumnRole::AudioPath, ColumnRole::Transcript]
            }
        }
    }

    fn delimiter(self) -> u8 {
        match self {
            SourceKind::CommonVoiceTsv | SourceKind::FleursTsv => b'\t',
            SourceKind::GenericCsv => b',',
        }
    }

    fn has_header(self) -> bool {
        !matches!(self, SourceKind::FleursTsv)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RejectedRow {
    /// One-based line number in the file.
    pub row: u64,
    pub reason: String,
}

/// Rejected rows, capped at [`MAX_REJECT_ENTRIES`] entries.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RejectReport {
    pub total: usize,
    pub entries: Vec<RejectedRow>,
}

pub const MAX_REJECT_ENTRIES: usize = 1000;

impl RejectReport {
    fn push(&mut self, row: u64, reason: impl Into<String>) {
        self.total += 1;
        if self.entries.len() < MAX_REJECT_ENTRIES {
            self.entries.push(RejectedRow {
                row,
                reason: reason.into(),
            });
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetManifest {
    pub records: Vec<UtteranceRecord>,
    pub locale: String,
    pub source_kind: SourceKind,
    pub column_map: ColumnMap,
    pub data_rows: usize,
    pub rejects: RejectReport,
}

#[derive(Debug, Clone, Default)]
pub struct ManifestOptions {
    pub column_map: Option<ColumnMap>,
    /// Manifest locale; when absent it is taken from the first accepted row's
    /// locale column, falling back to `und`.
    pub locale: Option<String>,
}

pub fn parse_manifest(
    path: &Path,
    source_kind: SourceKind,
    column_map: Option<ColumnMap>,
) -> Result<DatasetManifest> {
    parse_manifest_with(
        path,
        source_kind,
        &ManifestOptions {
            column_map,
            locale: None,
        },
    )
}

pub fn parse_manifest_with(
    path: &Path,
    source_kind: SourceKind,
    options: &ManifestOptions,
) -> Result<DatasetManifest> {
    let file = std::fs::File::open(path).map_err(|e| AuditError::io(path, e))?;
    let mut reader = csv::ReaderBuilder::new()
        .delimiter(source_kind.delimiter())
        .has_headers(source_kind.has_header())
        .flexible(true)
        .quoting(source_kind == SourceKind::GenericCsv)
        .from_reader(std::io::BufReader::new(file));
    let csv_err = |e: csv::Error| {
        if e.is_io_error() {
            if let csv::ErrorKind::Io(io) = e.into_kind() {
                return AuditError::io(path, io);
            }
            unreachable!("is_io_error implies an Io kind")
        }
        AuditError::Csv {
            path: path.to_path_buf(),
            source: e,
        }
    };

    let column_map = options
        .column_map
        .clone()
        .unwrap_or_else(|| source_kind.default_column_map());

    // Column index -> role, plus names for the unmapped columns.
    let mut roles: HashMap<usize, ColumnRole> = HashMap::new();
    let mut names: Vec<String> = Vec::new();
    let expected_fields;
    if source_kind.has_header() {
        let headers = reader.headers().map_err(csv_err)?.clone();
        names = headers
            .iter()
            .enumerate()
            .map(|(i, h)| {
                let h = if i == 0 {
                    h.trim_start_matches('\u{feff}')
                } else {
                    h
                };
                h.trim().to_string()
            })
            .collect();
        for (i, name) in names.iter().enumerate() {
            if let Some(role) = column_map.get(name) {
                roles.insert(i, *role);
            }
        }
        expected_fields = Some(names.len());
    } else {
        for (key, role) in &column_map {
            let idx: usize = key.parse().map_err(|_| {
                AuditError::config(format!(
                    "column map key `{key}` must be a zero-based position for headerless files"
                ))
            })?;
            roles.insert(idx, *role);
        }
        expected_fields = None;
    }

    for role in source_kind.required_roles() {
        if !roles.values().any(|r| r == role) {
            let name = column_map
                .iter()
                .find(|(_, r)| *r == role)
                .map(|(k, _)| k.clone())
                .unwrap_or_else(|| format!("{role:?}"));
            return Err(AuditError::MissingColumn(name));
        }
    }

    let mut records = Vec::new();
    let mut rejects = RejectReport::default();
    let mut data_rows = 0usize;
    let mut locale = options.locale.clone();
    let mut width = expected_fields;
    let mut raw = csv::ByteRecord::new();
    loop {
        let more = reader.read_byte_record(&mut raw).map_err(csv_err)?;
        if !more {
            break;
        }
        let line = raw.position().map_or(0, |p| p.line());
        if raw.len() == 1
            && raw
                .get(0)
                .is_some_and(|f| f.iter().all(u8::is_ascii_whitespace))
        {
            continue;
        }
        data_rows += 1;
        let expected = *width.get_or_insert(raw.len());
        if raw.len() != expected {
            rejects.push(
                line,
                format!("expected {expected} fields, found {}", raw.len()),
            );
            continue;
        }
        let fields: Vec<&str> = match raw.iter().map(std::str::from_utf8).collect() {
            Ok(f) => f,
            Err(_) => {
                rejects.push(line, "invalid UTF-8");
                continue;
            }
        };

        let mut rec = UtteranceRecord {
            utterance_id: String::new(),
            speaker_id: None,
            audio_path: String::new(),
            transcript: String::new(),
            locale: String::new(),
            duration_s: None,
            extra: Vec::new(),
        };
        for (i, value) in fields.iter().enumerate() {
            match roles.get(&i) {
                Some(ColumnRole::UtteranceId) => rec.utterance_id = value.trim().to_string(),
                Some(ColumnRole::SpeakerId) => {
                    let v = value.trim();
                    rec.speaker_id = (!v.is_empty()).then(|| v.to_string());
                }
                Some(ColumnRole::AudioPath) => rec.audio_path = value.trim().to_string(),
                Some(ColumnRole::Transcript) => rec.transcript = (*value).to_string(),
                Some(ColumnRole::Locale) => rec.locale = value.trim().to_string(),
                None => {
                    let name = names.get(i).cloned().unwrap_or_else(|| match source_kind {
                        SourceKind::FleursTsv => FLEURS_COLUMNS
                            .get(i)
                            .map_or_else(|| format!("col{i}"), |s| s.to_string()),
                        _ => format!("col{i}"),
                    });
                    rec.extra.push((name, (*value).to_string()));
                }
            }
        }
        if rec.utterance_id.is_empty() {
            rec.utterance_id = rec.audio_path.clone();
        }
        if rec.transcript.trim().is_empty() {
            rejects.push(line, "empty transcript");
            continue;
        }
        if rec.audio_path.is_empty() {
            rejects.push(line, "empty audio path");
            continue;
        }
        match (&locale, rec.locale.is_empty()) {
            (_, true) => {}
            (None, false) => locale = Some(rec.locale.clone()),
            (Some(l), false) if *l != rec.locale => {
                rejects.push(
                    line,
                    format!("locale `{}` differs from manifest locale `{l}`", rec.locale),
                );
                continue;
            }
            _ => {}
        }
        records.push(rec);
    }

    if data_rows == 0 {
        return Err(AuditError::EmptyManifest(path.to_path_buf()));
    }
    let locale = locale.unwrap_or_else(|| "und".to_string());
    for r in &mut records {
        if r.locale.is_empty() {
            r.locale = locale.clone();
        }
    }
    Ok(DatasetManifest {
        records,
        locale,
        source_kind,
        column_map,
        data_rows,
        rejects,
    })
}

impl DatasetManifest {
    /// Writes the records as a generic CSV (`utterance_id, speaker_id,
    /// audio_path, transcript, locale`, then extra columns) that
    /// [`parse_manifest`] reads back with [`SourceKind::GenericCsv`].
    pub fn write_generic_csv<W: std::io::Write>(&self, sink: W) -> Result<()> {
        let mut extra_keys: Vec<&str> = Vec::new();
        for r in &self.records {
            for (k, _) in &r.extra {
                if !extra_keys.contains(&k.as_str()) {
                    extra_keys.push(k);
                }
            }
        }
        let mut w = csv::Writer::from_writer(sink);
        let to_err = |e: csv::Error| AuditError::Csv {
            path: PathBuf::from("<output>"),
            source: e,
        };
        let mut header = vec![
            "utterance_id",
            "speaker_id",
            "audio_path",
            "transcript",
            "locale",
        ];
        header.extend(&extra_keys);
        w.write_record(&header).map_err(to_err)?;
        for r in &self.records {
            let mut row = vec![
                r.utterance_id.as_str(),
                r.speaker_id.as_deref().unwrap_or(""),
                r.audio_path.as_str(),
                r.transcript.as_str(),
                r.locale.as_str(),
            ];
            row.extend(extra_keys.iter().map(|k| r.extra_value(k).unwrap_or("")));
            w.write_record(&row).map_err(to_err)?;
        }
        w.flush().map_err(|e| AuditError::io("<output>", e))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DurationSource {
    /// Decode audio files found under this root.
    DecodeAudio(PathBuf),
    /// `clip_name<TAB>duration_ms` file.
    SidecarTsv(PathBuf),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnresolvedDuration {
    pub index: usize,
    pub utterance_id: String,
    pub reason: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DurationReport {
    pub resolved: usize,
    pub unresolved: Vec<UnresolvedDuration>,
}

/// Reads a duration sidecar into clip name -> seconds. A first line whose
/// second field is not numeric is treated as a header.
pub fn read_duration_sidecar(path: &Path) -> Result<HashMap<String, f64>> {
    let text = std::fs::read_to_string(path).map_err(|e| AuditError::io(path, e))?;
    let mut out = HashMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() {
            continue;
        }
        let mut parts = line.split('\t');
        let (Some(clip), Some(ms)) = (parts.next(), parts.next()) else {
            return Err(AuditError::config(format!(
                "{}:{}: expected clip<TAB>duration_ms",
                path.display(),
                i + 1
            )));
        };
        match ms.trim().parse::<f64>() {
            Ok(v) => {
                out.insert(clip.trim().to_string(), v / 1000.0);
            }
            Err(_) if i == 0 => {}
            Err(_) => {
                return Err(AuditError::config(format!(
                    "{}:{}: duration `{ms}` is not a number",
                    path.display(),
                    i + 1
                )))
            }
        }
    }
    Ok(out)
}

fn file_name(path: &str) -> &str {
    path.rsplit(['/', '\\']).next().unwrap_or(path)
}

pub fn attach_durations(
    manifest: DatasetManifest,
    source: &DurationSource,
) -> Result<(DatasetManifest, DurationReport)> {
    attach_durations_with(manifest, source, &WavDecoder)
}

/// Fills `duration_s` for every record that can be resolved. Records keep
/// their order; the ones that cannot be resolved are listed in the report.
pub fn attach_durations_with(
    mut manifest: DatasetManifest,
    source: &DurationSource,
    decoder: &dyn AudioDecoder,
) -> Result<(DatasetManifest, DurationReport)> {
    let results: Vec<std::result::Result<f64, String>> = match source {
        DurationSource::DecodeAudio(root) => {
            if !root.is_dir() {
                return Err(AuditError::config(format!(
                    "audio root {} does not exist",
                    root.display()
                )));
            }
            manifest
                .records
                .par_iter()
                .map(|r| {
                    decoder
                        .duration_s(&root.join(&r.audio_path))
                        .map_err(|e| e.to_string())
                })
                .collect()
        }
        DurationSource::SidecarTsv(path) => {
            let table = read_duration_sidecar(path)?;
            manifest
                .records
                .iter()
                .map(|r| {
                    table
                        .get(&r.audio_path)
                        .or_else(|| table.get(file_name(&r.audio_path)))
                        .copied()
                        .ok_or_else(|| format!("no sidecar entry for {}", r.audio_path))
                })
                .collect()
        }
    };
    let mut report = DurationReport::default();
    for (index, (rec, res)) in manifest.records.iter_mut().zip(results).enumerate() {
        match res {
            Ok(d) if d.is_finite() && d > 0.0 => {
                rec.duration_s = Some(d);
                report.resolved += 1;
            }
            Ok(d) => report.unresolved.push(UnresolvedDuration {
                index,
                utterance_id: rec.utterance_id.clone(),
                reason: format!("non-positive duration {d}"),
            }),
            Err(reason) => report.unresolved.push(UnresolvedDuration {
                index,
                utterance_id: rec.utterance_id.clone(),
                reason,
            }),
        }
    }
    Ok((manifest, report))
}
