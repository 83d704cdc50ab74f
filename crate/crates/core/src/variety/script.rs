//! Unicode script profiling and per-corpus script conformance.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use unicode_script::{Script, UnicodeScript};

use crate::error::{AuditError, Result};
use crate::sampling::sample_indices;
use crate::text::is_letter;

pub const DEFAULT_MIXED_THRESHOLD: f64 = 0.10;
pub const MAX_OFFENDERS: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ScriptVerdict {
    SingleScript,
    MixedScript,
    NoLetters,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScriptProfile {
    pub per_script_letter_counts: BTreeMap<String, usize>,
    /// Script with the most letters, or `"none"`.
    pub dominant: String,
    pub secondary_fraction: f64,
    pub verdict: ScriptVerdict,
}

impl ScriptProfile {
    pub fn total_letters(&self) -> usize {
        self.per_script_letter_counts.values().sum()
    }
}

/// Unicode script name for a character, as used in profiles.
pub fn script_name(c: char) -> &'static str {
    c.script().full_name()
}

/// Resolves a script name (full or four-letter ISO 15924 form, any case).
pub fn parse_script(name: &str) -> Option<Script> {
    let trimmed = name.trim();
    if let Some(s) = Script::from_short_name(trimmed) {
        return Some(s);
    }
    let mut canonical: String = trimmed.to_lowercase().replace([' ', '-'], "_");
    // full names are Title_Case with underscores: "Old_Italic"
    canonical = canonical
        .split('_')
        .map(|part| {
            let mut cs = part.chars();
            match cs.next() {
                Some(first) => first.to_uppercase().chain(cs).collect::<String>(),
                None => String::new(),
            }
        })
        .collect::<Vec<_>>()
        .join("_");
    Script::from_full_name(&canonical)
        .or_else(|| Script::from_short_name(&canonical))
        .filter(|s| !matches!(s, Script::Unknown))
}

/// Tallies letters by script and classifies the text as single-script,
/// mixed-script or letterless.
pub fn detect_script(text: &str, mixed_threshold: f64) -> ScriptProfile {
    let mut counts: BTreeMap<String, usize> = BTreeMap::new();
    for c in text.chars().filter(|c| is_letter(*c)) {
        *counts.entry(script_name(c).to_string()).or_default() += 1;
    }
    let total: usize = counts.values().sum();
    if total == 0 {
        return ScriptProfile {
            per_script_letter_counts: counts,
            dominant: "none".to_string(),
            secondary_fraction: 0.0,
            verdict: ScriptVerdict::NoLetters,
        };
    }
    // BTreeMap iterates alphabetically, so keeping the first maximum breaks
    // ties by name.
    let (dominant, dominant_count) = counts.iter().fold(("", 0usize), |best, (name, &n)| {
        if n > best.1 {
            (name.as_str(), n)
        } else {
            best
        }
    });
    let dominant = dominant.to_string();
    let secondary_fraction = (total - dominant_count) as f64 / total as f64;
    let verdict = if secondary_fraction > mixed_threshold {
        ScriptVerdict::MixedScript
    } else {
        ScriptVerdict::SingleScript
    };
    ScriptProfile {
        per_script_letter_counts: counts,
        dominant,
        secondary_fraction,
        verdict,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScriptOffender {
    pub index: usize,
    pub dominant: String,
    pub verdict: ScriptVerdict,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScriptConformance {
    pub expected_script: String,
    pub total: usize,
    pub conforming: usize,
    pub fraction: f64,
    pub offender_count: usize,
    pub offenders: Vec<ScriptOffender>,
}

/// Measures how many sentences are written purely in `expected_script`.
///
/// A sentence conforms when its dominant script is the expected one and it is
/// not mixed-script. Up to [`MAX_OFFENDERS`] non-conforming sentences are
/// sampled with `seed`.
pub fn check_script_expectation<S: AsRef<str>>(
    sentences: &[S],
    expected_script: &str,
    mixed_threshold: f64,
    seed: u64,
) -> Result<ScriptConformance> {
    let expected = parse_script(expected_script)
        .ok_or_else(|| AuditError::config(format!("unknown script `{expected_script}`")))?;
    if sentences.is_empty() {
        return Err(AuditError::EmptyInput("script conformance needs sentences"));
    }
    let expected_name = expected.full_name();
    let mut offenders = Vec::new();
    for (i, s) in sentences.iter().enumerate() {
        let profile = detect_script(s.as_ref(), mixed_threshold);
        let ok =
            profile.dominant == expected_name && profile.verdict == ScriptVerdict::SingleScript;
        if !ok {
            offenders.push((i, profile));
        }
    }
    let total = sentences.len();
    let conforming = total - offenders.len();
    let sampled = sample_indices(offenders.len(), MAX_OFFENDERS, seed)
        .into_iter()
        .map(|k| {
            let (index, ref profile) = offenders[k];
            ScriptOffender {
                index,
                dominant: profile.dominant.clone(),
                verdict: profile.verdict,
                text: sentences[index].as_ref().to_string(),
            }
        })
        .collect();
    Ok(ScriptConformance {
        expected_script: expected_name.to_string(),
        total,
        conforming,
        fraction: conforming as f64 / total as f64,
        offender_count: offenders.len(),
        offenders: sampled,
    })
}
