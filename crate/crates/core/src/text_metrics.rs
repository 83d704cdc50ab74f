//! Text-side checks on transcripts: templated prompts, dual-script prompts,
//! duplicates and prompt length.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::audio_metrics::median;
use crate::error::{AuditError, Result};
use crate::sampling::sample_indices;
use crate::text::{is_letter, normalize, tokenize, TokenizeMode};
use crate::variety::script::{detect_script, script_name, ScriptVerdict};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TemplateConfig {
    pub k_prefix: usize,
    pub min_cluster: usize,
    pub min_similarity: f64,
    /// Members compared pairwise when confirming a bucket.
    pub similarity_sample: usize,
}

impl Default for TemplateConfig {
    fn default() -> Self {
        TemplateConfig {
            k_prefix: 4,
            min_cluster: 20,
            min_similarity: 0.7,
            similarity_sample: 50,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TemplateCluster {
    pub key_prefix: Vec<String>,
    pub size: usize,
    pub sample_sentences: Vec<String>,
    pub mean_similarity: f64,
}

const CLUSTER_SAMPLES: usize = 10;

fn token_edit_distance(a: &[String], b: &[String]) -> usize {
    let mut prev: Vec<usize> = (0..=b.len()).collect();
    let mut cur = vec![0; b.len() + 1];
    for (i, x) in a.iter().enumerate() {
        cur[0] = i + 1;
        for (j, y) in b.iter().enumerate() {
            let sub = prev[j] + usize::from(x != y);
            cur[j + 1] = sub.min(prev[j + 1] + 1).min(cur[j] + 1);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[b.len()]
}

/// `1 - distance / max_len` over token sequences.
pub fn edit_similarity(a: &[String], b: &[String]) -> f64 {
    let longest = a.len().max(b.len());
    if longest == 0 {
        return 1.0;
    }
    1.0 - token_edit_distance(a, b) as f64 / longest as f64
}

/// Groups sentences by their first `k_prefix` normalized tokens and keeps the
/// groups that are both large and internally similar.
///
/// Han and kana count one token per character, so prefixes work for
/// unsegmented scripts too. Sentences shorter than the prefix are never
/// bucketed. Clusters come back largest first.
pub fn detect_templates<S: AsRef<str>>(
    transcripts: &[S],
    config: &TemplateConfig,
    seed: u64,
) -> Vec<TemplateCluster> {
    let k = config.k_prefix.max(1);
    let tokens: Vec<Vec<String>> = transcripts
        .iter()
        .map(|t| tokenize(&normalize(t.as_ref()), TokenizeMode::PerCharacterCjk))
        .collect();
    let mut buckets: HashMap<&[String], Vec<usize>> = HashMap::new();
    for (i, toks) in tokens.iter().enumerate() {
        if toks.len() >= k {
            buckets.entry(&toks[..k]).or_default().push(i);
        }
    }
    let mut clusters: Vec<TemplateCluster> = buckets
        .into_iter()
        .filter(|(_, members)| members.len() >= config.min_cluster.max(1))
        .filter_map(|(key, members)| {
            let picked: Vec<usize> =
                sample_indices(members.len(), config.similarity_sample.max(2), seed)
                    .into_iter()
                    .map(|p| members[p])
                    .collect();
            let mut total = 0.0;
            let mut pairs = 0usize;
            for (x, &i) in picked.iter().enumerate() {
                for &j in &picked[x + 1..] {
                    total += edit_similarity(&tokens[i], &tokens[j]);
                    pairs += 1;
                }
            }
            let mean_similarity = if pairs == 0 {
                1.0
            } else {
                total / pairs as f64
            };
            (mean_similarity >= config.min_similarity).then(|| TemplateCluster {
                key_prefix: key.to_vec(),
                size: members.len(),
                sample_sentences: members
                    .iter()
                    .take(CLUSTER_SAMPLES)
                    .map(|&i| transcripts[i].as_ref().to_string())
                    .collect(),
                mean_similarity,
            })
        })
        .collect();
    clusters.sort_by(|a, b| {
        b.size
            .cmp(&a.size)
            .then_with(|| a.key_prefix.cmp(&b.key_prefix))
    });
    clusters
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DualScriptVerdict {
    Plain,
    DualScript {
        base_script: String,
        paren_script: String,
    },
}

impl DualScriptVerdict {
    pub fn is_dual(&self) -> bool {
        matches!(self, DualScriptVerdict::DualScript { .. })
    }
}

const OPEN_PARENS: [char; 2] = ['(', '（'];
const CLOSE_PARENS: [char; 2] = [')', '）'];
const CROSS_SCRIPT_SHARE: f64 = 0.9;

/// Splits `base (paren)` into its two parts, if the text has that shape.
fn split_parenthetical(text: &str) -> Option<(&str, &str)> {
    let t = text.trim();
    let inner_end = t.strip_suffix(CLOSE_PARENS)?;
    let open = inner_end.find(OPEN_PARENS)?;
    let base = inner_end[..open].trim();
    let paren_start = open + inner_end[open..].chars().next()?.len_utf8();
    Some((base, &inner_end[paren_start..]))
}

/// Detects prompts written as a base-script phrase followed by a
/// parenthesized rendering in another script, e.g. a Han word with its
/// romanization.
pub fn detect_dual_script(transcript: &str) -> DualScriptVerdict {
    let Some((base, inner)) = split_parenthetical(transcript) else {
        return DualScriptVerdict::Plain;
    };
    let base_profile = detect_script(base, 1.0);
    if base_profile.verdict == ScriptVerdict::NoLetters {
        return DualScriptVerdict::Plain;
    }
    let inner_profile = detect_script(inner, 1.0);
    let inner_letters = inner_profile.total_letters();
    if inner_letters == 0 || inner_profile.dominant == base_profile.dominant {
        return DualScriptVerdict::Plain;
    }
    let foreign = inner
        .chars()
        .filter(|c| is_letter(*c) && script_name(*c) != base_profile.dominant)
        .count();
    if foreign as f64 / inner_letters as f64 >= CROSS_SCRIPT_SHARE {
        DualScriptVerdict::DualScript {
            base_script: base_profile.dominant,
            paren_script: inner_profile.dominant,
        }
    } else {
        DualScriptVerdict::Plain
    }
}

/// Drops a trailing cross-script parenthetical, leaving the base phrase.
pub fn strip_cross_script(transcript: &str) -> &str {
    match (
        detect_dual_script(transcript),
        split_parenthetical(transcript),
    ) {
        (DualScriptVerdict::DualScript { .. }, Some((base, _))) => base,
        _ => transcript,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CountingUnit {
    Words,
    Characters,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PromptShapeStats {
    pub n: usize,
    pub counting_unit: CountingUnit,
    pub median_word_count: f64,
    pub median_char_count: f64,
    /// Transcribed tokens across the corpus, in `counting_unit`.
    pub total_tokens: usize,
    pub dual_script_fraction: f64,
    pub exact_duplicate_fraction: f64,
    pub script_stripped_duplicate_fraction: f64,
}

const HAN_SAMPLE: usize = 1000;
const HAN_DOMINANCE: f64 = 0.5;

/// True when at least half of the letters in the first 1000 sentences are Han.
pub fn is_han_dominant<S: AsRef<str>>(transcripts: &[S]) -> bool {
    let (mut han, mut letters) = (0usize, 0usize);
    for t in transcripts.iter().take(HAN_SAMPLE) {
        for c in t.as_ref().chars().filter(|c| is_letter(*c)) {
            letters += 1;
            if script_name(c) == "Han" {
                han += 1;
            }
        }
    }
    letters > 0 && han as f64 / letters as f64 >= HAN_DOMINANCE
}

fn duplicate_fraction<I: Iterator<Item = String>>(keys: I, n: usize) -> f64 {
    let mut counts: HashMap<String, usize> = HashMap::new();
    for k in keys {
        *counts.entry(k).or_default() += 1;
    }
    let dup: usize = counts.values().filter(|&&c| c > 1).sum();
    dup as f64 / n as f64
}

pub fn prompt_shape_stats<S: AsRef<str>>(transcripts: &[S]) -> Result<PromptShapeStats> {
    if transcripts.is_empty() {
        return Err(AuditError::EmptyInput("no transcripts"));
    }
    let n = transcripts.len();
    let (unit, mode) = if is_han_dominant(transcripts) {
        (CountingUnit::Characters, TokenizeMode::PerCharacterCjk)
    } else {
        (CountingUnit::Words, TokenizeMode::Whitespace)
    };
    let counts: Vec<usize> = transcripts
        .iter()
        .map(|t| tokenize(t.as_ref(), mode).len())
        .collect();
    let word_counts: Vec<f64> = counts.iter().map(|&c| c as f64).collect();
    let char_counts: Vec<f64> = transcripts
        .iter()
        .map(|t| t.as_ref().chars().filter(|c| !c.is_whitespace()).count() as f64)
        .collect();
    let dual = transcripts
        .iter()
        .filter(|t| detect_dual_script(t.as_ref()).is_dual())
        .count();
    Ok(PromptShapeStats {
        n,
        counting_unit: unit,
        median_word_count: median(&word_counts).unwrap_or(0.0),
        median_char_count: median(&char_counts).unwrap_or(0.0),
        total_tokens: counts.iter().sum(),
        dual_script_fraction: dual as f64 / n as f64,
        exact_duplicate_fraction: duplicate_fraction(
            transcripts.iter().map(|t| normalize(t.as_ref())),
            n,
        ),
        script_stripped_duplicate_fraction: duplicate_fraction(
            transcripts
                .iter()
                .map(|t| normalize(strip_cross_script(t.as_ref()))),
            n,
        ),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const PLACES: [&str; 30] = [
        "Agost",
        "Aigües",
        "Aiora",
        "Aiòder",
        "Alaior",
        "Alaró",
        "Albaida",
        "Albatera",
        "Alberic",
        "Alcoi",
        "Alella",
        "Alfara",
        "Algemesí",
        "Alginet",
        "Almassora",
        "Alpicat",
        "Altea",
        "Alzira",
        "Amposta",
        "Andorra",
        "Anglès",
        "Arenys",
        "Artà",
        "Balaguer",
        "Banyoles",
        "Begur",
        "Berga",
        "Besalú",
        "Blanes",
        "Borriana",
    ];

    fn catalan(n: usize) -> Vec<String> {
        PLACES
            .iter()
            .take(n)
            .map(|p| format!("No he anat mai a {p}."))
            .collect()
    }

    #[test]
    fn catalan_template_is_one_cluster() {
        let c = detect_templates(&catalan(30), &TemplateConfig::default(), 0);
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].key_prefix, vec!["no", "he", "anat", "mai"]);
        assert_eq!(c[0].size, 30);
        assert_eq!(c[0].sample_sentences.len(), 10);
        assert!(c[0].mean_similarity > 0.8);
    }

    #[test]
    fn min_cluster_boundary() {
        assert!(detect_templates(&catalan(19), &TemplateConfig::default(), 0).is_empty());
        assert_eq!(
            detect_templates(&catalan(20), &TemplateConfig::default(), 0).len(),
            1
        );
    }

    #[test]
    fn han_templates_bucket_per_character() {
        let nums = [
            "一十一",
            "七十一",
            "三十一",
            "三十九",
            "三十五",
            "九十",
            "五十",
            "八十七",
            "八十九",
            "六十七",
        ];
        let corpus: Vec<String> = nums
            .iter()
            .map(|n| format!("殿试登进士第三甲第一百{n}名。"))
            .collect();
        let cfg = TemplateConfig {
            min_cluster: 10,
            ..TemplateConfig::default()
        };
        let c = detect_templates(&corpus, &cfg, 0);
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].key_prefix, vec!["殿", "试", "登", "进"]);
    }

    #[test]
    fn dissimilar_bucket_is_rejected() {
        let corpus: Vec<String> = (0..25)
            .map(|i| format!("the cat sat on {}", "x ".repeat(i + 1).trim()))
            .collect();
        let cfg = TemplateConfig {
            min_similarity: 0.95,
            ..TemplateConfig::default()
        };
        assert!(detect_templates(&corpus, &cfg, 0).is_empty());
    }

    #[test]
    fn dual_script_rows() {
        assert_eq!(
            detect_dual_script("竹南鎮（Tik-lâm-tìn）"),
            DualScriptVerdict::DualScript {
                base_script: "Han".into(),
                paren_script: "Latin".into()
            }
        );
        assert!(detect_dual_script("竹坑口（Tik-khinn-kháu | Tek-khiⁿ-kháu）").is_dual());
        assert_eq!(
            detect_dual_script("hello (world)"),
            DualScriptVerdict::Plain
        );
        assert_eq!(detect_dual_script("竹南鎮"), DualScriptVerdict::Plain);
        assert_eq!(detect_dual_script("(Tik)"), DualScriptVerdict::Plain);
    }

    #[test]
    fn dual_script_paren_style_and_whitespace_invariant() {
        let a = detect_dual_script("竹南鎮（Tik-lâm-tìn）");
        assert_eq!(detect_dual_script("  竹南鎮 (Tik-lâm-tìn)  "), a);
        assert_eq!(detect_dual_script("竹南鎮(Tik-lâm-tìn）"), a);
    }

    #[test]
    fn strip_keeps_base() {
        assert_eq!(strip_cross_script("竹南鎮（Tik-lâm-tìn）"), "竹南鎮");
        assert_eq!(strip_cross_script("hello (world)"), "hello (world)");
    }

    #[test]
    fn exact_duplicates() {
        let s = prompt_shape_stats(&["a b", "a b", "c"]).unwrap();
        assert!((s.exact_duplicate_fraction - 2.0 / 3.0).abs() < 1e-12);
        assert_eq!(s.total_tokens, 5);
    }

    #[test]
    fn stripped_duplicates_catch_alternate_romanizations() {
        let s = prompt_shape_stats(&[
            "竹南鎮（Tek-lâm-tìn）",
            "竹南鎮（Tik-lâm-tìn）",
            "竹東（Tik-tang）",
        ])
        .unwrap();
        assert_eq!(s.exact_duplicate_fraction, 0.0);
        assert!((s.script_stripped_duplicate_fraction - 2.0 / 3.0).abs() < 1e-12);
        assert_eq!(s.dual_script_fraction, 1.0);
    }

    #[test]
    fn short_phrase_corpus_has_tiny_median() {
        let corpus: Vec<String> = (0..100)
            .map(|i| {
                if i % 2 == 0 {
                    format!("w{i}")
                } else {
                    format!("w{i} v")
                }
            })
            .collect();
        let s = prompt_shape_stats(&corpus).unwrap();
        assert!(s.median_word_count <= 2.0);
        assert_eq!(s.counting_unit, CountingUnit::Words);
    }

    #[test]
    fn han_corpus_counts_characters() {
        let s = prompt_shape_stats(&["今天天氣很好", "我哋去飲茶"]).unwrap();
        assert_eq!(s.counting_unit, CountingUnit::Characters);
        assert_eq!(s.median_word_count, 5.5);
    }

    #[test]
    fn empty_input_is_error() {
        assert!(prompt_shape_stats::<&str>(&[]).is_err());
    }
}
