//! Rule-based variety classifiers driven by marker lexicons, plus script
//! profiling.
//!
//! Every sentence gets two scores, one per class. Markers contribute at most
//! one point each (presence, not frequency); suffix rules add one point per
//! word carrying the suffix. The verdict compares the two scores: the larger
//! one wins, equal non-zero scores are `Mixed`, and two zeros are `Unmarked`.

pub mod lexicon;
pub mod script;

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use lexicon::{MarkerLexicon, MatchMode, SuffixRule, VarietyClass};
pub use script::{
    check_script_expectation, detect_script, parse_script, ScriptConformance, ScriptOffender,
    ScriptProfile, ScriptVerdict,
};

use crate::error::{AuditError, Result};
use crate::text::{fold_case, letter_runs};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum VarietyCategory {
    ClassA,
    ClassB,
    Mixed,
    Unmarked,
}

impl VarietyCategory {
    pub const ALL: [VarietyCategory; 4] = [
        VarietyCategory::ClassA,
        VarietyCategory::ClassB,
        VarietyCategory::Mixed,
        VarietyCategory::Unmarked,
    ];

    pub fn from_scores(a_score: usize, b_score: usize) -> Self {
        if a_score > b_score {
            VarietyCategory::ClassA
        } else if b_score > a_score {
            VarietyCategory::ClassB
        } else if a_score > 0 {
            VarietyCategory::Mixed
        } else {
            VarietyCategory::Unmarked
        }
    }

    pub fn label<'a>(&self, lexicon: &'a MarkerLexicon) -> &'a str {
        match self {
            VarietyCategory::ClassA => &lexicon.class_a_label,
            VarietyCategory::ClassB => &lexicon.class_b_label,
            VarietyCategory::Mixed => "Mixed",
            VarietyCategory::Unmarked => "Unmarked",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HitKind {
    Marker,
    Suffix,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarkerHit {
    /// The marker, or for suffix hits the word that carried the suffix.
    pub marker: String,
    pub class: VarietyClass,
    pub via: HitKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VarietyVerdict {
    pub category: VarietyCategory,
    pub a_score: usize,
    pub b_score: usize,
    pub matched_markers: Vec<MarkerHit>,
}

fn score(sentence: &str, lexicon: &MarkerLexicon, mode: MatchMode) -> Result<VarietyVerdict> {
    if lexicon.is_empty() {
        return Err(AuditError::config(format!(
            "lexicon `{}` has no markers and no suffix rules",
            lexicon.name
        )));
    }
    let folded = fold_case(sentence);
    let words: Vec<&str> = letter_runs(&folded).collect();
    let word_set: BTreeSet<&str> = words.iter().copied().collect();
    let present = |marker: &str| match mode {
        MatchMode::WholeWord => word_set.contains(marker),
        MatchMode::Substring => folded.contains(marker),
    };

    let mut hits = Vec::new();
    let (mut a_score, mut b_score) = (0, 0);
    for (markers, class) in [
        (&lexicon.class_a_markers, VarietyClass::ClassA),
        (&lexicon.class_b_markers, VarietyClass::ClassB),
    ] {
        for marker in markers.iter().filter(|m| present(m)) {
            match class {
                VarietyClass::ClassA => a_score += 1,
                VarietyClass::ClassB => b_score += 1,
            }
            hits.push(MarkerHit {
                marker: marker.clone(),
                class,
                via: HitKind::Marker,
            });
        }
    }
    for rule in &lexicon.suffix_rules {
        for word in words.iter().filter(|w| w.ends_with(rule.suffix.as_str())) {
            match rule.class {
                VarietyClass::ClassA => a_score += 1,
                VarietyClass::ClassB => b_score += 1,
            }
            hits.push(MarkerHit {
                marker: (*word).to_string(),
                class: rule.class,
                via: HitKind::Suffix,
            });
        }
    }
    Ok(VarietyVerdict {
        category: VarietyCategory::from_scores(a_score, b_score),
        a_score,
        b_score,
        matched_markers: hits,
    })
}

/// Classifies one sentence with the lexicon's own match mode.
pub fn classify_two_way(sentence: &str, lexicon: &MarkerLexicon) -> Result<VarietyVerdict> {
    score(sentence, lexicon, lexicon.match_mode)
}

/// Character-level classification: markers (single characters or strings)
/// are matched by containment whatever the lexicon's mode says.
pub fn classify_cantonese(sentence: &str, lexicon: &MarkerLexicon) -> Result<VarietyVerdict> {
    score(sentence, lexicon, MatchMode::Substring)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CategoryCount {
    pub category: VarietyCategory,
    pub label: String,
    pub count: usize,
    /// Percentage rounded to one decimal.
    pub percent: f64,
    pub percent_exact: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VarietyTally {
    pub classifier: String,
    pub total: usize,
    pub categories: Vec<CategoryCount>,
}

impl VarietyTally {
    pub fn count(&self, category: VarietyCategory) -> usize {
        self.categories
            .iter()
            .find(|c| c.category == category)
            .map_or(0, |c| c.count)
    }

    /// Builds a tally from raw counts in `ClassA, ClassB, Mixed, Unmarked` order.
    pub fn from_counts(lexicon: &MarkerLexicon, counts: [usize; 4]) -> Self {
        let total: usize = counts.iter().sum();
        let categories = VarietyCategory::ALL
            .iter()
            .zip(counts)
            .map(|(&category, count)| {
                let exact = if total == 0 {
                    0.0
                } else {
                    count as f64 * 100.0 / total as f64
                };
                CategoryCount {
                    category,
                    label: category.label(lexicon).to_string(),
                    count,
                    percent: round1(exact),
                    percent_exact: exact,
                }
            })
            .collect();
        VarietyTally {
            classifier: lexicon.name.clone(),
            total,
            categories,
        }
    }
}

pub(crate) fn round1(x: f64) -> f64 {
    (x * 10.0).round() / 10.0
}

fn index_of(category: VarietyCategory) -> usize {
    match category {
        VarietyCategory::ClassA => 0,
        VarietyCategory::ClassB => 1,
        VarietyCategory::Mixed => 2,
        VarietyCategory::Unmarked => 3,
    }
}

fn tally_with<S, F>(sentences: &[S], lexicon: &MarkerLexicon, classify: F) -> Result<VarietyTally>
where
    S: AsRef<str> + Sync,
    F: Fn(&str, &MarkerLexicon) -> Result<VarietyVerdict> + Sync,
{
    if sentences.is_empty() {
        return Err(AuditError::EmptyInput("cannot tally an empty corpus"));
    }
    let verdicts: Vec<VarietyCategory> = sentences
        .par_iter()
        .map(|s| classify(s.as_ref(), lexicon).map(|v| v.category))
        .collect::<Result<_>>()?;
    let mut counts = [0usize; 4];
    for c in verdicts {
        counts[index_of(c)] += 1;
    }
    Ok(VarietyTally::from_counts(lexicon, counts))
}

/// Classifies every sentence and tallies the four categories.
pub fn classify_corpus<S: AsRef<str> + Sync>(
    sentences: &[S],
    lexicon: &MarkerLexicon,
) -> Result<VarietyTally> {
    tally_with(sentences, lexicon, classify_two_way)
}

/// Corpus tally using character-level containment matching.
pub fn classify_corpus_cantonese<S: AsRef<str> + Sync>(
    sentences: &[S],
    lexicon: &MarkerLexicon,
) -> Result<VarietyTally> {
    tally_with(sentences, lexicon, classify_cantonese)
}
