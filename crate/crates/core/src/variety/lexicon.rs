//! Marker lexicons and their plain-text file format.
//!
//! ```text
//! # comment
//! [meta]
//! name = no
//! class_a_label = Nynorsk
//! class_b_label = Bokmål
//! match = word
//! [class_a]
//! ikkje
//! [class_b]
//! ikke
//! [suffix_a]
//! a
//! [suffix_b]
//! en
//! ```

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{AuditError, Result};
use crate::text::fold_case;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum VarietyClass {
    ClassA,
    ClassB,
}

/// How markers are located in a sentence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MatchMode {
    /// Marker must equal a maximal run of letters.
    WholeWord,
    /// Marker may appear anywhere in the sentence.
    Substring,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuffixRule {
    pub suffix: String,
    pub class: VarietyClass,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarkerLexicon {
    pub name: String,
    pub class_a_label: String,
    pub class_b_label: String,
    pub class_a_markers: BTreeSet<String>,
    pub class_b_markers: BTreeSet<String>,
    pub suffix_rules: Vec<SuffixRule>,
    pub match_mode: MatchMode,
}

const NYNORSK_MARKERS: [&str; 18] = [
    "ikkje", "eg", "eit", "eitt", "me", "ho", "hjå", "kva", "kven", "noko", "nokre", "sjå",
    "skule", "kor", "fyrst", "mykje", "òg", "medan",
];
const BOKMAL_MARKERS: [&str; 18] = [
    "ikke", "jeg", "et", "en", "vi", "hun", "hos", "hva", "hvem", "noe", "noen", "se", "skole",
    "hvor", "først", "mye", "også", "mens",
];

// Illustrative lists only; replace with a curated lexicon file for real audits.
const FUSHA_MARKERS: [&str; 10] = [
    "سوف",
    "ليس",
    "لماذا",
    "ماذا",
    "الذي",
    "التي",
    "الذين",
    "هؤلاء",
    "لن",
    "هكذا",
];
const ARABIC_DIALECT_MARKERS: [&str; 14] = [
    "ازاي",
    "عايز",
    "دلوقتي",
    "كده",
    "ليه",
    "إيه",
    "بتاع",
    "مش",
    "بدي",
    "هلق",
    "هيك",
    "وين",
    "عشان",
    "اللي",
];

const SWC_MARKERS: [&str; 16] = [
    "的", "們", "们", "是", "這", "这", "他", "她", "它", "了", "沒有", "没有", "什麼", "什么",
    "哪", "啥",
];
const CANTONESE_MARKERS: [&str; 20] = [
    "嘅", "咗", "喺", "哋", "冇", "嘢", "啲", "佢", "咁", "噉", "嚟", "嗰", "乜", "咩", "畀", "睇",
    "唔", "㗎", "啱", "諗",
];

impl MarkerLexicon {
    /// Builds a lexicon, lowercasing markers and checking that the two
    /// marker sets are disjoint and whitespace-free.
    pub fn new<A, B>(
        name: impl Into<String>,
        labels: (&str, &str),
        class_a: A,
        class_b: B,
        suffix_rules: Vec<SuffixRule>,
        match_mode: MatchMode,
    ) -> Result<Self>
    where
        A: IntoIterator,
        A::Item: AsRef<str>,
        B: IntoIterator,
        B::Item: AsRef<str>,
    {
        let name = name.into();
        let collect = |items: Vec<String>| -> Result<BTreeSet<String>> {
            items
                .into_iter()
                .map(|m| {
                    if m.is_empty() || m.chars().any(char::is_whitespace) {
                        Err(AuditError::config(format!(
                            "lexicon `{name}`: marker {m:?} is empty or contains whitespace"
                        )))
                    } else {
                        Ok(m)
                    }
                })
                .collect()
        };
        let class_a_markers = collect(
            class_a
                .into_iter()
                .map(|m| fold_case(m.as_ref().trim()))
                .collect(),
        )?;
        let class_b_markers = collect(
            class_b
                .into_iter()
                .map(|m| fold_case(m.as_ref().trim()))
                .collect(),
        )?;
        if let Some(shared) = class_a_markers.intersection(&class_b_markers).next() {
            return Err(AuditError::config(format!(
                "lexicon `{name}`: marker `{shared}` is listed for both classes"
            )));
        }
        let suffix_rules = suffix_rules
            .into_iter()
            .map(|r| {
                let suffix = fold_case(r.suffix.trim());
                if suffix.is_empty() || suffix.chars().any(char::is_whitespace) {
                    Err(AuditError::config(format!(
                        "lexicon `{name}`: invalid suffix {:?}",
                        r.suffix
                    )))
                } else {
                    Ok(SuffixRule {
                        suffix,
                        class: r.class,
                    })
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(MarkerLexicon {
            name,
            class_a_label: labels.0.to_string(),
            class_b_label: labels.1.to_string(),
            class_a_markers,
            class_b_markers,
            suffix_rules,
            match_mode,
        })
    }

    pub fn is_empty(&self) -> bool {
        self.class_a_markers.is_empty()
            && self.class_b_markers.is_empty()
            && self.suffix_rules.is_empty()
    }

    pub fn label(&self, class: VarietyClass) -> &str {
        match class {
            VarietyClass::ClassA => &self.class_a_label,
            VarietyClass::ClassB => &self.class_b_label,
        }
    }

    /// Bokmål/Nynorsk lexicon: 18 whole-word markers per class plus the
    /// `a` (Nynorsk) and `en` (Bokmål) word-ending rules. Class A is Nynorsk.
    pub fn norwegian() -> Self {
        Self::new(
            "no",
            ("Nynorsk", "Bokmål"),
            NYNORSK_MARKERS,
            BOKMAL_MARKERS,
            vec![
                SuffixRule {
                    suffix: "a".into(),
                    class: VarietyClass::ClassA,
                },
                SuffixRule {
                    suffix: "en".into(),
                    class: VarietyClass::ClassB,
                },
            ],
            MatchMode::WholeWord,
        )
        .expect("built-in Norwegian lexicon is valid")
    }

    /// Small illustrative Fusha (class A) / dialect (class B) lexicon with
    /// substring matching.
    pub fn arabic() -> Self {
        Self::new(
            "ar",
            ("MSA (Fusha)", "Dialect"),
            FUSHA_MARKERS,
            ARABIC_DIALECT_MARKERS,
            Vec::new(),
            MatchMode::Substring,
        )
        .expect("built-in Arabic lexicon is valid")
    }

    /// Small illustrative SWC (class A) / Cantonese (class B) character
    /// lexicon with substring matching.
    pub fn cantonese() -> Self {
        Self::new(
            "yue",
            ("SWC", "Cantonese"),
            SWC_MARKERS,
            CANTONESE_MARKERS,
            Vec::new(),
            MatchMode::Substring,
        )
        .expect("built-in Cantonese lexicon is valid")
    }

    /// Looks up a built-in lexicon by classifier id.
    pub fn builtin(id: &str) -> Option<Self> {
        match id {
            "no" | "nb" | "nn" | "norwegian" => Some(Self::norwegian()),
            "ar" | "arabic" => Some(Self::arabic()),
            "yue" | "zh_hk" | "cantonese" => Some(Self::cantonese()),
            _ => None,
        }
    }

    /// Parses the sectioned lexicon text format.
    pub fn parse(text: &str, default_name: &str) -> Result<Self> {
        #[derive(Clone, Copy)]
        enum Section {
            None,
            Meta,
            ClassA,
            ClassB,
            SuffixA,
            SuffixB,
        }
        let mut section = Section::None;
        let mut name = default_name.to_string();
        let mut labels = ("class_a".to_string(), "class_b".to_string());
        let mut mode = MatchMode::WholeWord;
        let (mut a, mut b, mut rules) = (Vec::new(), Vec::new(), Vec::new());
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if line.starts_with('[') && line.ends_with(']') {
                section = match &line[1..line.len() - 1] {
                    "meta" => Section::Meta,
                    "class_a" => Section::ClassA,
                    "class_b" => Section::ClassB,
                    "suffix_a" => Section::SuffixA,
                    "suffix_b" => Section::SuffixB,
                    other => {
                        return Err(AuditError::config(format!(
                            "lexicon line {}: unknown section [{other}]",
                            lineno + 1
                        )))
                    }
                };
                continue;
            }
            match section {
                Section::None => {
                    return Err(AuditError::config(format!(
                        "lexicon line {}: entry outside of any section",
                        lineno + 1
                    )))
                }
                Section::Meta => {
                    let (key, value) = line.split_once('=').ok_or_else(|| {
                        AuditError::config(format!(
                            "lexicon line {}: expected key = value",
                            lineno + 1
                        ))
                    })?;
                    let value = value.trim().to_string();
                    match key.trim() {
                        "name" => name = value,
                        "class_a_label" => labels.0 = value,
                        "class_b_label" => labels.1 = value,
                        "match" => {
                            mode = match value.as_str() {
                                "word" | "whole_word" => MatchMode::WholeWord,
                                "substring" => MatchMode::Substring,
                                other => {
                                    return Err(AuditError::config(format!(
                                        "lexicon line {}: unknown match mode `{other}`",
                                        lineno + 1
                                    )))
                                }
                            }
                        }
                        other => {
                            return Err(AuditError::config(format!(
                                "lexicon line {}: unknown meta key `{other}`",
                                lineno + 1
                            )))
                        }
                    }
                }
                Section::ClassA => a.push(line.to_string()),
                Section::ClassB => b.push(line.to_string()),
                Section::SuffixA => rules.push(SuffixRule {
                    suffix: line.to_string(),
                    class: VarietyClass::ClassA,
                }),
                Section::SuffixB => rules.push(SuffixRule {
                    suffix: line.to_string(),
                    class: VarietyClass::ClassB,
                }),
            }
        }
        Self::new(name, (&labels.0, &labels.1), a, b, rules, mode)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| AuditError::io(path, e))?;
        let stem = path
            .file_stem()
            .and_then(|s| s.to_str())
            .unwrap_or("custom");
        Self::parse(&text, stem)
    }

    /// Renders the lexicon in the file format accepted by [`MarkerLexicon::parse`].
    pub fn to_file_string(&self) -> String {
        let mut out = String::new();
        let mode = match self.match_mode {
            MatchMode::WholeWord => "word",
            MatchMode::Substring => "substring",
        };
        let _ = writeln!(out, "[meta]");
        let _ = writeln!(out, "name = {}", self.name);
        let _ = writeln!(out, "class_a_label = {}", self.class_a_label);
        let _ = writeln!(out, "class_b_label = {}", self.class_b_label);
        let _ = writeln!(out, "match = {mode}");
        let _ = writeln!(out, "[class_a]");
        for m in &self.class_a_markers {
            let _ = writeln!(out, "{m}");
        }
        let _ = writeln!(out, "[class_b]");
        for m in &self.class_b_markers {
            let _ = writeln!(out, "{m}");
        }
        for (header, class) in [
            ("[suffix_a]", VarietyClass::ClassA),
            ("[suffix_b]", VarietyClass::ClassB),
        ] {
            let _ = writeln!(out, "{header}");
            for r in self.suffix_rules.iter().filter(|r| r.class == class) {
                let _ = writeln!(out, "{}", r.suffix);
            }
        }
        out
    }
}
