//! Data-statement skeletons for speech datasets.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::{AuditReport, Severity};

/// Known script or register situation for a language.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DigraphiaEntry {
    pub code: &'static str,
    pub language: &'static str,
    /// Scripts in use, or the competing written standards.
    pub scripts: &'static str,
    pub note: &'static str,
}

pub const DIGRAPHIA_INVENTORY: &[DigraphiaEntry] = &[
    DigraphiaEntry {
        code: "ar",
        language: "Arabic",
        scripts: "Arabic",
        note:
            "Diglossic: Modern Standard Arabic (Fusha) is written, regional dialects are spoken. \
               State which register the prompts and the speech follow.",
    },
    DigraphiaEntry {
        code: "ckb",
        language: "Central Kurdish (Sorani)",
        scripts: "Cyrillic, Hawar (Latin), Sorani (Arabic)",
        note: "Public corpora observed in Sorani (Arabic) script only.",
    },
    DigraphiaEntry {
        code: "dyu",
        language: "Dyula",
        scripts: "Latin, N'Ko",
        note: "Public corpora observed in Latin script only.",
    },
    DigraphiaEntry {
        code: "ff",
        language: "Fula",
        scripts: "Adlam, Ajami (Arabic), Latin",
        note: "Public corpora observed in Latin script only.",
    },
    DigraphiaEntry {
        code: "kmr",
        language: "Northern Kurdish (Kurmanji)",
        scripts: "Cyrillic, Hawar (Latin), Sorani (Arabic)",
        note: "Public corpora observed in Hawar (Latin) script only.",
    },
    DigraphiaEntry {
        code: "mn",
        language: "Mongolian",
        scripts: "Cyrillic, Mongolian (Bichig)",
        note: "Public corpora observed in Cyrillic script only.",
    },
    DigraphiaEntry {
        code: "ms",
        language: "Malay",
        scripts: "Jawi (Arabic), Latin",
        note: "Public corpora observed in Latin script only.",
    },
    DigraphiaEntry {
        code: "nan",
        language: "Southern Min (Taiwanese Hokkien)",
        scripts: "Han, Latin (Tâi-lô / Pe̍h-ōe-jī)",
        note: "Prompts may mix Han characters with romanization, or carry a parenthesized \
               romanization after Han text. State which form the transcripts use.",
    },
    DigraphiaEntry {
        code: "nb",
        language: "Norwegian Bokmål",
        scripts: "Latin (Bokmål and Nynorsk written standards)",
        note: "Two written standards of one language. Corpora labeled Bokmål have been found \
               to contain Nynorsk prompts and the reverse.",
    },
    DigraphiaEntry {
        code: "nn",
        language: "Norwegian Nynorsk",
        scripts: "Latin (Bokmål and Nynorsk written standards)",
        note: "Two written standards of one language. Corpora labeled Nynorsk have been found \
               to be mostly Bokmål.",
    },
    DigraphiaEntry {
        code: "no",
        language: "Norwegian",
        scripts: "Latin (Bokmål and Nynorsk written standards)",
        note: "Two written standards of one language. State which standard the prompts follow.",
    },
    DigraphiaEntry {
        code: "pa",
        language: "Punjabi",
        scripts: "Gurmukhi, Shahmukhi (Arabic)",
        note: "Public corpora observed in Gurmukhi script only.",
    },
    DigraphiaEntry {
        code: "sr",
        language: "Serbian",
        scripts: "Cyrillic, Latin",
        note: "Both scripts are in everyday use. Some public corpora mix them within one split.",
    },
    DigraphiaEntry {
        code: "uz",
        language: "Uzbek",
        scripts: "Arabic, Cyrillic, Latin",
        note: "Public corpora observed in Latin script only.",
    },
    DigraphiaEntry {
        code: "vot",
        language: "Votic",
        scripts: "Cyrillic, Latin",
        note: "Public corpora observed in Latin script only.",
    },
    DigraphiaEntry {
        code: "yue",
        language: "Cantonese",
        scripts: "Han (Standard Written Chinese and written vernacular Cantonese)",
        note: "Diglossic: prompts may be in Standard Written Chinese while speakers read them in \
               Cantonese, or in written vernacular Cantonese. State which.",
    },
    DigraphiaEntry {
        code: "zgh",
        language: "Standard Moroccan Tamazight",
        scripts: "Arabic, Latin, Tifinagh",
        note: "Public corpora observed in Tifinagh script only.",
    },
];

/// Looks up the inventory entry for a locale such as `sr`, `sr-RS` or
/// `zh_HK`.
pub fn digraphia_entry(locale: &str) -> Option<&'static DigraphiaEntry> {
    let norm = locale.trim().to_lowercase().replace('-', "_");
    if norm == "zh_hk" {
        return DIGRAPHIA_INVENTORY.iter().find(|e| e.code == "yue");
    }
    let primary = norm.split('_').next().unwrap_or("");
    DIGRAPHIA_INVENTORY.iter().find(|e| e.code == primary)
}

const TODO: &str = "TODO";

fn field(decisions: &BTreeMap<String, String>, key: &str, fallback: Option<String>) -> String {
    decisions
        .get(key)
        .filter(|v| !v.trim().is_empty())
        .cloned()
        .or(fallback)
        .unwrap_or_else(|| format!("{TODO}: fill in `{key}`"))
}

/// Markdown skeleton of a data statement. Known script and register facts
/// for `locale` are filled in; everything else comes from `decisions` or is
/// left as a TODO. Recognized decision keys: `language`, `script`,
/// `orthography_standard`, `register`, `dialect_scope`,
/// `speaker_demographics`, `notes`.
pub fn emit_data_statement(
    locale: &str,
    decisions: &BTreeMap<String, String>,
    report: Option<&AuditReport>,
) -> String {
    let entry = digraphia_entry(locale);
    let mut s = String::new();
    let _ = writeln!(s, "# Data statement: {locale}\n");

    s.push_str("## Language and locale\n\n");
    let _ = writeln!(s, "- Locale: `{locale}`");
    let _ = writeln!(
        s,
        "- Language: {}\n",
        field(decisions, "language", entry.map(|e| e.language.to_string()))
    );

    s.push_str("## Scripts and orthography standard\n\n");
    if let Some(e) = entry {
        let _ = writeln!(s, "- Scripts in use for this language: {}", e.scripts);
    }
    let _ = writeln!(
        s,
        "- Script of this dataset: {}",
        field(decisions, "script", None)
    );
    let _ = writeln!(
        s,
        "- Orthography standard: {}\n",
        field(decisions, "orthography_standard", None)
    );

    s.push_str("## Register\n\n");
    let _ = writeln!(s, "{}\n", field(decisions, "register", None));

    s.push_str("## Dialect scope\n\n");
    let _ = writeln!(s, "{}\n", field(decisions, "dialect_scope", None));

    s.push_str("## Speaker demographics\n\n");
    let measured = report.and_then(|r| r.speaker_stats.as_ref()).map(|sp| {
        format!(
            "{} speakers, {:.2} h total, top speaker {:.1}% of audio",
            sp.unique_speakers,
            sp.total_hours,
            sp.top_speaker_share * 100.0
        )
    });
    if let Some(m) = &measured {
        let _ = writeln!(s, "- Measured: {m}");
    }
    let _ = writeln!(
        s,
        "- Demographics: {}\n",
        field(decisions, "speaker_demographics", None)
    );

    s.push_str("## Digraphia and diglossia notes\n\n");
    match entry {
        Some(e) => {
            let _ = writeln!(s, "{}", e.note);
        }
        None => {
            let _ = writeln!(s, "{TODO}: no inventory entry for this locale; describe any competing scripts or registers.");
        }
    }
    if let Some(n) = decisions.get("notes").filter(|n| !n.trim().is_empty()) {
        let _ = writeln!(s, "\n{n}");
    }
    s.push('\n');

    s.push_str("## Quality flags\n\n");
    match report {
        Some(r) if r.flags.is_empty() => s.push_str("The audit raised no flags.\n"),
        Some(r) => {
            for f in &r.flags {
                let sev = if f.severity == Severity::Fail {
                    "fail"
                } else {
                    "warn"
                };
                let _ = writeln!(s, "- {:?} ({sev})", f.code);
            }
        }
        None => {
            let _ = writeln!(s, "{TODO}: run an audit and summarize its flags.");
        }
    }
    s
}
