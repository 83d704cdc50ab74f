//! Unicode helpers shared by the text-side checks: letter and punctuation
//! classes, normalization, and tokenization.

use serde::{Deserialize, Serialize};
use unicode_general_category::{get_general_category, GeneralCategory};
use unicode_normalization::UnicodeNormalization;
use unicode_script::{Script, UnicodeScript};

/// True for characters in the Unicode letter categories (L*).
pub fn is_letter(c: char) -> bool {
    matches!(
        get_general_category(c),
        GeneralCategory::UppercaseLetter
            | GeneralCategory::LowercaseLetter
            | GeneralCategory::TitlecaseLetter
            | GeneralCategory::ModifierLetter
            | GeneralCategory::OtherLetter
    )
}

/// True for characters in the Unicode punctuation categories (P*).
pub fn is_punctuation(c: char) -> bool {
    matches!(
        get_general_category(c),
        GeneralCategory::ConnectorPunctuation
            | GeneralCategory::DashPunctuation
            | GeneralCategory::OpenPunctuation
            | GeneralCategory::ClosePunctuation
            | GeneralCategory::InitialPunctuation
            | GeneralCategory::FinalPunctuation
            | GeneralCategory::OtherPunctuation
    )
}

/// Han ideographs and kana, the characters counted one-per-token.
pub fn is_cjk_char(c: char) -> bool {
    matches!(
        c.script(),
        Script::Han | Script::Hiragana | Script::Katakana
    )
}

/// NFC + lowercase.
pub fn fold_case(s: &str) -> String {
    s.nfc().collect::<String>().to_lowercase()
}

/// Lowercases, removes punctuation characters and collapses whitespace runs
/// to a single ASCII space.
pub fn normalize(s: &str) -> String {
    let folded = fold_case(s);
    let mut out = String::with_capacity(folded.len());
    let mut pending_space = false;
    for c in folded.chars() {
        if c.is_whitespace() {
            pending_space = !out.is_empty();
        } else if !is_punctuation(c) {
            if pending_space {
                out.push(' ');
                pending_space = false;
            }
            out.push(c);
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TokenizeMode {
    /// Unicode-whitespace split with per-token punctuation trimming.
    Whitespace,
    /// One token per Han/kana character; other runs split on whitespace.
    PerCharacterCjk,
    /// One token per non-space, non-punctuation character.
    Character,
}

fn push_run(run: &mut String, out: &mut Vec<String>) {
    let trimmed = run.trim_matches(is_punctuation);
    if !trimmed.is_empty() {
        out.push(trimmed.to_string());
    }
    run.clear();
}

/// Splits a transcript into lowercase tokens.
pub fn tokenize(transcript: &str, mode: TokenizeMode) -> Vec<String> {
    let folded = fold_case(transcript);
    let mut out = Vec::new();
    match mode {
        TokenizeMode::Whitespace => {
            for word in folded.split_whitespace() {
                let trimmed = word.trim_matches(is_punctuation);
                if !trimmed.is_empty() {
                    out.push(trimmed.to_string());
                }
            }
        }
        TokenizeMode::PerCharacterCjk => {
            let mut run = String::new();
            for c in folded.chars() {
                if is_cjk_char(c) {
                    push_run(&mut run, &mut out);
                    out.push(c.to_string());
                } else if c.is_whitespace() {
                    push_run(&mut run, &mut out);
                } else {
                    run.push(c);
                }
            }
            push_run(&mut run, &mut out);
        }
        TokenizeMode::Character => {
            out.extend(
                folded
                    .chars()
                    .filter(|c| !c.is_whitespace() && !is_punctuation(*c))
                    .map(String::from),
            );
        }
    }
    out
}

/// Maximal runs of letter characters, the word boundary used by the
/// whole-word marker matcher.
pub fn letter_runs(s: &str) -> impl Iterator<Item = &str> {
    s.split(|c: char| !is_letter(c)).filter(|w| !w.is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn whitespace_tokens_are_lowercased_and_trimmed() {
        assert_eq!(
            tokenize("Har eg dekt meg.", TokenizeMode::Whitespace),
            vec!["har", "eg", "dekt", "meg"]
        );
    }

    #[test]
    fn cjk_tokens_are_per_character() {
        assert_eq!(tokenize("竹南鎮", TokenizeMode::PerCharacterCjk).len(), 3);
        assert_eq!(
            tokenize("竹南鎮（Tik-lâm-tìn）", TokenizeMode::PerCharacterCjk),
            vec!["竹", "南", "鎮", "tik-lâm-tìn"]
        );
        // latin-only text behaves like whitespace mode
        assert_eq!(
            tokenize("No he anat mai a Agost.", TokenizeMode::PerCharacterCjk),
            tokenize("No he anat mai a Agost.", TokenizeMode::Whitespace)
        );
    }

    #[test]
    fn catalan_template_row_has_six_tokens() {
        assert_eq!(
            tokenize("No he anat mai a Agost.", TokenizeMode::Whitespace).len(),
            6
        );
    }

    #[test]
    fn character_mode_skips_space_and_punctuation() {
        assert_eq!(
            tokenize("ab, c!", TokenizeMode::Character),
            vec!["a", "b", "c"]
        );
    }

    #[test]
    fn normalize_strips_punctuation_and_collapses_space() {
        assert_eq!(normalize("  No he   anat, mai!  "), "no he anat mai");
        assert_eq!(
            normalize("殿试登进士第三甲第一百一十一名。"),
            "殿试登进士第三甲第一百一十一名"
        );
    }

    #[test]
    fn letter_runs_split_on_non_letters() {
        let runs: Vec<_> = letter_runs("ikkje, eg-òg 3x").collect();
        assert_eq!(runs, vec!["ikkje", "eg", "òg", "x"]);
    }

    #[test]
    fn decomposed_input_is_composed_before_matching() {
        assert_eq!(fold_case("O\u{300}G"), "òg");
    }
}
