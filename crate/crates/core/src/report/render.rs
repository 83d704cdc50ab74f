use std::fmt::Write as _;
use std::io::Write;

use serde::{Deserialize, Serialize};

use super::{AuditReport, Severity};
use crate::error::{AuditError, Result};
use crate::variety::VarietyCategory;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReportFormat {
    #[default]
    Json,
    Markdown,
}

/// Writes `report` to `sink`. JSON output is pretty-printed with a fixed key
/// order, so identical reports serialize to identical bytes.
pub fn emit_report<W: Write>(
    report: &AuditReport,
    format: ReportFormat,
    mut sink: W,
) -> Result<()> {
    let io_err = |e: std::io::Error| AuditError::io("<report sink>", e);
    match format {
        ReportFormat::Json => {
            serde_json::to_writer_pretty(&mut sink, report)?;
            sink.write_all(b"\n").map_err(io_err)?;
        }
        ReportFormat::Markdown => {
            sink.write_all(render_markdown(report).as_bytes())
                .map_err(io_err)?;
        }
    }
    sink.flush().map_err(io_err)
}

fn opt(v: Option<f64>, decimals: usize) -> String {
    match v {
        Some(x) => format!("{x:.decimals$}"),
        None => "n/a".to_string(),
    }
}

pub fn render_markdown(r: &AuditReport) -> String {
    let mut s = String::new();
    // writeln! into a String cannot fail
    let _ = writeln!(s, "# Speech dataset audit: {}\n", r.locale);
    let _ = writeln!(s, "- Records: {}", r.record_count);
    let _ = writeln!(s, "- Rejected rows: {}", r.rejects.total);
    let _ = writeln!(s, "- Unresolved durations: {}", r.unresolved_durations);
    let _ = writeln!(s, "- Tool version: {}", r.tool_version);
    let _ = writeln!(s, "- Config fingerprint: `{}`\n", r.config_fingerprint);

    s.push_str("## Flags\n\n");
    if r.flags.is_empty() {
        s.push_str("No flags raised.\n\n");
    } else {
        s.push_str("| Flag | Severity | Evidence |\n|---|---|---|\n");
        for f in &r.flags {
            let sev = match f.severity {
                Severity::Warn => "warn",
                Severity::Fail => "FAIL",
            };
            let ev: Vec<String> = f
                .evidence
                .iter()
                .map(|(k, v)| format!("{k}={}", trim_float(*v)))
                .collect();
            let _ = writeln!(s, "| {:?} | {} | {} |", f.code, sev, ev.join(", "));
        }
        s.push('\n');
    }

    if let Some(d) = &r.duration_stats {
        s.push_str("## Durations\n\n| Metric | Value |\n|---|---|\n");
        let _ = writeln!(s, "| Utterances | {} |", d.n);
        let _ = writeln!(s, "| Median (s) | {:.2} |", d.median_s);
        let _ = writeln!(s, "| p99 (s) | {:.2} |", d.p99_s);
        let _ = writeln!(s, "| Mean (s) | {:.2} |", d.mean_s);
        let _ = writeln!(s, "| Min / max (s) | {:.2} / {:.2} |", d.min_s, d.max_s);
        let _ = writeln!(s, "| Under 10 s | {:.1}% |", d.under_10s_fraction * 100.0);
        let _ = writeln!(s, "| Total hours | {:.2} |\n", d.total_hours);
    }

    if let Some(p) = &r.speech_proportion_stats {
        s.push_str("## Speech content\n\n| Metric | Value |\n|---|---|\n");
        let _ = writeln!(s, "| Method | {} |", p.method);
        let _ = writeln!(s, "| Measured utterances | {} |", p.measured_utterances);
        let _ = writeln!(s, "| Speech proportion | {:.3} |", p.speech_proportion);
        let _ = writeln!(
            s,
            "| Median per-utterance proportion | {:.3} |",
            p.median_utterance_proportion
        );
        let _ = writeln!(s, "| Other proportion | {} |", opt(p.other_proportion, 3));
        let _ = writeln!(
            s,
            "| Median SNR (dB, {}) | {} |",
            p.snr_method,
            opt(p.median_snr_db, 1)
        );
        if let Some(u) = &r.usable_hours {
            let _ = writeln!(s, "| Usable hours (estimated) | {:.2} |", u.hours);
        }
        s.push('\n');
    }

    if let Some(sp) = &r.speaker_stats {
        s.push_str("## Speakers\n\n| Metric | Value |\n|---|---|\n");
        let _ = writeln!(s, "| Unique speakers | {} |", sp.unique_speakers);
        let _ = writeln!(s, "| Total hours | {:.2} |", sp.total_hours);
        let _ = writeln!(s, "| Hours per speaker | {:.2} |", sp.avg_hours_per_speaker);
        let _ = writeln!(s, "| Top speaker share | {:.3} |\n", sp.top_speaker_share);
    }

    if let Some(p) = &r.prompt_shape_stats {
        s.push_str("## Prompts\n\n| Metric | Value |\n|---|---|\n");
        let _ = writeln!(s, "| Sentences | {} |", p.n);
        let _ = writeln!(s, "| Counting unit | {:?} |", p.counting_unit);
        let _ = writeln!(s, "| Median words | {} |", trim_float(p.median_word_count));
        let _ = writeln!(
            s,
            "| Median characters | {} |",
            trim_float(p.median_char_count)
        );
        let _ = writeln!(s, "| Total tokens | {} |", p.total_tokens);
        let _ = writeln!(
            s,
            "| Dual-script prompts | {:.1}% |",
            p.dual_script_fraction * 100.0
        );
        let _ = writeln!(
            s,
            "| Exact duplicates | {:.1}% |",
            p.exact_duplicate_fraction * 100.0
        );
        let _ = writeln!(
            s,
            "| Duplicates after script stripping | {:.1}% |\n",
            p.script_stripped_duplicate_fraction * 100.0
        );
    }

    if !r.template_clusters.is_empty() {
        s.push_str("## Template clusters\n\n| Prefix | Size | Mean similarity | Example |\n|---|---|---|---|\n");
        for c in &r.template_clusters {
            let example = c.sample_sentences.first().map(String::as_str).unwrap_or("");
            let _ = writeln!(
                s,
                "| {} | {} | {:.2} | {} |",
                c.key_prefix.join(" "),
                c.size,
                c.mean_similarity,
                escape(example)
            );
        }
        s.push('\n');
    }

    for ct in &r.variety_tallies {
        let t = &ct.tally;
        let _ = writeln!(s, "## Variety: {}\n", t.classifier);
        s.push_str("| Category | Sentences |\n|---|---|\n");
        for c in &t.categories {
            let _ = writeln!(s, "| {} | {} ({:.1}%) |", c.label, c.count, c.percent);
        }
        let marked = t.total - t.count(VarietyCategory::Unmarked);
        let _ = writeln!(s, "\nTotal: {} sentences, {} marked.\n", t.total, marked);
    }

    if let Some(c) = &r.script_conformance {
        let _ = writeln!(
            s,
            "## Script\n\nExpected {}: {}/{} conforming ({:.1}%).\n",
            c.expected_script,
            c.conforming,
            c.total,
            c.fraction * 100.0
        );
        if !c.offenders.is_empty() {
            s.push_str("| Line | Dominant | Text |\n|---|---|---|\n");
            for o in &c.offenders {
                let _ = writeln!(
                    s,
                    "| {} | {} | {} |",
                    o.index + 1,
                    o.dominant,
                    escape(&o.text)
                );
            }
            s.push('\n');
        }
    }

    if !r.notices.is_empty() {
        s.push_str("## Notices\n\n");
        for n in &r.notices {
            let _ = writeln!(s, "- {n}");
        }
        s.push('\n');
    }
    s
}

fn trim_float(v: f64) -> String {
    if v.fract() == 0.0 && v.abs() < 1e15 {
        format!("{}", v as i64)
    } else {
        format!("{v:.4}").trim_end_matches('0').to_string()
    }
}

fn escape(text: &str) -> String {
    text.replace('|', "\\|").replace('\n', " ")
}
