use std::collections::BTreeMap;
use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::Path;

use anyhow::{bail, Context, Result};
use speechaudit_core::report::{emit_data_statement, emit_report, AuditReport, Severity};
use speechaudit_core::text::{tokenize, TokenizeMode};
use speechaudit_core::variety::{classify_two_way, VarietyCategory, VarietyTally};
use speechaudit_core::wer::{corpus_wer, join_on_id, read_id_tsv};
use speechaudit_core::{run_audit, AuditConfig, ClassifierConfig, DEFAULT_CONFIG_TOML};

use crate::{AuditArgs, ClassifyArgs, DataStatementArgs, ReportArgs, WerArgs, WerMode};

const CLEAN: u8 = 0;
const FLAGGED: u8 = 2;

fn sink(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(io::stdout().lock()),
    })
}

pub fn print_default_config() -> Result<u8> {
    print!("{DEFAULT_CONFIG_TOML}");
    Ok(CLEAN)
}

pub fn audit(args: AuditArgs) -> Result<u8> {
    let mut config = match &args.config {
        Some(p) => AuditConfig::load(p)?,
        None => AuditConfig::default(),
    };
    if let Some(m) = args.manifest {
        config.manifest = Some(m);
    }
    if let Some(root) = args.audio_root {
        config.audio_root = Some(root);
    }
    if let Some(s) = args.source {
        config.source_kind = s.into();
    }
    if let Some(l) = args.locale {
        config.locale = Some(l);
    }
    if let Some(o) = args.output {
        config.output.path = Some(o);
    }
    if let Some(f) = args.format {
        config.output.format = f.into();
    }
    if let Some(j) = args.parallelism {
        config.parallelism = j;
    }
    // config files may point at an audio root that does not exist
    if let Some(root) = &config.audio_root {
        if !root.is_dir() {
            bail!("audio root {} does not exist", root.display());
        }
    }

    let report = run_audit(&config)?;
    emit_report(
        &report,
        config.output.format,
        sink(config.output.path.as_deref())?,
    )?;

    for f in &report.flags {
        let sev = match f.severity {
            Severity::Warn => "warn",
            Severity::Fail => "FAIL",
        };
        eprintln!("{sev}\t{:?}", f.code);
    }
    Ok(if report.has_failures() {
        FLAGGED
    } else {
        CLEAN
    })
}

pub fn classify(args: ClassifyArgs) -> Result<u8> {
    let lexicon = ClassifierConfig {
        id: args.classifier,
        lexicon: args.lexicon,
        expected_class: None,
    }
    .load_lexicon()?;
    let text = fs::read_to_string(&args.input)
        .with_context(|| format!("reading {}", args.input.display()))?;
    let mut out = io::stdout().lock();
    let mut counts = [0usize; 4];
    for (i, line) in text.lines().enumerate() {
        let verdict = classify_two_way(line, &lexicon)?;
        let idx = VarietyCategory::ALL
            .iter()
            .position(|c| *c == verdict.category)
            .expect("known category");
        counts[idx] += 1;
        let markers: Vec<&str> = verdict
            .matched_markers
            .iter()
            .map(|m| m.marker.as_str())
            .collect();
        writeln!(
            out,
            "{}\t{}\t{}",
            i + 1,
            verdict.category.label(&lexicon),
            markers.join(",")
        )?;
    }
    out.flush()?;
    let tally = VarietyTally::from_counts(&lexicon, counts);
    eprintln!("{}: {} sentences", tally.classifier, tally.total);
    for c in &tally.categories {
        eprintln!("{}\t{} ({:.1}%)", c.label, c.count, c.percent);
    }
    Ok(CLEAN)
}

pub fn wer(args: WerArgs) -> Result<u8> {
    let refs = read_id_tsv(&args.reference)?;
    let hyps = read_id_tsv(&args.hypothesis)?;
    let joined = join_on_id(&refs, &hyps);
    if joined.pairs.is_empty() {
        bail!("no utterance id appears in both files");
    }
    let mode = match args.mode {
        WerMode::Word => TokenizeMode::Whitespace,
        WerMode::Char => TokenizeMode::Character,
    };
    let pairs: Vec<(Vec<String>, Vec<String>)> = joined
        .pairs
        .iter()
        .map(|(_, r, h)| (tokenize(r, mode), tokenize(h, mode)))
        .collect();
    let result = corpus_wer(&pairs, args.top)?;

    let mut out = io::stdout().lock();
    writeln!(out, "{}", result.summary_line())?;
    writeln!(
        out,
        "pairs {} | ref tokens {} | S {} D {} I {}",
        result.pairs, result.n_ref, result.substitutions, result.deletions, result.insertions
    )?;
    if !joined.missing_hyp.is_empty() || !joined.missing_ref.is_empty() {
        writeln!(
            out,
            "unmatched ids: {} without hypothesis, {} without reference",
            joined.missing_hyp.len(),
            joined.missing_ref.len()
        )?;
    }
    if !result.top_substitutions.is_empty() {
        writeln!(out, "top substitutions:")?;
        for s in &result.top_substitutions {
            writeln!(out, "{}\t{} -> {}", s.count, s.reference, s.hypothesis)?;
        }
    }
    Ok(CLEAN)
}

fn read_report(path: &Path) -> Result<AuditReport> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing report {}", path.display()))
}

pub fn report(args: ReportArgs) -> Result<u8> {
    let report = read_report(&args.report)?;
    emit_report(&report, args.format.into(), sink(args.output.as_deref())?)?;
    Ok(CLEAN)
}

pub fn data_statement(args: DataStatementArgs) -> Result<u8> {
    let decisions: BTreeMap<String, String> = match &args.decisions {
        Some(p) => {
            let text = fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            toml::from_str(&text).with_context(|| format!("parsing {}", p.display()))?
        }
        None => BTreeMap::new(),
    };
    let report = args.report.as_deref().map(read_report).transpose()?;
    let text = emit_data_statement(&args.locale, &decisions, report.as_ref());
    let mut out = sink(args.output.as_deref())?;
    out.write_all(text.as_bytes())?;
    out.flush()?;
    Ok(CLEAN)
}
