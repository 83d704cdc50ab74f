//! `speechaudit` command-line tool.
//!
//! Exit codes: 0 when the command succeeds and no `fail` flag is raised, 2
//! when an audit raises a `fail` flag, 1 on any error.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use speechaudit_core::{ReportFormat, SourceKind};

#[derive(Parser)]
#[command(
    name = "speechaudit",
    version,
    about = "Quality audits for speech datasets"
)]
struct Cli {
    /// Print the default configuration and exit.
    #[arg(long)]
    print_default_config: bool,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand)]
enum Command {
    /// Audit a manifest and its audio; writes a report.
    Audit(AuditArgs),
    /// Classify one sentence per line with a marker lexicon.
    Classify(ClassifyArgs),
    /// Word or character error rate between two id-keyed TSV files.
    Wer(WerArgs),
    /// Re-render a JSON report.
    Report(ReportArgs),
    /// Write a data-statement skeleton for a locale.
    DataStatement(DataStatementArgs),
    /// Print the default configuration.
    PrintDefaultConfig,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Markdown,
}

impl From<FormatArg> for ReportFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Json => ReportFormat::Json,
            FormatArg::Markdown => ReportFormat::Markdown,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SourceArg {
    CommonVoice,
    Fleurs,
    Csv,
}

impl From<SourceArg> for SourceKind {
    fn from(s: SourceArg) -> Self {
        match s {
            SourceArg::CommonVoice => SourceKind::CommonVoiceTsv,
            SourceArg::Fleurs => SourceKind::FleursTsv,
            SourceArg::Csv => SourceKind::GenericCsv,
        }
    }
}

#[derive(Args)]
pub struct AuditArgs {
    /// Manifest file; overrides `manifest` in the config.
    manifest: Option<PathBuf>,
    /// TOML configuration file.
    #[arg(short, long)]
    config: Option<PathBuf>,
    #[arg(long)]
    audio_root: Option<PathBuf>,
    #[arg(long, value_enum)]
    source: Option<SourceArg>,
    #[arg(long)]
    locale: Option<String>,
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[arg(short, long, value_enum)]
    format: Option<FormatArg>,
    #[arg(short = 'j', long)]
    parallelism: Option<usize>,
}

#[derive(Args)]
pub struct ClassifyArgs {
    /// Text file, one sentence per line.
    input: PathBuf,
    /// Built-in classifier id (no, ar, yue) or a name for --lexicon.
    #[arg(short, long, default_value = "no")]
    classifier: String,
    /// Marker lexicon file.
    #[arg(short, long)]
    lexicon: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum WerMode {
    Word,
    Char,
}

#[derive(Args)]
pub struct WerArgs {
    /// Reference transcripts, `id<TAB>text`.
    reference: PathBuf,
    /// Hypothesis transcripts, `id<TAB>text`.
    hypothesis: PathBuf,
    #[arg(short, long, value_enum, default_value = "word")]
    mode: WerMode,
    /// Number of substitution pairs to list.
    #[arg(long, default_value_t = speechaudit_core::wer::DEFAULT_TOP_SUBSTITUTIONS)]
    top: usize,
}

#[derive(Args)]
pub struct ReportArgs {
    /// JSON report written by `audit`.
    report: PathBuf,
    #[arg(short, long, value_enum, default_value = "markdown")]
    format: FormatArg,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
pub struct DataStatementArgs {
    #[arg(long)]
    locale: String,
    /// TOML file of `key = "text"` answers (register, dialect_scope, ...).
    #[arg(long)]
    decisions: Option<PathBuf>,
    /// JSON report to summarize.
    #[arg(long)]
    report: Option<PathBuf>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        _ if cli.print_default_config => commands::print_default_config(),
        None => {
            eprintln!("error: no command given; try --help");
            return ExitCode::from(1);
        }
        Some(Command::PrintDefaultConfig) => commands::print_default_config(),
        Some(Command::Audit(args)) => commands::audit(args),
        Some(Command::Classify(args)) => commands::classify(args),
        Some(Command::Wer(args)) => commands::wer(args),
        Some(Command::Report(args)) => commands::report(args),
        Some(Command::DataStatement(args)) => commands::data_statement(args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
