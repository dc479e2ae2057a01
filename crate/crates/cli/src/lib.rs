//! Command-line tooling: serve a wiki, check and measure corpora, move wiki
//! files in and out.
//!
//! Exit status is 0 on success, 1 when the input content has errors and 2 on
//! usage or I/O failures.

mod annotations;

use std::collections::BTreeMap;
use std::io::{self, Write};
use std::net::SocketAddr;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use cnlwiki::grammar::{tokens_from_surfaces, Grammar};
use cnlwiki::lexicon::{parse_entry, Lexicon};
use cnlwiki::logic::{pattern_of, sentence_axiom};
use cnlwiki::wiki::{SentenceId, WikiError, WikiState};
use cnlwiki_server::{AppState, ServerError};
use thiserror::Error;

pub use annotations::{parse_annotations, AnnotationError};

#[derive(Debug, Parser)]
#[command(name = "cnlwiki", version, about = "Controlled-English semantic wiki")]
pub struct Cli {
    /// Wiki file used by `serve`, `export` and `import`.
    #[arg(long, global = true, env = "CNLWIKI_WIKI", default_value = "wiki.txt")]
    pub wiki: PathBuf,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Serve the wiki over HTTP.
    Serve {
        #[arg(long, env = "CNLWIKI_LISTEN", default_value = "127.0.0.1:8080")]
        listen: SocketAddr,
    },
    /// Parse and classify every sentence of a corpus file.
    Check { corpus: PathBuf },
    /// Sentence pattern counts and correctness ratios of a corpus file.
    Stats {
        corpus: PathBuf,
        /// Lines of `<sentence number> <correct|incorrect>`.
        #[arg(long)]
        annotations: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = StatsFormat::Table)]
        format: StatsFormat,
    },
    /// Write the wiki file in canonical form to standard output.
    Export,
    /// Replace the wiki file with the contents of another file.
    Import { file: PathBuf },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StatsFormat {
    Table,
    /// One `key value` pair per line.
    Kv,
}

/// Result of a command that ran to completion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Success,
    ContentErrors,
}

impl From<Outcome> for ExitCode {
    fn from(outcome: Outcome) -> Self {
        match outcome {
            Outcome::Success => ExitCode::SUCCESS,
            Outcome::ContentErrors => ExitCode::from(1),
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{path}: {source}")]
    Content { path: PathBuf, source: WikiError },
    #[error("{path}: {source}")]
    Annotations { path: PathBuf, source: AnnotationError },
    #[error(transparent)]
    Server(#[from] ServerError),
    #[error("cannot listen on {addr}: {source}")]
    Bind { addr: SocketAddr, source: io::Error },
    #[error(transparent)]
    Output(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Content { .. } | CliError::Annotations { .. } => 1,
            CliError::Server(ServerError::Load { .. }) => 1,
            _ => 2,
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn load(path: &Path) -> Result<WikiState, CliError> {
    WikiState::import(&read(path)?).map_err(|source| CliError::Content {
        path: path.to_path_buf(),
        source,
    })
}

pub fn run(cli: Cli, out: &mut dyn Write) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Serve { listen } => serve(&cli.wiki, listen, out),
        Command::Check { corpus } => {
            let report = check_corpus(&read(&corpus)?);
            for line in &report {
                writeln!(out, "{line}")?;
            }
            Ok(if report.iter().all(CheckLine::is_ok) {
                Outcome::Success
            } else {
                Outcome::ContentErrors
            })
        }
        Command::Stats {
            corpus,
            annotations,
            format,
        } => {
            let wiki = load(&corpus)?;
            let judgments = match &annotations {
                None => None,
                Some(path) => Some(parse_annotations(&read(path)?).map_err(|source| CliError::Annotations {
                    path: path.clone(),
                    source,
                })?),
            };
            let report = wiki
                .corpus_stats(judgments.as_ref())
                .map_err(|source| CliError::Content {
                    path: annotations.clone().unwrap_or(corpus),
                    source,
                })?;
            match format {
                StatsFormat::Table => write!(out, "{}", report.to_table())?,
                StatsFormat::Kv => write!(out, "{}", report.to_key_values())?,
            }
            Ok(Outcome::Success)
        }
        Command::Export => {
            let wiki = match std::fs::read_to_string(&cli.wiki) {
                Ok(_) => load(&cli.wiki)?,
                Err(e) if e.kind() == io::ErrorKind::NotFound => WikiState::new(),
                Err(source) => return Err(CliError::Io { path: cli.wiki, source }),
            };
            write!(out, "{}", wiki.export())?;
            Ok(Outcome::Success)
        }
        Command::Import { file } => {
            let wiki = load(&file)?;
            std::fs::write(&cli.wiki, wiki.export()).map_err(|source| CliError::Io {
                path: cli.wiki.clone(),
                source,
            })?;
            writeln!(
                out,
                "imported {} words, {} sentences, {} notes",
                wiki.lexicon().len(),
                wiki.sentences().count(),
                wiki.notes().len()
            )?;
            Ok(Outcome::Success)
        }
    }
}

fn serve(wiki: &Path, listen: SocketAddr, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let state = AppState::open(wiki)?;
    let runtime = tokio::runtime::Runtime::new()?;
    runtime.block_on(async {
        let listener = tokio::net::TcpListener::bind(listen)
            .await
            .map_err(|source| CliError::Bind { addr: listen, source })?;
        writeln!(out, "listening on {}", listener.local_addr()?)?;
        out.flush()?;
        cnlwiki_server::serve(listener, state).await?;
        Ok(Outcome::Success)
    })
}

/// Verdict for one line of a corpus file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckLine {
    /// 1-based line number.
    pub line: usize,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Ok {
        pattern: String,
        kind: &'static str,
        triangle: &'static str,
        axiom: String,
    },
    Error {
        code: &'static str,
        /// 1-based token number.
        token: Option<usize>,
        message: String,
    },
}

impl CheckLine {
    pub fn is_ok(&self) -> bool {
        matches!(self.verdict, Verdict::Ok { .. })
    }
}

impl std::fmt::Display for CheckLine {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.verdict {
            Verdict::Ok {
                pattern,
                kind,
                triangle,
                axiom,
            } => write!(f, "{}: OK {pattern} {kind} {triangle} {axiom}", self.line),
            Verdict::Error {
                code,
                token: Some(n),
                message,
            } => write!(f, "{}: {code} at token {n}: {message}", self.line),
            Verdict::Error { code, message, .. } => write!(f, "{}: {code}: {message}", self.line),
        }
    }
}

/// Checks each `sentence` line of a corpus against the words declared above
/// it. Word lines are reported only when they fail; notes and comments are
/// skipped.
pub fn check_corpus(text: &str) -> Vec<CheckLine> {
    let grammar = Grammar::standard();
    let mut lexicon = Lexicon::new();
    let mut report = Vec::new();
    for (index, raw) in text.lines().enumerate() {
        let line = index + 1;
        let content = raw.trim_end_matches('\r');
        if content.trim().is_empty() || content.starts_with('#') {
            continue;
        }
        let (keyword, rest) = content.split_once(' ').unwrap_or((content, ""));
        let verdict = match keyword {
            "word" => match parse_entry(content).and_then(|(c, s)| lexicon.add_word(c, s)) {
                Ok(_) => continue,
                Err(e) => Verdict::Error {
                    code: WikiError::from(e.clone()).code(),
                    token: None,
                    message: e.to_string(),
                },
            },
            "note" => continue,
            "sentence" => {
                let surfaces: Vec<&str> = rest.split_whitespace().collect();
                match tokens_from_surfaces(&surfaces, &lexicon).and_then(|t| grammar.parse(&t, &lexicon)) {
                    Ok(ast) => {
                        let axiom = sentence_axiom(&ast);
                        Verdict::Ok {
                            pattern: pattern_of(&ast).to_string(),
                            kind: axiom.kind_name(),
                            triangle: axiom.triangle(),
                            axiom: axiom.to_string(),
                        }
                    }
                    Err(e) => Verdict::Error {
                        code: e.code(),
                        token: e.position().map(|p| p + 1),
                        message: e.detail(),
                    },
                }
            }
            other => Verdict::Error {
                code: "FormatError",
                token: None,
                message: format!("unknown line kind `{other}`"),
            },
        };
        report.push(CheckLine { line, verdict });
    }
    report
}

/// Judgments keyed by sentence number, as used by `stats`.
pub type Judgments = BTreeMap<SentenceId, bool>;

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/cli.md")]
mod guide {}
