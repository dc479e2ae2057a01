//! HTTP/JSON interface to a wiki.
//!
//! Readers work on immutable snapshots. Mutations are applied one at a time
//! to a copy of the current state, written to the wiki file when one is
//! configured, and then published as the new snapshot. A failed mutation
//! publishes nothing.
//!
//! Every response carries the current global revision in the
//! [`REVISION_HEADER`] header.

mod error;
mod routes;

use std::collections::{BTreeSet, HashMap};
use std::io;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex, PoisonError, RwLock};

use axum::http::StatusCode;
use cnlwiki::grammar::Grammar;
use cnlwiki::logic::SentencePattern;
use cnlwiki::wiki::{WikiError, WikiState};
use thiserror::Error;

pub use error::ApiError;
pub use routes::{router, EditSentence, ImportSummary, NewSentence, NewWord, PredictRequest};

pub const REVISION_HEADER: &str = "x-wiki-revision";

#[derive(Debug, Error)]
pub enum ServerError {
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: io::Error },
    #[error("{path}: {source}")]
    Load { path: PathBuf, source: WikiError },
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// A published state of the wiki.
#[derive(Debug)]
pub struct Snapshot {
    pub wiki: WikiState,
    /// Incremented by every successful mutation.
    pub revision: u64,
}

/// Shared handle passed to every request.
#[derive(Clone)]
pub struct AppState {
    shared: Arc<Shared>,
}

struct Shared {
    current: RwLock<Arc<Snapshot>>,
    writer: Mutex<()>,
    store: Option<PathBuf>,
    grammars: Mutex<HashMap<BTreeSet<SentencePattern>, Grammar>>,
}

impl AppState {
    /// In-memory wiki without persistence.
    pub fn new(wiki: WikiState) -> Self {
        Self::build(wiki, None)
    }

    /// Loads the wiki file, or starts empty when it does not exist. Every
    /// successful mutation is written back to the same file.
    pub fn open(path: impl Into<PathBuf>) -> Result<Self, ServerError> {
        let path = path.into();
        let wiki = match std::fs::read_to_string(&path) {
            Ok(text) => WikiState::import(&text).map_err(|source| ServerError::Load {
                path: path.clone(),
                source,
            })?,
            Err(e) if e.kind() == io::ErrorKind::NotFound => WikiState::new(),
            Err(source) => return Err(ServerError::Read { path, source }),
        };
        Ok(Self::build(wiki, Some(path)))
    }

    fn build(wiki: WikiState, store: Option<PathBuf>) -> Self {
        AppState {
            shared: Arc::new(Shared {
                current: RwLock::new(Arc::new(Snapshot { wiki, revision: 0 })),
                writer: Mutex::new(()),
                store,
                grammars: Mutex::new(HashMap::new()),
            }),
        }
    }

    pub fn snapshot(&self) -> Arc<Snapshot> {
        self.shared
            .current
            .read()
            .unwrap_or_else(PoisonError::into_inner)
            .clone()
    }

    /// The standard grammar, or the one restricted to `patterns`.
    pub fn grammar(&self, patterns: Option<&[SentencePattern]>) -> Result<Grammar, ApiError> {
        let Some(patterns) = patterns else {
            return Ok(Grammar::standard());
        };
        let key: BTreeSet<SentencePattern> = patterns.iter().copied().collect();
        let mut cache = self.shared.grammars.lock().unwrap_or_else(PoisonError::into_inner);
        if let Some(g) = cache.get(&key) {
            return Ok(g.clone());
        }
        let g = Grammar::standard()
            .restrict(key.iter().copied())
            .map_err(WikiError::ParseFailed)?;
        cache.insert(key, g.clone());
        Ok(g)
    }

    /// Applies `change` to a copy of the wiki and publishes the result.
    pub fn mutate<T>(&self, change: impl FnOnce(&mut WikiState) -> Result<T, WikiError>) -> Result<T, ApiError> {
        let _writer = self.shared.writer.lock().unwrap_or_else(PoisonError::into_inner);
        let current = self.snapshot();
        let mut wiki = current.wiki.clone();
        let out = change(&mut wiki)?;
        if let Some(path) = &self.shared.store {
            persist(path, &wiki.export()).map_err(|e| {
                ApiError::new(
                    StatusCode::INTERNAL_SERVER_ERROR,
                    "PersistenceError",
                    format!("cannot write {}: {e}", path.display()),
                )
            })?;
        }
        let next = Arc::new(Snapshot {
            wiki,
            revision: current.revision + 1,
        });
        *self.shared.current.write().unwrap_or_else(PoisonError::into_inner) = next;
        Ok(out)
    }
}

fn persist(path: &Path, text: &str) -> io::Result<()> {
    let mut staging = path.as_os_str().to_owned();
    staging.push(".tmp");
    std::fs::write(&staging, text)?;
    std::fs::rename(&staging, path)
}

/// Serves until the listener fails.
pub async fn serve(listener: tokio::net::TcpListener, state: AppState) -> io::Result<()> {
    axum::serve(listener, router(state)).await
}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/http-api.md")]
mod guide {}
