use serde::Serialize;
use thiserror::Error;

use super::bibtex::BibEntry;
use crate::corpus::{Corpus, CorpusError, Paper, PaperId};

/// Counts reported by the import operations.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct ImportStats {
    pub new_papers: usize,
    pub merged: usize,
    pub stubs: usize,
    pub edges: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ImportError {
    #[error("entry `{cite_key}`: {source}")]
    Entry {
        cite_key: String,
        #[source]
        source: CorpusError,
    },
    #[error("unknown paper `{0}`")]
    UnknownPaper(PaperId),
    #[error(transparent)]
    Corpus(#[from] CorpusError),
}

/// Strips grouping braces and collapses whitespace in a BibTeX value.
fn clean(value: &str) -> String {
    value
        .chars()
        .filter(|c| !matches!(c, '{' | '}'))
        .collect::<String>()
        .split_whitespace()
        .collect::<Vec<_>>()
        .join(" ")
}

/// Builds a (not yet registered) paper from a reference-list entry.
pub fn entry_to_paper(entry: &BibEntry) -> Paper {
    let mut paper = Paper::new(
        entry.cite_key.as_str(),
        clean(entry.get("title").unwrap_or("")),
    );
    paper.year = entry.get("year").and_then(|y| y.trim().parse().ok());
    paper.authors = entry
        .get("author")
        .map(|a| {
            clean(a)
                .split(" and ")
                .map(|s| s.trim().to_owned())
                .filter(|s| !s.is_empty())
                .collect()
        })
        .unwrap_or_default();
    paper.venue = entry
        .get("journal")
        .or_else(|| entry.get("booktitle"))
        .map(clean)
        .filter(|v| !v.is_empty());
    paper.doi = entry
        .get("doi")
        .map(|d| d.trim().to_owned())
        .filter(|d| !d.is_empty());
    paper
}

/// Picks an id for a new paper: `base` when free, else `base~2`, `base~3`...
fn fresh_id(corpus: &Corpus, base: &str) -> PaperId {
    let base_id = PaperId::new(base);
    if !corpus.contains(&base_id) {
        return base_id;
    }
    (2..)
        .map(|n| PaperId::new(format!("{base}~{n}")))
        .find(|id| !corpus.contains(id))
        .expect("unbounded id space")
}

/// Registers `candidate` unless an id collision with an unrelated paper
/// would occur, in which case the candidate is renamed first.
fn register_renaming(
    corpus: &mut Corpus,
    mut candidate: Paper,
) -> Result<(PaperId, bool), CorpusError> {
    if corpus.find_duplicate(&candidate).is_none() {
        if let Some(existing) = corpus.paper(&candidate.id) {
            if !existing.normalized_title().is_empty() {
                candidate.id = fresh_id(corpus, candidate.id.as_str());
            }
        }
    }
    let r = corpus.register_paper(candidate)?;
    Ok((r.id, r.was_duplicate))
}

/// Registers every reference of `citing` and links `citing -> reference`.
///
/// All-or-nothing: on error the corpus is left unchanged.
pub fn import_references(
    corpus: &mut Corpus,
    citing: &PaperId,
    entries: &[BibEntry],
) -> Result<ImportStats, ImportError> {
    if !corpus.contains(citing) {
        return Err(ImportError::UnknownPaper(citing.clone()));
    }
    let mut work = corpus.clone();
    let mut stats = ImportStats::default();
    for entry in entries {
        let wrap = |source| ImportError::Entry {
            cite_key: entry.cite_key.clone(),
            source,
        };
        let (id, was_duplicate) =
            register_renaming(&mut work, entry_to_paper(entry)).map_err(wrap)?;
        if was_duplicate {
            stats.merged += 1;
        } else {
            stats.new_papers += 1;
        }
        if work.add_citation(citing, &id, false).map_err(wrap)? {
            stats.edges += 1;
        }
    }
    *corpus = work;
    Ok(stats)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CiterOptions {
    /// Unknown citing ids become stub papers.
    pub create_stubs: bool,
    /// Unknown citing ids are treated as titles and registered (with
    /// duplicate detection) instead of becoming stubs.
    pub resolve_titles: bool,
}

impl Default for CiterOptions {
    fn default() -> Self {
        CiterOptions {
            create_stubs: true,
            resolve_titles: false,
        }
    }
}

/// Adds recorded forward-citation rows `(citing, cited)`.
///
/// All-or-nothing: on error the corpus is left unchanged.
pub fn import_citers(
    corpus: &mut Corpus,
    rows: &[(String, String)],
    options: CiterOptions,
) -> Result<ImportStats, ImportError> {
    let mut work = corpus.clone();
    let mut stats = ImportStats::default();
    for (citing, cited) in rows {
        let cited = PaperId::new(cited.as_str());
        if !work.contains(&cited) {
            return Err(ImportError::UnknownPaper(cited));
        }
        let mut citing_id = PaperId::new(citing.as_str());
        if !work.contains(&citing_id) {
            if options.resolve_titles {
                let (id, was_duplicate) =
                    register_renaming(&mut work, Paper::new(citing_id, citing.as_str()))?;
                if was_duplicate {
                    stats.merged += 1;
                } else {
                    stats.new_papers += 1;
                }
                citing_id = id;
            } else if options.create_stubs {
                work.add_stub(citing_id.clone());
                stats.stubs += 1;
            } else {
                return Err(ImportError::UnknownPaper(citing_id));
            }
        }
        if work.add_citation(&citing_id, &cited, false)? {
            stats.edges += 1;
        }
    }
    *corpus = work;
    Ok(stats)
}
