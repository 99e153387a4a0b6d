//! Corpus model: sources, deduplicated papers and the citation graph.
//!
//! A [`Corpus`] is built by a single writer through [`Corpus::register_paper`]
//! and [`Corpus::add_citation`], then shared read-only by every simulation.

mod graph;
mod normalize;
mod paper;
mod validate;

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

pub use graph::CitationGraph;
pub use normalize::normalize_title;
pub use paper::{IndexStatus, Paper, PaperId, SourceId, SourceKind};
pub use validate::{validate, Diagnostic, Severity};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CorpusError {
    #[error("paper title is empty")]
    EmptyTitle,
    #[error("source name is empty")]
    EmptySourceName,
    #[error("source `{0}` is declared twice")]
    DuplicateSource(SourceId),
    #[error("unknown source `{0}`")]
    UnknownSource(SourceId),
    #[error("unknown paper `{0}`")]
    UnknownPaper(PaperId),
    #[error("paper `{0}` cites itself")]
    SelfCitation(PaperId),
    #[error("paper `{paper}` is marked both indexed and not indexed in `{source_id}`")]
    ConflictingIndexEvidence { paper: PaperId, source_id: SourceId },
    #[error("id `{0}` already belongs to a different paper")]
    IdConflict(PaperId),
}

/// Result of [`Corpus::register_paper`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Registration {
    pub id: PaperId,
    pub was_duplicate: bool,
}

#[derive(Debug, Clone, Default)]
pub struct Corpus {
    sources: BTreeMap<SourceId, SourceKind>,
    papers: BTreeMap<PaperId, Paper>,
    graph: CitationGraph,
    // normalized title -> ids carrying it
    by_title: BTreeMap<String, BTreeSet<PaperId>>,
    // registration sequence number per paper
    order: BTreeMap<PaperId, u64>,
}

// Registration order is bookkeeping, not corpus content.
impl PartialEq for Corpus {
    fn eq(&self, other: &Self) -> bool {
        self.sources == other.sources && self.papers == other.papers && self.graph == other.graph
    }
}

impl Eq for Corpus {}

impl Corpus {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_source(
        &mut self,
        name: impl Into<SourceId>,
        kind: SourceKind,
    ) -> Result<(), CorpusError> {
        let name = name.into();
        if name.as_str().is_empty() {
            return Err(CorpusError::EmptySourceName);
        }
        if self.sources.contains_key(&name) {
            return Err(CorpusError::DuplicateSource(name));
        }
        self.sources.insert(name, kind);
        Ok(())
    }

    pub fn sources(&self) -> &BTreeMap<SourceId, SourceKind> {
        &self.sources
    }

    pub fn has_source(&self, source: &SourceId) -> bool {
        self.sources.contains_key(source)
    }

    pub fn papers(&self) -> impl Iterator<Item = &Paper> {
        self.papers.values()
    }

    pub fn paper(&self, id: &PaperId) -> Option<&Paper> {
        self.papers.get(id)
    }

    pub fn contains(&self, id: &PaperId) -> bool {
        self.papers.contains_key(id)
    }

    pub fn len(&self) -> usize {
        self.papers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.papers.is_empty()
    }

    pub fn graph(&self) -> &CitationGraph {
        &self.graph
    }

    /// Ids of every paper labelled as selected.
    pub fn oracle(&self) -> BTreeSet<PaperId> {
        self.papers
            .values()
            .filter(|p| p.selected)
            .map(|p| p.id.clone())
            .collect()
    }

    pub fn is_selected(&self, id: &PaperId) -> bool {
        self.papers.get(id).is_some_and(|p| p.selected)
    }

    /// Registers `candidate`, merging it into an existing paper when the
    /// duplicate key matches.
    ///
    /// Matching is on normalized title, plus year when both years are known.
    /// When several papers match, the earliest registered wins, which keeps
    /// re-registration of a record sequence a no-op. A candidate whose id is
    /// already taken by a title-less stub fills that stub in.
    pub fn register_paper(&mut self, candidate: Paper) -> Result<Registration, CorpusError> {
        if candidate.normalized_title().is_empty() {
            return Err(CorpusError::EmptyTitle);
        }
        for source in candidate
            .returned_by
            .iter()
            .chain(candidate.indexed_in.keys())
            .chain(candidate.ranks.keys())
        {
            if !self.sources.contains_key(source) {
                return Err(CorpusError::UnknownSource(source.clone()));
            }
        }

        let target = self.find_duplicate(&candidate).or_else(|| {
            self.papers
                .get(&candidate.id)
                .filter(|p| p.normalized_title().is_empty())
                .map(|p| p.id.clone())
        });

        match target {
            Some(id) => {
                let existing = &self.papers[&id];
                let old_title = existing.normalized_title().to_owned();
                let merged = merge(existing, &candidate)?;
                self.reindex(&id, old_title, &merged);
                self.papers.insert(id.clone(), merged);
                Ok(Registration {
                    id,
                    was_duplicate: true,
                })
            }
            None if self.papers.contains_key(&candidate.id) => {
                Err(CorpusError::IdConflict(candidate.id))
            }
            None => {
                let id = candidate.id.clone();
                self.insert_unchecked(candidate);
                Ok(Registration {
                    id,
                    was_duplicate: false,
                })
            }
        }
    }

    /// Earliest registered paper sharing the candidate's duplicate key.
    pub fn find_duplicate(&self, candidate: &Paper) -> Option<PaperId> {
        self.by_title
            .get(candidate.normalized_title())?
            .iter()
            .filter(|id| self.papers[*id].same_study(candidate))
            .min_by_key(|id| self.order[*id])
            .cloned()
    }

    /// Adds `citing -> cited`. Returns false if the edge already existed.
    ///
    /// With `create_stub`, an unknown `cited` id becomes a stub paper.
    pub fn add_citation(
        &mut self,
        citing: &PaperId,
        cited: &PaperId,
        create_stub: bool,
    ) -> Result<bool, CorpusError> {
        if citing == cited {
            return Err(CorpusError::SelfCitation(citing.clone()));
        }
        if !self.papers.contains_key(citing) {
            return Err(CorpusError::UnknownPaper(citing.clone()));
        }
        if !self.papers.contains_key(cited) {
            if !create_stub {
                return Err(CorpusError::UnknownPaper(cited.clone()));
            }
            self.insert_unchecked(Paper::stub(cited.clone()));
        }
        Ok(self.graph.insert(citing.clone(), cited.clone()))
    }

    /// Adds a stub paper known only by id. Returns false if the id exists.
    pub fn add_stub(&mut self, id: PaperId) -> bool {
        if self.papers.contains_key(&id) {
            return false;
        }
        self.insert_unchecked(Paper::stub(id));
        true
    }

    /// Inserts a paper without duplicate detection. Used by loaders that
    /// validate separately.
    pub(crate) fn insert_unchecked(&mut self, paper: Paper) {
        self.by_title
            .entry(paper.normalized_title().to_owned())
            .or_default()
            .insert(paper.id.clone());
        let seq = self.order.len() as u64;
        self.order.entry(paper.id.clone()).or_insert(seq);
        self.papers.insert(paper.id.clone(), paper);
    }

    /// Inserts an edge without endpoint checks. Used by loaders that
    /// validate separately.
    pub(crate) fn insert_edge_unchecked(&mut self, citing: PaperId, cited: PaperId) -> bool {
        self.graph.insert(citing, cited)
    }

    pub(crate) fn insert_source_unchecked(&mut self, name: SourceId, kind: SourceKind) {
        self.sources.insert(name, kind);
    }

    fn reindex(&mut self, id: &PaperId, old_title: String, merged: &Paper) {
        if old_title == merged.normalized_title() {
            return;
        }
        if let Some(ids) = self.by_title.get_mut(&old_title) {
            ids.remove(id);
            if ids.is_empty() {
                self.by_title.remove(&old_title);
            }
        }
        self.by_title
            .entry(merged.normalized_title().to_owned())
            .or_default()
            .insert(id.clone());
    }
}

/// Merges the provenance of `incoming` into a copy of `existing`.
fn merge(existing: &Paper, incoming: &Paper) -> Result<Paper, CorpusError> {
    let mut merged = existing.clone();

    for (source, status) in &incoming.indexed_in {
        let next = match (merged.indexed_in.get(source).copied(), *status) {
            (None, s) | (Some(IndexStatus::Unknown), s) => s,
            (Some(s), IndexStatus::Unknown) => s,
            (Some(a), b) if a == b => a,
            _ => {
                return Err(CorpusError::ConflictingIndexEvidence {
                    paper: existing.id.clone(),
                    source_id: source.clone(),
                })
            }
        };
        merged.indexed_in.insert(source.clone(), next);
    }
    merged
        .returned_by
        .extend(incoming.returned_by.iter().cloned());
    for (source, rank) in &incoming.ranks {
        merged
            .ranks
            .entry(source.clone())
            .and_modify(|r| *r = (*r).min(*rank))
            .or_insert(*rank);
    }
    merged.selected |= incoming.selected;
    merged.stub &= incoming.stub;

    if merged.normalized_title().is_empty() {
        merged.set_title(incoming.title());
    }
    if merged.authors.is_empty() {
        merged.authors = incoming.authors.clone();
    }
    if merged.venue.is_none() {
        merged.venue = incoming.venue.clone();
    }
    if merged.doi.is_none() {
        merged.doi = incoming.doi.clone();
    }
    Ok(merged)
}
