use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::normalize::normalize_title;

/// Name of a digital library, index database or search engine.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SourceId(String);

impl SourceId {
    pub fn new(name: impl Into<String>) -> Self {
        SourceId(name.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for SourceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for SourceId {
    fn from(s: &str) -> Self {
        SourceId::new(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SourceKind {
    PublisherLibrary,
    IndexDatabase,
    SearchEngine,
}

impl SourceKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SourceKind::PublisherLibrary => "publisher-library",
            SourceKind::IndexDatabase => "index-database",
            SourceKind::SearchEngine => "search-engine",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "publisher-library" => Some(SourceKind::PublisherLibrary),
            "index-database" => Some(SourceKind::IndexDatabase),
            "search-engine" => Some(SourceKind::SearchEngine),
            _ => None,
        }
    }
}

/// Opaque paper key, unique within one corpus.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PaperId(String);

impl PaperId {
    pub fn new(id: impl Into<String>) -> Self {
        PaperId(id.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for PaperId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for PaperId {
    fn from(s: &str) -> Self {
        PaperId::new(s)
    }
}

/// Outcome of looking a title up directly in a source.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IndexStatus {
    Yes,
    No,
    Unknown,
}

impl IndexStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            IndexStatus::Yes => "yes",
            IndexStatus::No => "no",
            IndexStatus::Unknown => "unknown",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "yes" => Some(IndexStatus::Yes),
            "no" => Some(IndexStatus::No),
            "unknown" => Some(IndexStatus::Unknown),
            _ => None,
        }
    }
}

/// One deduplicated study together with its provenance tags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Paper {
    pub id: PaperId,
    title: String,
    normalized_title: String,
    pub year: Option<i32>,
    pub authors: Vec<String>,
    pub venue: Option<String>,
    pub doi: Option<String>,
    /// Oracle label.
    pub selected: bool,
    /// Sources whose query returned this paper.
    pub returned_by: BTreeSet<SourceId>,
    /// Sources probed by direct title lookup.
    pub indexed_in: BTreeMap<SourceId, IndexStatus>,
    /// Result position per source, 1-based.
    pub ranks: BTreeMap<SourceId, u32>,
    /// Known only as the endpoint of a citation.
    pub stub: bool,
}

impl Paper {
    pub fn new(id: impl Into<PaperId>, title: impl Into<String>) -> Self {
        let title = title.into();
        Paper {
            id: id.into(),
            normalized_title: normalize_title(&title),
            title,
            year: None,
            authors: Vec::new(),
            venue: None,
            doi: None,
            selected: false,
            returned_by: BTreeSet::new(),
            indexed_in: BTreeMap::new(),
            ranks: BTreeMap::new(),
            stub: false,
        }
    }

    pub fn stub(id: impl Into<PaperId>) -> Self {
        Paper {
            stub: true,
            ..Paper::new(id, "")
        }
    }

    pub fn title(&self) -> &str {
        &self.title
    }

    pub fn normalized_title(&self) -> &str {
        &self.normalized_title
    }

    pub fn set_title(&mut self, title: impl Into<String>) {
        self.title = title.into();
        self.normalized_title = normalize_title(&self.title);
    }

    pub fn with_year(mut self, year: i32) -> Self {
        self.year = Some(year);
        self
    }

    pub fn with_selected(mut self, selected: bool) -> Self {
        self.selected = selected;
        self
    }

    pub fn from_source(mut self, source: impl Into<SourceId>) -> Self {
        self.returned_by.insert(source.into());
        self
    }

    pub fn ranked(mut self, source: impl Into<SourceId>, rank: u32) -> Self {
        let source = source.into();
        self.returned_by.insert(source.clone());
        self.ranks.insert(source, rank);
        self
    }

    pub fn indexed(mut self, source: impl Into<SourceId>, status: IndexStatus) -> Self {
        self.indexed_in.insert(source.into(), status);
        self
    }

    /// True when `self` and `other` denote the same study under the
    /// duplicate-key rule: equal normalized titles, and equal years when
    /// both years are known.
    pub fn same_study(&self, other: &Paper) -> bool {
        if self.normalized_title.is_empty() || self.normalized_title != other.normalized_title {
            return false;
        }
        match (self.year, other.year) {
            (Some(a), Some(b)) => a == b,
            _ => true,
        }
    }
}
