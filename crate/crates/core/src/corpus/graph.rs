use std::collections::{BTreeMap, BTreeSet};

use super::paper::PaperId;

/// Directed `cites(citing -> cited)` edges with both adjacency directions
/// kept in sync.
///
/// Backward snowballing walks out-neighbors (the reference list), forward
/// snowballing walks in-neighbors (the citers).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CitationGraph {
    refs: BTreeMap<PaperId, BTreeSet<PaperId>>,
    citers: BTreeMap<PaperId, BTreeSet<PaperId>>,
    len: usize,
}

static EMPTY: BTreeSet<PaperId> = BTreeSet::new();

impl CitationGraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Inserts the edge; returns false when it was already present.
    pub(crate) fn insert(&mut self, citing: PaperId, cited: PaperId) -> bool {
        let added = self
            .refs
            .entry(citing.clone())
            .or_default()
            .insert(cited.clone());
        if added {
            self.citers.entry(cited).or_default().insert(citing);
            self.len += 1;
        }
        added
    }

    pub fn contains(&self, citing: &PaperId, cited: &PaperId) -> bool {
        self.refs.get(citing).is_some_and(|s| s.contains(cited))
    }

    /// Papers cited by `id`.
    pub fn refs(&self, id: &PaperId) -> &BTreeSet<PaperId> {
        self.refs.get(id).unwrap_or(&EMPTY)
    }

    /// Papers citing `id`.
    pub fn citers(&self, id: &PaperId) -> &BTreeSet<PaperId> {
        self.citers.get(id).unwrap_or(&EMPTY)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Edges in canonical (citing, cited) order.
    pub fn edges(&self) -> impl Iterator<Item = (&PaperId, &PaperId)> {
        self.refs
            .iter()
            .flat_map(|(citing, cited)| cited.iter().map(move |c| (citing, c)))
    }
}
