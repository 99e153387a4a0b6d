use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::{normalize_title, Corpus, IndexStatus, PaperId, SourceId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub severity: Severity,
    pub code: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub paper: Option<PaperId>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub source: Option<SourceId>,
    pub message: String,
}

impl Diagnostic {
    fn error(code: &'static str, message: impl Into<String>) -> Self {
        Diagnostic {
            severity: Severity::Error,
            code,
            paper: None,
            source: None,
            message: message.into(),
        }
    }

    fn warning(code: &'static str, message: impl Into<String>) -> Self {
        Diagnostic {
            severity: Severity::Warning,
            ..Diagnostic::error(code, message)
        }
    }

    fn paper(mut self, id: &PaperId) -> Self {
        self.paper = Some(id.clone());
        self
    }

    fn source(mut self, source: &SourceId) -> Self {
        self.source = Some(source.clone());
        self
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let level = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        write!(f, "{level}[{}]", self.code)?;
        if let Some(p) = &self.paper {
            write!(f, " paper `{p}`")?;
        }
        if let Some(s) = &self.source {
            write!(f, " source `{s}`")?;
        }
        write!(f, ": {}", self.message)
    }
}

/// Reports every invariant violation (errors) and suspicious pattern
/// (warnings). An empty list means the corpus is ready for simulation.
pub fn validate(corpus: &Corpus) -> Vec<Diagnostic> {
    let mut out = Vec::new();

    for name in corpus.sources().keys() {
        if name.as_str().is_empty() {
            out.push(Diagnostic::error(
                "empty-source-name",
                "source name is empty",
            ));
        }
    }

    for p in corpus.papers() {
        let id = &p.id;
        if id.as_str().is_empty() {
            out.push(Diagnostic::error("empty-id", "paper id is empty"));
        }
        if !p.stub && p.normalized_title().is_empty() {
            out.push(Diagnostic::error("empty-title", "non-stub paper has no title").paper(id));
        }
        if p.normalized_title() != normalize_title(p.title()) {
            out.push(
                Diagnostic::error("stale-normalized-title", "normalized title out of date")
                    .paper(id),
            );
        }
        let referenced = p
            .returned_by
            .iter()
            .chain(p.indexed_in.keys())
            .chain(p.ranks.keys());
        for s in referenced {
            if !corpus.has_source(s) {
                out.push(
                    Diagnostic::error("undeclared-source", "source is not declared")
                        .paper(id)
                        .source(s),
                );
            }
        }
        for s in &p.returned_by {
            if p.indexed_in.get(s) == Some(&IndexStatus::No) {
                out.push(
                    Diagnostic::error(
                        "conflicting-index",
                        "returned by the source's query but marked not indexed there",
                    )
                    .paper(id)
                    .source(s),
                );
            }
        }
        for (s, rank) in &p.ranks {
            if !p.returned_by.contains(s) {
                out.push(
                    Diagnostic::error(
                        "rank-without-hit",
                        "ranked by a source that did not return it",
                    )
                    .paper(id)
                    .source(s),
                );
            }
            if *rank == 0 {
                out.push(
                    Diagnostic::error("zero-rank", "ranks start at 1")
                        .paper(id)
                        .source(s),
                );
            }
        }
        if p.stub && (p.selected || !p.returned_by.is_empty()) {
            out.push(
                Diagnostic::error(
                    "stub-with-provenance",
                    "stub papers cannot be selected or returned",
                )
                .paper(id),
            );
        }
        if p.selected
            && p.returned_by.is_empty()
            && corpus.graph().refs(id).is_empty()
            && corpus.graph().citers(id).is_empty()
        {
            out.push(
                Diagnostic::warning(
                    "unreachable-selected",
                    "selected paper has no source hit and no citation edge",
                )
                .paper(id),
            );
        }
    }

    for (citing, cited) in corpus.graph().edges() {
        for end in [citing, cited] {
            if !corpus.contains(end) {
                out.push(
                    Diagnostic::error(
                        "dangling-edge",
                        format!("edge `{citing}` -> `{cited}` has an unknown endpoint"),
                    )
                    .paper(end),
                );
            }
        }
        if citing == cited {
            out.push(Diagnostic::error("self-citation", "paper cites itself").paper(citing));
        }
    }

    // duplicate keys among non-stub papers
    let mut by_title: BTreeMap<&str, Vec<&super::Paper>> = BTreeMap::new();
    for p in corpus
        .papers()
        .filter(|p| !p.stub && !p.normalized_title().is_empty())
    {
        by_title.entry(p.normalized_title()).or_default().push(p);
    }
    for group in by_title.values() {
        for (i, a) in group.iter().enumerate() {
            for b in &group[i + 1..] {
                if a.same_study(b) {
                    out.push(
                        Diagnostic::error("duplicate-paper", format!("same study as `{}`", a.id))
                            .paper(&b.id),
                    );
                }
            }
        }
    }

    if !corpus.papers().any(|p| p.selected) {
        out.push(Diagnostic::error(
            "empty-oracle",
            "no paper is marked selected",
        ));
    }

    out
}
