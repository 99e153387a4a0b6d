//! Corpus JSON document: load with schema checking, save in canonical form.
//!
//! Loading enforces structure only (types, required keys, declared sources,
//! unique ids, resolvable edges). Semantic invariants are left to
//! [`crate::corpus::validate`] so that a faulty corpus can still be
//! inspected.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::{Map, Value};
use thiserror::Error;

use crate::corpus::{Corpus, IndexStatus, Paper, PaperId, SourceId, SourceKind};

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid JSON at line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("schema error at {pointer}: {message}")]
    Schema { pointer: String, message: String },
}

impl LoadError {
    /// JSON pointer of a schema error.
    pub fn pointer(&self) -> Option<&str> {
        match self {
            LoadError::Schema { pointer, .. } => Some(pointer),
            _ => None,
        }
    }
}

pub fn load_corpus(path: impl AsRef<Path>) -> Result<Corpus, LoadError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| LoadError::Io {
        path: path.to_owned(),
        source,
    })?;
    corpus_from_json(&text)
}

pub fn save_corpus(corpus: &Corpus, path: impl AsRef<Path>) -> Result<(), std::io::Error> {
    fs::write(path, corpus_to_json(corpus))
}

pub fn corpus_from_json(text: &str) -> Result<Corpus, LoadError> {
    let root: Value = serde_json::from_str(text).map_err(|e| LoadError::Json {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    Reader::default().corpus(&root)
}

fn schema(pointer: &str, message: impl Into<String>) -> LoadError {
    LoadError::Schema {
        pointer: if pointer.is_empty() {
            "/".into()
        } else {
            pointer.into()
        },
        message: message.into(),
    }
}

fn escape(token: &str) -> String {
    token.replace('~', "~0").replace('/', "~1")
}

#[derive(Default)]
struct Reader {
    corpus: Corpus,
}

impl Reader {
    fn corpus(mut self, root: &Value) -> Result<Corpus, LoadError> {
        let obj = object(root, "")?;
        allow_keys(obj, "", &["sources", "papers", "citations"])?;
        for (i, s) in array(required(obj, "", "sources")?, "/sources")?
            .iter()
            .enumerate()
        {
            self.source(s, &format!("/sources/{i}"))?;
        }
        for (i, p) in array(required(obj, "", "papers")?, "/papers")?
            .iter()
            .enumerate()
        {
            self.paper(p, &format!("/papers/{i}"))?;
        }
        for (i, c) in array(required(obj, "", "citations")?, "/citations")?
            .iter()
            .enumerate()
        {
            self.citation(c, &format!("/citations/{i}"))?;
        }
        Ok(self.corpus)
    }

    fn source(&mut self, v: &Value, at: &str) -> Result<(), LoadError> {
        let obj = object(v, at)?;
        allow_keys(obj, at, &["name", "kind"])?;
        let name = string(required(obj, at, "name")?, &format!("{at}/name"))?;
        if name.is_empty() {
            return Err(schema(&format!("{at}/name"), "source name is empty"));
        }
        let kind_at = format!("{at}/kind");
        let kind = string(required(obj, at, "kind")?, &kind_at)?;
        let kind = SourceKind::parse(kind).ok_or_else(|| {
            schema(
                &kind_at,
                "expected publisher-library, index-database or search-engine",
            )
        })?;
        let name = SourceId::new(name);
        if self.corpus.has_source(&name) {
            return Err(schema(
                &format!("{at}/name"),
                format!("source `{name}` declared twice"),
            ));
        }
        self.corpus.insert_source_unchecked(name, kind);
        Ok(())
    }

    fn declared(&self, name: &str, at: &str) -> Result<SourceId, LoadError> {
        let id = SourceId::new(name);
        if self.corpus.has_source(&id) {
            Ok(id)
        } else {
            Err(schema(at, format!("undeclared source `{name}`")))
        }
    }

    fn paper(&mut self, v: &Value, at: &str) -> Result<(), LoadError> {
        let obj = object(v, at)?;
        allow_keys(
            obj,
            at,
            &[
                "id",
                "title",
                "year",
                "authors",
                "venue",
                "doi",
                "selected",
                "stub",
                "returned_by",
                "indexed_in",
                "ranks",
            ],
        )?;
        let field = |k: &str| format!("{at}/{k}");
        let id = string(required(obj, at, "id")?, &field("id"))?;
        if id.is_empty() {
            return Err(schema(&field("id"), "paper id is empty"));
        }
        if self.corpus.contains(&PaperId::new(id)) {
            return Err(schema(&field("id"), format!("duplicate paper id `{id}`")));
        }
        let title = string(required(obj, at, "title")?, &field("title"))?;
        let mut paper = Paper::new(id, title);
        paper.year = match obj.get("year") {
            None | Some(Value::Null) => None,
            Some(y) => Some(
                y.as_i64()
                    .and_then(|y| i32::try_from(y).ok())
                    .ok_or_else(|| schema(&field("year"), "expected integer year"))?,
            ),
        };
        for (j, a) in array(required(obj, at, "authors")?, &field("authors"))?
            .iter()
            .enumerate()
        {
            paper
                .authors
                .push(string(a, &format!("{at}/authors/{j}"))?.to_owned());
        }
        paper.venue = optional_string(obj, at, "venue")?;
        paper.doi = optional_string(obj, at, "doi")?;
        paper.selected = boolean(required(obj, at, "selected")?, &field("selected"))?;
        paper.stub = match obj.get("stub") {
            None | Some(Value::Null) => false,
            Some(b) => boolean(b, &field("stub"))?,
        };
        for (j, s) in array(required(obj, at, "returned_by")?, &field("returned_by"))?
            .iter()
            .enumerate()
        {
            let ptr = format!("{at}/returned_by/{j}");
            let source = self.declared(string(s, &ptr)?, &ptr)?;
            if !paper.returned_by.insert(source) {
                return Err(schema(&ptr, "source listed twice"));
            }
        }
        if let Some(m) = obj.get("indexed_in").filter(|v| !v.is_null()) {
            let m_at = field("indexed_in");
            for (name, status) in object(m, &m_at)? {
                let ptr = format!("{m_at}/{}", escape(name));
                let source = self.declared(name, &ptr)?;
                let status = IndexStatus::parse(string(status, &ptr)?)
                    .ok_or_else(|| schema(&ptr, "expected yes, no or unknown"))?;
                paper.indexed_in.insert(source, status);
            }
        }
        if let Some(m) = obj.get("ranks").filter(|v| !v.is_null()) {
            let m_at = field("ranks");
            for (name, rank) in object(m, &m_at)? {
                let ptr = format!("{m_at}/{}", escape(name));
                let source = self.declared(name, &ptr)?;
                let rank = rank
                    .as_u64()
                    .and_then(|r| u32::try_from(r).ok())
                    .filter(|r| *r > 0)
                    .ok_or_else(|| schema(&ptr, "expected positive integer rank"))?;
                paper.ranks.insert(source, rank);
            }
        }
        self.corpus.insert_unchecked(paper);
        Ok(())
    }

    fn citation(&mut self, v: &Value, at: &str) -> Result<(), LoadError> {
        let pair = array(v, at)?;
        if pair.len() != 2 {
            return Err(schema(at, "expected [citing, cited]"));
        }
        let citing = PaperId::new(string(&pair[0], &format!("{at}/0"))?);
        let cited = PaperId::new(string(&pair[1], &format!("{at}/1"))?);
        for end in [&citing, &cited] {
            if !self.corpus.contains(end) {
                return Err(schema(
                    at,
                    format!("edge references undeclared paper `{end}`"),
                ));
            }
        }
        if citing == cited {
            return Err(schema(at, format!("paper `{citing}` cites itself")));
        }
        if !self.corpus.insert_edge_unchecked(citing, cited) {
            return Err(schema(at, "duplicate edge"));
        }
        Ok(())
    }
}

fn object<'a>(v: &'a Value, at: &str) -> Result<&'a Map<String, Value>, LoadError> {
    v.as_object().ok_or_else(|| schema(at, "expected object"))
}

fn array<'a>(v: &'a Value, at: &str) -> Result<&'a Vec<Value>, LoadError> {
    v.as_array().ok_or_else(|| schema(at, "expected array"))
}

fn string<'a>(v: &'a Value, at: &str) -> Result<&'a str, LoadError> {
    v.as_str().ok_or_else(|| schema(at, "expected string"))
}

fn boolean(v: &Value, at: &str) -> Result<bool, LoadError> {
    v.as_bool().ok_or_else(|| schema(at, "expected boolean"))
}

fn required<'a>(obj: &'a Map<String, Value>, at: &str, key: &str) -> Result<&'a Value, LoadError> {
    obj.get(key)
        .ok_or_else(|| schema(&format!("{at}/{key}"), "missing required field"))
}

fn optional_string(
    obj: &Map<String, Value>,
    at: &str,
    key: &str,
) -> Result<Option<String>, LoadError> {
    match obj.get(key) {
        None | Some(Value::Null) => Ok(None),
        Some(v) => Ok(Some(string(v, &format!("{at}/{key}"))?.to_owned())),
    }
}

fn allow_keys(obj: &Map<String, Value>, at: &str, allowed: &[&str]) -> Result<(), LoadError> {
    match obj.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(schema(&format!("{at}/{}", escape(k)), "unknown field")),
        None => Ok(()),
    }
}

#[derive(Serialize)]
struct SourceOut<'a> {
    name: &'a str,
    kind: SourceKind,
}

#[derive(Serialize)]
struct PaperOut<'a> {
    id: &'a PaperId,
    title: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    year: Option<i32>,
    authors: &'a [String],
    #[serde(skip_serializing_if = "Option::is_none")]
    venue: Option<&'a str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    doi: Option<&'a str>,
    selected: bool,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    stub: bool,
    returned_by: &'a BTreeSet<SourceId>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    indexed_in: &'a BTreeMap<SourceId, IndexStatus>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    ranks: &'a BTreeMap<SourceId, u32>,
}

#[derive(Serialize)]
struct CorpusOut<'a> {
    sources: Vec<SourceOut<'a>>,
    papers: Vec<PaperOut<'a>>,
    citations: Vec<(&'a PaperId, &'a PaperId)>,
}

/// Canonical pretty-printed JSON: sources by name, papers by id, edges
/// sorted, map keys lexicographic, trailing newline.
pub fn corpus_to_json(corpus: &Corpus) -> String {
    let doc = CorpusOut {
        sources: corpus
            .sources()
            .iter()
            .map(|(name, kind)| SourceOut {
                name: name.as_str(),
                kind: *kind,
            })
            .collect(),
        papers: corpus
            .papers()
            .map(|p| PaperOut {
                id: &p.id,
                title: p.title(),
                year: p.year,
                authors: &p.authors,
                venue: p.venue.as_deref(),
                doi: p.doi.as_deref(),
                selected: p.selected,
                stub: p.stub,
                returned_by: &p.returned_by,
                indexed_in: &p.indexed_in,
                ranks: &p.ranks,
            })
            .collect(),
        citations: corpus.graph().edges().collect(),
    };
    let mut text = serde_json::to_string_pretty(&doc).expect("corpus serializes");
    text.push('\n');
    text
}
