//! Precision/recall/F-measure and the per-source, per-strategy report tables.

mod metrics;

use std::collections::BTreeSet;
use std::thread;

use serde::Serialize;
use thiserror::Error;

use crate::corpus::{Corpus, IndexStatus, PaperId, SourceId};
use crate::engine::{run_strategy, validate_spec, EngineError, NamedSpec};

pub use metrics::{compute_metrics, Metrics, MetricsError, Ratio};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalyticsError {
    #[error("the oracle is empty: no paper is marked selected")]
    EmptyOracle,
}

/// One source's query performance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LibraryRow {
    pub source: SourceId,
    pub metrics: Metrics,
}

/// Scores every declared source as if its query results were the whole search.
pub fn library_performance(corpus: &Corpus) -> Result<Vec<LibraryRow>, AnalyticsError> {
    let oracle_size = corpus.oracle().len();
    if oracle_size == 0 {
        return Err(AnalyticsError::EmptyOracle);
    }
    Ok(corpus
        .sources()
        .keys()
        .map(|source| {
            let (hits, visited) = corpus
                .papers()
                .filter(|p| p.returned_by.contains(source))
                .fold((0, 0), |(h, v), p| (h + usize::from(p.selected), v + 1));
            LibraryRow {
                source: source.clone(),
                metrics: compute_metrics(hits, visited, oracle_size)
                    .expect("counts come from one corpus"),
            }
        })
        .collect())
}

/// Share of the oracle a source indexes at all, regardless of its query.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndexedRow {
    pub source: SourceId,
    /// Oracle papers marked indexed, over the oracle size.
    pub indexed: Ratio,
    /// Oracle papers with no evidence either way.
    pub unknown: usize,
}

pub fn indexed_recall(corpus: &Corpus) -> Vec<IndexedRow> {
    let oracle: Vec<_> = corpus.papers().filter(|p| p.selected).collect();
    corpus
        .sources()
        .keys()
        .map(|source| {
            let status = |want| {
                oracle
                    .iter()
                    .filter(|p| {
                        p.indexed_in
                            .get(source)
                            .copied()
                            .unwrap_or(IndexStatus::Unknown)
                            == want
                    })
                    .count()
            };
            IndexedRow {
                source: source.clone(),
                indexed: Ratio::new(status(IndexStatus::Yes), oracle.len()),
                unknown: status(IndexStatus::Unknown),
            }
        })
        .collect()
}

/// "Row contains column" overlap of the sources' selected papers.
///
/// Off the diagonal, cell `(r, c)` is `|S_r ∩ S_c| / |S_c|`. On the
/// diagonal it is the number of selected papers only source `r` returned,
/// over `|S_r|`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OverlapMatrix {
    pub sources: Vec<SourceId>,
    pub cells: Vec<Vec<Ratio>>,
}

pub fn overlap_matrix(corpus: &Corpus) -> OverlapMatrix {
    let sources: Vec<SourceId> = corpus.sources().keys().cloned().collect();
    let sets: Vec<BTreeSet<&PaperId>> = sources
        .iter()
        .map(|s| {
            corpus
                .papers()
                .filter(|p| p.selected && p.returned_by.contains(s))
                .map(|p| &p.id)
                .collect()
        })
        .collect();
    let cells = (0..sources.len())
        .map(|r| {
            (0..sources.len())
                .map(|c| {
                    if r == c {
                        let unique = sets[r]
                            .iter()
                            .filter(|p| {
                                sets.iter()
                                    .enumerate()
                                    .all(|(o, s)| o == r || !s.contains(*p))
                            })
                            .count();
                        Ratio::new(unique, sets[r].len())
                    } else {
                        Ratio::new(sets[r].intersection(&sets[c]).count(), sets[c].len())
                    }
                })
                .collect()
        })
        .collect();
    OverlapMatrix { sources, cells }
}

/// One strategy's final score.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonRow {
    pub name: String,
    pub metrics: Metrics,
    pub visited: usize,
    pub selected: usize,
}

/// Runs every spec and reports their final metrics in input order.
///
/// All specs are checked before any runs, and the first failure in input
/// order is reported. Specs are evaluated on scoped threads over the shared
/// corpus.
pub fn strategy_comparison(
    corpus: &Corpus,
    specs: &[NamedSpec],
) -> Result<Vec<ComparisonRow>, EngineError> {
    for s in specs {
        validate_spec(corpus, &s.spec)?;
    }
    let results: Vec<_> = thread::scope(|scope| {
        let handles: Vec<_> = specs
            .iter()
            .map(|s| scope.spawn(move || run_strategy(corpus, &s.spec)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("strategy thread panicked"))
            .collect()
    });
    specs
        .iter()
        .zip(results)
        .map(|(s, r)| {
            r.map(|o| ComparisonRow {
                name: s.name.clone(),
                metrics: o.final_metrics,
                visited: o.visited.len(),
                selected: o.selected.len(),
            })
        })
        .collect()
}
