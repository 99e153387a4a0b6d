use std::collections::BTreeSet;

use serde::Serialize;

use super::snowball::{snowball, Edge, IterationRecord, Phase, Snowball};
use super::spec::{Seed, SnowballMode, StrategySpec, DEFAULT_MAX_ITERATIONS};
use super::EngineError;
use crate::analytics::{compute_metrics, Metrics};
use crate::corpus::{Corpus, PaperId, SourceId};

/// Result of running one strategy.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StrategyOutcome {
    pub spec: StrategySpec,
    /// Papers examined before snowballing.
    pub seed: BTreeSet<PaperId>,
    pub visited: BTreeSet<PaperId>,
    pub selected: BTreeSet<PaperId>,
    /// Seed row (index 0) followed by the snowballing rows.
    pub trace: Vec<IterationRecord>,
    /// Citation edges that discovered a newly visited paper.
    pub edges: BTreeSet<Edge>,
    pub final_metrics: Metrics,
}

impl StrategyOutcome {
    /// `P=.. R=.. F=.. visited=.. selected=..`
    pub fn summary(&self) -> String {
        format!(
            "{} visited={} selected={}",
            self.final_metrics.summary(),
            self.visited.len(),
            self.selected.len()
        )
    }
}

fn selected_among<'a>(
    corpus: &Corpus,
    papers: impl IntoIterator<Item = &'a PaperId>,
) -> BTreeSet<PaperId> {
    papers
        .into_iter()
        .filter(|p| corpus.is_selected(p))
        .cloned()
        .collect()
}

fn check_sources<'a>(
    corpus: &Corpus,
    sources: impl IntoIterator<Item = &'a SourceId>,
) -> Result<(), EngineError> {
    match sources.into_iter().find(|s| !corpus.has_source(s)) {
        Some(s) => Err(EngineError::UnknownSource(s.clone())),
        None => Ok(()),
    }
}

/// Papers returned by any of `sources`.
fn returned_by_any(corpus: &Corpus, sources: &BTreeSet<SourceId>) -> BTreeSet<PaperId> {
    corpus
        .papers()
        .filter(|p| !p.returned_by.is_disjoint(sources))
        .map(|p| p.id.clone())
        .collect()
}

/// Checks a spec against its own invariants and the corpus it will run on.
pub fn validate_spec(corpus: &Corpus, spec: &StrategySpec) -> Result<(), EngineError> {
    if spec.max_iterations == 0 {
        return Err(EngineError::InvalidSpec(
            "max_iterations must be positive".into(),
        ));
    }
    check_sources(corpus, &spec.db_sources)?;
    match &spec.seed {
        Seed::FromDbSelected if spec.db_sources.is_empty() => Err(EngineError::InvalidSpec(
            "a seed taken from the database search needs at least one db source".into(),
        )),
        Seed::FromDbSelected => Ok(()),
        _ if !spec.db_sources.is_empty() => Err(EngineError::InvalidSpec(
            "db sources are only used by a seed taken from the database search".into(),
        )),
        Seed::ExplicitList { papers } => match papers.iter().find(|p| !corpus.contains(p)) {
            Some(p) => Err(EngineError::UnknownPaper(p.clone())),
            None => Ok(()),
        },
        Seed::RankedSource { source, cap } => {
            check_sources(corpus, [source])?;
            if *cap == 0 {
                return Err(EngineError::InvalidSpec("seed cap must be positive".into()));
            }
            match corpus
                .papers()
                .find(|p| p.returned_by.contains(source) && !p.ranks.contains_key(source))
            {
                Some(p) => Err(EngineError::MissingRanks {
                    source_id: source.clone(),
                    paper: p.id.clone(),
                }),
                None => Ok(()),
            }
        }
    }
}

fn resolve_seed(corpus: &Corpus, spec: &StrategySpec) -> BTreeSet<PaperId> {
    match &spec.seed {
        Seed::FromDbSelected => returned_by_any(corpus, &spec.db_sources),
        Seed::ExplicitList { papers } => papers.iter().cloned().collect(),
        Seed::RankedSource { source, cap } => corpus
            .papers()
            .filter(|p| p.ranks.get(source).is_some_and(|r| r <= cap))
            .map(|p| p.id.clone())
            .collect(),
    }
}

fn assemble(
    corpus: &Corpus,
    spec: &StrategySpec,
    seed: BTreeSet<PaperId>,
    seed_row: IterationRecord,
    run: Snowball,
    final_metrics: Metrics,
) -> StrategyOutcome {
    let mut trace = Vec::with_capacity(run.trace.len() + 1);
    trace.push(seed_row);
    trace.extend(run.trace);
    debug_assert_eq!(run.selected, selected_among(corpus, &run.visited));
    StrategyOutcome {
        spec: spec.clone(),
        seed,
        visited: run.visited,
        selected: run.selected,
        trace,
        edges: run.edges,
        final_metrics,
    }
}

/// Resolves the seed, snowballs and scores the result against the oracle.
///
/// When the iteration cap is hit the error carries the partial outcome,
/// seed row included.
pub fn run_strategy(corpus: &Corpus, spec: &StrategySpec) -> Result<StrategyOutcome, EngineError> {
    validate_spec(corpus, spec)?;
    let oracle_size = corpus.oracle().len();
    if oracle_size == 0 {
        return Err(EngineError::EmptyOracle);
    }
    let seed = resolve_seed(corpus, spec);
    let seed_selected = selected_among(corpus, &seed);
    let seed_row = IterationRecord {
        index: 0,
        phase: Phase::Seed,
        new_visited: seed.clone(),
        new_selected: seed_selected.clone(),
        accum_visited: seed.len(),
        accum_selected: seed_selected.len(),
        metrics: compute_metrics(seed_selected.len(), seed.len(), oracle_size)?,
    };
    match snowball(
        corpus,
        &seed_selected,
        &seed,
        spec.mode,
        spec.max_iterations,
    ) {
        Ok(run) => {
            let metrics = compute_metrics(run.selected.len(), run.visited.len(), oracle_size)?;
            Ok(assemble(corpus, spec, seed, seed_row, run, metrics))
        }
        Err(EngineError::IterationCapExceeded {
            max_iterations,
            partial,
        }) => {
            let partial = *partial;
            let metrics =
                compute_metrics(partial.selected.len(), partial.visited.len(), oracle_size)?;
            let outcome = assemble(corpus, spec, seed.clone(), seed_row, partial, metrics);
            Err(EngineError::StrategyCapExceeded {
                max_iterations,
                partial: Box::new(outcome),
            })
        }
        Err(e) => Err(e),
    }
}

/// Database search alone: every paper returned by any of `sources`.
pub fn db_search(
    corpus: &Corpus,
    sources: &BTreeSet<SourceId>,
) -> Result<StrategyOutcome, EngineError> {
    check_sources(corpus, sources)?;
    let oracle_size = corpus.oracle().len();
    if oracle_size == 0 {
        return Err(EngineError::EmptyOracle);
    }
    let spec = StrategySpec::hybrid(sources.iter().cloned(), SnowballMode::None);
    let visited = returned_by_any(corpus, sources);
    let selected = selected_among(corpus, &visited);
    let metrics = compute_metrics(selected.len(), visited.len(), oracle_size)?;
    Ok(StrategyOutcome {
        spec,
        seed: visited.clone(),
        trace: vec![IterationRecord {
            index: 0,
            phase: Phase::Seed,
            new_visited: visited.clone(),
            new_selected: selected.clone(),
            accum_visited: visited.len(),
            accum_selected: selected.len(),
            metrics,
        }],
        visited,
        selected,
        edges: BTreeSet::new(),
        final_metrics: metrics,
    })
}

/// Papers found by backward-only and forward-only snowballing from the same
/// seed, seed papers excluded.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Complementarity {
    pub bs_selected: BTreeSet<PaperId>,
    pub fs_selected: BTreeSet<PaperId>,
    pub overlap: BTreeSet<PaperId>,
    pub bs_only: BTreeSet<PaperId>,
    pub fs_only: BTreeSet<PaperId>,
}

pub fn complementarity(
    corpus: &Corpus,
    seed_selected: &BTreeSet<PaperId>,
    seed_visited: &BTreeSet<PaperId>,
) -> Result<Complementarity, EngineError> {
    let found = |mode| -> Result<BTreeSet<PaperId>, EngineError> {
        let run = snowball(
            corpus,
            seed_selected,
            seed_visited,
            mode,
            DEFAULT_MAX_ITERATIONS,
        )?;
        Ok(&run.selected - seed_selected)
    };
    let bs_selected = found(SnowballMode::BsOnly)?;
    let fs_selected = found(SnowballMode::FsOnly)?;
    Ok(Complementarity {
        overlap: &bs_selected & &fs_selected,
        bs_only: &bs_selected - &fs_selected,
        fs_only: &fs_selected - &bs_selected,
        bs_selected,
        fs_selected,
    })
}

/// Seed sets as [`run_strategy`] would resolve them, for use with
/// [`complementarity`].
pub fn resolve_seed_sets(
    corpus: &Corpus,
    spec: &StrategySpec,
) -> Result<(BTreeSet<PaperId>, BTreeSet<PaperId>), EngineError> {
    validate_spec(corpus, spec)?;
    let seed = resolve_seed(corpus, spec);
    Ok((selected_among(corpus, &seed), seed))
}
