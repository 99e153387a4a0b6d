use std::collections::BTreeSet;

use serde::Serialize;

use super::spec::SnowballMode;
use super::EngineError;
use crate::analytics::{compute_metrics, Metrics, MetricsError};
use crate::corpus::{Corpus, PaperId};

/// Which side of a record's row the papers came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Phase {
    Seed,
    Backward,
    Forward,
    Union,
}

impl Phase {
    pub fn as_str(self) -> &'static str {
        match self {
            Phase::Seed => "seed",
            Phase::Backward => "backward",
            Phase::Forward => "forward",
            Phase::Union => "union",
        }
    }
}

/// One row of a run trace.
///
/// Direction records show what the state would be after that direction
/// alone; the union record of an iteration is the state actually carried
/// forward.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IterationRecord {
    pub index: u32,
    pub phase: Phase,
    pub new_visited: BTreeSet<PaperId>,
    pub new_selected: BTreeSet<PaperId>,
    pub accum_visited: usize,
    pub accum_selected: usize,
    pub metrics: Metrics,
}

/// A citation edge `(citing, cited)`.
pub type Edge = (PaperId, PaperId);

/// Visited and selected sets reached by snowballing, with the rows that
/// produced them and the edges that discovered each newly visited paper.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Snowball {
    pub visited: BTreeSet<PaperId>,
    pub selected: BTreeSet<PaperId>,
    pub trace: Vec<IterationRecord>,
    pub edges: BTreeSet<Edge>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Direction {
    Backward,
    Forward,
}

impl Direction {
    fn phase(self) -> Phase {
        match self {
            Direction::Backward => Phase::Backward,
            Direction::Forward => Phase::Forward,
        }
    }
}

/// Papers cited by the frontier that have not been visited yet.
pub fn backward_candidates(
    corpus: &Corpus,
    frontier: &BTreeSet<PaperId>,
    already_visited: &BTreeSet<PaperId>,
) -> BTreeSet<PaperId> {
    expand(corpus, Direction::Backward, frontier, already_visited).0
}

/// Papers citing the frontier that have not been visited yet.
pub fn forward_candidates(
    corpus: &Corpus,
    frontier: &BTreeSet<PaperId>,
    already_visited: &BTreeSet<PaperId>,
) -> BTreeSet<PaperId> {
    expand(corpus, Direction::Forward, frontier, already_visited).0
}

fn expand(
    corpus: &Corpus,
    dir: Direction,
    frontier: &BTreeSet<PaperId>,
    visited: &BTreeSet<PaperId>,
) -> (BTreeSet<PaperId>, Vec<Edge>) {
    let graph = corpus.graph();
    let mut found = BTreeSet::new();
    let mut edges = Vec::new();
    for f in frontier {
        let neighbours = match dir {
            Direction::Backward => graph.refs(f),
            Direction::Forward => graph.citers(f),
        };
        for n in neighbours.iter().filter(|n| !visited.contains(*n)) {
            found.insert(n.clone());
            edges.push(match dir {
                Direction::Backward => (f.clone(), n.clone()),
                Direction::Forward => (n.clone(), f.clone()),
            });
        }
    }
    (found, edges)
}

/// Why a run stopped early.
enum Halt {
    Cap,
    Failed(EngineError),
}

impl From<MetricsError> for Halt {
    fn from(e: MetricsError) -> Self {
        Halt::Failed(e.into())
    }
}

struct Run<'a> {
    corpus: &'a Corpus,
    oracle_size: usize,
    max_iterations: u32,
    index: u32,
    visited: BTreeSet<PaperId>,
    selected: BTreeSet<PaperId>,
    trace: Vec<IterationRecord>,
    edges: BTreeSet<Edge>,
}

impl Run<'_> {
    fn selected_part(&self, papers: &BTreeSet<PaperId>) -> BTreeSet<PaperId> {
        papers
            .iter()
            .filter(|p| self.corpus.is_selected(p))
            .cloned()
            .collect()
    }

    /// Appends a row for "current state plus `found`" without committing it.
    fn record(&mut self, phase: Phase, found: &BTreeSet<PaperId>) -> Result<(), Halt> {
        let new_visited: BTreeSet<PaperId> = found.difference(&self.visited).cloned().collect();
        let new_selected = self.selected_part(&new_visited);
        let accum_visited = self.visited.len() + new_visited.len();
        let accum_selected = self.selected.len() + new_selected.len();
        let metrics = compute_metrics(accum_selected, accum_visited, self.oracle_size)?;
        self.trace.push(IterationRecord {
            index: self.index,
            phase,
            new_visited,
            new_selected,
            accum_visited,
            accum_selected,
            metrics,
        });
        Ok(())
    }

    /// Adds `found` to the state and returns the newly selected papers.
    fn commit(&mut self, found: &BTreeSet<PaperId>, edges: Vec<Edge>) -> BTreeSet<PaperId> {
        let fresh: BTreeSet<PaperId> = found.difference(&self.visited).cloned().collect();
        for (citing, cited) in edges {
            if fresh.contains(&citing) || fresh.contains(&cited) {
                self.edges.insert((citing, cited));
            }
        }
        let newly_selected = self.selected_part(&fresh);
        self.selected.extend(newly_selected.iter().cloned());
        self.visited.extend(fresh);
        newly_selected
    }

    fn finish(self) -> Snowball {
        Snowball {
            visited: self.visited,
            selected: self.selected,
            trace: self.trace,
            edges: self.edges,
        }
    }

    /// Iterates one direction to fixpoint starting from `frontier`.
    fn closure(&mut self, dir: Direction, mut frontier: BTreeSet<PaperId>) -> Result<(), Halt> {
        let mut steps = 0;
        while !frontier.is_empty() {
            if steps == self.max_iterations {
                return Err(Halt::Cap);
            }
            steps += 1;
            self.index += 1;
            let (found, edges) = expand(self.corpus, dir, &frontier, &self.visited);
            self.record(dir.phase(), &found)?;
            self.record(Phase::Union, &found)?;
            frontier = self.commit(&found, edges);
        }
        Ok(())
    }

    fn iterative(&mut self, mut frontier: BTreeSet<PaperId>) -> Result<(), Halt> {
        let mut steps = 0;
        while !frontier.is_empty() {
            if steps == self.max_iterations {
                return Err(Halt::Cap);
            }
            steps += 1;
            self.index += 1;
            let (back, mut edges) =
                expand(self.corpus, Direction::Backward, &frontier, &self.visited);
            let (fwd, fwd_edges) =
                expand(self.corpus, Direction::Forward, &frontier, &self.visited);
            edges.extend(fwd_edges);
            self.record(Phase::Backward, &back)?;
            self.record(Phase::Forward, &fwd)?;
            let both = &back | &fwd;
            self.record(Phase::Union, &both)?;
            frontier = self.commit(&both, edges);
        }
        Ok(())
    }

    /// Backward and forward closures that never feed each other; rows are
    /// interleaved by step and measured against the combined state.
    fn parallel(&mut self, seed: &BTreeSet<PaperId>) -> Result<(), Halt> {
        let mut back_visited = self.visited.clone();
        let mut fwd_visited = self.visited.clone();
        let mut back_frontier = seed.clone();
        let mut fwd_frontier = seed.clone();
        let mut steps = 0;
        while !back_frontier.is_empty() || !fwd_frontier.is_empty() {
            if steps == self.max_iterations {
                return Err(Halt::Cap);
            }
            steps += 1;
            self.index += 1;
            let mut edges = Vec::new();
            let mut both = BTreeSet::new();
            for (dir, own_visited, frontier) in [
                (Direction::Backward, &mut back_visited, &mut back_frontier),
                (Direction::Forward, &mut fwd_visited, &mut fwd_frontier),
            ] {
                if frontier.is_empty() {
                    continue;
                }
                let (found, found_edges) = expand(self.corpus, dir, frontier, own_visited);
                self.record(dir.phase(), &found)?;
                *frontier = self.selected_part(&found);
                own_visited.extend(found.iter().cloned());
                edges.extend(found_edges);
                both.extend(found);
            }
            self.record(Phase::Union, &both)?;
            self.commit(&both, edges);
        }
        Ok(())
    }
}

/// Expands a seed by backward and/or forward snowballing according to `mode`.
///
/// `seed_selected` must equal `seed_visited` restricted to the oracle. The
/// returned trace holds snowballing rows only, numbered from 1.
pub fn snowball(
    corpus: &Corpus,
    seed_selected: &BTreeSet<PaperId>,
    seed_visited: &BTreeSet<PaperId>,
    mode: SnowballMode,
    max_iterations: u32,
) -> Result<Snowball, EngineError> {
    if max_iterations == 0 {
        return Err(EngineError::InvalidSpec(
            "max_iterations must be positive".into(),
        ));
    }
    if let Some(p) = seed_visited
        .iter()
        .chain(seed_selected)
        .find(|p| !corpus.contains(p))
    {
        return Err(EngineError::UnknownPaper(p.clone()));
    }
    let expected: BTreeSet<PaperId> = seed_visited
        .iter()
        .filter(|p| corpus.is_selected(p))
        .cloned()
        .collect();
    if &expected != seed_selected {
        return Err(EngineError::InvalidSeed(
            "seed selected set must be exactly the selected papers among the seed".into(),
        ));
    }

    let mut run = Run {
        corpus,
        oracle_size: corpus.oracle().len(),
        max_iterations,
        index: 0,
        visited: seed_visited.clone(),
        selected: seed_selected.clone(),
        trace: Vec::new(),
        edges: BTreeSet::new(),
    };
    let seed = seed_selected.clone();
    let result = match mode {
        SnowballMode::None => Ok(()),
        SnowballMode::Iterative => run.iterative(seed),
        SnowballMode::Parallel => run.parallel(&seed),
        SnowballMode::BsOnly => run.closure(Direction::Backward, seed),
        SnowballMode::FsOnly => run.closure(Direction::Forward, seed),
        SnowballMode::SeqBsThenFs => run.closure(Direction::Backward, seed).and_then(|()| {
            let everything = run.selected.clone();
            run.closure(Direction::Forward, everything)
        }),
        SnowballMode::SeqFsThenBs => run.closure(Direction::Forward, seed).and_then(|()| {
            let everything = run.selected.clone();
            run.closure(Direction::Backward, everything)
        }),
    };
    match result {
        Ok(()) => Ok(run.finish()),
        Err(Halt::Cap) => Err(EngineError::IterationCapExceeded {
            max_iterations,
            partial: Box::new(run.finish()),
        }),
        Err(Halt::Failed(e)) => Err(e),
    }
}
