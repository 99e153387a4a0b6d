//! Strategy engine: database search, snowballing modes and hybrids.
//!
//! Every operation is a pure function of a shared read-only [`Corpus`], so
//! strategies may run concurrently. All sets are ordered, which makes
//! outcomes and traces independent of hashing or insertion order.
//!
//! [`Corpus`]: crate::corpus::Corpus

mod presets;
mod snowball;
mod spec;
mod strategy;

use thiserror::Error;

use crate::analytics::MetricsError;
use crate::corpus::{PaperId, SourceId};

pub use presets::{all_presets, preset, PresetOptions, PRESET_NAMES};
pub use snowball::{
    backward_candidates, forward_candidates, snowball, Edge, IterationRecord, Phase, Snowball,
};
pub use spec::{
    parse_spec_file, spec_file_to_json, NamedSpec, Seed, SnowballMode, SpecFileError, StrategySpec,
    DEFAULT_MAX_ITERATIONS, DEFAULT_SEED_CAP,
};
pub use strategy::{
    complementarity, db_search, resolve_seed_sets, run_strategy, validate_spec, Complementarity,
    StrategyOutcome,
};

#[derive(Debug, Error)]
pub enum EngineError {
    #[error("unknown source `{0}`")]
    UnknownSource(SourceId),
    #[error("unknown paper `{0}`")]
    UnknownPaper(PaperId),
    #[error("invalid strategy: {0}")]
    InvalidSpec(String),
    #[error("invalid seed: {0}")]
    InvalidSeed(String),
    #[error("source `{source_id}` has no rank for paper `{paper}`")]
    MissingRanks { source_id: SourceId, paper: PaperId },
    #[error("the oracle is empty: no paper is marked selected")]
    EmptyOracle,
    #[error(
        "iteration cap of {max_iterations} reached while snowballing was still selecting papers"
    )]
    IterationCapExceeded {
        max_iterations: u32,
        partial: Box<Snowball>,
    },
    #[error(
        "iteration cap of {max_iterations} reached while snowballing was still selecting papers"
    )]
    StrategyCapExceeded {
        max_iterations: u32,
        partial: Box<StrategyOutcome>,
    },
    #[error(transparent)]
    Metrics(#[from] MetricsError),
}

#[cfg(test)]
pub(crate) use snowball::tests as tests_support;
