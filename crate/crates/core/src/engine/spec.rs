use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::{PaperId, SourceId};

pub const DEFAULT_MAX_ITERATIONS: u32 = 50;
pub const DEFAULT_SEED_CAP: u32 = 60;

/// How snowballing proceeds from the seed set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum SnowballMode {
    /// Backward and forward on the same frontier, every iteration (BS*FS).
    #[serde(rename = "iterative")]
    Iterative,
    /// Independent backward and forward closures over the seed (BS||FS).
    #[serde(rename = "parallel")]
    Parallel,
    /// Backward closure, then forward closure over everything selected (BS+FS).
    #[serde(rename = "seq-bs-fs")]
    SeqBsThenFs,
    /// Forward closure, then backward closure (FS+BS).
    #[serde(rename = "seq-fs-bs")]
    SeqFsThenBs,
    #[serde(rename = "bs-only")]
    BsOnly,
    #[serde(rename = "fs-only")]
    FsOnly,
    #[serde(rename = "none")]
    None,
}

impl SnowballMode {
    pub const ALL: [SnowballMode; 7] = [
        SnowballMode::Iterative,
        SnowballMode::Parallel,
        SnowballMode::SeqBsThenFs,
        SnowballMode::SeqFsThenBs,
        SnowballMode::BsOnly,
        SnowballMode::FsOnly,
        SnowballMode::None,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SnowballMode::Iterative => "iterative",
            SnowballMode::Parallel => "parallel",
            SnowballMode::SeqBsThenFs => "seq-bs-fs",
            SnowballMode::SeqFsThenBs => "seq-fs-bs",
            SnowballMode::BsOnly => "bs-only",
            SnowballMode::FsOnly => "fs-only",
            SnowballMode::None => "none",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|m| m.as_str() == s)
    }
}

impl fmt::Display for SnowballMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

fn default_cap() -> u32 {
    DEFAULT_SEED_CAP
}

fn default_max_iterations() -> u32 {
    DEFAULT_MAX_ITERATIONS
}

/// Where the snowballing seed set comes from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Seed {
    /// Papers returned by the strategy's database sources.
    FromDbSelected,
    /// A fixed list of papers.
    #[serde(rename = "explicit")]
    ExplicitList { papers: Vec<PaperId> },
    /// The top `cap` results of one ranked source.
    RankedSource {
        source: SourceId,
        #[serde(default = "default_cap")]
        cap: u32,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StrategySpec {
    #[serde(default)]
    pub db_sources: BTreeSet<SourceId>,
    pub seed: Seed,
    pub mode: SnowballMode,
    #[serde(default = "default_max_iterations")]
    pub max_iterations: u32,
}

impl StrategySpec {
    pub fn new(
        db_sources: impl IntoIterator<Item = SourceId>,
        seed: Seed,
        mode: SnowballMode,
    ) -> Self {
        StrategySpec {
            db_sources: db_sources.into_iter().collect(),
            seed,
            mode,
            max_iterations: DEFAULT_MAX_ITERATIONS,
        }
    }

    /// Database search over `sources`, snowballing from its selected papers.
    pub fn hybrid(sources: impl IntoIterator<Item = SourceId>, mode: SnowballMode) -> Self {
        Self::new(sources, Seed::FromDbSelected, mode)
    }
}

/// A strategy with the name it is reported under.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawNamedSpec", into = "RawNamedSpec")]
pub struct NamedSpec {
    pub name: String,
    pub spec: StrategySpec,
}

#[derive(Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawNamedSpec {
    name: String,
    #[serde(default)]
    db_sources: BTreeSet<SourceId>,
    seed: Seed,
    mode: SnowballMode,
    #[serde(default = "default_max_iterations")]
    max_iterations: u32,
}

impl TryFrom<RawNamedSpec> for NamedSpec {
    type Error = String;

    fn try_from(raw: RawNamedSpec) -> Result<Self, String> {
        if raw.name.trim().is_empty() {
            return Err("strategy name is empty".into());
        }
        Ok(NamedSpec {
            name: raw.name,
            spec: StrategySpec {
                db_sources: raw.db_sources,
                seed: raw.seed,
                mode: raw.mode,
                max_iterations: raw.max_iterations,
            },
        })
    }
}

impl From<NamedSpec> for RawNamedSpec {
    fn from(n: NamedSpec) -> Self {
        RawNamedSpec {
            name: n.name,
            db_sources: n.spec.db_sources,
            seed: n.spec.seed,
            mode: n.spec.mode,
            max_iterations: n.spec.max_iterations,
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpecFileDoc {
    strategies: Vec<NamedSpec>,
}

#[derive(Debug, Error)]
pub enum SpecFileError {
    /// Not well-formed JSON.
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    /// Well-formed JSON that does not describe valid strategies.
    #[error("line {line}, column {column}: {message}")]
    Invalid {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("strategy name `{0}` is used more than once")]
    DuplicateName(String),
}

/// Parses `{"strategies": [{"name": ..., "seed": ..., "mode": ...}, ...]}`.
pub fn parse_spec_file(text: &str) -> Result<Vec<NamedSpec>, SpecFileError> {
    let doc: SpecFileDoc = serde_json::from_str(text).map_err(|e| {
        let (line, column, message) = (e.line(), e.column(), e.to_string());
        if e.is_data() {
            SpecFileError::Invalid {
                line,
                column,
                message,
            }
        } else {
            SpecFileError::Syntax {
                line,
                column,
                message,
            }
        }
    })?;
    let mut seen = BTreeSet::new();
    for s in &doc.strategies {
        if !seen.insert(s.name.as_str()) {
            return Err(SpecFileError::DuplicateName(s.name.clone()));
        }
    }
    Ok(doc.strategies)
}

/// Canonical pretty JSON for a spec list, with a trailing newline.
pub fn spec_file_to_json(specs: &[NamedSpec]) -> String {
    let doc = SpecFileDoc {
        strategies: specs.to_vec(),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("spec serialization cannot fail");
    s.push('\n');
    s
}
