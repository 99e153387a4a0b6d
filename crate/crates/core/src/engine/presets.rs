use super::spec::{NamedSpec, Seed, SnowballMode, StrategySpec, DEFAULT_SEED_CAP};
use crate::corpus::{Corpus, SourceId};

pub const PRESET_NAMES: [&str; 7] = [
    "db",
    "sb",
    "db-full",
    "scopus-iter",
    "scopus-par",
    "scopus-bsfs",
    "scopus-fsbs",
];

/// Sources plugged into the preset strategies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresetOptions {
    /// Ranked source whose top results seed pure snowballing.
    pub sb_source: SourceId,
    pub sb_cap: u32,
    /// Single source fed into the hybrid strategies.
    pub hybrid_source: SourceId,
}

impl Default for PresetOptions {
    fn default() -> Self {
        PresetOptions {
            sb_source: SourceId::new("Google Scholar"),
            sb_cap: DEFAULT_SEED_CAP,
            hybrid_source: SourceId::new("Scopus"),
        }
    }
}

/// Expands a preset name into an explicit spec for `corpus`.
///
/// "All sources" means every source declared in the corpus.
pub fn preset(corpus: &Corpus, name: &str, options: &PresetOptions) -> Option<StrategySpec> {
    let all = || corpus.sources().keys().cloned();
    let hybrid = |mode| StrategySpec::hybrid([options.hybrid_source.clone()], mode);
    Some(match name {
        "db" => StrategySpec::hybrid(all(), SnowballMode::None),
        "sb" => StrategySpec::new(
            [],
            Seed::RankedSource {
                source: options.sb_source.clone(),
                cap: options.sb_cap,
            },
            SnowballMode::Iterative,
        ),
        "db-full" => StrategySpec::hybrid(all(), SnowballMode::Iterative),
        "scopus-iter" => hybrid(SnowballMode::Iterative),
        "scopus-par" => hybrid(SnowballMode::Parallel),
        "scopus-bsfs" => hybrid(SnowballMode::SeqBsThenFs),
        "scopus-fsbs" => hybrid(SnowballMode::SeqFsThenBs),
        _ => return None,
    })
}

/// All seven presets, in their canonical order.
pub fn all_presets(corpus: &Corpus, options: &PresetOptions) -> Vec<NamedSpec> {
    PRESET_NAMES
        .iter()
        .map(|name| NamedSpec {
            name: (*name).to_owned(),
            spec: preset(corpus, name, options).expect("listed preset"),
        })
        .collect()
}
