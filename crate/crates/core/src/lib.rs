//! Deterministic simulator for systematic-literature-review search strategies.
//!
//! A [`corpus::Corpus`] holds deduplicated papers tagged with the sources that
//! returned them, oracle selection labels and a citation graph. The
//! [`engine`] runs database-search, snowballing and hybrid strategies over it,
//! [`analytics`] turns outcomes into precision/recall/F-measure tables and
//! [`report`] renders them.

pub mod analytics;
pub mod corpus;
pub mod engine;
pub mod ingest;
pub mod report;
