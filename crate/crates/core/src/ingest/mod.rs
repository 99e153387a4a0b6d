//! Reading external data into a [`Corpus`](crate::corpus::Corpus) and writing
//! corpora back out.

pub mod bibtex;
mod citers;
mod import;
mod json;

pub use bibtex::{parse_bibtex, parse_bibtex_bytes, BibEntry, BibError, Position};
pub use citers::{parse_citer_csv, CsvError, CITER_HEADER};
pub use import::{
    entry_to_paper, import_citers, import_references, CiterOptions, ImportError, ImportStats,
};
pub use json::{corpus_from_json, corpus_to_json, load_corpus, save_corpus, LoadError};
