//! Text renderers: CSV, Markdown and JSON tables, DOT citation graphs and
//! complementarity summaries. Output depends only on the input.

mod dot;
mod table;
mod venn;

use std::fmt;

use thiserror::Error;

pub use dot::{node_class, quote, render_citation_graph, NodeClass};
pub use table::{
    comparison_table, indexed_table, library_table, matrix_table, render_table, trace_table, Cell,
    Table,
};
pub use venn::render_venn;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderFormat {
    Csv,
    Markdown,
    Json,
    Dot,
}

impl RenderFormat {
    pub fn as_str(self) -> &'static str {
        match self {
            RenderFormat::Csv => "csv",
            RenderFormat::Markdown => "markdown",
            RenderFormat::Json => "json",
            RenderFormat::Dot => "dot",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "csv" => Some(RenderFormat::Csv),
            "markdown" | "md" => Some(RenderFormat::Markdown),
            "json" => Some(RenderFormat::Json),
            "dot" => Some(RenderFormat::Dot),
            _ => None,
        }
    }
}

impl fmt::Display for RenderFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReportError {
    #[error("{format} cannot render {what}")]
    UnsupportedFormat {
        format: RenderFormat,
        what: &'static str,
    },
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s =
        serde_json::to_string_pretty(value).expect("serialization of plain data cannot fail");
    s.push('\n');
    s
}
