use std::collections::BTreeSet;
use std::fmt::Write;

use crate::corpus::{Corpus, PaperId};
use crate::engine::{Edge, StrategyOutcome};

/// How a visited paper is drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeClass {
    SeedSelected,
    SnowballSelected,
    VisitedUnselected,
    Stub,
}

impl NodeClass {
    pub fn as_str(self) -> &'static str {
        match self {
            NodeClass::SeedSelected => "seed-selected",
            NodeClass::SnowballSelected => "snowball-selected",
            NodeClass::VisitedUnselected => "visited-unselected",
            NodeClass::Stub => "stub",
        }
    }

    fn style(self) -> &'static str {
        match self {
            NodeClass::SeedSelected => r##"style="filled", fillcolor="#1b9e77""##,
            NodeClass::SnowballSelected => r##"style="filled", fillcolor="#7570b3""##,
            NodeClass::VisitedUnselected => r##"style="filled", fillcolor="#eeeeee""##,
            NodeClass::Stub => r#"style="dashed""#,
        }
    }
}

pub fn node_class(corpus: &Corpus, outcome: &StrategyOutcome, id: &PaperId) -> NodeClass {
    if outcome.selected.contains(id) {
        if outcome.seed.contains(id) {
            NodeClass::SeedSelected
        } else {
            NodeClass::SnowballSelected
        }
    } else if corpus.paper(id).is_some_and(|p| p.stub) {
        NodeClass::Stub
    } else {
        NodeClass::VisitedUnselected
    }
}

/// Quotes a DOT ID.
pub fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' | '\r' => out.push(' '),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

/// DOT digraph of the papers an outcome visited.
///
/// By default only the edges that discovered a paper are drawn; with
/// `all_edges` every citation between visited papers is.
pub fn render_citation_graph(
    corpus: &Corpus,
    outcome: &StrategyOutcome,
    all_edges: bool,
) -> String {
    let edges: BTreeSet<Edge> = if all_edges {
        corpus
            .graph()
            .edges()
            .filter(|(a, b)| outcome.visited.contains(*a) && outcome.visited.contains(*b))
            .map(|(a, b)| (a.clone(), b.clone()))
            .collect()
    } else {
        outcome.edges.clone()
    };
    let mut out = String::from("digraph citations {\n  rankdir=\"LR\";\n  node [shape=\"box\"];\n");
    for id in &outcome.visited {
        let class = node_class(corpus, outcome, id);
        let label = match corpus.paper(id) {
            Some(p) if !p.title().is_empty() => format!("{id}: {}", p.title()),
            _ => id.to_string(),
        };
        writeln!(
            out,
            "  {} [label={}, class=\"{}\", {}];",
            quote(id.as_str()),
            quote(&label),
            class.as_str(),
            class.style()
        )
        .expect("write to String");
    }
    for (citing, cited) in &edges {
        writeln!(
            out,
            "  {} -> {};",
            quote(citing.as_str()),
            quote(cited.as_str())
        )
        .expect("write to String");
    }
    out.push_str("}\n");
    out
}
