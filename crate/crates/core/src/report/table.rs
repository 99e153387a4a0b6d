use serde_json::{json, Map, Value};

use super::{RenderFormat, ReportError};
use crate::analytics::{ComparisonRow, IndexedRow, LibraryRow, Metrics, OverlapMatrix, Ratio};
use crate::engine::IterationRecord;

/// One table cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Cell {
    Text(String),
    Count(usize),
    /// Rendered as `46.67 (7/15)`.
    Ratio(Ratio),
    /// Rendered as `21.21`.
    Percent(Ratio),
    /// Rendered as `2/3`.
    Fraction(Ratio),
}

impl Cell {
    pub fn text(&self) -> String {
        match self {
            Cell::Text(s) => s.clone(),
            Cell::Count(n) => n.to_string(),
            Cell::Ratio(r) => r.render_with_fraction(),
            Cell::Percent(r) => r.render_percent(),
            Cell::Fraction(r) => r.to_string(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Text(s) => json!(s),
            Cell::Count(n) => json!(n),
            Cell::Ratio(r) | Cell::Percent(r) | Cell::Fraction(r) => json!({
                "percent": r.percent(),
                "percent_is_nan": r.percent().is_none(),
                "num": r.num,
                "den": r.den,
            }),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(headers: &[&str]) -> Self {
        Table {
            headers: headers.iter().map(|h| (*h).to_owned()).collect(),
            rows: Vec::new(),
        }
    }
}

fn metric_cells(m: &Metrics) -> [Cell; 3] {
    [
        Cell::Ratio(m.precision_ratio()),
        Cell::Ratio(m.recall_ratio()),
        Cell::Percent(m.f_ratio()),
    ]
}

pub fn library_table(rows: &[LibraryRow]) -> Table {
    let mut t = Table::new(&["Source", "Precision", "Recall", "F-measure"]);
    for r in rows {
        let mut row = vec![Cell::Text(r.source.to_string())];
        row.extend(metric_cells(&r.metrics));
        t.rows.push(row);
    }
    t
}

pub fn indexed_table(rows: &[IndexedRow]) -> Table {
    let mut t = Table::new(&["Source", "Indexed recall", "Unknown"]);
    for r in rows {
        t.rows.push(vec![
            Cell::Text(r.source.to_string()),
            Cell::Ratio(r.indexed),
            Cell::Count(r.unknown),
        ]);
    }
    t
}

/// Off-diagonal cells as percentages, diagonal cells as `unique/selected`.
pub fn matrix_table(m: &OverlapMatrix) -> Table {
    let mut headers = vec!["Row contains column".to_owned()];
    headers.extend(m.sources.iter().map(|s| s.to_string()));
    let rows = m
        .sources
        .iter()
        .zip(&m.cells)
        .enumerate()
        .map(|(r, (source, cells))| {
            let mut row = vec![Cell::Text(source.to_string())];
            row.extend(cells.iter().enumerate().map(|(c, ratio)| {
                if r == c {
                    Cell::Fraction(*ratio)
                } else {
                    Cell::Ratio(*ratio)
                }
            }));
            row
        })
        .collect();
    Table { headers, rows }
}

pub fn comparison_table(rows: &[ComparisonRow]) -> Table {
    let mut t = Table::new(&[
        "Strategy",
        "Precision",
        "Recall",
        "F-measure",
        "Visited",
        "Selected",
    ]);
    for r in rows {
        let mut row = vec![Cell::Text(r.name.clone())];
        row.extend(metric_cells(&r.metrics));
        row.extend([Cell::Count(r.visited), Cell::Count(r.selected)]);
        t.rows.push(row);
    }
    t
}

/// Per-row view of a run trace, one line per record.
pub fn trace_table(trace: &[IterationRecord]) -> Table {
    let mut t = Table::new(&[
        "Iteration",
        "Phase",
        "Precision",
        "Recall",
        "F-measure",
        "New visited",
        "New selected",
    ]);
    for r in trace {
        let mut row = vec![
            Cell::Count(r.index as usize),
            Cell::Text(r.phase.as_str().to_owned()),
        ];
        row.extend(metric_cells(&r.metrics));
        row.extend([
            Cell::Count(r.new_visited.len()),
            Cell::Count(r.new_selected.len()),
        ]);
        t.rows.push(row);
    }
    t
}

fn render_csv(t: &Table) -> String {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::CRLF)
        .from_writer(Vec::new());
    w.write_record(&t.headers).expect("in-memory write");
    for row in &t.rows {
        w.write_record(row.iter().map(Cell::text))
            .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("cells are UTF-8")
}

fn markdown_escape(s: &str) -> String {
    s.replace('\\', "\\\\")
        .replace('|', "\\|")
        .replace('\n', " ")
}

fn render_markdown(t: &Table) -> String {
    let mut out = String::new();
    let line = |cells: Vec<String>| format!("| {} |\n", cells.join(" | "));
    out.push_str(&line(
        t.headers.iter().map(|h| markdown_escape(h)).collect(),
    ));
    out.push_str(&line(t.headers.iter().map(|_| "---".to_owned()).collect()));
    for row in &t.rows {
        out.push_str(&line(
            row.iter().map(|c| markdown_escape(&c.text())).collect(),
        ));
    }
    out
}

fn render_json(t: &Table) -> String {
    let rows: Vec<Value> = t
        .rows
        .iter()
        .map(|row| {
            let obj: Map<String, Value> = t
                .headers
                .iter()
                .cloned()
                .zip(row.iter().map(Cell::json))
                .collect();
            Value::Object(obj)
        })
        .collect();
    let mut s = serde_json::to_string_pretty(&json!({ "columns": t.headers, "rows": rows }))
        .expect("table serialization cannot fail");
    s.push('\n');
    s
}

pub fn render_table(table: &Table, format: RenderFormat) -> Result<String, ReportError> {
    match format {
        RenderFormat::Csv => Ok(render_csv(table)),
        RenderFormat::Markdown => Ok(render_markdown(table)),
        RenderFormat::Json => Ok(render_json(table)),
        RenderFormat::Dot => Err(ReportError::UnsupportedFormat {
            format,
            what: "a table",
        }),
    }
}
