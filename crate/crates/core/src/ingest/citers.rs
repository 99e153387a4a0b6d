use thiserror::Error;

pub const CITER_HEADER: [&str; 2] = ["citing_id", "cited_id"];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct CsvError {
    pub line: u64,
    pub message: String,
}

/// Parses a citer file: mandatory `citing_id,cited_id` header, then one
/// `(citing, cited)` edge per row, RFC-4180 quoting.
pub fn parse_citer_csv(text: &str) -> Result<Vec<(String, String)>, CsvError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(false)
        .from_reader(text.as_bytes());
    let err = |e: csv::Error| CsvError {
        line: e.position().map_or(1, |p| p.line()),
        message: e.to_string(),
    };
    let header = reader.headers().map_err(err)?;
    if header.iter().ne(CITER_HEADER) {
        return Err(CsvError {
            line: 1,
            message: format!("expected header `{}`", CITER_HEADER.join(",")),
        });
    }
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(err)?;
        let line = record.position().map_or(0, |p| p.line());
        let (citing, cited) = (&record[0], &record[1]);
        if citing.is_empty() || cited.is_empty() {
            return Err(CsvError {
                line,
                message: "empty id".into(),
            });
        }
        rows.push((citing.to_owned(), cited.to_owned()));
    }
    Ok(rows)
}
