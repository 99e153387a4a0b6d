//! Parser for the BibTeX subset used to carry reference lists.
//!
//! Grammar:
//!
//! ```text
//! file    = { junk | entry | comment | preamble }
//! entry   = "@" type "{" key [ "," fields ] "}"
//! fields  = field { "," field } [ "," ]
//! field   = name "=" ( braced | quoted | number )
//! ```
//!
//! Text outside entries is ignored. `@comment` and `@preamble` blocks are
//! skipped. `@string` definitions, bare macro references and `#`
//! concatenation are rejected.

use std::fmt;

use indexmap::IndexMap;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BibEntry {
    pub entry_type: String,
    pub cite_key: String,
    /// Field name (lowercased) to raw value, in file order.
    pub fields: IndexMap<String, String>,
}

impl BibEntry {
    pub fn get(&self, name: &str) -> Option<&str> {
        self.fields.get(name).map(String::as_str)
    }
}

/// 1-based line and column (in characters).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Position {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BibError {
    #[error("{at}: {message}")]
    Parse { at: Position, message: String },
    #[error("{at}: unbalanced braces")]
    UnbalancedBraces { at: Position },
    #[error("{at}: unsupported macro `{name}`")]
    UnsupportedMacro { at: Position, name: String },
}

impl BibError {
    pub fn position(&self) -> Position {
        match self {
            BibError::Parse { at, .. }
            | BibError::UnbalancedBraces { at }
            | BibError::UnsupportedMacro { at, .. } => *at,
        }
    }
}

/// Parses raw bytes; invalid UTF-8 is reported at the offending position.
pub fn parse_bibtex_bytes(bytes: &[u8]) -> Result<Vec<BibEntry>, BibError> {
    match std::str::from_utf8(bytes) {
        Ok(text) => parse_bibtex(text),
        Err(e) => {
            let valid = std::str::from_utf8(&bytes[..e.valid_up_to()]).unwrap_or_default();
            let mut cursor = Cursor::new(valid);
            while cursor.bump().is_some() {}
            Err(BibError::Parse {
                at: cursor.position(),
                message: "invalid UTF-8".into(),
            })
        }
    }
}

pub fn parse_bibtex(text: &str) -> Result<Vec<BibEntry>, BibError> {
    let mut cursor = Cursor::new(text);
    let mut entries = Vec::new();
    while let Some(c) = cursor.peek() {
        if c != '@' {
            cursor.bump();
            continue;
        }
        let at = cursor.position();
        cursor.bump();
        cursor.skip_ws();
        let kind = cursor.ident();
        if kind.is_empty() {
            return Err(cursor.error("expected entry type after `@`"));
        }
        match kind.to_ascii_lowercase().as_str() {
            "comment" => skip_comment(&mut cursor)?,
            "preamble" => {
                cursor.skip_ws();
                cursor.expect('{')?;
                skip_balanced(&mut cursor, at)?;
            }
            "string" => {
                return Err(BibError::UnsupportedMacro {
                    at,
                    name: "@string".into(),
                })
            }
            ty => entries.push(parse_entry(&mut cursor, ty.to_owned(), at)?),
        }
    }
    Ok(entries)
}

fn skip_comment(cursor: &mut Cursor<'_>) -> Result<(), BibError> {
    cursor.skip_ws();
    if cursor.peek() == Some('{') {
        let at = cursor.position();
        cursor.bump();
        skip_balanced(cursor, at)
    } else {
        while let Some(c) = cursor.bump() {
            if c == '\n' {
                break;
            }
        }
        Ok(())
    }
}

/// Consumes up to and including the brace closing an already-consumed `{`.
fn skip_balanced(cursor: &mut Cursor<'_>, open: Position) -> Result<(), BibError> {
    let mut depth = 1usize;
    while let Some(c) = cursor.bump() {
        match c {
            '{' => depth += 1,
            '}' => {
                depth -= 1;
                if depth == 0 {
                    return Ok(());
                }
            }
            _ => {}
        }
    }
    Err(BibError::UnbalancedBraces { at: open })
}

fn parse_entry(
    cursor: &mut Cursor<'_>,
    entry_type: String,
    at: Position,
) -> Result<BibEntry, BibError> {
    cursor.skip_ws();
    cursor.expect('{')?;
    cursor.skip_ws();
    let key_at = cursor.position();
    let cite_key = cursor
        .take_while(|c| !c.is_whitespace() && !matches!(c, ',' | '{' | '}' | '=' | '"' | '@'));
    if cite_key.is_empty() {
        return Err(BibError::Parse {
            at: key_at,
            message: "expected citation key".into(),
        });
    }
    let mut fields = IndexMap::new();
    cursor.skip_ws();
    loop {
        match cursor.peek() {
            Some('}') => {
                cursor.bump();
                break;
            }
            Some(',') => {
                cursor.bump();
                cursor.skip_ws();
                if cursor.peek() == Some('}') {
                    cursor.bump();
                    break;
                }
                let name_at = cursor.position();
                let (name, value) = parse_field(cursor)?;
                if fields.insert(name.clone(), value).is_some() {
                    return Err(BibError::Parse {
                        at: name_at,
                        message: format!("duplicate field `{name}`"),
                    });
                }
                cursor.skip_ws();
            }
            Some(_) => return Err(cursor.error("expected `,` or `}`")),
            None => return Err(BibError::UnbalancedBraces { at }),
        }
    }
    Ok(BibEntry {
        entry_type,
        cite_key: cite_key.to_owned(),
        fields,
    })
}

fn parse_field(cursor: &mut Cursor<'_>) -> Result<(String, String), BibError> {
    let name = cursor.ident();
    if name.is_empty() {
        return Err(cursor.error("expected field name"));
    }
    let name = name.to_ascii_lowercase();
    cursor.skip_ws();
    cursor.expect('=')?;
    cursor.skip_ws();
    let value_at = cursor.position();
    let value = match cursor.peek() {
        Some('{') => {
            cursor.bump();
            braced_value(cursor, value_at)?
        }
        Some('"') => {
            cursor.bump();
            quoted_value(cursor, value_at)?
        }
        Some(c) if c.is_ascii_digit() => cursor.take_while(|c| c.is_ascii_digit()).to_owned(),
        Some(c) if is_ident_char(c) => {
            let name = cursor.ident().to_owned();
            return Err(BibError::UnsupportedMacro { at: value_at, name });
        }
        Some(_) => return Err(cursor.error("expected field value")),
        None => return Err(cursor.error("unexpected end of input")),
    };
    cursor.skip_ws();
    if cursor.peek() == Some('#') {
        return Err(cursor.error("string concatenation is not supported"));
    }
    Ok((name, value))
}

fn braced_value(cursor: &mut Cursor<'_>, open: Position) -> Result<String, BibError> {
    let start = cursor.offset;
    let mut depth = 1usize;
    while let Some(c) = cursor.bump() {
        match c {
            '{' => depth += 1,
            '}' => {
                depth -= 1;
                if depth == 0 {
                    return Ok(cursor.text[start..cursor.offset - 1].to_owned());
                }
            }
            _ => {}
        }
    }
    Err(BibError::UnbalancedBraces { at: open })
}

fn quoted_value(cursor: &mut Cursor<'_>, open: Position) -> Result<String, BibError> {
    let start = cursor.offset;
    let mut depth = 0usize;
    while let Some(c) = cursor.bump() {
        match c {
            '{' => depth += 1,
            '}' => {
                if depth == 0 {
                    return Err(BibError::UnbalancedBraces { at: open });
                }
                depth -= 1;
            }
            '"' if depth == 0 => return Ok(cursor.text[start..cursor.offset - 1].to_owned()),
            _ => {}
        }
    }
    if depth > 0 {
        Err(BibError::UnbalancedBraces { at: open })
    } else {
        Err(BibError::Parse {
            at: open,
            message: "unterminated quoted value".into(),
        })
    }
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '_' | '-' | ':' | '.' | '+' | '/')
}

struct Cursor<'a> {
    text: &'a str,
    offset: usize,
    line: usize,
    column: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor {
            text,
            offset: 0,
            line: 1,
            column: 1,
        }
    }

    fn position(&self) -> Position {
        Position {
            line: self.line,
            column: self.column,
        }
    }

    fn peek(&self) -> Option<char> {
        self.text[self.offset..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.offset += c.len_utf8();
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn take_while(&mut self, pred: impl Fn(char) -> bool) -> &'a str {
        let start = self.offset;
        while self.peek().is_some_and(&pred) {
            self.bump();
        }
        &self.text[start..self.offset]
    }

    fn ident(&mut self) -> &'a str {
        self.take_while(is_ident_char)
    }

    fn skip_ws(&mut self) {
        self.take_while(char::is_whitespace);
    }

    fn expect(&mut self, want: char) -> Result<(), BibError> {
        if self.peek() == Some(want) {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&format!("expected `{want}`")))
        }
    }

    fn error(&self, message: &str) -> BibError {
        BibError::Parse {
            at: self.position(),
            message: message.to_owned(),
        }
    }
}
