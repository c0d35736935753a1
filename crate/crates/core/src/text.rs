//! Shared helpers for the line-oriented text formats.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    /// 1-based line number; 0 when the error is not tied to a line.
    pub line: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            message: message.into(),
        }
    }
}

/// Non-blank lines with `#` comments removed, paired with their 1-based line
/// numbers.
pub fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        let line = line.trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

pub fn parse_usize(token: &str, line: usize, what: &str) -> Result<usize, ParseError> {
    token
        .parse::<usize>()
        .map_err(|_| ParseError::new(line, format!("invalid {what} `{token}`")))
}

/// Largest vertex count, ground size, dimension or point count accepted in
/// a file header.
pub const MAX_DECLARED_SIZE: usize = 1 << 16;

/// [`parse_usize`] for header sizes, capped at [`MAX_DECLARED_SIZE`].
pub fn parse_size(token: &str, line: usize, what: &str) -> Result<usize, ParseError> {
    let value = parse_usize(token, line, what)?;
    if value > MAX_DECLARED_SIZE {
        return Err(ParseError::new(
            line,
            format!("{what} {value} exceeds the limit of {MAX_DECLARED_SIZE}"),
        ));
    }
    Ok(value)
}

/// Parses every whitespace-separated token of `rest` as an index.
pub fn parse_ids(rest: &[&str], line: usize, what: &str) -> Result<Vec<usize>, ParseError> {
    rest.iter().map(|t| parse_usize(t, line, what)).collect()
}

/// Splits a line into its keyword and the remaining tokens.
pub fn keyword(line: &str) -> (&str, Vec<&str>) {
    let mut tokens = line.split_whitespace();
    let head = tokens.next().unwrap_or("");
    (head, tokens.collect())
}
