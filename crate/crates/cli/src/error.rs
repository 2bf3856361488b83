use std::fmt;

use mobius_core::{Error as CoreError, ParseError};

/// Process exit statuses.
pub mod exit {
    pub const OK: i32 = 0;
    pub const USAGE: i32 = 1;
    pub const PARSE: i32 = 2;
    pub const CAPACITY: i32 = 3;
    pub const DIVERGENCE: i32 = 4;
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    /// Keeps the source so the diagnostic can point into it.
    Parse { error: ParseError, source: String },
    Capacity(String),
    Divergence(String),
    Io(std::io::Error),
    Core(CoreError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => exit::USAGE,
            CliError::Parse { .. } => exit::PARSE,
            CliError::Capacity(_) => exit::CAPACITY,
            CliError::Divergence(_) => exit::DIVERGENCE,
            CliError::Core(e) => match e {
                CoreError::Capacity { .. } => exit::CAPACITY,
                CoreError::Parse(_) => exit::PARSE,
                _ => exit::USAGE,
            },
        }
    }

    pub fn parse(error: ParseError, source: &str) -> Self {
        CliError::Parse {
            error,
            source: source.to_owned(),
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Capacity(m) | CliError::Divergence(m) => f.write_str(m),
            CliError::Io(e) => write!(f, "{e}"),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Parse { error, source } => {
                write!(f, "parse error: {error}")?;
                if let Some(snippet) = caret(source, error.span.start, error.span.end) {
                    write!(f, "\n{snippet}")?;
                }
                Ok(())
            }
        }
    }
}

/// The offending line with a marker under the span.
fn caret(source: &str, start: usize, end: usize) -> Option<String> {
    if start > source.len() || !source.is_char_boundary(start) {
        return None;
    }
    let line_start = source[..start].rfind('\n').map_or(0, |i| i + 1);
    let line_end = source[start..].find('\n').map_or(source.len(), |i| start + i);
    let line = &source[line_start..line_end];
    let lineno = source[..line_start].matches('\n').count() + 1;
    let pad = source[line_start..start].chars().count();
    let width = source
        .get(start..end.min(line_end))
        .map_or(1, |s| s.chars().count().max(1));
    let gutter = format!("{lineno} | ");
    Some(format!(
        "{gutter}{line}\n{}{}",
        " ".repeat(gutter.len() + pad),
        "^".repeat(width)
    ))
}
