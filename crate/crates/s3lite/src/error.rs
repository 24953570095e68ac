//! Error types shared across the lexer, parser, and evaluator.

use std::fmt;

/// A 1-based source position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Pos {
    pub line: u32,
    pub col: u32,
}

impl Pos {
    pub fn new(line: u32, col: u32) -> Pos {
        Pos { line, col }
    }
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("{message} at {pos}")]
pub struct LexError {
    pub message: String,
    pub pos: Pos,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("{message} at {pos}")]
pub struct ParseError {
    pub message: String,
    pub pos: Pos,
}

/// A runtime error, optionally carrying the call context it surfaced in
/// (rendered like `rss.rpart(x)`).
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub struct RuntimeError {
    pub message: String,
    pub context: Option<String>,
}

impl RuntimeError {
    pub fn new(message: impl Into<String>) -> RuntimeError {
        RuntimeError {
            message: message.into(),
            context: None,
        }
    }

    /// Full diagnostic line, e.g. `Error in rss.rpart(x): ...`.
    pub fn render(&self) -> String {
        match &self.context {
            Some(ctx) => format!("Error in {}: {}", ctx, self.message),
            None => format!("Error: {}", self.message),
        }
    }
}

impl fmt::Display for RuntimeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

/// Any failure while running a chunk of source text.
#[derive(Debug, Clone, PartialEq)]
pub enum SourceError {
    Lex(LexError),
    Parse(ParseError),
    Runtime(RuntimeError),
}

impl fmt::Display for SourceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SourceError::Lex(e) => write!(f, "{e}"),
            SourceError::Parse(e) => write!(f, "{e}"),
            SourceError::Runtime(e) => f.write_str(&e.render()),
        }
    }
}

impl From<LexError> for SourceError {
    fn from(e: LexError) -> Self {
        SourceError::Lex(e)
    }
}

impl From<ParseError> for SourceError {
    fn from(e: ParseError) -> Self {
        SourceError::Parse(e)
    }
}

impl From<RuntimeError> for SourceError {
    fn from(e: RuntimeError) -> Self {
        SourceError::Runtime(e)
    }
}
