//! Source positions and positioned diagnostics.

use std::fmt;
use std::sync::Arc;

/// 1-based line and column (columns count characters).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SourceSpan {
    pub file: Arc<str>,
    pub start: Pos,
    /// One past the last character.
    pub end: Pos,
}

impl SourceSpan {
    pub fn to(&self, other: &SourceSpan) -> SourceSpan {
        SourceSpan { file: self.file.clone(), start: self.start.min(other.start), end: self.end.max(other.end) }
    }

    pub fn contains(&self, inner: &SourceSpan) -> bool {
        self.file == inner.file && self.start <= inner.start && inner.end <= self.end
    }
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.file, self.start.line, self.start.col)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub file: Arc<str>,
    pub span: Option<SourceSpan>,
    pub message: String,
}

impl Diagnostic {
    pub fn at(span: &SourceSpan, message: impl Into<String>) -> Self {
        Diagnostic { file: span.file.clone(), span: Some(span.clone()), message: message.into() }
    }

    pub fn in_file(file: &str, message: impl Into<String>) -> Self {
        Diagnostic { file: Arc::from(file), span: None, message: message.into() }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.span {
            Some(s) => write!(f, "{s}: {}", self.message),
            None => write!(f, "{}: {}", self.file, self.message),
        }
    }
}

impl std::error::Error for Diagnostic {}
