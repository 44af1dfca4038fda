use std::fmt;

use crate::format::SourceSpan;
use crate::model::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("syntax error at {span}: {message}")]
    Syntax { message: String, span: SourceSpan },

    #[error("unknown event `{name}` at {span}")]
    UnknownEvent { name: String, span: SourceSpan },

    #[error("invalid document: {}", Violations(.0))]
    Invalid(Vec<Violation>),

    #[error("{op} does not support documents using {found}")]
    UnsupportedClass { op: &'static str, found: String },

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("order mode mismatch: {0}")]
    OrderMode(String),

    #[error("{count} configurations exceed the cap of {cap}")]
    TooManyConfigurations { count: u128, cap: u128 },

    #[error("more than {0} candidate matches")]
    TooManyMatches(usize),

    #[error("incomplete configuration: {0}")]
    IncompleteConfiguration(String),

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("invalid candidate match: {0}")]
    InvalidMatch(String),

    #[error("fresh name `{0}` collides with an existing event")]
    NameCollision(String),
}

struct Violations<'a>(&'a [Violation]);

impl fmt::Display for Violations<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}
