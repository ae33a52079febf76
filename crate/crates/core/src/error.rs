use std::fmt;

use thiserror::Error;

/// A single problem found while validating a matching.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    SelfPair { person: usize },
    UnknownPerson { person: usize },
    /// Person appears in more than one pair.
    NotDisjoint { person: usize },
    /// One side of the pair does not list the other.
    NotAcceptable { a: usize, b: usize },
    SameGender { a: usize, b: usize },
}

impl Violation {
    /// People involved, first the one the violation is about.
    pub fn people(&self) -> [usize; 2] {
        match *self {
            Violation::SelfPair { person } | Violation::UnknownPerson { person } | Violation::NotDisjoint { person } => {
                [person, person]
            }
            Violation::NotAcceptable { a, b } | Violation::SameGender { a, b } => [a, b],
        }
    }

    /// Message with people shown through `name`.
    pub fn render(&self, name: impl Fn(usize) -> String) -> String {
        match *self {
            Violation::SelfPair { person } => format!("{} is paired with itself", name(person)),
            Violation::UnknownPerson { person } => format!("{} does not exist", name(person)),
            Violation::NotDisjoint { person } => format!("{} appears in more than one pair", name(person)),
            Violation::NotAcceptable { a, b } => {
                format!("pair ({}, {}) is not mutually acceptable", name(a), name(b))
            }
            Violation::SameGender { a, b } => format!("pair ({}, {}) has the same gender", name(a), name(b)),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(|i| format!("person #{i}")))
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid matching: {}", join(.0))]
    InvalidMatching(Vec<Violation>),
    /// Matching file that names real people but breaks a matching rule.
    #[error("line {line}: invalid matching: {message}")]
    InvalidMatchingFile { line: usize, message: String },
    #[error("persons #{0} and #{1} are not mutually acceptable")]
    NotAcceptable(usize, usize),
    #[error("malformed graph: {0}")]
    MalformedGraph(String),
    #[error("not a perfect matching: {0}")]
    NotPerfect(String),
    #[error("size {size} exceeds the enumeration cap of {cap}")]
    CapExceeded { size: usize, cap: usize },
    #[error("auxiliary graph is not bipartite")]
    NotBipartite,
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("arithmetic overflow while {0}")]
    Overflow(&'static str),
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn join(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

impl Error {
    /// Process exit code: 1 usage/parse, 2 validation, 3 internal consistency.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidMatching(_) | Error::InvalidMatchingFile { .. } | Error::NotAcceptable(..) | Error::NotPerfect(_) => 2,
            Error::Inconsistent(_) | Error::Overflow(_) => 3,
            _ => 1,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
