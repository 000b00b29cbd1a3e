use std::fmt;

/// Search budgets enforced by the solvers and oracles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Limit {
    /// Total strings in an exact-rules propositional game.
    ExactStrings,
    /// Total strings in a reduced propositional search.
    Strings,
    /// Width of the strings handed to a propositional solver.
    Width,
    /// Width of a truth-table oracle.
    OracleWidth,
    /// Choice functions enumerated for one supplementing move.
    ChoiceFunctions,
    /// Memoized positions of a first-order search.
    Positions,
    /// Members of one structure class inside a first-order search.
    ClassSize,
    /// Atomic formulas over the current variable slots.
    Atoms,
    /// Evaluation points of the first-order enumeration oracle.
    EvaluationPoints,
    /// Rank bound of the first-order enumeration oracle.
    EnumerationRank,
    /// Symbols, or the largest arity, in a vocabulary given to the enumeration oracle.
    OracleVocabulary,
    /// Elements of a model given to the enumeration oracle.
    OracleUniverse,
}

impl Limit {
    pub fn name(self) -> &'static str {
        match self {
            Limit::ExactStrings => "exact-mode strings",
            Limit::Strings => "strings",
            Limit::Width => "string width",
            Limit::OracleWidth => "oracle width",
            Limit::ChoiceFunctions => "choice functions per supplementing move",
            Limit::Positions => "memoized positions",
            Limit::ClassSize => "structures per class",
            Limit::Atoms => "atomic formulas",
            Limit::EvaluationPoints => "evaluation points",
            Limit::EnumerationRank => "enumeration rank",
            Limit::OracleVocabulary => "oracle vocabulary (symbols and arity)",
            Limit::OracleUniverse => "oracle universe size",
        }
    }
}

impl fmt::Display for Limit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("resource cap exceeded: {limit} needs {needed}, cap is {cap}")]
    Resource { limit: Limit, needed: u128, cap: u128 },
    #[error("contract violation: {0}")]
    Contract(String),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }

    pub(crate) fn resource(limit: Limit, needed: impl Into<u128>, cap: impl Into<u128>) -> Self {
        Error::Resource { limit, needed: needed.into(), cap: cap.into() }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
