use thiserror::Error;

/// A syntax error with the byte offset where it was detected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message} at position {position}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(position: usize, message: impl Into<String>) -> Self {
        ParseError {
            position,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("substitution point must vanish at 0")]
    NonVanishingSubstitution,
    #[error("taylor composition needs v(s - t) >= 2, found {0}")]
    NotTangentToIdentity(u32),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("series is not parabolic: {0}")]
    NotParabolic(String),
    #[error("residues live in different residue groups (rho {0} vs {1})")]
    ResidueMismatch(u32, u32),
    #[error("root index must be positive")]
    ZeroRoot,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("unresolved identifier `{0}`")]
    Unresolved(String),
    #[error("non-integer exponent {0} on a group without rational powers")]
    NonIntegerExponent(String),
    #[error("identifier `{0}` is reserved and cannot be bound")]
    Reserved(String),
    #[error("identifier `{0}` is already bound")]
    AlreadyBound(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("singular term: alpha(t) = 0")]
    Singular,
    #[error("term must satisfy t(1) = 1")]
    NotNormalized,
    #[error("term has a non-integer exponent")]
    NonIntegerTerm,
    #[error("solver exceeded its iteration bound of {0}")]
    IterationBound(usize),
    #[error("solver trace is not pseudo-Cauchy: valuation {1} after {0}")]
    NotPseudoCauchy(u32, u32),
    #[error("argument must not be the identity")]
    TrivialArgument,
    #[error(transparent)]
    Eval(#[from] EvalError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NilError {
    #[error("elements belong to different algebras")]
    AlgebraMismatch,
    #[error("residue of the identity is undefined")]
    ZeroResidue,
    #[error("unsupported free nilpotent algebra: {0} generators, class {1} (need 1..=4 generators, class 1..=6)")]
    Unsupported(usize, usize),
    #[error("expected {expected} coordinates, got {got}")]
    Dimension { expected: usize, got: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LawError {
    #[error("law {0} not applicable to model {1}")]
    NotApplicable(String, String),
    #[error("unknown law `{0}`")]
    UnknownLaw(String),
    #[error("unknown model `{0}`")]
    UnknownModel(String),
}

/// Umbrella error for front ends.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Nil(#[from] NilError),
    #[error(transparent)]
    Law(#[from] LawError),
}

impl Error {
    /// Internal assertion failures (as opposed to bad user input).
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::Solve(SolveError::IterationBound(_) | SolveError::NotPseudoCauchy(..))
        )
    }
}
