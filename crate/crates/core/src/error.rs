use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("image {0} appears more than once")]
    NotBijective(usize),
    #[error("point {0} repeated inside a cycle")]
    RepeatedPoint(usize),
    #[error("malformed cycle notation: {0:?}")]
    Syntax(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("group too large: closure exceeds {cap} elements")]
    GroupTooLarge { cap: usize },
    #[error("group does not act transitively on the colours")]
    NotTransitive,
    #[error("group is not Abelian")]
    NotAbelian,
    #[error("permutation {0} is not in the commutator subgroup")]
    NotInCommutator(String),
    #[error("permutation {0} is not an element of the group")]
    NotInGroup(String),
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("colour {colour} outside 1..={m}")]
    ColourOutOfRange { colour: usize, m: usize },
    #[error("vertex {vertex} outside 0..{n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("no edge between {0} and {1}")]
    NoSuchEdge(usize, usize),
    #[error("underlying graphs differ")]
    UnderlyingMismatch,
    #[error("graph is not a cycle")]
    NotACycle,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("switch class exceeds cap of {cap} colourings")]
    CapExceeded { cap: usize },
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    /// Wraps any error raised while interpreting the given (1-based) line.
    pub(crate) fn at_line(self, line: usize) -> Self {
        match self {
            Error::Parse { line: 0, message } => Error::Parse { line, message },
            Error::Parse { .. } => self,
            other => Error::parse(line, other.to_string()),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
