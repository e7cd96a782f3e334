//! Crate-wide error type.

/// Everything that can go wrong while parsing instance files, constructing
/// structures, or running the bounded searches.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("malformed header: {0}")]
    MalformedHeader(String),
    #[error("line {line}: malformed line: {text:?}")]
    MalformedLine { line: usize, text: String },
    #[error("vertex {v} out of range (n = {n})")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate arc between {0} and {1}")]
    DuplicateArc(usize, usize),
    #[error("missing arc between {0} and {1}")]
    MissingArc(usize, usize),
    #[error("duplicate edge between {0} and {1}")]
    DuplicateEdge(usize, usize),
    #[error("edge endpoints {0} {1} must be ascending")]
    EdgeOrder(usize, usize),
    #[error("colour {colour} out of range (k = {k})")]
    ColourOutOfRange { colour: u64, k: usize },
    #[error("the two vertex sets overlap at {0}")]
    OverlappingSets(usize),
    #[error("no duo of size at most {cap} exists")]
    NotFoundWithinCap { cap: usize },
    #[error("budget exceeded: {remaining} states would remain to enumerate")]
    BudgetExceeded { remaining: u128 },
    #[error("colouring assigns {got} edges, expected {expected}")]
    ColouringIncomplete { got: usize, expected: usize },
    #[error("canonical enumeration supports n <= {max}, got n = {n}")]
    CanonicalTooLarge { n: usize, max: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
