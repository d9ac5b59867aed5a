use thiserror::Error;

/// Errors surfaced by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("monoid table is {rows}x{cols}, expected a square table of size {size}")]
    TableShape { size: usize, rows: usize, cols: usize },
    #[error("monoid has {size} elements, above the validation cap of {cap}")]
    MonoidTooLarge { size: usize, cap: usize },
    #[error("table cell ({row}, {col}) holds {value}, outside 0..{size}")]
    TableEntry { row: usize, col: usize, value: usize, size: usize },
    #[error("identity law fails: {identity}*{x} or {x}*{identity} differs from {x}")]
    IdentityLaw { identity: usize, x: usize },
    #[error("associativity fails on ({x}, {y}, {z})")]
    Associativity { x: usize, y: usize, z: usize },
    #[error("element {0} is out of range")]
    ElementOutOfRange(usize),
    #[error("unknown symbol {0:?}")]
    UnknownSymbol(String),
    #[error("duplicate symbol {0:?}")]
    DuplicateSymbol(String),
    #[error("morphism has {symbols} symbols but {images} images")]
    MorphismArity { symbols: usize, images: usize },
    #[error("node {0} is not in the tree")]
    InvalidNode(usize),
    #[error("node {ancestor} is not an ancestor of {node}")]
    NotAncestor { ancestor: usize, node: usize },
    #[error("full-binary violated at node {0}")]
    NotFullBinary(usize),
    #[error("malformed tree: {0}")]
    MalformedTree(String),
    #[error("trees are labelled over different monoids")]
    MonoidMismatch,
    #[error("empty input: {0}")]
    Empty(&'static str),
    #[error("split covers {got} nodes, tree has {expected}")]
    SplitSize { expected: usize, got: usize },
    #[error("split value {value} at node {node} outside 1..={height}")]
    SplitValue { node: usize, value: u32, height: u32 },
    #[error("split has not been validated as forward Ramseyan")]
    SplitNotValidated,
    #[error("no forward Ramseyan split of height at most {0}")]
    BudgetExhausted(u32),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("graph: {0}")]
    Graph(String),
    #[error("label {0:?} is not in the label order")]
    UnknownLabel(String),
    #[error("deadline exceeded")]
    Deadline,
    #[error("marked tree is not {0}-bounded")]
    NotBounded(usize),
    #[error("malformed bough: {0}")]
    MalformedBough(String),
    #[error("sequence labelling is not injective: {0:?} is used twice")]
    NonInjectiveLabelling(String),
    #[error("r = {r} must exceed |V(G)| = {vertices} to extract a period")]
    TooFewCopies { r: usize, vertices: usize },
    #[error("no spanning path")]
    NoSpanningPath,
    #[error("transduction produced a non-path graph: {0}")]
    NotAPath(String),
    #[error("parse error in {what}: {message}")]
    Parse { what: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
