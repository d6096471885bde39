use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the library reports. Variants carry the offending
/// identifiers so callers can print actionable diagnostics.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("entry {value} is not reduced modulo {prime}")]
    EntryOutOfRange { value: u32, prime: u32 },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrices over different fields: F_{left} vs F_{right}")]
    PrimeMismatch { left: u32, right: u32 },

    #[error("malformed document: {0}")]
    Schema(String),
    #[error("duplicate id `{0}`")]
    DuplicateId(String),
    #[error("unknown node `{0}`")]
    UnknownNode(String),
    #[error("edge `{edge}` carries a {found_rows}x{found_cols} matrix but needs {rows}x{cols}")]
    EdgeDimensionMismatch {
        edge: String,
        rows: usize,
        cols: usize,
        found_rows: usize,
        found_cols: usize,
    },
    #[error("diagram has a directed cycle through node `{node}`")]
    Cycle { node: String },
    #[error("diagram is disconnected: node `{node}` is unreachable from `{root}`")]
    Disconnected { node: String, root: String },
    #[error("diagram does not commute: {0} violation(s)")]
    NonCommutative(usize),
    #[error("nodes `{a}` and `{b}` reach each other but the composites are not isomorphisms")]
    MutualReachabilityWithoutIso { a: String, b: String },
    #[error("`{x}` and `{y}` have no common target")]
    NoCommonTarget { x: String, y: String },
    #[error("`{x}` and `{y}` have no common source")]
    NoCommonSource { x: String, y: String },

    #[error("order is not a lattice: {0}")]
    NotALattice(String),
    #[error("completion exceeds the element budget of {budget}")]
    ElementBudgetExceeded { budget: usize },
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("lattice is not distributive: witness ({0}, {1}, {2})")]
    NonDistributive(String, String, String),

    #[error("variable `{0}` has no value")]
    UnassignedVariable(String),
    #[error("formula uses {vars} variables, budget is {budget}")]
    VarBudgetExceeded { vars: usize, budget: usize },
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("simplex {simplex:?} is missing its face {face:?} (or the face appears later)")]
    FaceClosure { simplex: Vec<usize>, face: Vec<usize> },
    #[error("simplex {0:?} listed twice")]
    DuplicateSimplex(Vec<usize>),

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("zig-zag module is empty")]
    EmptyModule,
    #[error("zig-zag module is not normalized: {0}")]
    NotNormalized(String),
    #[error("input is not a chain: {0}")]
    NotAChain(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}
