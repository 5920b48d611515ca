use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed poset input: {0}")]
    MalformedInput(String),
    #[error("faces `{0}` and `{1}` are not comparable")]
    NotComparable(String, String),
    #[error("adjacency letter {0} out of range 0..{1}")]
    BadLetter(usize, usize),
    #[error("no connecting word exists under the forbidden rank set")]
    NoPath,
    #[error("rank {0} out of range")]
    BadRank(i32),
    #[error("generator is not an element of the parent group")]
    NotInParent,
    #[error("no automorphism maps flag {0} to flag {1}")]
    MissingAutomorphism(usize, usize),
    #[error("generator change formulas disagree with direct extraction: {0}")]
    FormulaMismatch(String),
    #[error("operation requires a two-orbit polytope, input has {0} flag orbit(s)")]
    NotTwoOrbit(usize),
    #[error("faces `{0}` and `{1}` are incomparable, not a chain")]
    NotAChain(String, String),
    #[error("no incidence criterion covers ranks {i} and {j} with the given families")]
    CaseUndefined { i: i32, j: i32 },
    #[error("reconstructed order is inconsistent: {0}")]
    ReconstructionMismatch(String),
    #[error("bad constructor parameter: {0}")]
    BadParameter(String),
    #[error("degenerate torus quotient: {0}")]
    DegenerateQuotient(String),
    #[error("line {line}: {msg}")]
    SyntaxError { line: usize, msg: String },
    #[error("line {line}: unknown face id `{id}`")]
    UnknownFaceId { line: usize, id: String },
    #[error("line {line}: rank mismatch: {msg}")]
    RankMismatch { line: usize, msg: String },
    #[error("group element cap exceeded ({0} elements); raise POLYTWO_GROUP_CAP to override")]
    GroupCapExceeded(usize),
    #[error("input fails the polytope axioms: {0}")]
    NotAPolytope(String),
    #[error("unknown catalog entry `{0}`")]
    UnknownCatalogEntry(String),
    #[error("cannot resolve source `{0}`: {1}")]
    BadSource(String, String),
}

pub type Result<T> = std::result::Result<T, Error>;
