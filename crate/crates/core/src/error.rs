use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ground set size {0} is outside the supported range 2..=6")]
    GroundSize(usize),
    #[error("ground set mismatch: m = {0} vs m = {1}")]
    GroundMismatch(usize, usize),
    #[error("invalid couple: {0}")]
    InvalidCouple(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("not a permutation: {0}")]
    InvalidPermutation(String),
    #[error("unknown schema `{0}`")]
    UnknownSchema(String),
    #[error("schema {schema} is only defined for m = 4 (got m = {m})")]
    SchemaGround { schema: String, m: usize },
    #[error("digraph contains a directed cycle")]
    CyclicDigraph,
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not positive definite")]
    NotPositiveDefinite,
    #[error("diagonal entry {index} = {value} is not the square of a rational; CI relations are scale invariant, use the covariance matrix directly")]
    NonSquareDiagonal { index: usize, value: String },
    #[error("cannot solve couple {couple}: conditioning minor vanishes")]
    DegenerateSolve { couple: String },
    #[error("relation {relation} is not complete; its completion is {completion}")]
    NotComplete { relation: String, completion: String },
    #[error("point is not on the variety: {0}")]
    NotOnVariety(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("polynomial does not vanish at the base point")]
    NonVanishing,
    #[error("exponent overflow: degree in a single variable exceeds {0}")]
    DegreeOverflow(u32),
    #[error("relation id {0} is not covered by this check")]
    UnsupportedRelation(usize),
    #[error("{file}:{line}: {msg}")]
    Data {
        file: String,
        line: usize,
        msg: String,
    },
    #[error("i/o error on {path}: {msg}")]
    Io { path: String, msg: String },
}

impl Error {
    pub(crate) fn data(file: impl Into<String>, line: usize, msg: impl Into<String>) -> Self {
        Error::Data {
            file: file.into(),
            line,
            msg: msg.into(),
        }
    }
}
