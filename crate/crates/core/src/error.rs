use thiserror::Error;

/// Errors raised by graph, group, cohomology and paradox operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate {kind} id `{id}`")]
    DuplicateId { kind: &'static str, id: String },
    #[error("edge `{edge}` references undeclared vertex `{vertex}`")]
    UndeclaredEndpoint { edge: String, vertex: String },
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("graph is not connected")]
    Disconnected,
    #[error("graph is not a tree")]
    NotATree,
    #[error("{what} exceeds the brute-force bound ({size} > {limit})")]
    TooLarge { what: &'static str, size: u128, limit: u128 },
    #[error("element does not belong to the group: {0}")]
    DescriptorMismatch(String),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("invalid homomorphism: {0}")]
    InvalidHomomorphism(String),
    #[error("integer overflow")]
    Overflow,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("non-abelian stalk: {0}")]
    NonAbelian(String),
    #[error("invalid sheaf: {0}")]
    InvalidSheaf(String),
    #[error("cochain does not match the sheaf: {0}")]
    StalkMismatch(String),
    #[error("walk is not valid in this graph: {0}")]
    WalkMismatch(String),
    #[error("invalid graph map: {0}")]
    InvalidGraphMap(String),
    #[error("boundary set mismatch: {0}")]
    BoundaryMismatch(String),
    #[error("cohomology class is trivial; a paradox needs a non-trivial class")]
    TrivialClass,
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// The question is well posed but no implemented algorithm decides it.
    #[error("undecided: {0}")]
    Undecided(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
