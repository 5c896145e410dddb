use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unsupported root system type `{0}`")]
    UnsupportedType(String),

    #[error("lattice is not intermediate between the root and weight lattices: {0}")]
    BadLattice(String),

    #[error("vector {0} is not a root of this datum")]
    NotARoot(String),

    #[error("{0} is not an element of the character lattice")]
    NotInLattice(String),

    #[error("rank {rank} exceeds the enumeration budget (max {max})")]
    RankTooLarge { rank: usize, max: usize },

    #[error("elements belong to different root data")]
    MixedRootData,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("non-regular point: lies on the hyperplane <x, {root}^v> = {level}")]
    NonRegularPoint { root: String, level: String },

    #[error("point is not in the closure of alcove {0}")]
    NotInClosure(String),

    #[error("enumeration budget exceeded: {0}")]
    Budget(String),

    #[error("vertex set is not Bruhat-closed: {0} is missing")]
    NotBruhatClosed(String),

    #[error("section tuple has {got} entries but the graph has {expected} vertices")]
    IndexMismatch { expected: usize, got: usize },

    #[error("stabilizer element {0} is not a vertex of the moment graph")]
    StabilizerNotInGraph(String),

    #[error("points differ under the two elements: {0}")]
    PreconditionViolated(String),

    #[error("module is not free and carries no resolution")]
    NotFlat,

    #[error("invalid equivariant structure: {0}")]
    InvalidModule(String),

    #[error("module does not restrict to the stabilizer: {0}")]
    Restriction(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
