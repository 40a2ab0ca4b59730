use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("not a group: {reason}")]
    NotAGroup { reason: String, witness: Vec<usize> },

    #[error("group order exceeds cap {cap}")]
    TooLarge { cap: usize },

    #[error("subgroup is not normal: conjugating by {conjugator} leaves the subgroup")]
    NotNormal { conjugator: usize },

    #[error("invalid subgroup: {0}")]
    InvalidSubgroup(String),

    #[error("composition of differentials is nonzero at column {column}")]
    NotAComplex { column: usize },

    #[error("map is not chain compatible: {reason}")]
    NotChainCompatible { reason: String, witness: Vec<crate::linalg::Int> },

    #[error("degree {degree} exceeds the degree cap {cap}")]
    DegreeCapExceeded { degree: i32, cap: u32 },

    #[error("cochain rank {rank} exceeds the rank cap {cap}")]
    RankOverflow { rank: u128, cap: usize },

    #[error("{operation} is not defined in degree {degree}")]
    DegreeOutOfRange { operation: &'static str, degree: i32 },

    #[error("unsupported module: {0}")]
    UnsupportedModule(String),

    #[error("H-fixed sequence is not exact: {reason}")]
    FixedSequenceNotExact { reason: String, witness: Vec<crate::linalg::Int> },

    #[error("group does not carry a direct product structure")]
    NotAProduct,

    #[error("unknown group name `{0}`")]
    UnknownGroup(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
