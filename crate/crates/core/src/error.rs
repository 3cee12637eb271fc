use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("element enumeration exceeded the bound of {bound} elements")]
    BoundExceeded { bound: usize },

    #[error("subgroup is not normal: {witness}")]
    NotNormal { witness: String },

    #[error("subgroup is not central: {witness}")]
    NotCentral { witness: String },

    #[error("generator images do not define a homomorphism: relator {witness} is not sent to the identity")]
    NotAHomomorphism { witness: String },

    #[error("coset enumeration exceeded its limits after defining {cosets} cosets")]
    LimitExceeded { cosets: usize },

    #[error("coset table is incomplete")]
    IncompleteTable,

    #[error("invalid action: {0}")]
    InvalidAction(String),

    #[error("mutual actions are not compatible: {0}")]
    Incompatible(String),

    #[error("{0}")]
    InvalidInput(String),
}

pub type Result<T, E = GroupError> = std::result::Result<T, E>;
