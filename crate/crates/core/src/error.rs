use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("extension degree must be at least 1, got {0}")]
    BadExtensionDegree(u32),
    #[error("GF({p}^{m}) exceeds the supported field order")]
    FieldTooLarge { p: u32, m: u32 },
    #[error("modulus {0:?} is not monic irreducible")]
    BadModulus(Vec<u32>),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("objects live over different fields")]
    FieldMismatch,
    #[error("objects live over different groups")]
    GroupMismatch,
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("group order exceeds cap {cap}")]
    GroupTooLarge { cap: usize },
    #[error("module dimension {dim} exceeds cap {cap}")]
    ModuleTooLarge { dim: usize, cap: usize },
    #[error("action matrices violate the group relations: {0}")]
    BadRelations(String),
    #[error("subgroup is not contained in the ambient group")]
    NotSubgroup,
    #[error("subgroup is not normal in the ambient group")]
    NotNormal,
    #[error("element is outside the normal subgroup")]
    NotInSubgroup,
    #[error("field is not a splitting field: {0}")]
    NotSplitting(String),
    #[error("decomposition did not converge after {0} attempts")]
    DecompositionFailed(usize),
    #[error("tau cross-check failed: syzygy route gives dim {omega}, Nakayama route gives dim {nakayama}")]
    TauMismatch { omega: usize, nakayama: usize },
    #[error("certification criteria disagree: counting={counting}, approximation={approximation}")]
    CriteriaDisagree { counting: bool, approximation: bool },
    #[error("pair is not well formed: {0}")]
    MalformedPair(String),
    #[error("mutation unavailable: {0}")]
    NoMutation(String),
    #[error("poset exceeds node cap {cap} ({found} nodes discovered)")]
    NodeCapExceeded { cap: usize, found: usize },
    #[error("module does not lie in the expected block")]
    WrongBlock,
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Whether the error reports a configured cap being exceeded.
    pub fn is_cap(&self) -> bool {
        matches!(
            self,
            Error::GroupTooLarge { .. }
                | Error::ModuleTooLarge { .. }
                | Error::NodeCapExceeded { .. }
        )
    }
}
