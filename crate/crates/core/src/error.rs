use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("inner lattice is not contained in the outer lattice")]
    NotSublattice,
    #[error("map does not respect the subquotient presentations: {0}")]
    NotCompatible(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("basis vectors are linearly dependent")]
    DependentBasis,
    #[error("invalid series: {0}")]
    InvalidSeries(String),
    #[error("invalid center subgroup: {0}")]
    InvalidCenterSubgroup(String),
    #[error("lattice does not lie between the coroot and coweight lattices")]
    NotBetweenLattices,
    #[error("explicit commutator map required: {0}")]
    RequiresExplicitB(String),
    #[error("twist representative is not a cycle")]
    NotACycle,
    #[error("Langlands twist unavailable: {0}")]
    Unavailable(String),
    #[error("inadmissible cutoff: {0}")]
    InadmissibleCutoff(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
