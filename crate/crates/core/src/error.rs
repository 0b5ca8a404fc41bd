use thiserror::Error;

/// Errors produced by the fair clustering toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dataset must contain at least one point")]
    EmptyDataset,
    #[error("point id {id} out of range for dataset of {len} points")]
    PointOutOfRange { id: usize, len: usize },
    #[error("invalid dataset: {0}")]
    InvalidDataset(String),
    #[error("invalid distance matrix: {0}")]
    InvalidMatrix(String),
    #[error("subset must be nonempty")]
    EmptySubset,
    #[error("clustering has no nonempty cluster")]
    NoNonemptyCluster,
    #[error("invalid clustering: {0}")]
    InvalidClustering(String),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("bipartite sides are unbalanced: {left} left vs {right} right")]
    UnbalancedSides { left: usize, right: usize },
    #[error("color counts are unbalanced: {red} red vs {blue} blue")]
    UnbalancedColors { red: usize, blue: usize },
    #[error("invalid flow network: {0}")]
    InvalidNetwork(String),
    #[error("flow network has no feasible flow")]
    InfeasibleFlow,
    #[error("flow solution is not a star forest: {0}")]
    NotAStarForest(String),
    #[error("dataset balance {balance} is below the required {required}")]
    InfeasibleBalance { balance: String, required: String },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("k = {k} exceeds the {available} available points or fairlets")]
    TooManyClusters { k: usize, available: usize },
    #[error("instance too large for exhaustive search: {0}")]
    InstanceTooLarge(String),
    #[error("no feasible solution exists: {0}")]
    NoFeasibleSolution(String),
    #[error("invalid fairlet decomposition: {0}")]
    InvalidDecomposition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
