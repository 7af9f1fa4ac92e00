use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid arm distribution: {0}")]
    InvalidArm(String),

    #[error("a bandit instance needs at least 2 arms, got {0}")]
    TooFewArms(usize),

    #[error("every arm is optimal, the minimal gap is undefined")]
    AllArmsOptimal,

    #[error("dimension mismatch: expected {expected} arms, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("arm {label} is out of range for {arms} arms (labels are 1-based)")]
    ArmOutOfRange { label: usize, arms: usize },

    #[error("invalid probability vector: {0}")]
    InvalidProbabilities(String),

    #[error("empty history")]
    EmptyHistory,

    #[error("no arm has been pulled")]
    NoPulledArm,

    #[error("UCB exploration factor must exceed 1, got {0}")]
    InvalidAlpha(f64),

    #[error("invalid horizon or checkpoints: {0}")]
    InvalidCheckpoints(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("exact enumeration needs {needed} leaves, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },

    #[error("exact enumeration supports Bernoulli and Dirac arms only (arm {0})")]
    UnsupportedDistribution(usize),

    #[error("replay of candidate {candidate} requested but only {drawn} drawn")]
    ReplayOutOfRange { candidate: u64, drawn: usize },

    #[error("no pulled candidate to recommend")]
    NoCandidate,

    #[error("mean-payoff supremum unknown; pass it explicitly")]
    MissingSupremum,

    #[error("configuration error: {0}")]
    Config(String),
}
