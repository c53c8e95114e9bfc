use thiserror::Error;

use crate::frame::Subset;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("duplicate label `{0}` in frame")]
    DuplicateLabel(String),
    #[error("frame labels must be non-empty")]
    EmptyLabel,
    #[error("frame of {size} labels exceeds the limit of {max}")]
    FrameTooLarge { size: usize, max: usize },
    #[error("frame must contain at least one label")]
    EmptyFrame,
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("subset {0:#b} listed more than once")]
    DuplicateSubset(Subset),
    #[error("mass {mass} for subset {subset:#b} is outside [0, 1]")]
    MassOutOfRange { subset: Subset, mass: f64 },
    #[error("masses sum to {sum}, deviating from 1 by {deviation:e}")]
    MassSumNotOne { sum: f64, deviation: f64 },
    #[error("operands are defined on different frames or subset lies outside the frame")]
    FrameMismatch,
    #[error("discount rate {0} is outside [0, 1]")]
    AlphaOutOfRange(f64),
    #[error("a context must be a non-empty subset")]
    EmptyContext,
    #[error("context {0:#b} listed more than once")]
    DuplicateContext(Subset),
    #[error("context sets overlap on {0:#b}")]
    OverlappingContextSets(Subset),
    #[error("mass function is not normal (m(empty) = {0})")]
    NotNormal(f64),
    #[error("subset {0:#b} is not a singleton")]
    NotSingleton(Subset),
    #[error("implicability vanishes at subset {0:#b}")]
    ZeroImplicability(Subset),
    #[error("disjunctive weight {weight} of subset {subset:#b} must be finite and non-negative")]
    InvalidWeight { subset: Subset, weight: f64 },
    #[error("recomposed vector is not a mass function: {0}")]
    NotAMassFunction(String),
    #[error("time must be strictly positive, got {0}")]
    NonPositiveTime(f64),
    #[error("time must be non-negative, got {0}")]
    NegativeTime(f64),
    #[error("fraction N must exceed 1, got {0}")]
    InvalidFraction(f64),
    #[error("decay rate must be finite and strictly positive, got {0}")]
    InvalidRate(f64),
    #[error("retained fraction kappa = {0} must lie in (0, 1]")]
    NonPositiveKappa(f64),
    #[error("contexts must be singletons covering the whole frame")]
    NotSingletonCover,
    #[error("no discount rate vector in [0, 1] reproduces the decay: raw alphas {alphas:?}")]
    Infeasible { alphas: Vec<f64> },
    #[error("{0}")]
    Unsupported(String),
}
