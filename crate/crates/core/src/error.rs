use thiserror::Error;

use crate::matrix::MatrixError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("treatment label {label} outside 1..={v}")]
    LabelOutOfRange { label: usize, v: usize },
    #[error("block {0} is empty")]
    EmptyBlock(usize),
    #[error("design needs at least one treatment and one block")]
    EmptyDesign,
    #[error("index {index} out of range (limit {limit})")]
    IndexOutOfRange { index: usize, limit: usize },
    #[error("contrast needs two distinct indices, got {0} twice")]
    SameIndex(usize),
    #[error("deleting these blocks leaves {remaining} block(s); at least 2 are required")]
    TooFewBlocksRemain { remaining: usize },
    #[error("invalid block size {k} for {v} treatments")]
    InvalidSize { v: usize, k: usize },
    #[error("affine-plane construction supports prime q up to 13, got {0}")]
    NotSupportedOrder(usize),
    #[error("blocks have differing sizes")]
    NonUniformBlockSize,
    #[error("design is disconnected")]
    Disconnected,
    #[error("design is not equireplicate")]
    NotEquireplicate,
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("augmentation has {got} block counts, design has {expected} blocks")]
    AugmentationLength { expected: usize, got: usize },
    #[error("every block needs at least one test treatment")]
    ZeroAugmentation,
    #[error("contrast is not estimable (residual {residual:e})")]
    NotEstimable { residual: f64 },
    #[error("model has {plots} plots, cap is {cap}")]
    ModelTooLarge { plots: usize, cap: usize },
    #[error("class has {count} designs, cap is {cap}")]
    ClassTooLarge { count: u128, cap: u128 },
    #[error("no connected starting design after {0} attempts")]
    NoConnectedStart(usize),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
