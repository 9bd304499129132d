use thiserror::Error;

/// Errors raised by the numeration, arithmetic, tree and navigation layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("grade p = {0} is invalid: p must be at least 5")]
    InvalidGrade(u32),
    #[error("digit {digit} exceeds the largest digit {max} allowed for p = {p}")]
    DigitOutOfRange { digit: u32, max: u32, p: u32 },
    #[error("digit string contains the forbidden factor d c* d")]
    NotCanonical,
    #[error("operands have different grades (p = {0} and p = {1})")]
    GradeMismatch(u32, u32),
    #[error("subtraction would be negative")]
    NegativeResult,
    #[error("complement: value exceeds m_{k}")]
    ComplementOutOfRange { k: usize },
    #[error("the code 0 does not name a tree node")]
    ZeroNode,
    #[error("the leading tile has no father inside its sector (its father is the central tile)")]
    LeadingTile,
    #[error("cannot parse {input:?} as a metallic code: {reason}")]
    Parse { input: String, reason: String },
    #[error("carry resolution did not terminate within {0} rounds")]
    NonTermination(u64),
    #[error("tree would have {nodes} nodes, above the limit of {limit}")]
    TreeTooLarge { nodes: u128, limit: u128 },
    #[error("code does not follow the son rules of the tree (digit {digit} at position {position})")]
    Inconsistent { digit: u32, position: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
