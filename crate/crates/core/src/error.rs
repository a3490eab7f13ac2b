use thiserror::Error;

use crate::words::{Letter, Word};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("alphabet must have at least one letter")]
    EmptyAlphabet,
    #[error("letter {letter} is out of range for an alphabet of size {size}")]
    LetterOutOfRange { letter: Letter, size: u32 },
    #[error("operation needs a finite alphabet")]
    CountableAlphabet,
    #[error("not an element of M: ac^t = {left} but bd^t = {right}")]
    MembershipViolation { left: Word, right: Word },
    #[error("operation is undefined on the zero element")]
    ZeroInput,
    #[error("D-class index must be a nonempty word")]
    EmptyIndex,
    #[error("element is not an idempotent")]
    NotIdempotent,
    #[error("alphabet size {0} is too large for this operation")]
    LambdaTooLarge(u32),
    #[error("alphabet sizes differ: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("not a permutation: {0:?}")]
    InvalidPermutation(Vec<Letter>),
    #[error("{candidates} candidates exceed the enumeration guard of {limit}")]
    SizeGuard { candidates: u128, limit: u128 },
    #[error("surviving census candidate is neither of phi nor of psi type")]
    UnclassifiedCandidate,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("word {0} is not in the ideal")]
    NotInIdeal(crate::words::Word),
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::EmptyAlphabet => "EmptyAlphabet",
            Error::LetterOutOfRange { .. } => "LetterOutOfRange",
            Error::CountableAlphabet => "CountableAlphabet",
            Error::MembershipViolation { .. } => "MembershipViolation",
            Error::ZeroInput => "ZeroInput",
            Error::EmptyIndex => "EmptyIndex",
            Error::NotIdempotent => "NotIdempotent",
            Error::LambdaTooLarge(_) => "LambdaTooLarge",
            Error::SizeMismatch(..) => "SizeMismatch",
            Error::InvalidPermutation(_) => "InvalidPermutation",
            Error::SizeGuard { .. } => "SizeGuard",
            Error::UnclassifiedCandidate => "UnclassifiedCandidate",
            Error::InvalidArgument(_) => "InvalidArgument",
            Error::NotInIdeal(_) => "NotInIdeal",
            Error::Syntax { .. } => "SyntaxError",
        }
    }
}
