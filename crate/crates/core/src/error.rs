use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OperadError {
    #[error("generator `{name}` has arity {expected}, got {found} inputs")]
    ArityMismatch {
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("expected arity {expected}, got {found}")]
    WrongArity { expected: usize, found: usize },
    #[error("duplicate leaf label {0}")]
    DuplicateLabel(u32),
    #[error("leaf labels are not a bijection onto 1..={0}")]
    NonBijectiveLabels(usize),
    #[error("tree is not a shuffle tree monomial (children not sorted by minimal leaf)")]
    NotCanonical,
    #[error("not a shuffle permutation of type {0:?}")]
    NotShuffle(Vec<usize>),
    #[error("invalid permutation {0:?}")]
    InvalidPermutation(Vec<u32>),
    #[error("empty block list or zero block size")]
    BadBlocks,
    #[error("length mismatch: expected {expected}, got {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("polynomials use different monomial orderings")]
    OrderingMismatch,
    #[error("zero polynomial has no leading term")]
    ZeroPolynomial,
    #[error("generator `{0}` declared twice")]
    DuplicateGenerator(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("generator `{0}` must have arity at least 1")]
    NullaryGenerator(String),
    #[error("no action given for generator `{name}` and transposition s{index}")]
    MissingAction { name: String, index: usize },
    #[error("swapping inputs {index} and {next} of `{name}` twice does not give back `{name}`", next = index + 1)]
    ActionNotInvolution { name: String, index: usize },
    #[error("unary generators make arity {0} infinite; give a weight bound")]
    UnboundedEnumeration(usize),
    #[error("arity {requested} is above the truncation arity {truncation}")]
    AboveTruncation { requested: usize, truncation: usize },
}

pub type Result<T, E = OperadError> = std::result::Result<T, E>;
