use thiserror::Error;

/// Errors raised by the algebra routines.
///
/// Either the input is malformed or a check on well-formed input failed;
/// [`Error::is_verification_failure`] tells them apart.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("order mismatch: {0} vs {1}")]
    OrderMismatch(u32, u32),

    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("{0} out of range")]
    OutOfRange(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("not a permutation: {0}")]
    NotPermutation(String),

    #[error("not commutative: N[{i}][{j}][{m}] != N[{j}][{i}][{m}]")]
    NotCommutative { i: usize, j: usize, m: usize },

    #[error("not associative at ({i}, {j}, {l})")]
    NotAssociative { i: usize, j: usize, l: usize },

    #[error("no identity in R (x) C")]
    NoIdentity,

    #[error("identity not unique")]
    IdentityNotUnique,

    #[error("identity coefficients missing; run identity_coefficients first")]
    MissingIdentity,

    #[error("bound exceeded: no power m <= {bound} of b_{index} has nonzero trace")]
    BoundExceeded { index: usize, bound: usize },

    #[error("subset is not closed: N[{i}][{j}][{m}] != 0 with m outside the subset")]
    NotClosed { i: usize, j: usize, m: usize },

    #[error("subset is not stable under the involution (index {0})")]
    NotInvolutionStable(usize),

    #[error("singular matrix")]
    Singular,

    #[error("non-integral structure constant at ({i},{j},{m})")]
    NonIntegral { i: usize, j: usize, m: usize },

    #[error("rows are not orthogonal (rows {0} and {1})")]
    NotOrthogonal(usize, usize),

    #[error("zero row {0}")]
    ZeroRow(usize),

    #[error("no conjugation permutation exists (column {0})")]
    NoConjugation(usize),

    #[error("splitting failed: {0}")]
    SplittingFailed(String),

    #[error("column {0} not of root-of-unity type")]
    NotRootOfUnityType(usize),

    #[error("moduli differ (columns {0} and {1})")]
    ModuliDiffer(usize, usize),

    #[error("element {0} is not of order 2")]
    NotOrderTwo(usize),

    #[error("element {0} does not permute the basis")]
    NotPermuting(usize),

    #[error("semigroup size exceeds cap {0}")]
    CapExceeded(usize),

    #[error("iteration cap {0} reached")]
    IterationCap(usize),

    #[error("non-integral decomposition of lifted element {0}")]
    NonIntegralDecomposition(String),

    #[error("not a Hadamard matrix: {0}")]
    NotHadamard(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("arithmetic overflow: {0}")]
    Overflow(String),
}

impl Error {
    /// True for failures of mathematical checks on well-formed input.
    pub fn is_verification_failure(&self) -> bool {
        matches!(
            self,
            Error::NotCommutative { .. }
                | Error::NotAssociative { .. }
                | Error::NoIdentity
                | Error::IdentityNotUnique
                | Error::BoundExceeded { .. }
                | Error::NotClosed { .. }
                | Error::NotInvolutionStable(_)
                | Error::Singular
                | Error::NonIntegral { .. }
                | Error::NotOrthogonal(..)
                | Error::NoConjugation(_)
                | Error::SplittingFailed(_)
                | Error::NotRootOfUnityType(_)
                | Error::ModuliDiffer(..)
                | Error::NotOrderTwo(_)
                | Error::NotPermuting(_)
                | Error::NonIntegralDecomposition(_)
                | Error::Verification(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
