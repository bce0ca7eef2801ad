use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex index {index} out of range for {n} vertices")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("vector length {got} does not match rank {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("quiver has a loop at vertex {0}")]
    Loop(usize),
    #[error("quiver is not connected")]
    Disconnected,
    #[error("quiver has an oriented cycle")]
    NotAcyclic,
    #[error("diagram is not of Dynkin type: {0}")]
    NotDynkin(String),
    #[error("{0:?} is not a positive root")]
    NotARoot(Vec<i64>),
    #[error("exchange matrix is not skew-symmetric")]
    NotSkewSymmetric,

    #[error("Laurent division is not exact")]
    DivisionNotExact,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("the zero polynomial has no denominator vector")]
    ZeroPolynomial,
    #[error("exploration of a non-finite-type seed needs a depth bound")]
    DepthRequired,
    #[error("exploration exceeded {0} seeds without closing up")]
    SeedCapExceeded(usize),

    #[error("representation shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("negative Ext dimension {value} between {left:?} and {right:?}")]
    NegativeExt {
        left: Vec<usize>,
        right: Vec<usize>,
        value: i64,
    },
    #[error("representation with dimension vector {0:?} is decomposable")]
    Decomposable(Vec<usize>),
    #[error("monomial algebra is not admissible: {0}")]
    NotAdmissible(String),
    #[error("relation violated: {0}")]
    RelationViolated(String),

    #[error("no complement found for summand {0}")]
    NoComplement(usize),
    #[error("summand {k} has {count} complements")]
    MultipleComplements { k: usize, count: usize },
    #[error("object {0} lies in add of the shifted tilting object")]
    MInShiftedT(String),
    #[error("no descent summand exists")]
    NoDescentSummand,

    #[error("parse error: {0}")]
    Parse(String),
    #[error("verification failed: {0}")]
    Verification(String),
}
