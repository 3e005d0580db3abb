use thiserror::Error;

/// Errors raised by the core operations.
///
/// `IncompatibleQuadruple` and `NotInBigCell` describe structural facts about
/// otherwise valid input; everything else is caller misuse.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ambient size {0} exceeds the supported maximum of 63")]
    AmbientTooLarge(usize),
    #[error("N = {n} outside the supported range 1..={max}")]
    SizeOutOfRange { n: usize, max: usize },
    #[error("element {element} outside 1..={ambient}")]
    ElementOutOfRange { element: usize, ambient: usize },
    #[error("index sets live in different ambients ({0} vs {1})")]
    AmbientMismatch(usize, usize),
    #[error("sets are not disjoint")]
    NonDisjoint,
    #[error("quadruple violates K∪L = I∪J, K∩L = I∩J")]
    IncompatibleQuadruple,
    #[error("no partner set: K must satisfy I∩J ⊆ K ⊆ I∪J")]
    NoPartner,
    #[error("closed form needs |K| and |L| even")]
    OddCardinality,
    #[error("cardinality mismatch: {0}")]
    CardinalityMismatch(String),
    #[error("partition {0:?} does not fit in the {1}x{1} box")]
    BoxOverflow(Vec<usize>, usize),
    #[error("part {part} out of range for N = {n}")]
    RangeError { part: usize, n: usize },
    #[error("index {index} out of range 1..={len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("part {0} already present")]
    DuplicatePart(usize),
    #[error("invalid partition {0:?}: {1}")]
    InvalidPartition(Vec<usize>, &'static str),
    #[error("matrix is {0}x{1}, expected square")]
    NotSquare(usize, usize),
    #[error("matrix is not skew-symmetric")]
    NotSkew,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("generator {0} repeated in monomial")]
    RepeatedFactor(String),
    #[error("grade {grade} outside 0..={max}")]
    GradeOutOfRange { grade: usize, max: usize },
    #[error("frame is not isotropic")]
    NotIsotropic,
    #[error("operator product annihilates every basis monomial")]
    RankCollapse,
    #[error("frame is not in the big cell")]
    NotInBigCell,
    #[error("matrix has rank {rank}, expected {expected}")]
    RankDeficient { rank: usize, expected: usize },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
