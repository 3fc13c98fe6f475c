use thiserror::Error;

/// Every failure the library can report. Variant names double as the
/// machine-readable error names printed by the CLI.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arrow {0} -> {0} is a loop")]
    LoopFound(usize),
    #[error("arrows {0} -> {1} and {1} -> {0} form a 2-cycle")]
    TwoCycleFound(usize, usize),
    #[error("quiver contains an oriented cycle")]
    CycleFound,
    #[error("vertex index {index} out of range 1..={n}")]
    BadVertexIndex { index: i64, n: usize },
    #[error("expected a vector of length {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("underlying graph is not a simply-laced Dynkin diagram")]
    NotDynkin,
    #[error("{0:?} is not a positive root")]
    NotARoot(Vec<i64>),

    #[error("Laurent polynomials in {0} and {1} variables")]
    VariableCountMismatch(usize, usize),
    #[error("denominator vector of the zero polynomial")]
    ZeroPolynomial,
    #[error("Laurent division is not exact")]
    NonExactDivision,
    #[error("cannot parse Laurent polynomial: {0}")]
    ParseLaurent(String),

    #[error("representations over different fields")]
    FieldMismatch,
    #[error("representations of different quivers")]
    QuiverMismatch,
    #[error("negative Ext dimension {0}: internal inconsistency")]
    NegativeExt(i64),
    #[error("malformed representation: {0}")]
    MalformedRepresentation(String),
    #[error("Krull-Schmidt decomposition could not be certified")]
    DecompositionUncertified,
    #[error("enumeration cost {cost} exceeds cap {cap}")]
    CapExceeded { cost: u128, cap: u64 },
    #[error("subdimension vector out of range")]
    SubdimensionOutOfRange,
    #[error("point counts are not polynomial in q")]
    NotPolynomialCount,
    #[error("no prime of good reduction left in the pool")]
    BadReduction,
    #[error("prime field F_{0} is too small for this operation")]
    FieldTooSmall(u64),

    #[error("kernel is not of projective shape: {0:?}")]
    KernelNotProjectiveShape(Vec<i64>),
    #[error("generic value could not be certified across seeds")]
    GenericityUncertified,
    #[error("no valid generic decomposition found")]
    NoValidDecomposition,
    #[error("module part and shifted part do not have disjoint support")]
    SupportNotDisjoint,

    #[error("vertex {0} out of range")]
    BadVertex(usize),
    #[error("quiver is not of finite cluster type (enumeration did not close)")]
    NotFiniteType,

    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Parse(String),
}

impl Error {
    /// Variant name without payload, e.g. `"LoopFound"`.
    pub fn name(&self) -> &'static str {
        match self {
            Error::LoopFound(_) => "LoopFound",
            Error::TwoCycleFound(..) => "TwoCycleFound",
            Error::CycleFound => "CycleFound",
            Error::BadVertexIndex { .. } => "BadVertexIndex",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::NotDynkin => "NotDynkin",
            Error::NotARoot(_) => "NotARoot",
            Error::VariableCountMismatch(..) => "VariableCountMismatch",
            Error::ZeroPolynomial => "ZeroPolynomial",
            Error::NonExactDivision => "NonExactDivision",
            Error::ParseLaurent(_) => "ParseLaurent",
            Error::FieldMismatch => "FieldMismatch",
            Error::QuiverMismatch => "QuiverMismatch",
            Error::NegativeExt(_) => "NegativeExt",
            Error::MalformedRepresentation(_) => "MalformedRepresentation",
            Error::DecompositionUncertified => "DecompositionUncertified",
            Error::CapExceeded { .. } => "CapExceeded",
            Error::SubdimensionOutOfRange => "SubdimensionOutOfRange",
            Error::NotPolynomialCount => "NotPolynomialCount",
            Error::BadReduction => "BadReduction",
            Error::FieldTooSmall(_) => "FieldTooSmall",
            Error::KernelNotProjectiveShape(_) => "KernelNotProjectiveShape",
            Error::GenericityUncertified => "GenericityUncertified",
            Error::NoValidDecomposition => "NoValidDecomposition",
            Error::SupportNotDisjoint => "SupportNotDisjoint",
            Error::BadVertex(_) => "BadVertex",
            Error::NotFiniteType => "NotFiniteType",
            Error::Io(_) => "Io",
            Error::Parse(_) => "Parse",
        }
    }

    /// Errors that indicate a bug rather than bad input or bad luck.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::NegativeExt(_)
                | Error::KernelNotProjectiveShape(_)
                | Error::NonExactDivision
                | Error::NoValidDecomposition
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
