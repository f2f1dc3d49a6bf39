use thiserror::Error;

/// Errors raised by field construction, set algebra, graph building and the
/// theorem checkers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic {0} is not prime")]
    NonPrimeP(u64),
    #[error("extension degree must be at least 1")]
    DegreeZero,
    #[error("field of order {p}^{m} exceeds the size cap of 2^{max_bits} elements")]
    SizeCapExceeded { p: u64, m: u32, max_bits: u32 },
    #[error("element code {code} out of range for a field of order {order}")]
    CodeOutOfRange { code: u64, order: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("subfield degree {small} does not divide extension degree {big}")]
    DegreeNotDividing { small: u32, big: u32 },
    #[error("operand contains zero")]
    ZeroInOperand,
    #[error("operands live in different fields (F_{left} vs F_{right})")]
    FieldMismatch { left: u32, right: u32 },
    #[error("set is empty")]
    EmptySet,
    #[error("index {d} does not divide {group_order}")]
    IndexNotDividing { d: u64, group_order: u64 },
    #[error("set does not contain zero")]
    ZeroNotInSet,
    #[error("connection set contains zero")]
    ZeroInConnectionSet,
    #[error("set is not closed under negation")]
    NotSymmetric,
    #[error("odd order {r} is not 1 mod 2*{d}")]
    BadResidueCondition { r: u32, d: u64 },
    #[error("anchors do not form a clique")]
    AnchorsNotClique,
    #[error("requested clique size {size} is smaller than the {anchors} anchors")]
    SizeBelowAnchors { size: usize, anchors: usize },
    #[error("at least two points are required")]
    TooFewPoints,
    #[error("duplicate point ({0}, {1})")]
    DuplicatePoint(u32, u32),
    #[error("beta lies in the base field")]
    BetaInBaseField,
    #[error("point set does not contain the origin")]
    OriginMissing,
    #[error("quadratic extension unavailable: {0}")]
    TowerUnavailable(String),
    #[error("field order {0} is not the square of a prime power")]
    NotSquareOrder(u32),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("set has {actual} elements, expected {expected}")]
    WrongSize { expected: usize, actual: usize },
    #[error("set must contain both 0 and 1")]
    MissingAnchors,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("theorem not applicable: {0}")]
    NotApplicable(String),
    #[error("character order {m} must exceed 1 and divide {group_order}")]
    BadOrder { m: u64, group_order: u64 },
    #[error("q = {0} is even")]
    EvenQ(u64),
    #[error("cannot parse set spec {spec:?}: {reason}")]
    SetSpec { spec: String, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
