use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero element where a unit is required")]
    ZeroElement,
    #[error("{0} is not an odd prime")]
    BadPrime(String),
    #[error("operands live over different base fields")]
    MixedFields,
    #[error("scalar must be nonzero")]
    ZeroScalar,
    #[error("ordering does not belong to the base field")]
    OrderingMismatch,
    #[error("operation needs the base field Q")]
    UnsupportedField,
    #[error("argument {0} is a square")]
    SquareArgument(String),
    #[error("unitary factors have different centres")]
    MixedUnitaryCentres,
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("unsupported shape: {0}")]
    UnsupportedShape(String),
    #[error("degenerate algebra")]
    DegenerateAlgebra,
    #[error("base field has no orderings")]
    NonrealOrdering,
    #[error("cannot decide shape: {0}")]
    UndecidableShape(String),
    #[error("preordering is not proper")]
    ImproperPreordering,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error at byte {offset}: expected {}", expected.join(" | "))]
    Parse { offset: usize, expected: Vec<String> },
}

impl Error {
    /// Stable machine-readable code used by the CLI.
    pub fn code(&self) -> &'static str {
        match self {
            Error::ZeroElement => "ZeroElement",
            Error::BadPrime(_) => "BadPrime",
            Error::MixedFields => "MixedFields",
            Error::ZeroScalar => "ZeroScalar",
            Error::OrderingMismatch => "OrderingMismatch",
            Error::UnsupportedField => "UnsupportedField",
            Error::SquareArgument(_) => "SquareArgument",
            Error::MixedUnitaryCentres => "MixedUnitaryCentres",
            Error::InternalInconsistency(_) => "InternalInconsistency",
            Error::ShapeMismatch(_) => "ShapeMismatch",
            Error::UnsupportedShape(_) => "UnsupportedShape",
            Error::DegenerateAlgebra => "DegenerateAlgebra",
            Error::NonrealOrdering => "NonrealOrdering",
            Error::UndecidableShape(_) => "UndecidableShape",
            Error::ImproperPreordering => "ImproperPreordering",
            Error::InvalidArgument(_) => "InvalidArgument",
            Error::Parse { .. } => "ParseError",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
