use thiserror::Error;

/// Errors raised by the engine.
///
/// Validation errors name the first failing witness (row, pair or triple) in
/// canonical scan order so that reports are reproducible.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    MalformedInput(String),
    #[error("table is not a Latin square: {0}")]
    NotLatinSquare(String),
    #[error("table has no two-sided identity element")]
    NoIdentity,
    #[error("table is not associative at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("order limit exceeded: {what} would exceed cap {cap}")]
    OrderLimitExceeded { what: String, cap: usize },
    #[error("search space too large: {size} candidates exceed cap {cap}")]
    SearchSpaceTooLarge { size: u128, cap: u128 },
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("subgroup is not normal: {0}")]
    NotNormal(String),
    #[error("not a relative Rota-Baxter operator: identity fails at ({0}, {1})")]
    NotRotaBaxter(usize, usize),
    #[error("not a relative Rota-Baxter subgroup: {0}")]
    NotASubstructure(String),
    #[error("pair of maps is not a morphism of relative Rota-Baxter groups: {0}")]
    NotAMorphism(String),
    #[error("not an ideal: {0}")]
    NotAnIdeal(String),
    #[error("subgroup does not project bijectively onto H: {0}")]
    NotInS(String),
    #[error("extended mode required for {0}")]
    ExtendedModeRequired(String),
    #[error("not a skew left brace: compatibility fails at ({0}, {1}, {2})")]
    NotABrace(usize, usize, usize),
    #[error("Yang-Baxter check failed: {0}")]
    YbeViolation(String),
    #[error("map is not well defined on cosets: {0}")]
    WellDefinednessViolation(String),
    #[error("invalid isoclinism witness: {0}")]
    InvalidWitness(String),
}

impl Error {
    /// Variant name, stable across releases for machine-readable reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::MalformedInput(_) => "MalformedInput",
            Error::NotLatinSquare(_) => "NotLatinSquare",
            Error::NoIdentity => "NoIdentity",
            Error::NotAssociative(..) => "NotAssociative",
            Error::OrderLimitExceeded { .. } => "OrderLimitExceeded",
            Error::SearchSpaceTooLarge { .. } => "SearchSpaceTooLarge",
            Error::InvalidAction(_) => "InvalidAction",
            Error::NotNormal(_) => "NotNormal",
            Error::NotRotaBaxter(..) => "NotRotaBaxter",
            Error::NotASubstructure(_) => "NotASubstructure",
            Error::NotAMorphism(_) => "NotAMorphism",
            Error::NotAnIdeal(_) => "NotAnIdeal",
            Error::NotInS(_) => "NotInS",
            Error::ExtendedModeRequired(_) => "ExtendedModeRequired",
            Error::NotABrace(..) => "NotABrace",
            Error::YbeViolation(_) => "YbeViolation",
            Error::WellDefinednessViolation(_) => "WellDefinednessViolation",
            Error::InvalidWitness(_) => "InvalidWitness",
        }
    }

    /// Caps and gates, as opposed to inputs that fail validation.
    pub fn is_limit(&self) -> bool {
        matches!(
            self,
            Error::OrderLimitExceeded { .. }
                | Error::SearchSpaceTooLarge { .. }
                | Error::ExtendedModeRequired(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
