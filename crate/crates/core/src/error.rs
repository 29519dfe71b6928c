use thiserror::Error;

/// Errors raised by the polynomial layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("polycore: division by the zero polynomial")]
    DivisionByZero,
    #[error("polycore: trailing degree of the zero polynomial is undefined")]
    ZeroPolynomial,
    #[error("polycore: not a polynomial, cyclotomic factor Phi_{0} remains in the denominator")]
    NotAPolynomial(u64),
    #[error("polycore: series division needs a nonzero constant term in the denominator")]
    ZeroConstantTerm,
    #[error("polycore: power series input has a negative exponent ({0})")]
    NegativeExponent(i64),
    #[error("polycore: cannot parse polynomial {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

/// Errors raised by the group-level modules.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("group: invalid group G({m},{p},{n}): {reason}")]
    InvalidGroup {
        m: u32,
        p: u32,
        n: u32,
        reason: String,
    },
    #[error("group: order {order} exceeds the configured bound {bound} (raise --max-order to at least {order})")]
    OrderBound { order: u64, bound: u64 },
    #[error("group: element is not a reflection")]
    NotAReflection,
    #[error("group: reflection representation of {0} is reducible, Schur's lemma does not apply")]
    Reducible(String),
    #[error("group: invariant violated: {0}")]
    Invariant(String),
    #[error("group: witness undefined for {group}: {reason}")]
    WitnessUndefined { group: String, reason: String },
    #[error("group: cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Errors raised while reading or validating an exceptional fake-degree dataset.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DatasetError {
    #[error("dataset: line {line}: {reason}")]
    Syntax { line: usize, reason: String },
    #[error("dataset: group {group}, row {row}: {identity} fails ({detail})")]
    RowInvariant {
        group: String,
        row: String,
        identity: &'static str,
        detail: String,
    },
    #[error("dataset: group {group}: {identity} fails ({detail})")]
    GroupInvariant {
        group: String,
        identity: &'static str,
        detail: String,
    },
}
