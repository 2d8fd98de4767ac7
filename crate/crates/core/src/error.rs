use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported field order {0}")]
    UnsupportedOrder(usize),

    #[error("field element code {code} out of range for GF({q})")]
    InvalidElement { code: usize, q: usize },

    #[error("division by zero")]
    DivisionByZero,

    #[error("no quadratic extension supported over GF({0})")]
    UnsupportedExtension(usize),

    #[error("unsupported geometry PG({n},{q}): {reason}")]
    UnsupportedGeometry { n: usize, q: usize, reason: String },

    #[error("object does not belong to {expected}: {detail}")]
    MismatchedGeometry { expected: String, detail: String },

    #[error("{kind} index {index} out of range (max {max})")]
    IndexOutOfRange { kind: &'static str, index: usize, max: usize },

    #[error("point {point} is not incident with subspace {subspace}")]
    NotIncident { point: usize, subspace: String },

    #[error("GF({0}) has odd order; hyperovals do not exist")]
    NoHyperoval(usize),

    #[error("structure violation: {0}")]
    StructureViolation(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("partition has an empty part")]
    DegeneratePartition,

    #[error("lines {0} and {1} are not skew")]
    NotSkew(usize, usize),

    #[error("line set is not a spread: {0}")]
    NotASpread(String),

    #[error("parameter x={x} outside [1, {max}]")]
    ParameterOutOfRange { x: usize, max: usize },

    #[error("unknown preset `{0}`")]
    UnknownPreset(String),

    #[error("preset `{name}` does not apply to q={q}, x={x}")]
    PresetNotApplicable { name: String, q: usize, x: usize },

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("certificate replay mismatch at {0}")]
    ReplayMismatch(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
