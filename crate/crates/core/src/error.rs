use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unsupported characteristic {0}: expected one of 2, 3, 5, 7")]
    UnsupportedCharacteristic(u32),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),

    #[error("invalid representation: {0}")]
    InvalidObject(String),

    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),

    #[error("not a short exact sequence: {0}")]
    NotExact(String),

    #[error("enumeration bound exceeded: requires {required}, bound is {bound}")]
    BoundExceeded { required: usize, bound: usize },

    #[error("condition {condition} fails at {object}")]
    ConditionFailed { condition: Condition, object: String },

    #[error("{0}")]
    Precondition(String),
}

/// The two approximation conditions on a subcategory.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub enum Condition {
    /// Preenvelope conflation `0 -> X -> Q0 -> Q1 -> 0` with `Q0, Q1` in the subcategory.
    #[serde(rename = "up")]
    Up,
    /// Precover conflation `0 -> P1 -> P0 -> X -> 0` with `P0, P1` in the subcategory.
    #[serde(rename = "down")]
    Down,
}

impl std::fmt::Display for Condition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Condition::Up => write!(f, "up (preenvelope conflation)"),
            Condition::Down => write!(f, "down (precover conflation)"),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
