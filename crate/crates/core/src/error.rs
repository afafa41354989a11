use thiserror::Error;

/// Everything that can go wrong in the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("variable lists differ: [{left}] vs [{right}]")]
    VariableMismatch { left: String, right: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("empty ideal: at least one generator is required")]
    EmptyIdeal,
    #[error("shape error: {0}")]
    Shape(String),
    #[error("substitution is not invertible at the origin")]
    NotInvertible,
    #[error("substitution image has a constant term; use with_shifts() for chart translations")]
    UnitShift,
    #[error("truncation order dropped to zero")]
    TruncationUnderflow,
    #[error("series is not a unit (zero constant term)")]
    NotUnit,
    #[error("no rational {0}-th root of the constant term")]
    NoRationalRoot(u32),
    #[error("series is not regular of order {degree} in `{var}`")]
    NotRegular { var: String, degree: u32 },
    #[error("parse error at line {line}, column {col} near `{token}`: {msg}")]
    Parse {
        line: usize,
        col: usize,
        token: String,
        msg: String,
    },
    #[error("input does not have the expected shape: {0}")]
    ShapeMismatch(String),
    #[error("the hypersurface does not contain the curve")]
    NotContained,
    #[error("the curve is not smooth at the origin")]
    SingularCurve,
    #[error("result undetermined at truncation order {order}: {reason}")]
    Indeterminate { order: u32, reason: String },
    #[error("the singularity is not isolated at the origin")]
    NonIsolated,
    #[error("E8 points cannot contain a curve of this kind")]
    E8Input,
    #[error("the origin is not a singular point")]
    NoSingularity,
    #[error("polynomial does not vanish at the origin")]
    NotAtOrigin,
    #[error("exceptional component is not a coordinate or single factor: {0}")]
    NonCoordinateComponent(String),
    #[error("graph error: {0}")]
    Graph(String),
    #[error("{0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;
