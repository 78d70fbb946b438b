use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("gcd(0, 0) is undefined")]
    GcdOfZeros,
    #[error("pole at eta = {0}")]
    Pole(String),
    #[error("parse error at {line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("unknown generator '{0}'")]
    UnknownGenerator(String),
    #[error("duplicate relation for [{0},{1}]")]
    DuplicateRule(String, String),
    #[error("invalid relation: {0}")]
    InvalidRelation(String),
    #[error("no rewrite rule for out-of-order pair {hi}*{lo}")]
    MissingRule { hi: String, lo: String },
    #[error("elements belong to different presentations")]
    MixedPresentations,
    #[error("normal form did not finish within {0} rewrite steps")]
    StepLimit(usize),
    #[error("projector series still nonzero after {0} terms")]
    ProjectorGuard(usize),
    #[error("presentation has no usable sl2 triple: {0}")]
    NoSl2Triple(String),
    #[error("element is not a coefficient: {0}")]
    NotScalar(String),
    #[error("linear system is singular: {0}")]
    SingularSystem(String),
    #[error("linear system is inconsistent: {0}")]
    InconsistentSystem(String),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
