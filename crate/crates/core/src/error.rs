use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("the zero form has no zero locus")]
    ZeroForm,
    #[error("the zero vector is not a projective point")]
    ZeroVector,
    #[error("degenerate frame: points {0:?} are collinear")]
    DegenerateFrame([usize; 3]),
    #[error("a line needs two distinct points")]
    EqualPoints,
    #[error("a singular point lies in an extension of degree {degree} over Q(w)")]
    UnsupportedExtension { degree: usize },
    #[error("factor does not divide the cubic")]
    NotADivisor,
    #[error("factor must have degree 1, 2 or 3, got {0}")]
    BadFactorDegree(u32),
    #[error("element list is not closed under composition")]
    NotAGroup,
    #[error("permutation of the flexes is not affine")]
    NotAffine,
    #[error("group closure exceeded {0} elements")]
    ClosureOverflow(usize),
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("numeric failure: {0}")]
    Numeric(String),
    #[error("no labeling of the flexes by the affine plane over F3 was found")]
    LabelingNotFound,
    #[error("residual {residual:e} exceeds tolerance {tol:e}")]
    ResidualTooLarge { residual: f64, tol: f64 },
    #[error("consistency check failed: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
