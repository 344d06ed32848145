use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("operands belong to different algebras: {0} vs {1}")]
    AlgebraMismatch(String, String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid signature: {0}")]
    InvalidSignature(String),

    #[error("operation requires a non-degenerate algebra (r = 0)")]
    DegenerateAlgebra,

    #[error("operation requires a degenerate algebra (r >= 1)")]
    NonDegenerateAlgebra,

    #[error("operation requires a complex algebra")]
    RequiresComplex,

    #[error("real algebra received a coefficient with nonzero imaginary part")]
    NotReal,

    #[error("element is not invertible")]
    NotInvertible,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("no element set with the requested relations exists: {0}")]
    NoSuchConstruction(String),

    #[error("bracket of basis elements {0} and {1} leaves their span")]
    BracketLeavesSpan(usize, usize),

    #[error("basis elements are linearly dependent")]
    LinearlyDependent,

    #[error("structure constant is not real")]
    NonRealStructureConstant,

    #[error("element outside the Lie subalgebra of non-central elements")]
    OutsideLieSubalgebra,

    #[error("frame is not pseudo-orthogonal for the metric")]
    NotPseudoOrthogonal,

    #[error("field has non-identity coefficients where an abelian field was expected")]
    NonAbelian,

    #[error("precondition violated at wavevector {wave}: {reason}")]
    WavePrecondition { wave: String, reason: String },

    #[error("the two second-order forms disagree although the Lorentz condition holds")]
    FormMismatch,

    #[error("linear system is inconsistent, residual norm {0:e}")]
    Inconsistent(f64),

    #[error("no convergence after {iterations} iterations, residual norm {residual:e}")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("iteration stalled or diverged after {iterations} iterations, residual norm {residual:e}")]
    Diverged { iterations: usize, residual: f64 },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
