use thiserror::Error;

use crate::forms::BinaryForm;

/// Errors raised by the exact engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("square root of a negative rational: {0}")]
    NegativeRadicand(String),

    #[error("incompatible quadratic extensions: sqrt({left}) and sqrt({right})")]
    IncompatibleExtension { left: String, right: String },

    #[error("division by zero")]
    DivisionByZero,

    #[error("cannot compare values whose radicands were not certified squarefree")]
    UnnormalizedComparison,

    #[error("domain error: {0}")]
    Domain(String),

    #[error("singular change of variables")]
    SingularMatrix,

    #[error("form is not harmonic; Laplacian residual is {residual}")]
    NotHarmonic { residual: BinaryForm },

    #[error("operator does not annihilate the form; residual is {residual}")]
    NotAnnihilated { residual: BinaryForm },

    #[error("quadratic operator has zero d_y^2 coefficient; rotate variables first")]
    UnsupportedPivot,

    #[error("quadratic form is not indefinite (s^2 - pu = {discriminant})")]
    NotIndefinite { discriminant: String },

    #[error("linear system is inconsistent")]
    Inconsistent,

    #[error("linear forms {0} and {1} are proportional")]
    ProportionalForms(usize, usize),

    #[error("lower-bound certificate failed in degree {degree}: {detail}")]
    CertificateFailure { degree: usize, detail: String },

    #[error("form has no quadratic annihilator")]
    OutOfFamily,

    #[error("unsupported request: {0}")]
    UnsupportedRequest(String),

    #[error("retry budget exhausted after {attempts} attempts: {detail}")]
    RetryExhausted { attempts: usize, detail: String },
}

pub type Result<T> = std::result::Result<T, Error>;
