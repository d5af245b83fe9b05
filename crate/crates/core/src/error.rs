use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("shape error: {0}")]
    Shape(String),

    #[error("matrix contains a non-finite entry")]
    NonFinite,

    #[error("matrix is not Hermitian (defect {defect:.3e} relative to {scale:.3e})")]
    NotHermitian { defect: f64, scale: f64 },

    #[error("matrix is not positive semidefinite (eigenvalue {0:.3e})")]
    NotPsd(f64),

    #[error("{routine} did not converge within {sweeps} sweeps")]
    NoConvergence { routine: &'static str, sweeps: usize },

    #[error("invalid norm: {0}")]
    InvalidNorm(String),

    #[error("zero operand: {0}")]
    ZeroOperand(&'static str),

    #[error("unknown ensemble kind `{0}`")]
    UnknownEnsemble(String),

    #[error("invalid ensemble spec `{0}` (expected kind:dim:seed)")]
    EnsembleSpec(String),

    #[error("malformed matrix JSON: {0}")]
    MalformedMatrix(String),

    #[error("unknown check id `{0}`")]
    UnknownCheck(String),

    #[error("check `{id}` cannot run on ensemble `{kind}`")]
    EnsembleMismatch { id: String, kind: String },

    #[error("invalid check configuration: {0}")]
    CheckConfig(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
