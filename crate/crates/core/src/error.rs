use thiserror::Error;

/// Errors raised by the shell solvers and constitutive algebra.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("constitutive determinant is not positive (Δ = {0:e})")]
    NonPositiveDelta(f64),

    #[error("stiffness components are singular: {0}")]
    SingularStiffness(&'static str),

    #[error("material is not admissible: {0}")]
    InvalidMaterial(String),

    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),

    #[error("argument outside its domain: {0}")]
    DomainError(String),

    #[error("station outside the shell body: {0}")]
    OutOfDomain(String),

    #[error("characteristic roots are repeated (|α₁ - α₂| = {0:e}); two-mode solution does not exist")]
    DegenerateRoots(f64),

    #[error("boundary-value problem constants are singular: {0}")]
    SingularConstants(&'static str),

    #[error("thickness-stretch equation is singular (coefficient {coefficient:e}, term scale {scale:e})")]
    SingularGamma { coefficient: f64, scale: f64 },

    #[error("thickness-stretch defect is not affine (mid-point mismatch {0:e})")]
    NonAffineGamma(f64),

    #[error("identification experiment is degenerate: {0}")]
    DegenerateExperiment(&'static str),

    #[error("finite-difference system is singular (pivot {pivot:e} at row {row})")]
    SingularSystem { row: usize, pivot: f64 },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("unsupported load case for this operation: {0}")]
    UnsupportedLoad(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
