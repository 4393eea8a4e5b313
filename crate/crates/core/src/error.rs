use thiserror::Error;

/// Errors raised by the library. Variant names double as the stable error
/// identifiers printed by the command-line front end.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("DeterminantViolation: |alpha|^2 - |beta|^2 = {det} deviates from 1 by more than {tol:e}")]
    DeterminantViolation { det: f64, tol: f64 },

    #[error("InvalidCoordinates: {0}")]
    InvalidCoordinates(String),

    #[error("InvalidLabel: {0}")]
    InvalidLabel(String),

    #[error("InvalidParams: {0}")]
    InvalidParams(String),

    #[error("BoundaryConjugacyClass: (Re alpha)^2 - 1 = {gap:e} is within the boundary tolerance")]
    BoundaryConjugacyClass { gap: f64 },

    #[error("UnsupportedClass: Re alpha = {re_alpha} < -1 has no fixed square-root branch")]
    UnsupportedClass { re_alpha: f64 },

    #[error("SingularAngle: |sin(theta/2)| < 1e-12 at theta = {theta}")]
    SingularAngle { theta: f64 },

    #[error("UnsupportedAngle: theta = {theta} reduces outside (0, 2pi)")]
    UnsupportedAngle { theta: f64 },

    #[error("InvalidDamping: r = {r} is not in (0, 1)")]
    InvalidDamping { r: f64 },

    #[error("AngularSelectionFailed: the angular integrals vanish for this index set")]
    AngularSelectionFailed,
}

impl Error {
    /// Stable identifier of the variant, e.g. `"BoundaryConjugacyClass"`.
    pub fn name(&self) -> &'static str {
        match self {
            Error::DeterminantViolation { .. } => "DeterminantViolation",
            Error::InvalidCoordinates(_) => "InvalidCoordinates",
            Error::InvalidLabel(_) => "InvalidLabel",
            Error::InvalidParams(_) => "InvalidParams",
            Error::BoundaryConjugacyClass { .. } => "BoundaryConjugacyClass",
            Error::UnsupportedClass { .. } => "UnsupportedClass",
            Error::SingularAngle { .. } => "SingularAngle",
            Error::UnsupportedAngle { .. } => "UnsupportedAngle",
            Error::InvalidDamping { .. } => "InvalidDamping",
            Error::AngularSelectionFailed => "AngularSelectionFailed",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
