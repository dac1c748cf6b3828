use num_complex::Complex64;
use thiserror::Error;

/// Everything that can go wrong across the toolkit.
///
/// Variants are split into two kinds for callers that map failures onto
/// process exit codes: [`ErrorKind::Validation`] for rejected input and
/// [`ErrorKind::Numeric`] for computations that degenerate or fail to
/// converge on otherwise well-formed input.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("need at least {min} distinct samples, got {got}")]
    TooFewSamples { min: usize, got: usize },

    #[error("input polygon self-intersects (segments {i} and {j})")]
    SelfIntersection { i: usize, j: usize },

    #[error("origin does not lie inside the curve (winding number {winding})")]
    OriginOutside { winding: i32 },

    #[error("tangent estimates differ by {deviation:.3e} between resolutions")]
    NumericallyUnstable { deviation: f64 },

    #[error("boundary value {index} lies {distance:.3e} from the curve (tolerance {tolerance:.3e})")]
    NotOnCurve {
        index: usize,
        distance: f64,
        tolerance: f64,
    },

    #[error("boundary samples backtrack along the curve at index {index}")]
    NotMonotone { index: usize },

    #[error("boundary samples wind {winding} times around the curve, expected +1")]
    WrongWinding { winding: i32 },

    #[error("high-frequency tail carries fraction {fraction:.3e} of spectral energy (limit {limit:.1e}); input is undersampled")]
    SpectralTail { fraction: f64, limit: f64 },

    #[error("Hilbert transform methods disagree by {sup_diff:.3e} in sup norm")]
    MethodMismatch { sup_diff: f64 },

    #[error("Poisson kernel radius {r} outside [0, 1)")]
    RadiusOutOfRange { r: f64 },

    #[error("evaluation point {z} lies outside the closed unit disk")]
    OutsideDisk { z: Complex64 },

    #[error("analytic derivative vanishes at z = {z}; dilatation undefined")]
    DegenerateDerivative { z: Complex64 },

    #[error("Jacobian {jacobian:.3e} is not positive at z = {z}")]
    NonpositiveJacobian { z: Complex64, jacobian: f64 },

    #[error("boundary stretch lower bound l(f) = {l_f:.3e} is below {tolerance:.1e}; the extension is not quasiconformal at this resolution")]
    DegenerateLowerBound { l_f: f64, tolerance: f64 },

    #[error("quadrature failed to converge (residual {residual:.3e})")]
    QuadratureNonconvergent { residual: f64 },

    #[error("boundary map is not normalized: arcs {arcs:?} differ from equal thirds of {length}")]
    NotNormalized { arcs: [f64; 3], length: f64 },

    #[error("parameter {name} = {value} outside valid range {range}")]
    ParamOutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },
}

/// Coarse classification used by front ends for exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Input failed a structural precondition.
    Validation,
    /// Computation degenerated or did not converge.
    Numeric,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::TooFewSamples { .. }
            | Error::SelfIntersection { .. }
            | Error::OriginOutside { .. }
            | Error::NotOnCurve { .. }
            | Error::NotMonotone { .. }
            | Error::WrongWinding { .. }
            | Error::RadiusOutOfRange { .. }
            | Error::OutsideDisk { .. }
            | Error::NotNormalized { .. }
            | Error::ParamOutOfRange { .. } => ErrorKind::Validation,
            Error::NumericallyUnstable { .. }
            | Error::SpectralTail { .. }
            | Error::MethodMismatch { .. }
            | Error::DegenerateDerivative { .. }
            | Error::NonpositiveJacobian { .. }
            | Error::DegenerateLowerBound { .. }
            | Error::QuadratureNonconvergent { .. } => ErrorKind::Numeric,
        }
    }

    /// Stable variant name for structured error reports.
    pub fn name(&self) -> &'static str {
        match self {
            Error::TooFewSamples { .. } => "TooFewSamples",
            Error::SelfIntersection { .. } => "SelfIntersection",
            Error::OriginOutside { .. } => "OriginOutside",
            Error::NumericallyUnstable { .. } => "NumericallyUnstable",
            Error::NotOnCurve { .. } => "NotOnCurve",
            Error::NotMonotone { .. } => "NotMonotone",
            Error::WrongWinding { .. } => "WrongWinding",
            Error::SpectralTail { .. } => "SpectralTail",
            Error::MethodMismatch { .. } => "MethodMismatch",
            Error::RadiusOutOfRange { .. } => "RadiusOutOfRange",
            Error::OutsideDisk { .. } => "OutsideDisk",
            Error::DegenerateDerivative { .. } => "DegenerateDerivative",
            Error::NonpositiveJacobian { .. } => "NonpositiveJacobian",
            Error::DegenerateLowerBound { .. } => "DegenerateLowerBound",
            Error::QuadratureNonconvergent { .. } => "QuadratureNonconvergent",
            Error::NotNormalized { .. } => "NotNormalized",
            Error::ParamOutOfRange { .. } => "ParamOutOfRange",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
