//! Dual Darboux frames of timelike ruled surfaces in Minkowski 3-space and
//! their Mannheim offsets.
//!
//! The crate is layered bottom-up:
//!
//! * [`dual`]: dual numbers and dual extensions of analytic functions.
//! * [`minkowski`]: the Lorentzian inner and cross products.
//! * [`line`]: dual vectors and the encoding of oriented timelike lines.
//! * [`numerics`]: finite differences, quadrature and arc-length maps.
//! * [`surface`]: the real and dual Darboux apparatus of a ruled surface.
//! * [`offset`]: Mannheim offset construction and its consistency checks.
//!
//! ```
//! use ruledkit::{dual_apparatus, synth_constant_invariant};
//!
//! let m = synth_constant_invariant(0.5, 0.3, 0.2, (0.0, 2.0), 256).unwrap();
//! let app = dual_apparatus(&m).unwrap();
//! assert!((app.gamma_bar[0].du - 0.4).abs() < 1e-12);
//! ```

pub mod dual;
pub mod fixtures;
pub mod line;
pub mod minkowski;
pub mod numerics;
pub mod offset;
pub mod surface;

use thiserror::Error;

pub use dual::{dual_apply, dual_arith, DualError, DualFn, DualOp, DualScalar, EPSILON};
pub use line::{dcross, decode_line_point, dinner, dnorm, dual_angle, encode_line, DualAngle, DualVec3, LineError};
pub use minkowski::{causal_classify, det, lcross, linner, CausalClass, CausalTag, MVec3};
pub use numerics::{NumericsError, SampledCurve};
pub use offset::{
    consistency_report, construct_offset, developability_predicates, mannheim_parallelism_residual,
    offset_angle_profile, offset_closed_forms, ClosedForms, Formula, OffsetError, OffsetModel, OffsetReport,
    OffsetSpec, Verdict,
};
pub use surface::{
    apparatus_from_invariants, build_surface, classify, dual_apparatus, synth_constant_invariant, BuildConfig,
    Classification, DarbouxBranch, DualApparatus, RhoPair, RuledSurfaceModel, SurfaceError,
};

/// Any error raised by the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Dual(#[from] DualError),
    #[error(transparent)]
    Line(#[from] LineError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Offset(#[from] OffsetError),
}

impl Error {
    /// True for failures caused by the geometry degenerating (a stalled
    /// indicatrix, a null Darboux axis, a vanishing offset angle), false for
    /// malformed input.
    pub fn is_degeneracy(&self) -> bool {
        match self {
            Error::Dual(_) => true,
            Error::Line(e) => line_degenerate(e),
            Error::Numerics(e) => numerics_degenerate(e),
            Error::Surface(e) => surface_degenerate(e),
            Error::Offset(e) => match e {
                OffsetError::DegenerateWindow { .. }
                | OffsetError::VanishingConicalCurvature { .. }
                | OffsetError::DegenerateOffsetIndicatrix { .. }
                | OffsetError::DegeneratePoint { .. } => true,
                OffsetError::MismatchedInputs | OffsetError::SampleOutOfRange { .. } => false,
                OffsetError::Line(e) => line_degenerate(e),
                OffsetError::Surface(e) => surface_degenerate(e),
                OffsetError::Numerics(e) => numerics_degenerate(e),
            },
        }
    }
}

fn line_degenerate(e: &LineError) -> bool {
    matches!(e, LineError::ParallelLines { .. } | LineError::InvalidLine { .. })
}

fn numerics_degenerate(e: &NumericsError) -> bool {
    matches!(e, NumericsError::DegenerateSpeed { .. })
}

fn surface_degenerate(e: &SurfaceError) -> bool {
    match e {
        SurfaceError::DegenerateIndicatrix { .. }
        | SurfaceError::FrameDriftExceeded { .. }
        | SurfaceError::NullDarbouxAxis { .. } => true,
        SurfaceError::NotTimelikeDirector { .. } | SurfaceError::GammaOutOfRange(_) | SurfaceError::GridMismatch => false,
        SurfaceError::Numerics(e) => numerics_degenerate(e),
    }
}
