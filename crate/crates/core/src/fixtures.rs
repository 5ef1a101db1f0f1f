//! Reference surfaces with known invariants.

use crate::minkowski::MVec3;
use crate::numerics::SampledCurve;
use crate::surface::{build_surface, synth_constant_invariant, BuildConfig, ConstantInvariantFrame, RuledSurfaceModel, SurfaceError};

/// Director `(cosh u, sinh u, 0)` along the axis `(0, 0, u)`: `γ = δ = 0`,
/// `Δ = 1`, and the base curve is already the striction curve.
pub fn planar_hyperbola(s_range: (f64, f64), samples: usize) -> Result<RuledSurfaceModel, SurfaceError> {
    let dir = SampledCurve::from_fn(s_range.0, s_range.1, samples, |u| MVec3::new(u.cosh(), u.sinh(), 0.0))?;
    let base = SampledCurve::from_fn(s_range.0, s_range.1, samples, |u| MVec3::new(0.0, 0.0, u))?;
    build_surface(&dir, &base, &BuildConfig::default())
}

/// Default cone director `(A cosh u, A sinh u, B)` with `A = 2/√3`,
/// `B = −1/√3`. Its indicatrix has speed `A`, so `u` is not arc length,
/// and the resulting cone has `γ = 1/2`.
pub fn cone_director(u: f64) -> MVec3 {
    let a = 2.0 / 3f64.sqrt();
    let b = -1.0 / 3f64.sqrt();
    MVec3::new(a * u.cosh(), a * u.sinh(), b)
}

/// Cone with vertex `apex` ruled by [`cone_director`].
pub fn cone(apex: MVec3, s_range: (f64, f64), samples: usize) -> Result<RuledSurfaceModel, SurfaceError> {
    let dir = SampledCurve::from_fn(s_range.0, s_range.1, samples, cone_director)?;
    cone_with_director(apex, &dir)
}

/// Cone with vertex `apex` ruled by sampled directions.
pub fn cone_with_director(apex: MVec3, director: &SampledCurve) -> Result<RuledSurfaceModel, SurfaceError> {
    let base = SampledCurve::new(director.params().to_vec(), vec![apex; director.len()])?;
    build_surface(director, &base, &BuildConfig::default())
}

/// The constant-invariant surface rebuilt by the numerical pipeline from
/// its sampled director and striction curve, instead of taking the frame
/// and invariants from the closed forms as [`synth_constant_invariant`]
/// does.
pub fn constant_invariant_sampled(
    gamma: f64,
    delta: f64,
    big_delta: f64,
    s_range: (f64, f64),
    samples: usize,
) -> Result<RuledSurfaceModel, SurfaceError> {
    // Validates the parameters with the same errors as the closed form.
    synth_constant_invariant(gamma, delta, big_delta, s_range, samples)?;
    let f = ConstantInvariantFrame::new(gamma, delta, big_delta);
    let dir = SampledCurve::from_fn(s_range.0, s_range.1, samples, |s| f.director(s))?;
    let base = SampledCurve::from_fn(s_range.0, s_range.1, samples, |s| f.striction(s))?;
    let cfg = BuildConfig {
        dual_arc_origin: big_delta * s_range.0,
        ..BuildConfig::default()
    };
    build_surface(&dir, &base, &cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn max_dev(v: &[f64], target: f64) -> f64 {
        v.iter().fold(0.0f64, |a, x| a.max((x - target).abs()))
    }

    #[test]
    fn rebuilt_constant_fixture_matches_closed_form() {
        let m = constant_invariant_sampled(0.5, 0.3, 0.2, (0.0, 2.0), 1024).unwrap();
        assert!(max_dev(&m.conical_curvature, 0.5) < 1e-6);
        assert!(max_dev(&m.striction_axial, 0.3) < 1e-6);
        assert!(max_dev(&m.striction_normal, 0.2) < 1e-6);
        assert!(m.frame_residuals().max() < 1e-5);
    }

    #[test]
    fn default_cone() {
        let m = cone(MVec3::new(1.0, 2.0, 3.0), (0.0, 2.0), 1024).unwrap();
        assert!(max_dev(&m.conical_curvature, 0.5) < 1e-6);
        assert!((m.length() - 2.0 * 2.0 / 3f64.sqrt()).abs() < 1e-9);
        assert!(m.frame_residuals().max() < 1e-5);
    }
}
