//! Dual Lorentzian vectors and the line encoding `ã = a + εa*`.
//!
//! A directed timelike line through `p` with unit timelike direction `a`
//! maps to the dual vector `(a, p × a)`. The pair satisfies
//! `⟨a,a⟩ = −1` and `⟨a,a*⟩ = 0`; any point of the line gives the same
//! moment, and `a × a*` recovers the foot point.

use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

use crate::dual::DualScalar;
use crate::minkowski::{causal_classify, lcross, linner, CausalTag, MVec3, DEFAULT_NULL_TOL};

/// Tolerance for accepting a direction as already unit.
pub const UNIT_TOL: f64 = 1e-9;
/// Directions within this of unit are silently renormalized.
pub const RENORMALIZE_TOL: f64 = 1e-6;
/// Tolerance on the normalized Plücker constraints when decoding.
pub const PLUCKER_TOL: f64 = 1e-6;
/// `sinh θ` below this makes the dual angle's dual part undefined.
pub const PARALLEL_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LineError {
    #[error("NullDirection: direction {0} is null")]
    NullDirection(MVec3),
    #[error("NotTimelike: direction {0} is not timelike")]
    NotTimelike(MVec3),
    #[error("NotUnit: direction {direction} has ⟨a,a⟩ = {norm_sq}, expected -1")]
    NotUnit { direction: MVec3, norm_sq: f64 },
    #[error("InvalidLine: Plücker constraints violated (⟨a,a⟩ + 1 = {unit_residual:e}, ⟨a,a*⟩ = {moment_residual:e})")]
    InvalidLine {
        unit_residual: f64,
        moment_residual: f64,
    },
    #[error("ParallelLines: lines are parallel (θ = {theta}), offset distance undefined")]
    ParallelLines { theta: f64 },
    #[error("TimeConeMismatch: directions lie in opposite time cones (⟨a,b⟩ = {0})")]
    TimeConeMismatch(f64),
}

/// Dual vector `re + ε·du`; for lines `re` is the direction and `du` the
/// moment.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DualVec3 {
    pub re: MVec3,
    pub du: MVec3,
}

impl DualVec3 {
    pub const ZERO: DualVec3 = DualVec3 {
        re: MVec3::ZERO,
        du: MVec3::ZERO,
    };

    pub const fn new(re: MVec3, du: MVec3) -> Self {
        Self { re, du }
    }

    pub fn real(re: MVec3) -> Self {
        Self::new(re, MVec3::ZERO)
    }

    pub fn dinner(self, other: Self) -> DualScalar {
        dinner(self, other)
    }

    pub fn dcross(self, other: Self) -> Self {
        dcross(self, other)
    }

    pub fn scale(self, k: f64) -> Self {
        Self::new(self.re * k, self.du * k)
    }

    /// Divide by a dual scalar with nonzero real part.
    pub fn div_dual(self, d: DualScalar) -> Option<Self> {
        if d.re == 0.0 {
            return None;
        }
        let r = self.re / d.re;
        Some(Self::new(r, (self.du - r * d.du) / d.re))
    }

    /// Largest absolute coordinate across both parts.
    pub fn max_abs(self) -> f64 {
        self.re.max_abs().max(self.du.max_abs())
    }

    /// `(|⟨a,a⟩ + 1|, |⟨a,a*⟩|)`.
    pub fn plucker_residuals(self) -> (f64, f64) {
        (
            (linner(self.re, self.re) + 1.0).abs(),
            linner(self.re, self.du).abs(),
        )
    }
}

impl Add for DualVec3 {
    type Output = Self;
    fn add(self, r: Self) -> Self {
        Self::new(self.re + r.re, self.du + r.du)
    }
}

impl Sub for DualVec3 {
    type Output = Self;
    fn sub(self, r: Self) -> Self {
        Self::new(self.re - r.re, self.du - r.du)
    }
}

impl Neg for DualVec3 {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.re, -self.du)
    }
}

impl Mul<f64> for DualVec3 {
    type Output = Self;
    fn mul(self, k: f64) -> Self {
        self.scale(k)
    }
}

impl Mul<DualVec3> for DualScalar {
    type Output = DualVec3;
    fn mul(self, v: DualVec3) -> DualVec3 {
        DualVec3::new(v.re * self.re, v.du * self.re + v.re * self.du)
    }
}

/// `⟨a,b⟩ + ε(⟨a,b*⟩ + ⟨a*,b⟩)`.
pub fn dinner(a: DualVec3, b: DualVec3) -> DualScalar {
    DualScalar::new(
        linner(a.re, b.re),
        linner(a.re, b.du) + linner(a.du, b.re),
    )
}

/// `a×b + ε(a×b* + a*×b)`.
pub fn dcross(a: DualVec3, b: DualVec3) -> DualVec3 {
    DualVec3::new(
        lcross(a.re, b.re),
        lcross(a.re, b.du) + lcross(a.du, b.re),
    )
}

/// `‖a‖ + ε⟨a,a*⟩/‖a‖` with `‖a‖ = √|⟨a,a⟩|`.
pub fn dnorm(a: DualVec3) -> Result<DualScalar, LineError> {
    if causal_classify(a.re, DEFAULT_NULL_TOL).tag == CausalTag::Null || a.re.euclid_norm() == 0.0 {
        return Err(LineError::NullDirection(a.re));
    }
    let n = a.re.lnorm();
    Ok(DualScalar::new(n, linner(a.re, a.du) / n))
}

fn unit_timelike(direction: MVec3) -> Result<MVec3, LineError> {
    match causal_classify(direction, DEFAULT_NULL_TOL).tag {
        CausalTag::Timelike => {}
        CausalTag::Null => return Err(LineError::NullDirection(direction)),
        CausalTag::Spacelike => return Err(LineError::NotTimelike(direction)),
    }
    let q = linner(direction, direction);
    let dev = (q + 1.0).abs();
    if dev <= UNIT_TOL {
        Ok(direction)
    } else if dev <= RENORMALIZE_TOL {
        Ok(direction.normalized())
    } else {
        Err(LineError::NotUnit {
            direction,
            norm_sq: q,
        })
    }
}

/// Encode the directed line through `point` with unit timelike `direction`.
pub fn encode_line(direction: MVec3, point: MVec3) -> Result<DualVec3, LineError> {
    let a = unit_timelike(direction)?;
    Ok(DualVec3::new(a, lcross(point, a)))
}

/// Foot point `a × a*` of an encoded line.
pub fn decode_line_point(a: DualVec3) -> Result<MVec3, LineError> {
    let (unit_residual, moment_residual) = a.plucker_residuals();
    let scale = 1.0f64.max(a.du.euclid_norm());
    if causal_classify(a.re, DEFAULT_NULL_TOL).tag != CausalTag::Timelike
        || unit_residual > PLUCKER_TOL
        || moment_residual > PLUCKER_TOL * scale
    {
        return Err(LineError::InvalidLine {
            unit_residual,
            moment_residual,
        });
    }
    Ok(lcross(a.re, a.du))
}

/// Dual hyperbolic angle `θ + εθ*` between two directed timelike lines.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DualAngle {
    pub theta: f64,
    pub theta_star: f64,
}

impl DualAngle {
    pub fn as_dual(self) -> DualScalar {
        DualScalar::new(self.theta, self.theta_star)
    }
}

/// Solve `⟨a,b⟩ = −cosh θ̄` for unit timelike lines. `θ ≥ 0`; the sign of
/// `θ*` carries orientation.
pub fn dual_angle(a: DualVec3, b: DualVec3) -> Result<DualAngle, LineError> {
    for v in [a, b] {
        unit_timelike(v.re)?;
    }
    let p = dinner(a, b);
    let c = -p.re;
    if c < 1.0 - RENORMALIZE_TOL {
        return Err(LineError::TimeConeMismatch(p.re));
    }
    let theta = c.max(1.0).acosh();
    let sh = theta.sinh();
    if sh < PARALLEL_TOL {
        return Err(LineError::ParallelLines { theta });
    }
    Ok(DualAngle {
        theta,
        theta_star: -p.du / sh,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn v(a: f64, b: f64, c: f64) -> MVec3 {
        MVec3::new(a, b, c)
    }

    fn skew_pair() -> (DualVec3, DualVec3) {
        let a = encode_line(v(1.0, 0.0, 0.0), MVec3::ZERO).unwrap();
        let dir = v(1f64.cosh(), 1f64.sinh(), 0.0);
        let b = encode_line(dir, v(0.0, 0.0, 2.0)).unwrap();
        (a, b)
    }

    #[test]
    fn dinner_examples() {
        let e = DualVec3::real(v(1.0, 0.0, 0.0));
        assert_eq!(dinner(e, e), DualScalar::new(-1.0, 0.0));

        let (a, b) = skew_pair();
        assert_abs_diff_eq!(b.du.x0, -2.0 * 1f64.sinh(), epsilon = 1e-15);
        assert_abs_diff_eq!(b.du.x1, -2.0 * 1f64.cosh(), epsilon = 1e-15);
        let p = dinner(a, b);
        assert_abs_diff_eq!(p.re, -1.543081, epsilon = 1e-6);
        assert_abs_diff_eq!(p.du, 2.350402, epsilon = 1e-6);

        let c = v(0.4, -1.0, 2.5);
        let dir = v(1.0, 0.0, 0.0);
        let l = DualVec3::new(dir, lcross(c, dir));
        assert_eq!(dinner(l, l), DualScalar::new(-1.0, 0.0));
    }

    #[test]
    fn dcross_examples() {
        let a = DualVec3::real(v(1.0, 0.0, 0.0));
        let b = DualVec3::real(v(0.0, 1.0, 0.0));
        assert_eq!(dcross(a, b), DualVec3::new(v(0.0, 0.0, -1.0), MVec3::ZERO));
        assert_eq!(-dcross(a, b), DualVec3::new(v(0.0, 0.0, 1.0), MVec3::ZERO));
        let (l, _) = skew_pair();
        let m = DualVec3::new(v(0.3, 1.0, 2.0), v(-1.0, 0.5, 0.25));
        assert_eq!(dcross(m, m), DualVec3::ZERO);
        assert_eq!(dcross(l, l), DualVec3::ZERO);
    }

    #[test]
    fn dnorm_examples() {
        assert_eq!(dnorm(DualVec3::new(v(2.0, 0.0, 0.0), v(0.0, 1.0, 0.0))).unwrap(), DualScalar::new(2.0, 0.0));
        assert_eq!(dnorm(DualVec3::new(v(2.0, 0.0, 0.0), v(1.0, 0.0, 0.0))).unwrap(), DualScalar::new(2.0, -1.0));
        assert_eq!(dnorm(DualVec3::new(v(1.0, 0.0, 0.0), v(0.0, -2.0, 0.0))).unwrap(), DualScalar::new(1.0, 0.0));
        assert!(matches!(
            dnorm(DualVec3::new(v(1.0, 1.0, 0.0), MVec3::ZERO)),
            Err(LineError::NullDirection(_))
        ));
    }

    #[test]
    fn encode_examples() {
        let dir = v(1.0, 0.0, 0.0);
        assert_eq!(encode_line(dir, v(0.0, 0.0, 2.0)).unwrap(), DualVec3::new(dir, v(0.0, -2.0, 0.0)));
        assert_eq!(encode_line(dir, MVec3::ZERO).unwrap(), DualVec3::real(dir));
        assert_eq!(encode_line(dir, v(5.0, 0.0, 2.0)).unwrap(), DualVec3::new(dir, v(0.0, -2.0, 0.0)));
    }

    #[test]
    fn encode_rejects_bad_directions() {
        assert!(matches!(encode_line(v(0.0, 1.0, 0.0), MVec3::ZERO), Err(LineError::NotTimelike(_))));
        assert!(matches!(encode_line(v(1.0, 1.0, 0.0), MVec3::ZERO), Err(LineError::NullDirection(_))));
        assert!(matches!(encode_line(v(2.0, 0.0, 0.0), MVec3::ZERO), Err(LineError::NotUnit { .. })));
        let nearly = v(1.0 + 2e-7, 0.0, 0.0);
        let l = encode_line(nearly, MVec3::ZERO).unwrap();
        assert_abs_diff_eq!(linner(l.re, l.re), -1.0, epsilon = 1e-15);
    }

    #[test]
    fn decode_examples() {
        assert_eq!(
            decode_line_point(DualVec3::new(v(1.0, 0.0, 0.0), v(0.0, -2.0, 0.0))).unwrap(),
            v(0.0, 0.0, 2.0)
        );
        assert_eq!(decode_line_point(DualVec3::real(v(1.0, 0.0, 0.0))).unwrap(), MVec3::ZERO);
        assert!(matches!(
            decode_line_point(DualVec3::new(v(1.0, 1.0, 0.0), v(0.0, 0.0, 1.0))),
            Err(LineError::InvalidLine { .. })
        ));
        let p = decode_line_point(DualVec3::new(v(1.0, 0.0, 0.0), v(0.0, -2.0, 0.0))).unwrap();
        assert_eq!(encode_line(v(1.0, 0.0, 0.0), p).unwrap().du, v(0.0, -2.0, 0.0));
    }

    #[test]
    fn dual_angle_examples() {
        let (a, b) = skew_pair();
        assert!(matches!(dual_angle(a, a), Err(LineError::ParallelLines { theta }) if theta == 0.0));

        let ang = dual_angle(a, b).unwrap();
        assert_abs_diff_eq!(ang.theta, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(ang.theta_star, -2.0, epsilon = 1e-12);

        let th = DualScalar::new(0.7, 0.25);
        let t = DualVec3::real(v(0.0, 1.0, 0.0));
        let b = th.cosh() * a + th.sinh() * t;
        let ang = dual_angle(a, b).unwrap();
        assert_abs_diff_eq!(ang.theta, 0.7, epsilon = 1e-12);
        assert_abs_diff_eq!(ang.theta_star, 0.25, epsilon = 1e-12);
    }

    #[test]
    fn dual_angle_rejects_opposite_cones() {
        let a = DualVec3::real(v(1.0, 0.0, 0.0));
        let b = DualVec3::real(v(-1.0, 0.0, 0.0));
        assert!(matches!(dual_angle(a, b), Err(LineError::TimeConeMismatch(_))));
    }
}
