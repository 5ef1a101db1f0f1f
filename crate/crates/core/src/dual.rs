//! Dual numbers `a + εa*` with `ε² = 0`.
//!
//! Every dual quantity of the kernel (dual arc length, dual conical
//! curvature, dual radius of curvature, dual angles) is carried by
//! [`DualScalar`]. Analytic functions extend through
//! `f(x + εx*) = f(x) + εx*·f'(x)`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DualError {
    #[error("DivisionByPureDual: divisor {0} has zero real part")]
    DivisionByPureDual(DualScalar),
    #[error("DomainError: {function} is undefined at real part {re}")]
    Domain { function: &'static str, re: f64 },
}

/// A dual number. Equality is exact on both parts, ordering looks at the
/// real part only.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DualScalar {
    pub re: f64,
    pub du: f64,
}

/// The dual unit.
pub const EPSILON: DualScalar = DualScalar { re: 0.0, du: 1.0 };

impl DualScalar {
    pub const ZERO: DualScalar = DualScalar { re: 0.0, du: 0.0 };
    pub const ONE: DualScalar = DualScalar { re: 1.0, du: 0.0 };

    #[inline]
    pub const fn new(re: f64, du: f64) -> Self {
        Self { re, du }
    }

    #[inline]
    pub const fn real(re: f64) -> Self {
        Self { re, du: 0.0 }
    }

    /// Ring inverse. Fails for pure duals (zero divisors).
    pub fn recip(self) -> Result<Self, DualError> {
        Self::ONE.checked_div(self)
    }

    /// The unique `z` with `z·rhs = self`.
    pub fn checked_div(self, rhs: Self) -> Result<Self, DualError> {
        if rhs.re == 0.0 {
            return Err(DualError::DivisionByPureDual(rhs));
        }
        Ok(Self {
            re: self.re / rhs.re,
            du: (self.du * rhs.re - self.re * rhs.du) / (rhs.re * rhs.re),
        })
    }

    /// `|x|` decided by the sign of the real part: negates both parts when
    /// `re < 0`.
    pub fn abs(self) -> Self {
        if self.re < 0.0 {
            -self
        } else {
            self
        }
    }

    pub fn scale(self, k: f64) -> Self {
        Self::new(self.re * k, self.du * k)
    }

    pub fn is_finite(self) -> bool {
        self.re.is_finite() && self.du.is_finite()
    }

    /// Largest componentwise deviation from `other`.
    pub fn max_abs_diff(self, other: Self) -> f64 {
        (self.re - other.re).abs().max((self.du - other.du).abs())
    }

    pub fn apply(self, f: DualFn) -> Result<Self, DualError> {
        dual_apply(f, self)
    }

    pub fn cosh(self) -> Self {
        Self::new(self.re.cosh(), self.du * self.re.sinh())
    }

    pub fn sinh(self) -> Self {
        Self::new(self.re.sinh(), self.du * self.re.cosh())
    }

    pub fn tanh(self) -> Self {
        let c = self.re.cosh();
        Self::new(self.re.tanh(), self.du / (c * c))
    }

    pub fn sqrt(self) -> Result<Self, DualError> {
        dual_apply(DualFn::Sqrt, self)
    }
}

impl fmt::Display for DualScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.re, self.du)
    }
}

impl PartialOrd for DualScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.re.partial_cmp(&other.re)
    }
}

impl From<f64> for DualScalar {
    fn from(re: f64) -> Self {
        Self::real(re)
    }
}

impl Add for DualScalar {
    type Output = Self;
    #[inline]
    fn add(self, rhs: Self) -> Self {
        Self::new(self.re + rhs.re, self.du + rhs.du)
    }
}

impl Sub for DualScalar {
    type Output = Self;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.re - rhs.re, self.du - rhs.du)
    }
}

impl Mul for DualScalar {
    type Output = Self;
    #[inline]
    fn mul(self, rhs: Self) -> Self {
        Self::new(self.re * rhs.re, self.re * rhs.du + self.du * rhs.re)
    }
}

impl Mul<f64> for DualScalar {
    type Output = Self;
    #[inline]
    fn mul(self, rhs: f64) -> Self {
        self.scale(rhs)
    }
}

/// Panics on pure-dual divisors; use [`DualScalar::checked_div`] when the
/// divisor may have a zero real part.
impl Div for DualScalar {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        self.checked_div(rhs).expect("dual division by a pure dual")
    }
}

impl Neg for DualScalar {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self::new(-self.re, -self.du)
    }
}

impl AddAssign for DualScalar {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl SubAssign for DualScalar {
    fn sub_assign(&mut self, rhs: Self) {
        *self = *self - rhs;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DualOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn dual_arith(op: DualOp, x: DualScalar, y: DualScalar) -> Result<DualScalar, DualError> {
    match op {
        DualOp::Add => Ok(x + y),
        DualOp::Sub => Ok(x - y),
        DualOp::Mul => Ok(x * y),
        DualOp::Div => x.checked_div(y),
    }
}

/// Real functions with a dual extension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DualFn {
    Cosh,
    Sinh,
    Tanh,
    Coth,
    Sqrt,
    Arccosh,
    Artanh,
}

impl DualFn {
    pub const ALL: [DualFn; 7] = [
        DualFn::Cosh,
        DualFn::Sinh,
        DualFn::Tanh,
        DualFn::Coth,
        DualFn::Sqrt,
        DualFn::Arccosh,
        DualFn::Artanh,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DualFn::Cosh => "cosh",
            DualFn::Sinh => "sinh",
            DualFn::Tanh => "tanh",
            DualFn::Coth => "coth",
            DualFn::Sqrt => "sqrt",
            DualFn::Arccosh => "arccosh",
            DualFn::Artanh => "artanh",
        }
    }

    pub fn in_domain(self, x: f64) -> bool {
        if !x.is_finite() {
            return false;
        }
        match self {
            DualFn::Cosh | DualFn::Sinh | DualFn::Tanh => true,
            DualFn::Coth => x != 0.0,
            DualFn::Sqrt => x > 0.0,
            DualFn::Arccosh => x > 1.0,
            DualFn::Artanh => x.abs() < 1.0,
        }
    }

    /// `(f(x), f'(x))` on the real line.
    pub fn value_and_derivative(self, x: f64) -> (f64, f64) {
        match self {
            DualFn::Cosh => (x.cosh(), x.sinh()),
            DualFn::Sinh => (x.sinh(), x.cosh()),
            DualFn::Tanh => {
                let c = x.cosh();
                (x.tanh(), 1.0 / (c * c))
            }
            DualFn::Coth => {
                let s = x.sinh();
                (1.0 / x.tanh(), -1.0 / (s * s))
            }
            DualFn::Sqrt => {
                let r = x.sqrt();
                (r, 0.5 / r)
            }
            DualFn::Arccosh => (x.acosh(), 1.0 / ((x - 1.0).sqrt() * (x + 1.0).sqrt())),
            DualFn::Artanh => (x.atanh(), 1.0 / (1.0 - x * x)),
        }
    }
}

pub fn dual_apply(f: DualFn, x: DualScalar) -> Result<DualScalar, DualError> {
    if !f.in_domain(x.re) {
        return Err(DualError::Domain {
            function: f.name(),
            re: x.re,
        });
    }
    let (v, d) = f.value_and_derivative(x.re);
    Ok(DualScalar::new(v, x.du * d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn multiplication_rule() {
        let z = dual_arith(DualOp::Mul, DualScalar::new(2.0, 3.0), DualScalar::new(4.0, 5.0)).unwrap();
        assert_eq!(z, DualScalar::new(8.0, 22.0));
    }

    #[test]
    fn epsilon_squares_to_zero() {
        assert_eq!(EPSILON * EPSILON, DualScalar::ZERO);
        assert_ne!(EPSILON, DualScalar::ZERO);
    }

    #[test]
    fn division_inverts_multiplication() {
        let x = DualScalar::new(1.0, 2.0);
        let y = DualScalar::new(2.0, 1.0);
        let z = dual_arith(DualOp::Div, x, y).unwrap();
        assert_eq!(z, DualScalar::new(0.5, 0.75));
        assert_eq!(z * y, x);
    }

    #[test]
    fn division_by_pure_dual_fails() {
        let err = DualScalar::ONE.checked_div(EPSILON).unwrap_err();
        assert!(matches!(err, DualError::DivisionByPureDual(_)));
    }

    #[test]
    fn function_examples() {
        assert_eq!(dual_apply(DualFn::Cosh, DualScalar::new(0.0, 7.0)).unwrap(), DualScalar::new(1.0, 0.0));
        assert_eq!(dual_apply(DualFn::Sqrt, DualScalar::new(4.0, 2.0)).unwrap(), DualScalar::new(2.0, 0.5));

        let s = dual_apply(DualFn::Sinh, DualScalar::new(1.0, 0.5)).unwrap();
        let h = 1e-6;
        let fd = ((1.0f64 + 0.5 * h).sinh() - (1.0f64 - 0.5 * h).sinh()) / (2.0 * h);
        assert_abs_diff_eq!(s.re, 1.175201, epsilon = 1e-6);
        assert_abs_diff_eq!(s.du, 0.771540, epsilon = 1e-6);
        assert_abs_diff_eq!(s.du, fd, epsilon = 1e-8);
    }

    #[test]
    fn domain_errors_name_the_function() {
        for (f, x) in [
            (DualFn::Sqrt, 0.0),
            (DualFn::Sqrt, -1.0),
            (DualFn::Coth, 0.0),
            (DualFn::Arccosh, 1.0),
            (DualFn::Artanh, 1.0),
            (DualFn::Artanh, -2.0),
        ] {
            match dual_apply(f, DualScalar::new(x, 1.0)) {
                Err(DualError::Domain { function, re }) => {
                    assert_eq!(function, f.name());
                    assert_eq!(re, x);
                }
                other => panic!("{f:?} at {x}: {other:?}"),
            }
        }
    }

    #[test]
    fn ordering_uses_real_part_only() {
        let a = DualScalar::new(1.0, 100.0);
        let b = DualScalar::new(2.0, -100.0);
        assert!(a < b);
        assert_eq!(a.partial_cmp(&DualScalar::new(1.0, 0.0)), Some(Ordering::Equal));
        assert_ne!(a, DualScalar::new(1.0, 0.0));
    }

    #[test]
    fn abs_flips_both_parts() {
        assert_eq!(DualScalar::new(-0.5, 0.25).abs(), DualScalar::new(0.5, -0.25));
        assert_eq!(DualScalar::new(0.5, 0.25).abs(), DualScalar::new(0.5, 0.25));
    }
}
