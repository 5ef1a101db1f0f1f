//! Minkowski 3-space with metric `diag(-1, +1, +1)`.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

/// Default tolerance for null classification.
pub const DEFAULT_NULL_TOL: f64 = 1e-9;

/// A real 3-vector in Minkowski space. `x0` is the timelike coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct MVec3 {
    pub x0: f64,
    pub x1: f64,
    pub x2: f64,
}

impl MVec3 {
    pub const ZERO: MVec3 = MVec3::new(0.0, 0.0, 0.0);

    #[inline]
    pub const fn new(x0: f64, x1: f64, x2: f64) -> Self {
        Self { x0, x1, x2 }
    }

    pub fn from_array(a: [f64; 3]) -> Self {
        Self::new(a[0], a[1], a[2])
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x0, self.x1, self.x2]
    }

    #[inline]
    pub fn linner(self, other: Self) -> f64 {
        linner(self, other)
    }

    #[inline]
    pub fn lcross(self, other: Self) -> Self {
        lcross(self, other)
    }

    /// `√|⟨a,a⟩|`.
    pub fn lnorm(self) -> f64 {
        self.linner(self).abs().sqrt()
    }

    pub fn euclid_norm_sq(self) -> f64 {
        self.x0 * self.x0 + self.x1 * self.x1 + self.x2 * self.x2
    }

    pub fn euclid_norm(self) -> f64 {
        self.euclid_norm_sq().sqrt()
    }

    /// Largest absolute coordinate.
    pub fn max_abs(self) -> f64 {
        self.x0.abs().max(self.x1.abs()).max(self.x2.abs())
    }

    pub fn is_finite(self) -> bool {
        self.x0.is_finite() && self.x1.is_finite() && self.x2.is_finite()
    }

    /// Rescale to `|⟨a,a⟩| = 1`, keeping the causal character.
    pub fn normalized(self) -> Self {
        self / self.lnorm()
    }

    pub fn classify(self, tol: f64) -> CausalClass {
        causal_classify(self, tol)
    }
}

impl fmt::Display for MVec3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x0, self.x1, self.x2)
    }
}

impl From<[f64; 3]> for MVec3 {
    fn from(a: [f64; 3]) -> Self {
        Self::from_array(a)
    }
}

impl Add for MVec3 {
    type Output = Self;
    #[inline]
    fn add(self, r: Self) -> Self {
        Self::new(self.x0 + r.x0, self.x1 + r.x1, self.x2 + r.x2)
    }
}

impl Sub for MVec3 {
    type Output = Self;
    #[inline]
    fn sub(self, r: Self) -> Self {
        Self::new(self.x0 - r.x0, self.x1 - r.x1, self.x2 - r.x2)
    }
}

impl Mul<f64> for MVec3 {
    type Output = Self;
    #[inline]
    fn mul(self, k: f64) -> Self {
        Self::new(self.x0 * k, self.x1 * k, self.x2 * k)
    }
}

impl Mul<MVec3> for f64 {
    type Output = MVec3;
    #[inline]
    fn mul(self, v: MVec3) -> MVec3 {
        v * self
    }
}

impl Div<f64> for MVec3 {
    type Output = Self;
    #[inline]
    fn div(self, k: f64) -> Self {
        Self::new(self.x0 / k, self.x1 / k, self.x2 / k)
    }
}

impl Neg for MVec3 {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self::new(-self.x0, -self.x1, -self.x2)
    }
}

impl AddAssign for MVec3 {
    fn add_assign(&mut self, r: Self) {
        *self = *self + r;
    }
}

impl SubAssign for MVec3 {
    fn sub_assign(&mut self, r: Self) {
        *self = *self - r;
    }
}

/// Lorentzian inner product `−a₀b₀ + a₁b₁ + a₂b₂`.
#[inline]
pub fn linner(a: MVec3, b: MVec3) -> f64 {
    -a.x0 * b.x0 + a.x1 * b.x1 + a.x2 * b.x2
}

/// Lorentzian cross product. Satisfies `⟨a×b, c⟩ = −det(a, b, c)`.
#[inline]
pub fn lcross(a: MVec3, b: MVec3) -> MVec3 {
    MVec3::new(
        a.x1 * b.x2 - a.x2 * b.x1,
        a.x0 * b.x2 - a.x2 * b.x0,
        a.x1 * b.x0 - a.x0 * b.x1,
    )
}

/// Determinant of the matrix whose rows are `a`, `b`, `c` in that order.
pub fn det(a: MVec3, b: MVec3, c: MVec3) -> f64 {
    a.x0 * (b.x1 * c.x2 - b.x2 * c.x1) - a.x1 * (b.x0 * c.x2 - b.x2 * c.x0)
        + a.x2 * (b.x0 * c.x1 - b.x1 * c.x0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CausalTag {
    Timelike,
    Spacelike,
    Null,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CausalClass {
    pub tag: CausalTag,
    pub tolerance_used: f64,
}

/// Null when `|⟨a,a⟩| ≤ tol·max(1, |a|²)` (Euclidean `|a|`). A vector whose
/// Euclidean length is within `tol` of zero counts as spacelike.
pub fn causal_classify(a: MVec3, tol: f64) -> CausalClass {
    let tol = tol.max(0.0);
    let e2 = a.euclid_norm_sq();
    let tag = if e2.sqrt() <= tol {
        CausalTag::Spacelike
    } else {
        let q = linner(a, a);
        if q.abs() <= tol * e2.max(1.0) {
            CausalTag::Null
        } else if q < 0.0 {
            CausalTag::Timelike
        } else {
            CausalTag::Spacelike
        }
    };
    CausalClass {
        tag,
        tolerance_used: tol,
    }
}
