//! Grid differentiation, cumulative quadrature and arc-length resampling.
//!
//! Derivatives use fourth-order stencils throughout (central in the
//! interior, one-sided on the two outermost samples of each end), which is
//! what lets frame residual checks run at `1e-6` on 1024-sample grids.

use std::ops::{Add, Mul, Sub};

use thiserror::Error;

use crate::line::DualVec3;
use crate::minkowski::MVec3;

/// Minimum samples for the widest stencil.
pub const MIN_SAMPLES: usize = 9;
/// Relative tolerance on grid uniformity.
pub const UNIFORM_TOL: f64 = 1e-12;
/// Speeds at or below this stall the arc-length map.
pub const MIN_SPEED: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericsError {
    #[error("GridTooCoarse: {0} samples, need at least {MIN_SAMPLES}")]
    GridTooCoarse(usize),
    #[error("NonUniformGrid: spacing at sample {index} deviates by {deviation:e}")]
    NonUniformGrid { index: usize, deviation: f64 },
    #[error("NonMonotoneGrid: parameter not strictly increasing at sample {0}")]
    NonMonotoneGrid(usize),
    #[error("LengthMismatch: {params} parameters for {values} values")]
    LengthMismatch { params: usize, values: usize },
    #[error("DegenerateSpeed: speed {speed:e} at sample {index}")]
    DegenerateSpeed { index: usize, speed: f64 },
}

/// Values a stencil can combine.
pub trait Lin: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {
    fn zero() -> Self;
}

impl Lin for f64 {
    fn zero() -> Self {
        0.0
    }
}

impl Lin for MVec3 {
    fn zero() -> Self {
        MVec3::ZERO
    }
}

impl Lin for DualVec3 {
    fn zero() -> Self {
        DualVec3::ZERO
    }
}

/// A curve sampled on a strictly increasing parameter grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledCurve {
    params: Vec<f64>,
    values: Vec<MVec3>,
}

impl SampledCurve {
    pub fn new(params: Vec<f64>, values: Vec<MVec3>) -> Result<Self, NumericsError> {
        check_grid(&params, values.len())?;
        Ok(Self { params, values })
    }

    /// Sample `f` on `n` uniform points of `[lo, hi]`.
    pub fn from_fn(lo: f64, hi: f64, n: usize, f: impl Fn(f64) -> MVec3) -> Result<Self, NumericsError> {
        let params = linspace(lo, hi, n);
        let values = params.iter().map(|&u| f(u)).collect();
        Self::new(params, values)
    }

    pub fn params(&self) -> &[f64] {
        &self.params
    }

    pub fn values(&self) -> &[MVec3] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn into_parts(self) -> (Vec<f64>, Vec<MVec3>) {
        (self.params, self.values)
    }

    pub fn uniform_step(&self) -> Result<f64, NumericsError> {
        uniform_step(&self.params)
    }
}

fn check_grid(params: &[f64], n_values: usize) -> Result<(), NumericsError> {
    if params.len() != n_values {
        return Err(NumericsError::LengthMismatch {
            params: params.len(),
            values: n_values,
        });
    }
    if params.len() < MIN_SAMPLES {
        return Err(NumericsError::GridTooCoarse(params.len()));
    }
    if let Some(i) = params.windows(2).position(|w| !(w[1] > w[0])) {
        return Err(NumericsError::NonMonotoneGrid(i + 1));
    }
    Ok(())
}

/// `n` evenly spaced points from `lo` to `hi` inclusive.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let h = (hi - lo) / (n - 1) as f64;
            (0..n)
                .map(|i| if i == n - 1 { hi } else { lo + h * i as f64 })
                .collect()
        }
    }
}

/// Step of a uniform grid, or the first sample where spacing deviates.
pub fn uniform_step(params: &[f64]) -> Result<f64, NumericsError> {
    let n = params.len();
    if n < MIN_SAMPLES {
        return Err(NumericsError::GridTooCoarse(n));
    }
    let h = (params[n - 1] - params[0]) / (n - 1) as f64;
    let scale = h.abs() + params[0].abs().max(params[n - 1].abs());
    for (i, w) in params.windows(2).enumerate() {
        let dev = (w[1] - w[0] - h).abs();
        if dev > UNIFORM_TOL * scale {
            return Err(NumericsError::NonUniformGrid {
                index: i + 1,
                deviation: dev,
            });
        }
    }
    Ok(h)
}

/// First derivative on a uniform grid with step `h`.
pub fn diff1<T: Lin>(f: &[T], h: f64) -> Vec<T> {
    let n = f.len();
    assert!(n >= MIN_SAMPLES, "diff1 needs at least {MIN_SAMPLES} samples");
    let k = 1.0 / (12.0 * h);
    let mut out = vec![T::zero(); n];
    for i in 2..n - 2 {
        out[i] = (f[i - 2] - f[i - 1] * 8.0 + f[i + 1] * 8.0 - f[i + 2]) * k;
    }
    let fwd0 = |a: usize, s: f64| {
        (f[a] * -25.0 + f[sh(a, 1, s)] * 48.0 - f[sh(a, 2, s)] * 36.0 + f[sh(a, 3, s)] * 16.0
            - f[sh(a, 4, s)] * 3.0)
            * (k * s)
    };
    let fwd1 = |a: usize, s: f64| {
        (f[sh(a, -1, s)] * -3.0 - f[a] * 10.0 + f[sh(a, 1, s)] * 18.0 - f[sh(a, 2, s)] * 6.0
            + f[sh(a, 3, s)])
            * (k * s)
    };
    out[0] = fwd0(0, 1.0);
    out[1] = fwd1(1, 1.0);
    out[n - 1] = fwd0(n - 1, -1.0);
    out[n - 2] = fwd1(n - 2, -1.0);
    out
}

/// Second derivative on a uniform grid with step `h`.
pub fn diff2<T: Lin>(f: &[T], h: f64) -> Vec<T> {
    let n = f.len();
    assert!(n >= MIN_SAMPLES, "diff2 needs at least {MIN_SAMPLES} samples");
    let k = 1.0 / (12.0 * h * h);
    let mut out = vec![T::zero(); n];
    for i in 2..n - 2 {
        out[i] = (f[i - 1] * 16.0 - f[i - 2] - f[i] * 30.0 + f[i + 1] * 16.0 - f[i + 2]) * k;
    }
    let fwd0 = |a: usize, s: f64| {
        (f[a] * 45.0 - f[sh(a, 1, s)] * 154.0 + f[sh(a, 2, s)] * 214.0 - f[sh(a, 3, s)] * 156.0
            + f[sh(a, 4, s)] * 61.0
            - f[sh(a, 5, s)] * 10.0)
            * k
    };
    let fwd1 = |a: usize, s: f64| {
        (f[sh(a, -1, s)] * 10.0 - f[a] * 15.0 - f[sh(a, 1, s)] * 4.0 + f[sh(a, 2, s)] * 14.0
            - f[sh(a, 3, s)] * 6.0
            + f[sh(a, 4, s)])
            * k
    };
    out[0] = fwd0(0, 1.0);
    out[1] = fwd1(1, 1.0);
    out[n - 1] = fwd0(n - 1, -1.0);
    out[n - 2] = fwd1(n - 2, -1.0);
    out
}

// Index `a + d` for forward stencils (s = 1) or `a - d` for mirrored ones.
#[inline]
fn sh(a: usize, d: i64, s: f64) -> usize {
    let d = if s > 0.0 { d } else { -d };
    (a as i64 + d) as usize
}

/// Derivative of a sampled curve on its own (uniform) grid.
pub fn derivative(c: &SampledCurve, order: u8) -> Result<SampledCurve, NumericsError> {
    let h = c.uniform_step()?;
    let values = match order {
        1 => diff1(&c.values, h),
        2 => diff2(&c.values, h),
        _ => panic!("derivative order must be 1 or 2, got {order}"),
    };
    Ok(SampledCurve {
        params: c.params.clone(),
        values,
    })
}

/// Cumulative composite Simpson integral on a uniform grid, zero at the
/// first sample. Odd samples close the last interval with the three-point
/// single-interval rule.
pub fn cumulative_simpson(f: &[f64], h: f64) -> Vec<f64> {
    let n = f.len();
    let mut out = vec![0.0; n];
    if n < 2 {
        return out;
    }
    if n == 2 {
        out[1] = 0.5 * h * (f[0] + f[1]);
        return out;
    }
    out[1] = h / 12.0 * (5.0 * f[0] + 8.0 * f[1] - f[2]);
    for i in 2..n {
        if i % 2 == 0 {
            out[i] = out[i - 2] + h / 3.0 * (f[i - 2] + 4.0 * f[i - 1] + f[i]);
        } else {
            out[i] = out[i - 1] + h / 12.0 * (-f[i - 2] + 8.0 * f[i - 1] + 5.0 * f[i]);
        }
    }
    out
}

/// `∫_{params[0]}^{u} f` at every sample.
pub fn integrate_cumulative(params: &[f64], f: &[f64]) -> Result<Vec<f64>, NumericsError> {
    check_grid(params, f.len())?;
    let h = uniform_step(params)?;
    Ok(cumulative_simpson(f, h))
}

#[inline]
fn hermite(y0: f64, y1: f64, m0: f64, m1: f64, h: f64, t: f64) -> f64 {
    let t2 = t * t;
    let t3 = t2 * t;
    (2.0 * t3 - 3.0 * t2 + 1.0) * y0
        + (t3 - 2.0 * t2 + t) * h * m0
        + (-2.0 * t3 + 3.0 * t2) * y1
        + (t3 - t2) * h * m1
}

#[inline]
fn hermite_lin<T: Lin>(y0: T, y1: T, m0: T, m1: T, h: f64, t: f64) -> T {
    let t2 = t * t;
    let t3 = t2 * t;
    y0 * (2.0 * t3 - 3.0 * t2 + 1.0)
        + m0 * ((t3 - 2.0 * t2 + t) * h)
        + y1 * (-2.0 * t3 + 3.0 * t2)
        + m1 * ((t3 - t2) * h)
}

/// Cubic Hermite interpolant of data on a uniform grid, slopes from
/// [`diff1`]. Fourth-order accurate for smooth data.
#[derive(Debug, Clone)]
pub struct UniformInterpolant<T: Lin> {
    params: Vec<f64>,
    values: Vec<T>,
    slopes: Vec<T>,
}

impl<T: Lin> UniformInterpolant<T> {
    pub fn new(params: &[f64], values: &[T]) -> Result<Self, NumericsError> {
        check_grid(params, values.len())?;
        let h = uniform_step(params)?;
        Ok(Self {
            params: params.to_vec(),
            values: values.to_vec(),
            slopes: diff1(values, h),
        })
    }

    /// Evaluate at `x`; points outside the grid extrapolate the end cells.
    pub fn eval(&self, x: f64) -> T {
        let n = self.params.len();
        let x0 = self.params[0];
        let h = (self.params[n - 1] - x0) / (n - 1) as f64;
        let k = (((x - x0) / h).floor().max(0.0) as usize).min(n - 2);
        let hk = self.params[k + 1] - self.params[k];
        let t = (x - self.params[k]) / hk;
        hermite_lin(
            self.values[k],
            self.values[k + 1],
            self.slopes[k],
            self.slopes[k + 1],
            hk,
            t,
        )
    }
}

/// Fritsch–Carlson limiter: shrink slopes so every cubic piece stays
/// monotone between its knots.
fn limit_monotone(x: &[f64], y: &[f64], m: &mut [f64]) {
    for k in 0..x.len() - 1 {
        let d = (y[k + 1] - y[k]) / (x[k + 1] - x[k]);
        if d == 0.0 {
            m[k] = 0.0;
            m[k + 1] = 0.0;
            continue;
        }
        let a = m[k] / d;
        let b = m[k + 1] / d;
        if a < 0.0 {
            m[k] = 0.0;
        }
        if b < 0.0 {
            m[k + 1] = 0.0;
        }
        let r = a * a + b * b;
        if r > 9.0 {
            let tau = 3.0 / r.sqrt();
            m[k] = tau * a * d;
            m[k + 1] = tau * b * d;
        }
    }
}

/// Monotone piecewise-cubic (PCHIP) interpolant on a nonuniform grid.
#[derive(Debug, Clone)]
pub struct MonotoneCubic {
    x: Vec<f64>,
    y: Vec<f64>,
    m: Vec<f64>,
}

impl MonotoneCubic {
    /// Fritsch–Butland slopes with shape-preserving end conditions.
    pub fn new(x: &[f64], y: &[f64]) -> Result<Self, NumericsError> {
        if x.len() != y.len() {
            return Err(NumericsError::LengthMismatch {
                params: x.len(),
                values: y.len(),
            });
        }
        if x.len() < 3 {
            return Err(NumericsError::GridTooCoarse(x.len()));
        }
        if let Some(i) = x.windows(2).position(|w| !(w[1] > w[0])) {
            return Err(NumericsError::NonMonotoneGrid(i + 1));
        }
        let n = x.len();
        let h: Vec<f64> = x.windows(2).map(|w| w[1] - w[0]).collect();
        let d: Vec<f64> = (0..n - 1).map(|k| (y[k + 1] - y[k]) / h[k]).collect();
        let mut m = vec![0.0; n];
        for k in 1..n - 1 {
            if d[k - 1] * d[k] > 0.0 {
                let w1 = 2.0 * h[k] + h[k - 1];
                let w2 = h[k] + 2.0 * h[k - 1];
                m[k] = (w1 + w2) / (w1 / d[k - 1] + w2 / d[k]);
            }
        }
        let edge = |h0: f64, h1: f64, d0: f64, d1: f64| {
            let s = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
            if s.signum() != d0.signum() {
                0.0
            } else if d0.signum() != d1.signum() && s.abs() > 3.0 * d0.abs() {
                3.0 * d0
            } else {
                s
            }
        };
        m[0] = edge(h[0], h[1], d[0], d[1]);
        m[n - 1] = edge(h[n - 2], h[n - 3], d[n - 2], d[n - 3]);
        Ok(Self {
            x: x.to_vec(),
            y: y.to_vec(),
            m,
        })
    }

    /// Hermite interpolant with caller-provided slopes, limited to stay
    /// monotone.
    pub fn with_slopes(x: &[f64], y: &[f64], slopes: &[f64]) -> Result<Self, NumericsError> {
        check_grid(x, y.len())?;
        let mut m = slopes.to_vec();
        limit_monotone(x, y, &mut m);
        Ok(Self {
            x: x.to_vec(),
            y: y.to_vec(),
            m,
        })
    }

    pub fn eval(&self, xq: f64) -> f64 {
        let n = self.x.len();
        let k = self.x.partition_point(|&v| v <= xq).saturating_sub(1).min(n - 2);
        let h = self.x[k + 1] - self.x[k];
        hermite(
            self.y[k],
            self.y[k + 1],
            self.m[k],
            self.m[k + 1],
            h,
            (xq - self.x[k]) / h,
        )
    }
}

/// Resample a curve on a nonuniform grid onto new parameters, componentwise
/// monotone cubic.
pub fn resample_monotone(params: &[f64], values: &[MVec3], targets: &[f64]) -> Result<Vec<MVec3>, NumericsError> {
    let comp = |f: fn(&MVec3) -> f64| -> Result<Vec<f64>, NumericsError> {
        let y: Vec<f64> = values.iter().map(f).collect();
        let p = MonotoneCubic::new(params, &y)?;
        Ok(targets.iter().map(|&t| p.eval(t)).collect())
    };
    let a = comp(|v| v.x0)?;
    let b = comp(|v| v.x1)?;
    let c = comp(|v| v.x2)?;
    Ok((0..targets.len()).map(|i| MVec3::new(a[i], b[i], c[i])).collect())
}

/// Arc-length map `s(u) = s₀ + ∫ speed du` of a uniform parameter grid and
/// its inverse on a uniform `s` grid with the same sample count.
#[derive(Debug, Clone, PartialEq)]
pub struct ArcLengthMap {
    /// Input parameter grid `u`.
    pub params: Vec<f64>,
    /// `ds/du` at each input sample.
    pub speed: Vec<f64>,
    /// `s(u)` at each input sample.
    pub arc: Vec<f64>,
    /// Uniform output grid in `s`.
    pub s_grid: Vec<f64>,
    /// `u(s)` at each output sample.
    pub source_params: Vec<f64>,
}

impl ArcLengthMap {
    pub fn new(params: &[f64], speed: &[f64], s_start: f64) -> Result<Self, NumericsError> {
        check_grid(params, speed.len())?;
        let h = uniform_step(params)?;
        if let Some((index, &v)) = speed
            .iter()
            .enumerate()
            .find(|(_, v)| !(**v > MIN_SPEED))
        {
            return Err(NumericsError::DegenerateSpeed { index, speed: v });
        }
        let arc: Vec<f64> = cumulative_simpson(speed, h)
            .into_iter()
            .map(|v| v + s_start)
            .collect();
        let n = params.len();
        if let Some(i) = arc.windows(2).position(|w| !(w[1] > w[0])) {
            return Err(NumericsError::DegenerateSpeed {
                index: i + 1,
                speed: speed[i + 1],
            });
        }
        let s_grid = linspace(arc[0], arc[n - 1], n);
        let inv_slopes: Vec<f64> = speed.iter().map(|v| 1.0 / v).collect();
        let inverse = MonotoneCubic::with_slopes(&arc, params, &inv_slopes)?;
        let mut source_params: Vec<f64> = s_grid.iter().map(|&s| inverse.eval(s)).collect();
        source_params[0] = params[0];
        source_params[n - 1] = params[n - 1];
        Ok(Self {
            params: params.to_vec(),
            speed: speed.to_vec(),
            arc,
            s_grid,
            source_params,
        })
    }

    /// Identity map for data already on a uniform arc-length grid.
    pub fn identity(s_grid: &[f64]) -> Self {
        Self {
            params: s_grid.to_vec(),
            speed: vec![1.0; s_grid.len()],
            arc: s_grid.to_vec(),
            s_grid: s_grid.to_vec(),
            source_params: s_grid.to_vec(),
        }
    }

    pub fn length(&self) -> f64 {
        self.arc[self.arc.len() - 1] - self.arc[0]
    }

    /// Values given on the input grid, resampled onto the uniform `s` grid.
    pub fn resample<T: Lin>(&self, values: &[T]) -> Result<Vec<T>, NumericsError> {
        let interp = UniformInterpolant::new(&self.params, values)?;
        Ok(self.source_params.iter().map(|&u| interp.eval(u)).collect())
    }
}

/// Resample `c` onto a uniform grid in `s = ∫ speed du` starting at zero.
pub fn reparameterize_arclength(c: &SampledCurve, speed: &[f64]) -> Result<SampledCurve, NumericsError> {
    let map = ArcLengthMap::new(&c.params, speed, 0.0)?;
    let values = map.resample(&c.values)?;
    SampledCurve::new(map.s_grid, values)
}
