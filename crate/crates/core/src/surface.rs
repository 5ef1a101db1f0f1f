//! Real and dual Darboux apparatus of a timelike ruled surface
//! `φ(s, v) = c(s) + v·e(s)`.
//!
//! The director `e` is reparameterized to the arc length of its indicatrix
//! on the hyperbolic unit sphere, the frame is `t = e'`, `g = −e × t`, and
//! the striction curve `c` is the base point with `⟨c', t⟩ = 0`. The
//! invariants follow from
//!
//! ```text
//! e' = t,   t' = e + γ g,   g' = −γ t,   c' = −δ e + Δ g
//! ```
//!
//! and the dual conical curvature is `γ̄ = γ + ε(δ + γΔ)`.

use thiserror::Error;

use crate::dual::{dual_apply, DualFn, DualScalar};
use crate::line::{dnorm, DualVec3};
use crate::minkowski::{causal_classify, det, lcross, linner, CausalTag, MVec3, DEFAULT_NULL_TOL};
use crate::numerics::{cumulative_simpson, diff1, linspace, uniform_step, ArcLengthMap, NumericsError, SampledCurve, MIN_SAMPLES};

/// Orthonormality drift that aborts a build.
pub const FRAME_DRIFT_LIMIT: f64 = 1e-4;
/// Half-width of the band around `|γ| = 1` treated as a null Darboux axis.
pub const NULL_AXIS_BAND: f64 = 1e-6;
/// Default tolerance for [`classify`].
pub const DEFAULT_CLASSIFY_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SurfaceError {
    #[error("NotTimelikeDirector: director sample {index} is {tag:?}")]
    NotTimelikeDirector { index: usize, tag: CausalTag },
    #[error("DegenerateIndicatrix: indicatrix speed {speed:e} at sample {index}")]
    DegenerateIndicatrix { index: usize, speed: f64 },
    #[error("FrameDriftExceeded: orthonormality residual {residual:e} at sample {index}")]
    FrameDriftExceeded { index: usize, residual: f64 },
    #[error("GammaOutOfRange: constant-invariant fixtures need |gamma| < 1, got {0}")]
    GammaOutOfRange(f64),
    #[error("NullDarbouxAxis: |1 - γ²| < {NULL_AXIS_BAND:e} at sample {index} (γ = {gamma})")]
    NullDarbouxAxis { index: usize, gamma: f64 },
    #[error("GridMismatch: director and base curves are sampled on different grids")]
    GridMismatch,
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct BuildConfig {
    /// Arc length assigned to the first sample. Defaults to the first
    /// parameter value.
    pub s_start: Option<f64>,
    /// `∫₀^{s_start} Δ du`, the part of the dual arc length accumulated
    /// before the sampled window.
    pub dual_arc_origin: f64,
    /// Null tolerance used to classify director samples.
    pub null_tol: f64,
}

impl Default for BuildConfig {
    fn default() -> Self {
        Self {
            s_start: None,
            dual_arc_origin: 0.0,
            null_tol: DEFAULT_NULL_TOL,
        }
    }
}

/// Sampled Darboux apparatus of a timelike ruled surface on a uniform
/// arc-length grid.
#[derive(Debug, Clone, PartialEq)]
pub struct RuledSurfaceModel {
    pub s_grid: Vec<f64>,
    /// Unit timelike director.
    pub e: Vec<MVec3>,
    /// Unit spacelike tangent of the indicatrix.
    pub t: Vec<MVec3>,
    /// Central normal `−e × t`.
    pub g: Vec<MVec3>,
    /// Striction curve.
    pub c: Vec<MVec3>,
    /// `γ = ⟨t', g⟩`.
    pub conical_curvature: Vec<f64>,
    /// `δ = ⟨c', e⟩`.
    pub striction_axial: Vec<f64>,
    /// `Δ = det(c', e, t)`; zero exactly on developable surfaces.
    pub striction_normal: Vec<f64>,
    /// Offset from the input base curve to the striction curve.
    pub lambda0: Vec<f64>,
    /// Input base curve resampled on `s_grid`.
    pub base_curve: Vec<MVec3>,
    pub arc_map: ArcLengthMap,
    pub dual_arc_origin: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FrameResiduals {
    pub orthonormality: f64,
    pub handedness: f64,
    pub darboux_e: f64,
    pub darboux_t: f64,
    pub darboux_g: f64,
    pub striction: f64,
    pub decomposition: f64,
}

impl FrameResiduals {
    pub fn max(&self) -> f64 {
        [
            self.orthonormality,
            self.handedness,
            self.darboux_e,
            self.darboux_t,
            self.darboux_g,
            self.striction,
            self.decomposition,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

fn orthonormality_at(e: MVec3, t: MVec3, g: MVec3) -> f64 {
    [
        (linner(e, e) + 1.0).abs(),
        (linner(t, t) - 1.0).abs(),
        (linner(g, g) - 1.0).abs(),
        linner(e, t).abs(),
        linner(e, g).abs(),
        linner(t, g).abs(),
    ]
    .into_iter()
    .fold(0.0, f64::max)
}

impl RuledSurfaceModel {
    pub fn len(&self) -> usize {
        self.s_grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s_grid.is_empty()
    }

    /// Arc length of the director indicatrix over the window.
    pub fn length(&self) -> f64 {
        self.s_grid[self.len() - 1] - self.s_grid[0]
    }

    pub fn step(&self) -> f64 {
        (self.s_grid[self.len() - 1] - self.s_grid[0]) / (self.len() - 1) as f64
    }

    /// `c(s_i) + v·e(s_i)`.
    pub fn surface_point(&self, i: usize, v: f64) -> MVec3 {
        self.c[i] + self.e[i] * v
    }

    /// `ẽ = e + ε c × e`.
    pub fn dual_director(&self, i: usize) -> DualVec3 {
        DualVec3::new(self.e[i], lcross(self.c[i], self.e[i]))
    }

    pub fn dual_tangent(&self, i: usize) -> DualVec3 {
        DualVec3::new(self.t[i], lcross(self.c[i], self.t[i]))
    }

    pub fn dual_normal(&self, i: usize) -> DualVec3 {
        DualVec3::new(self.g[i], lcross(self.c[i], self.g[i]))
    }

    pub fn dual_frame(&self, i: usize) -> [DualVec3; 3] {
        [self.dual_director(i), self.dual_tangent(i), self.dual_normal(i)]
    }

    /// Frame residuals; derivative-based entries skip the two outermost
    /// samples at each end.
    pub fn frame_residuals(&self) -> FrameResiduals {
        let n = self.len();
        let h = self.step();
        let de = diff1(&self.e, h);
        let dt = diff1(&self.t, h);
        let dg = diff1(&self.g, h);
        let dc = diff1(&self.c, h);
        let mut r = FrameResiduals::default();
        for i in 0..n {
            let (e, t, g) = (self.e[i], self.t[i], self.g[i]);
            r.orthonormality = r.orthonormality.max(orthonormality_at(e, t, g));
            r.handedness = r.handedness.max((g + lcross(e, t)).max_abs());
            if i < 2 || i + 2 >= n {
                continue;
            }
            let gamma = self.conical_curvature[i];
            r.darboux_e = r.darboux_e.max((de[i] - t).max_abs());
            r.darboux_t = r.darboux_t.max((dt[i] - e - g * gamma).max_abs());
            r.darboux_g = r.darboux_g.max((dg[i] + t * gamma).max_abs());
            r.striction = r.striction.max(linner(dc[i], t).abs());
            let fit = e * -self.striction_axial[i] + g * self.striction_normal[i];
            r.decomposition = r.decomposition.max((dc[i] - fit).max_abs());
        }
        r
    }
}

fn normalize_director(i: usize, v: MVec3, tol: f64) -> Result<MVec3, SurfaceError> {
    match causal_classify(v, tol).tag {
        CausalTag::Timelike => Ok(v.normalized()),
        tag => Err(SurfaceError::NotTimelikeDirector { index: i, tag }),
    }
}

/// Build the Darboux apparatus of the surface ruled by `director` along
/// `base`. Both curves must share one uniform parameter grid.
pub fn build_surface(
    director: &SampledCurve,
    base: &SampledCurve,
    cfg: &BuildConfig,
) -> Result<RuledSurfaceModel, SurfaceError> {
    let params = director.params();
    if base.params().len() != params.len()
        || base
            .params()
            .iter()
            .zip(params)
            .any(|(a, b)| (a - b).abs() > 1e-12 * (1.0 + b.abs()))
    {
        return Err(SurfaceError::GridMismatch);
    }
    let h = uniform_step(params)?;
    let e_u: Vec<MVec3> = director
        .values()
        .iter()
        .enumerate()
        .map(|(i, v)| normalize_director(i, *v, cfg.null_tol))
        .collect::<Result<_, _>>()?;

    let speed: Vec<f64> = diff1(&e_u, h)
        .iter()
        .map(|d| linner(*d, *d).max(0.0).sqrt())
        .collect();
    let s_start = cfg.s_start.unwrap_or(params[0]);
    let arc_map = ArcLengthMap::new(params, &speed, s_start).map_err(|err| match err {
        NumericsError::DegenerateSpeed { index, speed } => SurfaceError::DegenerateIndicatrix { index, speed },
        other => other.into(),
    })?;

    let mut e = arc_map.resample(&e_u)?;
    for (i, v) in e.iter_mut().enumerate() {
        let drift = (linner(*v, *v) + 1.0).abs();
        if drift > FRAME_DRIFT_LIMIT {
            return Err(SurfaceError::FrameDriftExceeded { index: i, residual: drift });
        }
        *v = v.normalized();
    }
    let p = arc_map.resample(base.values())?;
    let hs = uniform_step(&arc_map.s_grid)?;

    let t: Vec<MVec3> = diff1(&e, hs)
        .into_iter()
        .enumerate()
        .map(|(i, d)| {
            let q = linner(d, d);
            if !(q > 0.0) {
                return Err(SurfaceError::DegenerateIndicatrix { index: i, speed: q.abs().sqrt() });
            }
            Ok(d / q.sqrt())
        })
        .collect::<Result<_, _>>()?;
    let g: Vec<MVec3> = e.iter().zip(&t).map(|(a, b)| -lcross(*a, *b)).collect();

    let dp = diff1(&p, hs);
    let lambda0: Vec<f64> = dp.iter().zip(&t).map(|(a, b)| -linner(*a, *b)).collect();
    let c: Vec<MVec3> = (0..p.len()).map(|i| p[i] + e[i] * lambda0[i]).collect();

    let dc = diff1(&c, hs);
    let dt = diff1(&t, hs);
    let n = e.len();
    let conical_curvature = (0..n).map(|i| linner(dt[i], g[i])).collect();
    let striction_axial = (0..n).map(|i| linner(dc[i], e[i])).collect();
    let striction_normal = (0..n).map(|i| det(dc[i], e[i], t[i])).collect();

    for i in 0..n {
        let r = orthonormality_at(e[i], t[i], g[i]);
        if r > FRAME_DRIFT_LIMIT {
            return Err(SurfaceError::FrameDriftExceeded { index: i, residual: r });
        }
    }

    Ok(RuledSurfaceModel {
        s_grid: arc_map.s_grid.clone(),
        e,
        t,
        g,
        c,
        conical_curvature,
        striction_axial,
        striction_normal,
        lambda0,
        base_curve: p,
        arc_map,
        dual_arc_origin: cfg.dual_arc_origin,
    })
}

/// Closed-form timelike ruled surface with constant invariants
/// `(γ, δ, Δ) = (gamma0, delta0, big_delta0)` sampled on
/// `samples` uniform arc-length points of `s_range`.
///
/// With `A = 1/√(1−γ²)`, `B = −γA`, `k = 1/A`:
/// `e = (A cosh ks, A sinh ks, B)`, `t = (sinh ks, cosh ks, 0)`,
/// `g = (B cosh ks, B sinh ks, A)`, and the striction curve integrates
/// `c' = −δ e + Δ g` from `c(0) = 0`.
pub fn synth_constant_invariant(
    gamma0: f64,
    delta0: f64,
    big_delta0: f64,
    s_range: (f64, f64),
    samples: usize,
) -> Result<RuledSurfaceModel, SurfaceError> {
    if !(gamma0.abs() < 1.0) {
        return Err(SurfaceError::GammaOutOfRange(gamma0));
    }
    if samples < MIN_SAMPLES {
        return Err(NumericsError::GridTooCoarse(samples).into());
    }
    let c = ConstantInvariantFrame::new(gamma0, delta0, big_delta0);
    let s_grid = linspace(s_range.0, s_range.1, samples);
    uniform_step(&s_grid)?;
    let e: Vec<MVec3> = s_grid.iter().map(|&s| c.director(s)).collect();
    let t = s_grid.iter().map(|&s| c.tangent(s)).collect();
    let g = s_grid.iter().map(|&s| c.normal(s)).collect();
    let striction: Vec<MVec3> = s_grid.iter().map(|&s| c.striction(s)).collect();
    Ok(RuledSurfaceModel {
        arc_map: ArcLengthMap::identity(&s_grid),
        dual_arc_origin: big_delta0 * s_range.0,
        e,
        t,
        g,
        base_curve: striction.clone(),
        c: striction,
        conical_curvature: vec![gamma0; samples],
        striction_axial: vec![delta0; samples],
        striction_normal: vec![big_delta0; samples],
        lambda0: vec![0.0; samples],
        s_grid,
    })
}

/// Closed forms behind [`synth_constant_invariant`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstantInvariantFrame {
    pub a: f64,
    pub b: f64,
    pub k: f64,
    pub delta: f64,
    pub big_delta: f64,
}

impl ConstantInvariantFrame {
    pub fn new(gamma: f64, delta: f64, big_delta: f64) -> Self {
        let a = 1.0 / (1.0 - gamma * gamma).sqrt();
        Self {
            a,
            b: -gamma * a,
            k: 1.0 / a,
            delta,
            big_delta,
        }
    }

    pub fn director(&self, s: f64) -> MVec3 {
        let ks = self.k * s;
        MVec3::new(self.a * ks.cosh(), self.a * ks.sinh(), self.b)
    }

    pub fn tangent(&self, s: f64) -> MVec3 {
        let ks = self.k * s;
        MVec3::new(ks.sinh(), ks.cosh(), 0.0)
    }

    pub fn normal(&self, s: f64) -> MVec3 {
        let ks = self.k * s;
        MVec3::new(self.b * ks.cosh(), self.b * ks.sinh(), self.a)
    }

    pub fn striction(&self, s: f64) -> MVec3 {
        let ks = self.k * s;
        let planar = -self.delta * self.a + self.big_delta * self.b;
        let axial = -self.delta * self.b + self.big_delta * self.a;
        MVec3::new(ks.sinh(), ks.cosh() - 1.0, 0.0) * (planar / self.k) + MVec3::new(0.0, 0.0, s * axial)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Classification {
    pub developable: bool,
    pub cone: bool,
}

pub fn classify(m: &RuledSurfaceModel, tol: f64) -> Classification {
    let max_abs = |v: &[f64]| v.iter().fold(0.0f64, |a, x| a.max(x.abs()));
    let developable = max_abs(&m.striction_normal) <= tol;
    Classification {
        developable,
        cone: developable && max_abs(&m.striction_axial) <= tol,
    }
}

/// Which causal type the dual Darboux axis has at a sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DarbouxBranch {
    /// `|γ| > 1`.
    TimelikeAxis,
    /// `|γ| < 1`.
    SpacelikeAxis,
    NullAxis,
}

impl DarbouxBranch {
    pub fn of(gamma: f64) -> Self {
        if (1.0 - gamma * gamma).abs() < NULL_AXIS_BAND {
            DarbouxBranch::NullAxis
        } else if gamma.abs() > 1.0 {
            DarbouxBranch::TimelikeAxis
        } else {
            DarbouxBranch::SpacelikeAxis
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            DarbouxBranch::TimelikeAxis => "TimelikeAxis",
            DarbouxBranch::SpacelikeAxis => "SpacelikeAxis",
            DarbouxBranch::NullAxis => "NullAxis",
        }
    }
}

/// `(cosh ρ̄, sinh ρ̄)` of the dual spherical radius of curvature. Stored as
/// a pair because `cosh ρ̄ ≤ −1` on spacelike-axis samples.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RhoPair {
    pub cosh: DualScalar,
    pub sinh: DualScalar,
}

impl RhoPair {
    /// `C² − S²`.
    pub fn hyperbolic_identity(&self) -> DualScalar {
        self.cosh * self.cosh - self.sinh * self.sinh
    }

    /// `ρ + ερ*` when a real angle exists (`C.re ≥ 1`).
    pub fn angle(&self) -> Option<DualScalar> {
        if self.cosh.re < 1.0 {
            return None;
        }
        Some(DualScalar::new(self.sinh.re.asinh(), self.sinh.du / self.cosh.re))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DualApparatus {
    /// Dual arc length `s − ε∫₀ˢ Δ`.
    pub s_bar: Vec<DualScalar>,
    pub gamma_bar: Vec<DualScalar>,
    /// Dual radius of curvature `1/√|1 − γ̄²|`.
    pub r_bar: Vec<DualScalar>,
    pub rho_pair: Vec<RhoPair>,
    pub branch: Vec<DarbouxBranch>,
}

impl DualApparatus {
    /// Dual Darboux vector `d̃ = −γ̄ẽ − g̃` at sample `i`.
    pub fn darboux_vector(&self, m: &RuledSurfaceModel, i: usize) -> DualVec3 {
        -(self.gamma_bar[i] * m.dual_director(i)) - m.dual_normal(i)
    }

    /// Unit Darboux vector `R̄·d̃`.
    pub fn darboux_unit(&self, m: &RuledSurfaceModel, i: usize) -> DualVec3 {
        self.r_bar[i] * self.darboux_vector(m, i)
    }

    /// Worst deviation of `R̄²(1 − γ̄²)` from `±(1, 0)`, of `C² − S²` from
    /// `(1, 0)`, and of the branch relations in pair form.
    pub fn identity_residuals(&self) -> (f64, f64, f64) {
        let one = DualScalar::ONE;
        let mut r = (0.0f64, 0.0f64, 0.0f64);
        for i in 0..self.gamma_bar.len() {
            let gb = self.gamma_bar[i];
            let rb = self.r_bar[i];
            let q = rb * rb * (one - gb * gb).abs();
            r.0 = r.0.max(q.max_abs_diff(one));
            let p = self.rho_pair[i];
            r.1 = r.1.max(p.hyperbolic_identity().max_abs_diff(one));
            let (with_gamma, plain) = match self.branch[i] {
                DarbouxBranch::TimelikeAxis => (p.cosh, p.sinh),
                _ => (p.sinh, p.cosh),
            };
            let b = (with_gamma + gb * rb).max_abs_diff(DualScalar::ZERO).max((plain + rb).max_abs_diff(DualScalar::ZERO));
            r.2 = r.2.max(b);
        }
        r
    }
}

/// Dual apparatus of a sampled surface.
pub fn dual_apparatus(m: &RuledSurfaceModel) -> Result<DualApparatus, SurfaceError> {
    apparatus_from_invariants(
        &m.s_grid,
        &m.conical_curvature,
        &m.striction_axial,
        &m.striction_normal,
        m.dual_arc_origin,
    )
}

/// Dual apparatus from invariant fields on a uniform arc-length grid.
pub fn apparatus_from_invariants(
    s_grid: &[f64],
    gamma: &[f64],
    delta: &[f64],
    big_delta: &[f64],
    dual_arc_origin: f64,
) -> Result<DualApparatus, SurfaceError> {
    let h = uniform_step(s_grid)?;
    let n = s_grid.len();
    let integral = cumulative_simpson(big_delta, h);
    let s_bar = (0..n)
        .map(|i| DualScalar::new(s_grid[i], -(dual_arc_origin + integral[i])))
        .collect();
    let mut gamma_bar = Vec::with_capacity(n);
    let mut r_bar = Vec::with_capacity(n);
    let mut rho_pair = Vec::with_capacity(n);
    let mut branch = Vec::with_capacity(n);
    for i in 0..n {
        let gb = DualScalar::new(gamma[i], delta[i] + gamma[i] * big_delta[i]);
        let br = DarbouxBranch::of(gb.re);
        if br == DarbouxBranch::NullAxis {
            return Err(SurfaceError::NullDarbouxAxis { index: i, gamma: gb.re });
        }
        let root = dual_apply(DualFn::Sqrt, (DualScalar::ONE - gb * gb).abs())
            .map_err(|_| SurfaceError::NullDarbouxAxis { index: i, gamma: gb.re })?;
        let rb = root
            .recip()
            .map_err(|_| SurfaceError::NullDarbouxAxis { index: i, gamma: gb.re })?;
        let with_gamma = -(gb * rb);
        let plain = -rb;
        let pair = match br {
            DarbouxBranch::TimelikeAxis => RhoPair { cosh: with_gamma, sinh: plain },
            _ => RhoPair { cosh: plain, sinh: with_gamma },
        };
        gamma_bar.push(gb);
        r_bar.push(rb);
        rho_pair.push(pair);
        branch.push(br);
    }
    Ok(DualApparatus {
        s_bar,
        gamma_bar,
        r_bar,
        rho_pair,
        branch,
    })
}

/// Residuals of the dual Darboux formulae differentiated numerically
/// through `ds̄/ds = 1 − εΔ`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DualFrameResiduals {
    /// `dẽ/ds̄ − t̃`.
    pub director: f64,
    /// `dt̃/ds̄ − (ẽ + γ̄ g̃)`.
    pub tangent: f64,
    /// `dg̃/ds̄ + γ̄ t̃`.
    pub normal: f64,
    /// `‖dẽ/ds‖ − (1 − εΔ)`.
    pub director_speed: f64,
}

impl DualFrameResiduals {
    pub fn max(&self) -> f64 {
        self.director.max(self.tangent).max(self.normal)
    }
}

/// Check the dual Darboux formulae on the interior samples of `m`.
pub fn dual_frame_residuals(m: &RuledSurfaceModel, app: &DualApparatus) -> DualFrameResiduals {
    let n = m.len();
    let h = m.step();
    let et: Vec<DualVec3> = (0..n).map(|i| m.dual_director(i)).collect();
    let tt: Vec<DualVec3> = (0..n).map(|i| m.dual_tangent(i)).collect();
    let gt: Vec<DualVec3> = (0..n).map(|i| m.dual_normal(i)).collect();
    let (de, dt, dg) = (diff1(&et, h), diff1(&tt, h), diff1(&gt, h));
    let mut r = DualFrameResiduals::default();
    for i in 2..n.saturating_sub(2) {
        let sbar_rate = DualScalar::new(1.0, -m.striction_normal[i]);
        let per = |v: DualVec3| v.div_dual(sbar_rate).expect("unit real part");
        let gb = app.gamma_bar[i];
        r.director = r.director.max((per(de[i]) - tt[i]).max_abs());
        r.tangent = r.tangent.max((per(dt[i]) - (et[i] + gb * gt[i])).max_abs());
        r.normal = r.normal.max((per(dg[i]) + gb * tt[i]).max_abs());
        if let Ok(norm) = dnorm(de[i]) {
            r.director_speed = r.director_speed.max(norm.max_abs_diff(sbar_rate));
        } else {
            r.director_speed = f64::INFINITY;
        }
    }
    r
}
