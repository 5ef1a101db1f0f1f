//! Mannheim offsets: the surface whose central tangent line congruence
//! coincides with the central normal congruence `g̃` of a base surface.
//!
//! The offset director is the dual hyperbolic rotation
//! `ẽ₁ = cosh θ̄·ẽ + sinh θ̄·t̃` with `θ̄ = θ + εθ*`. Parallelism of
//! `dẽ₁/ds̄` and `g̃` forces `dθ̄/ds̄ = −1`, so `θ = −s + c` and
//! `θ* = ∫₀ˢ Δ + c*`.
//!
//! [`construct_offset`] rebuilds the offset from its decoded lines with the
//! generic surface pipeline, so its invariants are independent of any
//! closed-form claim about them. [`consistency_report`] then compares the
//! closed forms in [`ClosedForms`] against that reconstruction.
//!
//! Sign convention: the reconstruction uses `g₁ = −e₁ × t₁` and orients
//! `s₁` to increase with `s`. The closed forms use `t₁ = g` and the
//! opposite handedness `g₁ = sinh θ·e + cosh θ·t`. Reconstructed
//! values are converted with the sign `σ = sign⟨t₁, g⟩` before comparison:
//! `γ₁ → −σγ₁`, `δ₁ → σδ₁`, and `Δ₁` is unchanged.

use thiserror::Error;

use crate::dual::DualScalar;
use crate::line::{decode_line_point, DualVec3, LineError};
use crate::minkowski::{linner, MVec3};
use crate::numerics::{cumulative_simpson, diff1, uniform_step, NumericsError, SampledCurve, UniformInterpolant};
use crate::surface::{apparatus_from_invariants, build_surface, BuildConfig, DualApparatus, RuledSurfaceModel, SurfaceError};

/// `|sinh θ|` and `|γ|` at or below this make a sample degenerate.
pub const DEGENERACY_TOL: f64 = 1e-6;
/// Default verdict tolerance of [`consistency_report`].
pub const DEFAULT_REPORT_TOL: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OffsetError {
    #[error("DegenerateWindow: {reason} at s = {s}")]
    DegenerateWindow { s: f64, reason: &'static str },
    #[error("DegenerateOffsetIndicatrix: γ = 0 at s = {s} (γ = {gamma:e})")]
    VanishingConicalCurvature { s: f64, gamma: f64 },
    #[error("DegenerateOffsetIndicatrix: offset indicatrix speed {speed:e} at s = {s}")]
    DegenerateOffsetIndicatrix { s: f64, speed: f64 },
    #[error("DegeneratePoint: closed forms undefined at s = {s}")]
    DegeneratePoint { s: f64 },
    #[error("MismatchedInputs: offset was not constructed from this surface and angle profile")]
    MismatchedInputs,
    #[error("sample index {index} out of range for {len} samples")]
    SampleOutOfRange { index: usize, len: usize },
    #[error(transparent)]
    Line(#[from] LineError),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

/// Offset angle `θ` and offset distance `θ*` sampled on the base grid.
#[derive(Debug, Clone, PartialEq)]
pub struct OffsetSpec {
    pub c_const: f64,
    pub cstar_const: f64,
    /// Deviation from the Mannheim angle law `θ = −(1 + eta)s + c`. Zero for
    /// a genuine offset.
    pub eta: f64,
    pub s_grid: Vec<f64>,
    pub theta: Vec<f64>,
    pub theta_star: Vec<f64>,
}

impl OffsetSpec {
    pub fn len(&self) -> usize {
        self.theta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.theta.is_empty()
    }

    pub fn theta_bar(&self, i: usize) -> DualScalar {
        DualScalar::new(self.theta[i], self.theta_star[i])
    }

    /// Same profile with the angle law perturbed to `θ = −(1 + eta)s + c`;
    /// `θ*` is untouched. Only meaningful for probing the necessity of the
    /// angle law; the result is generally not a Mannheim offset.
    pub fn perturbed(&self, eta: f64) -> Self {
        Self {
            eta,
            theta: self.s_grid.iter().map(|&s| -(1.0 + eta) * s + self.c_const).collect(),
            ..self.clone()
        }
    }
}

/// Offset angle profile `θ = −s + c`, `θ* = ∫₀ˢ Δ + c*` on the grid of `m`.
///
/// Fails when `γ` vanishes or changes sign (the offset indicatrix stalls) or
/// when `sinh θ` does (the window straddles `θ = 0`).
pub fn offset_angle_profile(m: &RuledSurfaceModel, c_const: f64, cstar_const: f64) -> Result<OffsetSpec, OffsetError> {
    let h = uniform_step(&m.s_grid)?;
    let gamma = &m.conical_curvature;
    for (i, &g) in gamma.iter().enumerate() {
        if g.abs() <= DEGENERACY_TOL || (i > 0 && g.signum() != gamma[0].signum()) {
            return Err(OffsetError::VanishingConicalCurvature { s: m.s_grid[i], gamma: g });
        }
    }
    let theta: Vec<f64> = m.s_grid.iter().map(|&s| -s + c_const).collect();
    for (i, &t) in theta.iter().enumerate() {
        if t.sinh().abs() <= DEGENERACY_TOL || t.signum() != theta[0].signum() {
            return Err(OffsetError::DegenerateWindow {
                s: m.s_grid[i],
                reason: "sinh θ vanishes",
            });
        }
    }
    let theta_star = cumulative_simpson(&m.striction_normal, h)
        .into_iter()
        .map(|v| m.dual_arc_origin + v + cstar_const)
        .collect();
    Ok(OffsetSpec {
        c_const,
        cstar_const,
        eta: 0.0,
        s_grid: m.s_grid.clone(),
        theta,
        theta_star,
    })
}

/// `cosh θ̄·ẽ + sinh θ̄·t̃` at every sample.
pub fn transfer_director(m: &RuledSurfaceModel, spec: &OffsetSpec) -> Vec<DualVec3> {
    (0..m.len())
        .map(|i| {
            let tb = spec.theta_bar(i);
            tb.cosh() * m.dual_director(i) + tb.sinh() * m.dual_tangent(i)
        })
        .collect()
}

/// Offset invariants in the closed-form sign convention, on the offset's
/// own arc-length grid.
#[derive(Debug, Clone, PartialEq)]
pub struct AlignedInvariants {
    pub conical_curvature: Vec<f64>,
    pub striction_axial: Vec<f64>,
    pub striction_normal: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OffsetModel {
    pub spec: OffsetSpec,
    pub base_s_grid: Vec<f64>,
    /// `ẽ₁` on the base grid.
    pub e1_dual: Vec<DualVec3>,
    /// Foot points of the offset rulings.
    pub offset_points: Vec<MVec3>,
    /// Offset surface rebuilt from scratch on its arc-length grid.
    pub recovered: RuledSurfaceModel,
    /// `s₁` at each base sample.
    pub s1: Vec<f64>,
    /// `|ds₁/ds|` at each base sample.
    pub rate: Vec<f64>,
    /// `sign⟨t₁, g⟩`.
    pub orientation: f64,
    pub aligned: AlignedInvariants,
    /// Dual apparatus of the offset from the aligned invariants, on the
    /// recovered grid.
    pub apparatus1: DualApparatus,
}

/// Build the Mannheim offset of `m` for the angle profile `spec` and
/// reconstruct its Darboux apparatus.
pub fn construct_offset(m: &RuledSurfaceModel, spec: &OffsetSpec) -> Result<OffsetModel, OffsetError> {
    if spec.len() != m.len() || spec.s_grid != m.s_grid {
        return Err(OffsetError::MismatchedInputs);
    }
    let e1_dual = transfer_director(m, spec);
    let offset_points = e1_dual
        .iter()
        .map(|l| decode_line_point(*l))
        .collect::<Result<Vec<_>, _>>()?;
    let director = SampledCurve::new(m.s_grid.clone(), e1_dual.iter().map(|l| l.re).collect())?;
    let base = SampledCurve::new(m.s_grid.clone(), offset_points.clone())?;
    let cfg = BuildConfig {
        s_start: Some(0.0),
        ..BuildConfig::default()
    };
    let recovered = build_surface(&director, &base, &cfg).map_err(|err| match err {
        SurfaceError::DegenerateIndicatrix { index, speed } => OffsetError::DegenerateOffsetIndicatrix {
            s: m.s_grid[index.min(m.len() - 1)],
            speed,
        },
        other => other.into(),
    })?;
    let s1 = recovered.arc_map.arc.clone();
    let rate = recovered.arc_map.speed.clone();

    let t1 = back_map(&recovered, &recovered.t, &s1)?;
    let alignment: f64 = t1.iter().zip(&m.g).map(|(a, b)| linner(*a, *b)).sum();
    let orientation = if alignment < 0.0 { -1.0 } else { 1.0 };

    let aligned = AlignedInvariants {
        conical_curvature: recovered.conical_curvature.iter().map(|v| -orientation * v).collect(),
        striction_axial: recovered.striction_axial.iter().map(|v| orientation * v).collect(),
        striction_normal: recovered.striction_normal.clone(),
    };
    let apparatus1 = apparatus_from_invariants(
        &recovered.s_grid,
        &aligned.conical_curvature,
        &aligned.striction_axial,
        &aligned.striction_normal,
        0.0,
    )?;

    Ok(OffsetModel {
        spec: spec.clone(),
        base_s_grid: m.s_grid.clone(),
        e1_dual,
        offset_points,
        recovered,
        s1,
        rate,
        orientation,
        aligned,
        apparatus1,
    })
}

fn back_map<T: crate::numerics::Lin>(r: &RuledSurfaceModel, values: &[T], at: &[f64]) -> Result<Vec<T>, NumericsError> {
    let interp = UniformInterpolant::new(&r.s_grid, values)?;
    Ok(at.iter().map(|&s| interp.eval(s)).collect())
}

fn back_map_dual(r: &RuledSurfaceModel, values: &[DualScalar], at: &[f64]) -> Result<Vec<DualScalar>, NumericsError> {
    let re: Vec<f64> = values.iter().map(|v| v.re).collect();
    let du: Vec<f64> = values.iter().map(|v| v.du).collect();
    let re = back_map(r, &re, at)?;
    let du = back_map(r, &du, at)?;
    Ok(re.into_iter().zip(du).map(|(a, b)| DualScalar::new(a, b)).collect())
}

/// Sign-insensitive agreement of the offset's central tangent with the
/// base's central normal.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct MannheimResiduals {
    /// `max min(‖t₁ − g‖, ‖t₁ + g‖)` in Euclidean norm.
    pub real: f64,
    /// Same for the dual lines `t̃₁` and `g̃`, largest coordinate.
    pub dual: f64,
}

impl OffsetModel {
    /// Quantities of the recovered offset evaluated at the base samples.
    pub fn base_view(&self) -> Result<OffsetBaseView, OffsetError> {
        let r = &self.recovered;
        let a = &self.apparatus1;
        let split = |pick: fn(&crate::surface::RhoPair) -> DualScalar| a.rho_pair.iter().map(pick).collect::<Vec<_>>();
        Ok(OffsetBaseView {
            t1: back_map(r, &r.t, &self.s1)?,
            c1: back_map(r, &r.c, &self.s1)?,
            conical_curvature: back_map(r, &self.aligned.conical_curvature, &self.s1)?,
            striction_axial: back_map(r, &self.aligned.striction_axial, &self.s1)?,
            striction_normal: back_map(r, &self.aligned.striction_normal, &self.s1)?,
            raw_conical_curvature: back_map(r, &r.conical_curvature, &self.s1)?,
            raw_striction_axial: back_map(r, &r.striction_axial, &self.s1)?,
            gamma_bar: back_map_dual(r, &a.gamma_bar, &self.s1)?,
            r_bar: back_map_dual(r, &a.r_bar, &self.s1)?,
            rho_cosh: back_map_dual(r, &split(|p| p.cosh), &self.s1)?,
            rho_sinh: back_map_dual(r, &split(|p| p.sinh), &self.s1)?,
        })
    }

    pub fn mannheim_residuals(&self, m: &RuledSurfaceModel) -> Result<MannheimResiduals, OffsetError> {
        let view = self.base_view()?;
        Ok(mannheim_residuals_from_view(m, &view))
    }
}

fn mannheim_residuals_from_view(m: &RuledSurfaceModel, view: &OffsetBaseView) -> MannheimResiduals {
    let mut out = MannheimResiduals::default();
    for i in 0..m.len() {
        let (t1, g) = (view.t1[i], m.g[i]);
        out.real = out.real.max((t1 - g).euclid_norm().min((t1 + g).euclid_norm()));
        let t1d = DualVec3::new(t1, crate::minkowski::lcross(view.c1[i], t1));
        let gd = m.dual_normal(i);
        out.dual = out.dual.max((t1d - gd).max_abs().min((t1d + gd).max_abs()));
    }
    out
}

/// Recovered offset quantities on the base grid.
#[derive(Debug, Clone, PartialEq)]
pub struct OffsetBaseView {
    pub t1: Vec<MVec3>,
    pub c1: Vec<MVec3>,
    pub conical_curvature: Vec<f64>,
    pub striction_axial: Vec<f64>,
    pub striction_normal: Vec<f64>,
    pub raw_conical_curvature: Vec<f64>,
    pub raw_striction_axial: Vec<f64>,
    pub gamma_bar: Vec<DualScalar>,
    pub r_bar: Vec<DualScalar>,
    pub rho_cosh: Vec<DualScalar>,
    pub rho_sinh: Vec<DualScalar>,
}

/// Closed-form offset quantities in terms of the base invariants and the
/// offset angle, evaluated as stated without reconciling them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedForms {
    /// `γ̄ sinh θ̄`, the dual arc-length rate.
    pub dual_arc_rate: DualScalar,
    /// `γ sinh θ`.
    pub arc_rate: f64,
    /// `θ*γ cosh θ + (δ + γΔ) sinh θ`.
    pub arc_rate_dual: f64,
    /// `−coth θ`.
    pub conical_curvature: f64,
    /// `((δ − θ*) coth θ + Δ)/γ`.
    pub striction_axial: f64,
    /// `−(θ* coth θ + δ/γ)`, from the dual arc-length rate.
    pub striction_normal_from_arc_rate: f64,
    /// `(θ* − δ − Δ coth θ)/γ`, from the striction displacement.
    pub striction_normal_from_displacement: f64,
    /// `−coth θ + ε(2(δ − θ*) coth θ + Δ(1 + coth²θ))/γ`.
    pub dual_conical_curvature: DualScalar,
    /// `sinh θ − ε cosh θ sinh²θ·K/γ` with
    /// `K = (δ − θ*) coth θ + Δ(1 + coth²θ)`.
    pub dual_radius: DualScalar,
    /// `cosh θ − ε sinh³θ·K/γ`.
    pub rho_cosh: DualScalar,
    /// `−sinh θ`.
    pub rho_sinh: f64,
    /// `ρ₁* cosh ρ₁ = cosh θ sinh²θ·K/γ`.
    pub rho_star_cosh: f64,
    /// `cosh θ`.
    pub rho_cosh_real: f64,
    /// `sinh²θ·K/γ`.
    pub rho_star: f64,
    /// `Δ coth θ/(1 + γ coth θ)`, the offset distance implied by equating
    /// the two striction-normal forms.
    pub offset_distance: f64,
}

impl ClosedForms {
    pub fn evaluate(gamma: f64, delta: f64, big_delta: f64, theta: f64, theta_star: f64) -> Option<Self> {
        let (sh, ch) = (theta.sinh(), theta.cosh());
        if sh.abs() <= DEGENERACY_TOL || gamma.abs() <= DEGENERACY_TOL {
            return None;
        }
        let coth = ch / sh;
        let k = (delta - theta_star) * coth + big_delta * (1.0 + coth * coth);
        let gamma_bar = DualScalar::new(gamma, delta + gamma * big_delta);
        Some(Self {
            dual_arc_rate: gamma_bar * DualScalar::new(theta, theta_star).sinh(),
            arc_rate: gamma * sh,
            arc_rate_dual: theta_star * gamma * ch + (delta + gamma * big_delta) * sh,
            conical_curvature: -coth,
            striction_axial: ((delta - theta_star) * coth + big_delta) / gamma,
            striction_normal_from_arc_rate: -(theta_star * coth + delta / gamma),
            striction_normal_from_displacement: (theta_star - delta - big_delta * coth) / gamma,
            dual_conical_curvature: DualScalar::new(
                -coth,
                (2.0 * (delta - theta_star) * coth + big_delta * (1.0 + coth * coth)) / gamma,
            ),
            dual_radius: DualScalar::new(sh, -ch * sh * sh * k / gamma),
            rho_cosh: DualScalar::new(ch, -sh * sh * sh * k / gamma),
            rho_sinh: -sh,
            rho_star_cosh: ch * sh * sh * k / gamma,
            rho_cosh_real: ch,
            rho_star: sh * sh * k / gamma,
            offset_distance: big_delta * coth / (1.0 + gamma * coth),
        })
    }
}

/// Closed forms at base sample `i`.
pub fn offset_closed_forms(m: &RuledSurfaceModel, spec: &OffsetSpec, i: usize) -> Result<ClosedForms, OffsetError> {
    if i >= m.len() || i >= spec.len() {
        return Err(OffsetError::SampleOutOfRange { index: i, len: m.len() });
    }
    ClosedForms::evaluate(
        m.conical_curvature[i],
        m.striction_axial[i],
        m.striction_normal[i],
        spec.theta[i],
        spec.theta_star[i],
    )
    .ok_or(OffsetError::DegeneratePoint { s: m.s_grid[i] })
}

/// Formulas adjudicated by [`consistency_report`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Formula {
    ArcRate,
    ArcRateDual,
    StrictionNormalFromArcRate,
    StrictionAxial,
    StrictionNormalFromDisplacement,
    ConicalCurvature,
    DualConicalCurvatureReal,
    DualConicalCurvatureDual,
    DualRadiusReal,
    DualRadiusDual,
    RhoCoshReal,
    RhoCoshDual,
    RhoSinh,
    RhoStarCosh,
    RhoCosh,
    RhoStar,
    OffsetDistance,
}

impl Formula {
    pub const ALL: [Formula; 17] = [
        Formula::ArcRate,
        Formula::ArcRateDual,
        Formula::StrictionNormalFromArcRate,
        Formula::StrictionAxial,
        Formula::StrictionNormalFromDisplacement,
        Formula::ConicalCurvature,
        Formula::DualConicalCurvatureReal,
        Formula::DualConicalCurvatureDual,
        Formula::DualRadiusReal,
        Formula::DualRadiusDual,
        Formula::RhoCoshReal,
        Formula::RhoCoshDual,
        Formula::RhoSinh,
        Formula::RhoStarCosh,
        Formula::RhoCosh,
        Formula::RhoStar,
        Formula::OffsetDistance,
    ];

    pub fn key(self) -> &'static str {
        match self {
            Formula::ArcRate => "arc_rate",
            Formula::ArcRateDual => "arc_rate_dual",
            Formula::StrictionNormalFromArcRate => "striction_normal_from_arc_rate",
            Formula::StrictionAxial => "striction_axial",
            Formula::StrictionNormalFromDisplacement => "striction_normal_from_displacement",
            Formula::ConicalCurvature => "conical_curvature",
            Formula::DualConicalCurvatureReal => "dual_conical_curvature_re",
            Formula::DualConicalCurvatureDual => "dual_conical_curvature_du",
            Formula::DualRadiusReal => "dual_radius_re",
            Formula::DualRadiusDual => "dual_radius_du",
            Formula::RhoCoshReal => "rho_cosh_re",
            Formula::RhoCoshDual => "rho_cosh_du",
            Formula::RhoSinh => "rho_sinh",
            Formula::RhoStarCosh => "rho_star_cosh",
            Formula::RhoCosh => "rho_cosh",
            Formula::RhoStar => "rho_star",
            Formula::OffsetDistance => "offset_distance",
        }
    }

    pub fn from_key(key: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|f| f.key() == key)
    }

    fn closed_form(self, f: &ClosedForms) -> f64 {
        match self {
            Formula::ArcRate => f.arc_rate,
            Formula::ArcRateDual => f.arc_rate_dual,
            Formula::StrictionNormalFromArcRate => f.striction_normal_from_arc_rate,
            Formula::StrictionAxial => f.striction_axial,
            Formula::StrictionNormalFromDisplacement => f.striction_normal_from_displacement,
            Formula::ConicalCurvature => f.conical_curvature,
            Formula::DualConicalCurvatureReal => f.dual_conical_curvature.re,
            Formula::DualConicalCurvatureDual => f.dual_conical_curvature.du,
            Formula::DualRadiusReal => f.dual_radius.re,
            Formula::DualRadiusDual => f.dual_radius.du,
            Formula::RhoCoshReal => f.rho_cosh.re,
            Formula::RhoCoshDual => f.rho_cosh.du,
            Formula::RhoSinh => f.rho_sinh,
            Formula::RhoStarCosh => f.rho_star_cosh,
            Formula::RhoCosh => f.rho_cosh_real,
            Formula::RhoStar => f.rho_star,
            Formula::OffsetDistance => f.offset_distance,
        }
    }

    fn oracle(self, o: &OracleValues, theta_star: f64) -> f64 {
        match self {
            Formula::ArcRate => o.arc_rate,
            Formula::ArcRateDual => o.arc_rate_dual,
            Formula::StrictionNormalFromArcRate | Formula::StrictionNormalFromDisplacement => o.striction_normal,
            Formula::StrictionAxial => o.striction_axial,
            Formula::ConicalCurvature => o.conical_curvature,
            Formula::DualConicalCurvatureReal => o.dual_conical_curvature.re,
            Formula::DualConicalCurvatureDual => o.dual_conical_curvature.du,
            Formula::DualRadiusReal => o.dual_radius.re,
            Formula::DualRadiusDual => o.dual_radius.du,
            Formula::RhoCoshReal => o.rho_cosh.re,
            Formula::RhoCoshDual => o.rho_cosh.du,
            Formula::RhoSinh => o.rho_sinh.re,
            Formula::RhoStarCosh => o.rho_sinh.du,
            Formula::RhoCosh => o.rho_angle.map_or(f64::NAN, |r| r.re.cosh()),
            Formula::RhoStar => o.rho_angle.map_or(f64::NAN, |r| r.du),
            Formula::OffsetDistance => theta_star,
        }
    }

    fn residual(self, value: f64, oracle: f64) -> f64 {
        let r = match self {
            // The sign of ds₁/ds depends on orientation choices; compare
            // magnitudes.
            Formula::ArcRate => (value.abs() - oracle.abs()).abs(),
            _ => (value - oracle).abs(),
        };
        if r.is_nan() {
            f64::INFINITY
        } else {
            r
        }
    }
}

/// Reconstructed offset values at one base sample, in the closed-form sign
/// convention.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleValues {
    pub conical_curvature: f64,
    pub striction_axial: f64,
    pub striction_normal: f64,
    /// `ds₁/ds` with the closed-form orientation `t₁ = g`.
    pub arc_rate: f64,
    /// `(ds₁/ds)(Δ − Δ₁)`, the dual part of `ds̄₁/ds̄` measured in `s`.
    pub arc_rate_dual: f64,
    pub dual_conical_curvature: DualScalar,
    pub dual_radius: DualScalar,
    pub rho_cosh: DualScalar,
    pub rho_sinh: DualScalar,
    /// `ρ₁ + ερ₁*` when the offset's radius pair admits a real angle.
    pub rho_angle: Option<DualScalar>,
    /// Kernel-convention `γ₁` before alignment.
    pub raw_conical_curvature: f64,
    /// Kernel-convention `δ₁` before alignment.
    pub raw_striction_axial: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FormulaEntry {
    pub formula: Formula,
    pub value: f64,
    pub oracle: f64,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub s: f64,
    pub theta: f64,
    pub theta_star: f64,
    pub oracle: OracleValues,
    /// One entry per [`Formula::ALL`], in that order.
    pub entries: Vec<FormulaEntry>,
    /// `c₁ − c` in the base frame: components along `e`, `t`, `g`.
    pub striction_displacement: [f64; 3],
}

impl ReportRow {
    pub fn entry(&self, f: Formula) -> &FormulaEntry {
        self.entries.iter().find(|e| e.formula == f).expect("every formula has an entry")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Confirmed,
    Discrepant,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Confirmed => "CONFIRMED",
            Verdict::Discrepant => "DISCREPANT",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FormulaSummary {
    pub formula: Formula,
    pub max_residual: f64,
    pub mean_residual: f64,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OffsetReport {
    pub tol: f64,
    pub rows: Vec<ReportRow>,
    pub summary: Vec<FormulaSummary>,
    pub mannheim: MannheimResiduals,
    /// Largest `|c₁ − c|` component along the base ruling.
    pub striction_along_director_max: f64,
}

impl OffsetReport {
    pub fn summary_for(&self, f: Formula) -> &FormulaSummary {
        self.summary.iter().find(|s| s.formula == f).expect("every formula is summarized")
    }
}

/// Compare every closed form against the reconstructed offset, sample by
/// sample.
pub fn consistency_report(
    m: &RuledSurfaceModel,
    spec: &OffsetSpec,
    offset: &OffsetModel,
    tol: f64,
) -> Result<OffsetReport, OffsetError> {
    if offset.spec != *spec || offset.base_s_grid != m.s_grid || offset.e1_dual != transfer_director(m, spec) {
        return Err(OffsetError::MismatchedInputs);
    }
    let view = offset.base_view()?;
    let sigma = offset.orientation;
    let mut rows = Vec::with_capacity(m.len());
    let mut along_e = 0.0f64;
    for i in 0..m.len() {
        let forms = offset_closed_forms(m, spec, i)?;
        let arc_rate = sigma * offset.rate[i];
        let pair = crate::surface::RhoPair {
            cosh: view.rho_cosh[i],
            sinh: view.rho_sinh[i],
        };
        let oracle = OracleValues {
            conical_curvature: view.conical_curvature[i],
            striction_axial: view.striction_axial[i],
            striction_normal: view.striction_normal[i],
            arc_rate,
            arc_rate_dual: arc_rate * (m.striction_normal[i] - view.striction_normal[i]),
            dual_conical_curvature: view.gamma_bar[i],
            dual_radius: view.r_bar[i],
            rho_cosh: pair.cosh,
            rho_sinh: pair.sinh,
            rho_angle: pair.angle(),
            raw_conical_curvature: view.raw_conical_curvature[i],
            raw_striction_axial: view.raw_striction_axial[i],
        };
        let entries = Formula::ALL
            .into_iter()
            .map(|f| {
                let value = f.closed_form(&forms);
                let o = f.oracle(&oracle, spec.theta_star[i]);
                FormulaEntry {
                    formula: f,
                    value,
                    oracle: o,
                    residual: f.residual(value, o),
                }
            })
            .collect();
        let d = view.c1[i] - m.c[i];
        let displacement = [-linner(d, m.e[i]), linner(d, m.t[i]), linner(d, m.g[i])];
        along_e = along_e.max(displacement[0].abs());
        rows.push(ReportRow {
            s: m.s_grid[i],
            theta: spec.theta[i],
            theta_star: spec.theta_star[i],
            oracle,
            entries,
            striction_displacement: displacement,
        });
    }
    let summary = Formula::ALL
        .into_iter()
        .enumerate()
        .map(|(k, f)| {
            let res: Vec<f64> = rows.iter().map(|r| r.entries[k].residual).collect();
            let max_residual = res.iter().copied().fold(0.0, f64::max);
            let mean_residual = res.iter().sum::<f64>() / res.len() as f64;
            FormulaSummary {
                formula: f,
                max_residual,
                mean_residual,
                verdict: if max_residual <= tol { Verdict::Confirmed } else { Verdict::Discrepant },
            }
        })
        .collect();
    Ok(OffsetReport {
        tol,
        rows,
        summary,
        mannheim: mannheim_residuals_from_view(m, &view),
        striction_along_director_max: along_e,
    })
}

/// Developability conditions relating a surface, its offset and the offset
/// angle at one sample, with the target values they compare against.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DevelopabilityFlags {
    /// `Δ ≈ 0`, equivalently `θ*` locally constant.
    pub base_developable: bool,
    /// `θ* ≈ −(δ/γ) tanh θ`, the condition for a developable offset.
    pub offset_developable: bool,
    pub offset_developable_target: f64,
    /// `θ* ≈ δ` with both locally constant.
    pub distance_equals_axial: bool,
    /// `γ ≈ −tanh θ`.
    pub gamma_equals_minus_tanh: bool,
    pub gamma_target: f64,
}

pub fn developability_predicates(
    m: &RuledSurfaceModel,
    spec: &OffsetSpec,
    i: usize,
    tol: f64,
) -> Result<DevelopabilityFlags, OffsetError> {
    offset_closed_forms(m, spec, i)?;
    let (gamma, delta, big_delta) = (m.conical_curvature[i], m.striction_axial[i], m.striction_normal[i]);
    let (theta, theta_star) = (spec.theta[i], spec.theta_star[i]);
    let delta_rate = diff1(&m.striction_axial, m.step())[i];
    let offset_target = -(delta / gamma) * theta.tanh();
    let gamma_target = -theta.tanh();
    let base_developable = big_delta.abs() <= tol;
    Ok(DevelopabilityFlags {
        base_developable,
        offset_developable: (theta_star - offset_target).abs() <= tol,
        offset_developable_target: offset_target,
        distance_equals_axial: (theta_star - delta).abs() <= tol && base_developable && delta_rate.abs() <= tol,
        gamma_equals_minus_tanh: (gamma - gamma_target).abs() <= tol,
        gamma_target,
    })
}

/// Components of `dẽ₁/ds̄` along `ẽ` and `t̃`, which all vanish exactly when
/// `ẽ₁` sweeps a Mannheim offset.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ParallelismResidual {
    pub along_director: f64,
    pub along_tangent: f64,
}

impl ParallelismResidual {
    pub fn max(&self) -> f64 {
        self.along_director.max(self.along_tangent)
    }
}

/// Measure how far `dẽ₁/ds̄` is from `g̃` on the interior samples. Works for
/// perturbed profiles, where no offset surface needs to exist.
pub fn mannheim_parallelism_residual(m: &RuledSurfaceModel, spec: &OffsetSpec) -> Result<ParallelismResidual, OffsetError> {
    if spec.len() != m.len() {
        return Err(OffsetError::MismatchedInputs);
    }
    let e1 = transfer_director(m, spec);
    let de1 = diff1(&e1, uniform_step(&m.s_grid)?);
    let mut out = ParallelismResidual::default();
    for i in 2..m.len().saturating_sub(2) {
        let rate = DualScalar::new(1.0, -m.striction_normal[i]);
        let v = de1[i].div_dual(rate).expect("unit real part");
        let along_e = -v.dinner(m.dual_director(i));
        let along_t = v.dinner(m.dual_tangent(i));
        out.along_director = out.along_director.max(along_e.re.abs().max(along_e.du.abs()));
        out.along_tangent = out.along_tangent.max(along_t.re.abs().max(along_t.du.abs()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::synth_constant_invariant;
    use approx::assert_abs_diff_eq;

    fn fx_b_window() -> RuledSurfaceModel {
        synth_constant_invariant(0.5, 0.3, 0.2, (1.0, 2.0), 1024).unwrap()
    }

    #[test]
    fn angle_profile_on_constant_fixture() {
        let m = fx_b_window();
        let spec = offset_angle_profile(&m, 3.0, 0.3).unwrap();
        let last = m.len() - 1;
        assert_abs_diff_eq!(spec.theta[last], 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(spec.theta_star[last], 0.7, epsilon = 1e-12);
        assert_abs_diff_eq!(spec.theta_star[0], 0.5, epsilon = 1e-12);
    }

    #[test]
    fn developable_base_has_constant_distance() {
        let m = synth_constant_invariant(0.5, 0.3, 0.0, (0.0, 1.0), 64).unwrap();
        let spec = offset_angle_profile(&m, 3.0, 0.3).unwrap();
        assert!(spec.theta_star.iter().all(|v| (v - 0.3).abs() < 1e-15));
        for i in [0, 20, 63] {
            assert!(developability_predicates(&m, &spec, i, 1e-9).unwrap().base_developable);
        }
    }

    #[test]
    fn windows_through_zero_angle_are_rejected() {
        let m = synth_constant_invariant(0.5, 0.3, 0.2, (0.5, 1.5), 64).unwrap();
        let spec = offset_angle_profile(&m, 0.0, 0.0).unwrap();
        assert!(spec.theta.iter().all(|t| *t < 0.0));
        let m = synth_constant_invariant(0.5, 0.3, 0.2, (0.5, 1.0), 64).unwrap();
        assert!(matches!(
            offset_angle_profile(&m, 0.75, 0.0),
            Err(OffsetError::DegenerateWindow { .. })
        ));
    }

    #[test]
    fn vanishing_conical_curvature_is_rejected() {
        let m = synth_constant_invariant(0.0, 0.0, 1.0, (0.0, 2.0), 64).unwrap();
        let err = offset_angle_profile(&m, 3.0, 0.0).unwrap_err();
        assert!(err.to_string().starts_with("DegenerateOffsetIndicatrix: γ = 0"));
    }

    #[test]
    fn closed_form_values() {
        let f = ClosedForms::evaluate(0.5, 0.3, 0.2, 1.0, 0.7).unwrap();
        assert_abs_diff_eq!(f.conical_curvature, -1.313035, epsilon = 1e-6);
        assert_abs_diff_eq!(f.striction_axial, -0.650428, epsilon = 1e-6);
        assert_abs_diff_eq!(f.striction_normal_from_arc_rate, -1.519125, epsilon = 1e-6);
        assert_abs_diff_eq!(f.striction_normal_from_displacement, 0.274786, epsilon = 1e-6);
        assert_abs_diff_eq!(f.dual_radius.re, 1.175201, epsilon = 1e-6);
        assert_abs_diff_eq!(f.dual_radius.du, -0.083533, epsilon = 1e-6);
        assert_abs_diff_eq!(f.rho_cosh.re, 1.543081, epsilon = 1e-6);
        assert_abs_diff_eq!(f.rho_cosh.du, -0.063618, epsilon = 1e-6);
        assert_abs_diff_eq!(f.offset_distance, 0.158529, epsilon = 1e-6);
        assert_abs_diff_eq!(f.dual_arc_rate.re, f.arc_rate, epsilon = 1e-15);
        assert_abs_diff_eq!(f.dual_arc_rate.du, f.arc_rate_dual, epsilon = 1e-15);
        assert!(ClosedForms::evaluate(0.5, 0.3, 0.2, 0.0, 0.7).is_none());
        assert!(ClosedForms::evaluate(0.0, 0.3, 0.2, 1.0, 0.7).is_none());
    }

    #[test]
    fn developability_targets() {
        let m = fx_b_window();
        let spec = offset_angle_profile(&m, 3.0, 0.3).unwrap();
        let flags = developability_predicates(&m, &spec, m.len() - 1, 1e-6).unwrap();
        assert_abs_diff_eq!(flags.offset_developable_target, -0.456956, epsilon = 1e-6);
        assert!(!flags.offset_developable);
        assert!(!flags.base_developable);

        let m = synth_constant_invariant(-0.761594, 0.3, 0.2, (1.0, 2.0), 64).unwrap();
        let spec = offset_angle_profile(&m, 3.0, 0.3).unwrap();
        assert!(developability_predicates(&m, &spec, 63, 1e-6).unwrap().gamma_equals_minus_tanh);
    }

    #[test]
    fn offset_of_constant_fixture() {
        let m = fx_b_window();
        let spec = offset_angle_profile(&m, 3.0, 0.3).unwrap();
        let off = construct_offset(&m, &spec).unwrap();
        let last = m.len() - 1;
        let expect = m.e[last] * 1f64.cosh() + m.t[last] * 1f64.sinh();
        assert!((off.e1_dual[last].re - expect).max_abs() < 1e-12);
        assert_eq!(off.orientation, 1.0);

        let report = consistency_report(&m, &spec, &off, DEFAULT_REPORT_TOL).unwrap();
        assert!(report.mannheim.real < 1e-5, "{:?}", report.mannheim);
        assert!(report.striction_along_director_max < 1e-4);
        let row = &report.rows[last];
        assert_abs_diff_eq!(row.oracle.conical_curvature, -1.313035, epsilon = 1e-4);
        assert_abs_diff_eq!(row.oracle.arc_rate.abs(), 0.587601, epsilon = 1e-4);
        let gap = row.entry(Formula::StrictionNormalFromArcRate).value
            - row.entry(Formula::StrictionNormalFromDisplacement).value;
        assert_abs_diff_eq!(gap.abs(), 1.793911, epsilon = 1e-6);
        assert_eq!(report.summary_for(Formula::ConicalCurvature).verdict, Verdict::Confirmed);
        assert_eq!(report.summary_for(Formula::StrictionNormalFromArcRate).verdict, Verdict::Confirmed);
        assert_eq!(report.summary_for(Formula::StrictionNormalFromDisplacement).verdict, Verdict::Discrepant);
    }

    #[test]
    fn report_rejects_foreign_offsets() {
        let m = fx_b_window();
        let spec = offset_angle_profile(&m, 3.0, 0.3).unwrap();
        let off = construct_offset(&m, &spec).unwrap();
        let other = offset_angle_profile(&m, 3.0, 0.4).unwrap();
        assert_eq!(
            consistency_report(&m, &other, &off, 1e-3).unwrap_err(),
            OffsetError::MismatchedInputs
        );
    }

    #[test]
    fn perturbed_angle_law_breaks_parallelism() {
        let m = fx_b_window();
        let spec = offset_angle_profile(&m, 3.0, 0.3).unwrap();
        assert!(mannheim_parallelism_residual(&m, &spec).unwrap().max() < 1e-5);
        assert!(mannheim_parallelism_residual(&m, &spec.perturbed(0.05)).unwrap().max() > 1e-3);
    }
}
