//! Surface definitions read from JSON.
//!
//! ```json
//! {
//!   "name": "constant",
//!   "kind": "constant_invariant",
//!   "params": {"gamma": 0.5, "delta": 0.3, "Delta": 0.2},
//!   "s_range": [0.0, 2.0],
//!   "samples": 1024
//! }
//! ```

use ruledkit::fixtures::{cone, cone_with_director, planar_hyperbola};
use ruledkit::numerics::{linspace, resample_monotone, MIN_SAMPLES};
use ruledkit::{build_surface, synth_constant_invariant, BuildConfig, MVec3, RuledSurfaceModel, SampledCurve};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const DEFAULT_SAMPLES: usize = 1024;
/// Environment variable overriding the default sample count.
pub const SAMPLES_ENV: &str = "RULEDKIT_SAMPLES";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurfaceConfig {
    pub name: String,
    #[serde(flatten)]
    pub kind: SurfaceKind,
    pub s_range: [f64; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "params", rename_all = "snake_case")]
pub enum SurfaceKind {
    /// Closed-form surface with constant `γ`, `δ`, `Δ` parameterized by arc
    /// length.
    ConstantInvariant {
        gamma: f64,
        delta: f64,
        #[serde(rename = "Delta")]
        big_delta: f64,
    },
    /// Director `(cosh u, sinh u, 0)` along the `x₂` axis.
    PlanarHyperbola,
    /// Cone with the given vertex. Without director samples the director is
    /// `(A cosh u, A sinh u, B)` with `A = 2/√3`, `B = −1/√3`.
    Cone {
        apex: [f64; 3],
        #[serde(default, skip_serializing_if = "Option::is_none")]
        director: Option<SampledDirector>,
    },
    /// Director and base curve sampled on a strictly increasing parameter
    /// grid, resampled monotonically onto `samples` uniform points of
    /// `s_range`.
    Sampled {
        u: Vec<f64>,
        director: Vec<[f64; 3]>,
        base: Vec<[f64; 3]>,
        /// `∫ Δ` accumulated before the window, used for the dual arc
        /// length.
        #[serde(default)]
        dual_arc_origin: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampledDirector {
    pub u: Vec<f64>,
    pub values: Vec<[f64; 3]>,
}

impl SurfaceConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config always serializes")
    }

    /// Sample count from, in order, the command line, the config, the
    /// `RULEDKIT_SAMPLES` environment variable, and the built-in default.
    pub fn resolve_samples(&self, flag: Option<usize>) -> Result<usize, CliError> {
        self.resolve_samples_with(flag, std::env::var(SAMPLES_ENV).ok())
    }

    pub fn resolve_samples_with(&self, flag: Option<usize>, env: Option<String>) -> Result<usize, CliError> {
        if let Some(n) = flag.or(self.samples) {
            return Ok(n);
        }
        match env {
            Some(text) => text
                .trim()
                .parse()
                .map_err(|_| CliError::Config(format!("{SAMPLES_ENV}={text:?} is not a sample count"))),
            None => Ok(DEFAULT_SAMPLES),
        }
    }

    pub fn validate(&self, samples: usize) -> Result<(), CliError> {
        let [lo, hi] = self.s_range;
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(CliError::Config(format!("s_range [{lo}, {hi}] must satisfy lo < hi")));
        }
        if samples < MIN_SAMPLES {
            return Err(CliError::Config(format!("samples = {samples}, need at least {MIN_SAMPLES}")));
        }
        match &self.kind {
            SurfaceKind::Sampled { u, director, base, .. } => {
                check_samples(u, &[("director", director.len()), ("base", base.len())], self.s_range)
            }
            SurfaceKind::Cone {
                director: Some(d), ..
            } => check_samples(&d.u, &[("director", d.values.len())], self.s_range),
            _ => Ok(()),
        }
    }

    /// Validate and build the surface model on `samples` points.
    pub fn build(&self, samples: usize) -> Result<RuledSurfaceModel, CliError> {
        self.validate(samples)?;
        let range = (self.s_range[0], self.s_range[1]);
        let model = match &self.kind {
            SurfaceKind::ConstantInvariant { gamma, delta, big_delta } => {
                synth_constant_invariant(*gamma, *delta, *big_delta, range, samples)?
            }
            SurfaceKind::PlanarHyperbola => planar_hyperbola(range, samples)?,
            SurfaceKind::Cone { apex, director: None } => cone(MVec3::from_array(*apex), range, samples)?,
            SurfaceKind::Cone {
                apex,
                director: Some(d),
            } => {
                let dir = resample(&d.u, &d.values, range, samples)?;
                cone_with_director(MVec3::from_array(*apex), &dir)?
            }
            SurfaceKind::Sampled {
                u,
                director,
                base,
                dual_arc_origin,
            } => {
                let dir = resample(u, director, range, samples)?;
                let base = resample(u, base, range, samples)?;
                let cfg = BuildConfig {
                    dual_arc_origin: *dual_arc_origin,
                    ..BuildConfig::default()
                };
                build_surface(&dir, &base, &cfg)?
            }
        };
        Ok(model)
    }
}

fn check_samples(u: &[f64], arrays: &[(&str, usize)], s_range: [f64; 2]) -> Result<(), CliError> {
    if u.len() < 2 {
        return Err(CliError::Config("sampled curves need at least two samples".into()));
    }
    for (name, len) in arrays {
        if *len != u.len() {
            return Err(CliError::Config(format!("{name} has {len} samples, u has {}", u.len())));
        }
    }
    if let Some(i) = u.windows(2).position(|w| !(w[1] > w[0])) {
        return Err(CliError::Config(format!("u is not strictly increasing at index {}", i + 1)));
    }
    let slack = 1e-12 * (u[u.len() - 1] - u[0]);
    if s_range[0] < u[0] - slack || s_range[1] > u[u.len() - 1] + slack {
        return Err(CliError::Config(format!(
            "s_range [{}, {}] exceeds the sampled range [{}, {}]",
            s_range[0],
            s_range[1],
            u[0],
            u[u.len() - 1]
        )));
    }
    Ok(())
}

fn resample(u: &[f64], values: &[[f64; 3]], range: (f64, f64), samples: usize) -> Result<SampledCurve, CliError> {
    let values: Vec<MVec3> = values.iter().map(|v| MVec3::from_array(*v)).collect();
    let grid = linspace(range.0, range.1, samples);
    let out = resample_monotone(u, &values, &grid)?;
    Ok(SampledCurve::new(grid, out)?)
}
