//! JSON documents written by the commands.

use ruledkit::offset::{MannheimResiduals, OffsetReport, ParallelismResidual};
use ruledkit::surface::{DualFrameResiduals, FrameResiduals};
use ruledkit::{Classification, DualApparatus, OffsetModel, OffsetSpec, RuledSurfaceModel};

use crate::json::Json;

fn stats(v: &[f64]) -> Json {
    let min = v.iter().copied().fold(f64::INFINITY, f64::min);
    let max = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mean = v.iter().sum::<f64>() / v.len() as f64;
    Json::obj([("max", max.into()), ("mean", mean.into()), ("min", min.into())])
}

fn frame_residuals(r: &FrameResiduals) -> Json {
    Json::obj([
        ("darboux_e", r.darboux_e.into()),
        ("darboux_g", r.darboux_g.into()),
        ("darboux_t", r.darboux_t.into()),
        ("decomposition", r.decomposition.into()),
        ("handedness", r.handedness.into()),
        ("orthonormality", r.orthonormality.into()),
        ("striction", r.striction.into()),
    ])
}

fn dual_frame_residuals(r: &DualFrameResiduals) -> Json {
    Json::obj([
        ("director", r.director.into()),
        ("director_speed", r.director_speed.into()),
        ("normal", r.normal.into()),
        ("tangent", r.tangent.into()),
    ])
}

fn invariant_stats(gamma: &[f64], delta: &[f64], big_delta: &[f64]) -> [(&'static str, Json); 3] {
    [("Delta", stats(big_delta)), ("delta", stats(delta)), ("gamma", stats(gamma))]
}

pub fn analysis(
    name: &str,
    m: &RuledSurfaceModel,
    app: &DualApparatus,
    class: Classification,
    tol: f64,
    dual_residuals: &DualFrameResiduals,
) -> Json {
    let samples = (0..m.len())
        .map(|i| {
            Json::obj([
                ("Delta", m.striction_normal[i].into()),
                ("R_bar", app.r_bar[i].into()),
                ("branch", app.branch[i].name().into()),
                ("c", m.c[i].into()),
                ("delta", m.striction_axial[i].into()),
                ("e", m.e[i].into()),
                ("g", m.g[i].into()),
                ("gamma", m.conical_curvature[i].into()),
                ("gamma_bar", app.gamma_bar[i].into()),
                ("rho_cosh", app.rho_pair[i].cosh.into()),
                ("rho_sinh", app.rho_pair[i].sinh.into()),
                ("s", m.s_grid[i].into()),
                ("s_bar", app.s_bar[i].into()),
                ("t", m.t[i].into()),
            ])
        })
        .collect();
    let (radius, rho, branch) = app.identity_residuals();
    let mut summary: Vec<(&str, Json)> = invariant_stats(&m.conical_curvature, &m.striction_axial, &m.striction_normal).into();
    summary.push(("length", m.length().into()));
    summary.push(("sample_count", m.len().into()));
    Json::obj([
        (
            "apparatus_identities",
            Json::obj([
                ("branch_relations", branch.into()),
                ("hyperbolic_identity", rho.into()),
                ("radius_identity", radius.into()),
            ]),
        ),
        (
            "classification",
            Json::obj([("cone", class.cone.into()), ("developable", class.developable.into()), ("tol", tol.into())]),
        ),
        ("dual_frame_residuals", dual_frame_residuals(dual_residuals)),
        ("frame_residuals", frame_residuals(&m.frame_residuals())),
        ("name", name.into()),
        ("samples", Json::Arr(samples)),
        ("summary", Json::obj(summary)),
    ])
}

fn mannheim(r: &MannheimResiduals) -> Json {
    Json::obj([("dual_max", r.dual.into()), ("real_max", r.real.into())])
}

pub fn offset(
    name: &str,
    spec: &OffsetSpec,
    off: &OffsetModel,
    residuals: &MannheimResiduals,
    parallelism: &ParallelismResidual,
) -> Json {
    let samples = (0..spec.len())
        .map(|i| {
            let l = off.e1_dual[i];
            Json::obj([
                ("arc_rate", (off.orientation * off.rate[i]).into()),
                ("e1", Json::obj([("du", l.du.into()), ("re", l.re.into())])),
                ("offset_point", off.offset_points[i].into()),
                ("s", spec.s_grid[i].into()),
                ("s1", off.s1[i].into()),
                ("theta", spec.theta[i].into()),
                ("theta_star", spec.theta_star[i].into()),
            ])
        })
        .collect();
    let a = &off.aligned;
    let mut recovered: Vec<(&str, Json)> =
        invariant_stats(&a.conical_curvature, &a.striction_axial, &a.striction_normal).into();
    recovered.push(("frame_residuals", frame_residuals(&off.recovered.frame_residuals())));
    recovered.push(("length", off.recovered.length().into()));
    recovered.push(("orientation", off.orientation.into()));
    Json::obj([
        ("c", spec.c_const.into()),
        ("cstar", spec.cstar_const.into()),
        ("mannheim", mannheim(residuals)),
        ("name", name.into()),
        (
            "parallelism",
            Json::obj([
                ("along_director", parallelism.along_director.into()),
                ("along_tangent", parallelism.along_tangent.into()),
            ]),
        ),
        ("recovered", Json::obj(recovered)),
        ("samples", Json::Arr(samples)),
    ])
}

pub fn consistency(name: &str, r: &OffsetReport) -> Json {
    let formulas = Json::obj(r.summary.iter().map(|s| {
        (
            s.formula.key(),
            Json::obj([
                ("max_residual", s.max_residual.into()),
                ("mean_residual", s.mean_residual.into()),
                ("verdict", s.verdict.name().into()),
            ]),
        )
    }));
    let rows = r
        .rows
        .iter()
        .map(|row| {
            let o = &row.oracle;
            let oracle = Json::obj([
                ("Delta", o.striction_normal.into()),
                ("R_bar", o.dual_radius.into()),
                ("arc_rate", o.arc_rate.into()),
                ("arc_rate_dual", o.arc_rate_dual.into()),
                ("delta", o.striction_axial.into()),
                ("delta_raw", o.raw_striction_axial.into()),
                ("gamma", o.conical_curvature.into()),
                ("gamma_bar", o.dual_conical_curvature.into()),
                ("gamma_raw", o.raw_conical_curvature.into()),
                ("rho", o.rho_angle.into()),
                ("rho_cosh", o.rho_cosh.into()),
                ("rho_sinh", o.rho_sinh.into()),
            ]);
            let entries = Json::obj(row.entries.iter().map(|e| {
                (
                    e.formula.key(),
                    Json::obj([("oracle", e.oracle.into()), ("residual", e.residual.into()), ("value", e.value.into())]),
                )
            }));
            let [de, dt, dg] = row.striction_displacement;
            Json::obj([
                ("formulas", entries),
                ("oracle", oracle),
                ("s", row.s.into()),
                (
                    "striction_displacement",
                    Json::obj([("e", de.into()), ("g", dg.into()), ("t", dt.into())]),
                ),
                ("theta", row.theta.into()),
                ("theta_star", row.theta_star.into()),
            ])
        })
        .collect();
    Json::obj([
        ("formulas", formulas),
        ("mannheim", mannheim(&r.mannheim)),
        ("name", name.into()),
        ("rows", Json::Arr(rows)),
        ("striction_along_director_max", r.striction_along_director_max.into()),
        ("tol", r.tol.into()),
    ])
}
