use std::fmt::Write;

use ruledkit::RuledSurfaceModel;

use crate::error::CliError;

fn coord(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    let s = format!("{x:.9}");
    if s.starts_with('-') && s[1..].bytes().all(|b| b == b'0' || b == b'.') {
        s[1..].to_owned()
    } else {
        s
    }
}

/// Triangulated grid over `(s, v)`: vertices `c(s) + v·e(s)` row-major with
/// `v` varying fastest, two counterclockwise triangles per cell.
pub fn obj(m: &RuledSurfaceModel, name: &str, v_min: f64, v_max: f64, v_samples: usize) -> Result<String, CliError> {
    if !(v_min.is_finite() && v_max.is_finite() && v_min < v_max) {
        return Err(CliError::Arguments(format!("v range [{v_min}, {v_max}] must satisfy v-min < v-max")));
    }
    if v_samples < 2 {
        return Err(CliError::Arguments(format!("v-samples = {v_samples}, need at least 2")));
    }
    let n = m.len();
    let mut out = String::new();
    writeln!(out, "# ruledkit mesh {name}: {n} x {v_samples} grid over (s, v)").unwrap();
    for i in 0..n {
        for j in 0..v_samples {
            let v = v_min + (v_max - v_min) * j as f64 / (v_samples - 1) as f64;
            let p = m.surface_point(i, v);
            writeln!(out, "v {} {} {}", coord(p.x0), coord(p.x1), coord(p.x2)).unwrap();
        }
    }
    let idx = |i: usize, j: usize| i * v_samples + j + 1;
    for i in 0..n - 1 {
        for j in 0..v_samples - 1 {
            let (a, b, c, d) = (idx(i, j), idx(i + 1, j), idx(i + 1, j + 1), idx(i, j + 1));
            writeln!(out, "f {a} {b} {c}").unwrap();
            writeln!(out, "f {a} {c} {d}").unwrap();
        }
    }
    Ok(out)
}
