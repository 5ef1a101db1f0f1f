"""Smoke test for the ruledkit extension module.

Build with ``cargo build -p ruledkit-python --release`` and put the shared
library on ``sys.path`` as ``ruledkit.so`` (or install with maturin).
"""

import math

import ruledkit as rk


def close(a, b, tol):
    assert abs(a - b) <= tol, (a, b)


def main():
    x = rk.DualScalar(2.0, 3.0)
    y = rk.DualScalar(-1.0, 0.5)
    p = x * y
    close(p.re, -2.0, 0.0)
    close(p.du, -2.0, 0.0)
    q = p / y
    close(q.re, x.re, 1e-15)
    close(q.du, x.du, 1e-15)
    c = rk.DualScalar(0.7, 1.0).apply("cosh")
    close(c.du, math.sinh(0.7), 1e-15)

    close(rk.linner((1, 2, 3), (4, 5, 6)), 24.0, 0.0)
    assert rk.lcross((1, 0, 0), (0, 1, 0)) == (0.0, 0.0, -1.0)
    assert rk.causal_classify((1, 1, 0)) == "Null"

    line = rk.encode_line((1.25, 0.75, 0.0), (0.3, -1.0, 2.0))
    point = rk.decode_line_point(*line)
    close(rk.linner(point, line[0]), 0.0, 1e-12)

    fx_a = rk.RuledSurface.planar_hyperbola((0.0, 2.0), 513)
    assert fx_a.classify() == {"developable": False, "cone": False}
    close(min(fx_a.Delta), 1.0, 1e-6)

    fx_c = rk.RuledSurface.cone((1.0, 2.0, 3.0), (0.0, 2.0), 513)
    assert fx_c.classify() == {"developable": True, "cone": True}

    fx_b = rk.RuledSurface.constant_invariant(0.5, 0.3, 0.2, (1.0, 2.0), 1025)
    close(fx_b.gamma[-1], 0.5, 1e-9)
    app = fx_b.dual_apparatus()
    close(app["gamma_bar"][0].du, 0.4, 1e-9)
    close(app["R_bar"][-1].re, 1.154701, 1e-6)
    close(app["R_bar"][-1].du, 0.307920, 1e-6)
    assert set(app["branch"]) == {"SpacelikeAxis"}

    off = fx_b.mannheim_offset(3.0, 0.3)
    close(off.theta[-1], 1.0, 1e-12)
    close(off.theta_star[-1], 0.7, 1e-9)
    close(off.gamma1[-1], -1.313035, 1e-5)
    verdicts = {name: verdict for name, _, _, verdict in off.summary()}
    assert verdicts["conical_curvature"] == "CONFIRMED"
    assert verdicts["offset_distance"] == "DISCREPANT"
    assert off.mannheim_residual < 1e-6
    assert len(off.surface) == len(fx_b)

    try:
        fx_a.mannheim_offset(3.0, 0.0)
    except rk.DegeneracyError as err:
        print("degenerate as expected:", err)
    else:
        raise AssertionError("offset of a planar surface must degenerate")

    print("python smoke test: ok")


if __name__ == "__main__":
    main()
