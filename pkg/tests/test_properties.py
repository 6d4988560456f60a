"""Hypothesis properties of the map and the charts."""
import math

import numpy as np
from hypothesis import assume, given
from hypothesis import strategies as st

from birational_lab import a3, regions
from birational_lab.core import ExtPoint, eval_f, eval_f_inv, jacobian_f, sigma, tau

coord = st.floats(-50, 50, allow_nan=False, allow_infinity=False)
param = st.floats(1.01, 20, allow_nan=False)


@given(param, coord, coord)
def test_inverse_round_trip(a, x, y):
    r = eval_f(a, ExtPoint(x, y))
    assume(r.ok and r.point.is_finite)
    back = eval_f_inv(a, r.point)
    assume(back.ok)
    scale = max(1.0, abs(x), abs(y), abs(r.point.x), abs(r.point.y))
    assert back.point.close_to(ExtPoint(x, y), 1e-9 * scale**2)


@given(param, coord, coord)
def test_reversibility_is_bitwise(a, x, y):
    p = ExtPoint(x, y)
    lhs, rhs = eval_f_inv(a, p), eval_f(a, sigma(p))
    assume(lhs.ok and rhs.ok)
    assert lhs.point == sigma(rhs.point)


@given(param, coord, coord)
def test_tau_is_an_involution(a, x, y):
    assume(abs(y + 1) > 1e-3 and abs(a - 1 - y + 1) > 1e-3)
    p = ExtPoint(x, y)
    q = tau(a, tau(a, p))
    assert q.close_to(p, 1e-9 * max(1.0, abs(x), abs(y)) ** 2)


@given(param, coord, coord)
def test_area_form_preserved(a, x, y):
    # f^* eta = eta with eta = dx dy / (y - x + 1): det Df * w(f(p)) / w(p) = 1
    assume(abs(x - 1) > 1e-2 and abs(y - x + 1) > 1e-2)
    X, Y = y * (x + a) / (x - 1), x + a - 1
    assume(abs(Y - X + 1) > 1e-2)
    ratio = np.linalg.det(jacobian_f(a, (x, y))) * (y - x + 1) / (Y - X + 1)
    assert math.isclose(ratio, 1.0, rel_tol=1e-7)


@given(param, st.floats(0, 1, allow_nan=False), st.floats(0, 30, allow_nan=False))
def test_y_nondecreasing_on_s1(a, s, v):
    # equality holds on the edge u = 0, so allow one rounding step
    u = s * (1 + a) / 2
    assume(u < (1 + a) / 2 - 1e-9)
    c = regions.blade_transition(1, a, regions.AdaptedCoords(1, u, v))
    assert c.v >= v * (1 - 4e-16)


@given(st.integers(0, 2), st.floats(0, 2, allow_nan=False), st.floats(0, 2, allow_nan=False))
def test_wedge_chart_round_trip(w, u, v):
    x, y = a3.unchart_array(w, u, v)
    assume(np.isfinite(x) and np.isfinite(y))
    uu, vv = a3.chart_array(w, x, y)
    assert math.isclose(uu, u, abs_tol=1e-9) and math.isclose(vv, v, abs_tol=1e-9)


@given(param, coord, coord)
def test_classifier_reversibility(a, x, y):
    cfg = regions.ClassifierConfig(n_max=100)
    f, nf = regions.classify_points(a, np.array([x]), np.array([y]), cfg)
    b, nb = regions.classify_points(a, np.array([-y]), np.array([-x]), cfg, inverse=True)
    assert f[0] == b[0] and nf[0] == nb[0]
