"""Wedges, charts, comparison estimates and arc tracing at a = 3."""
import csv
import json
import math

import numpy as np
import pytest
import sympy as sp
from scipy.integrate import dblquad

from birational_lab import a3
from birational_lab.core import ExtPoint, f_array

x, y = sp.symbols("x y")


def _f_inv_sym(px, py):
    return py - 2, px * (py - 3) / (py + 1)


def _f_sym(px, py):
    return py * (px + 3) / (px - 1), px + 2


def test_phi_closed_forms_symbolic():
    # [DERIVED] phi_j = (first coordinate of f^-j) + 1
    want = {-1: _f_sym(x, y)[0] + 1, 0: x + 1, 1: _f_inv_sym(x, y)[0] + 1,
            2: _f_inv_sym(*_f_inv_sym(x, y))[0] + 1}
    for j, expr in want.items():
        for px, py in [(0.3, 0.7), (-2.0, 2.5), (0.5, -0.5)]:
            assert float(a3.phi_array(j, px, py)) == pytest.approx(
                float(expr.subs({x: px, y: py})), rel=1e-14)


def test_phi_examples():
    assert a3.phi(2, ExtPoint(0.0, 2.0)) == -1.0
    assert a3.wedge_chart(1, ExtPoint(0.0, 2.0)) == (1.0, 1.0)
    assert a3.phi(0, ExtPoint(-1.0, 1.0)) == 0.0
    # beyond the closed forms phi_j iterates the map
    p = ExtPoint(0.2, 0.4)
    q = ExtPoint(*f_array(3.0, *f_array(3.0, 0.2, 0.4)))
    assert a3.phi(-3, p) == pytest.approx(a3.phi(-1, q))
    with pytest.raises(a3.IndeterminateError):
        a3.phi(-1, ExtPoint(1.0, 0.0))
    with pytest.raises(a3.IndeterminateError):
        a3.phi(2, ExtPoint(0.0, -1.0))


def test_p_fix_in_every_wedge():
    assert a3.wedge_membership(ExtPoint(*a3.P_FIX)) == {"W0", "W1", "W2", "sW0", "sW1", "sW2"}
    assert a3.wedge_membership(ExtPoint(5.0, 5.0)) == frozenset()


def _newton(w, target, p, steps=50):
    # Newton on Psi_w(p) = target with a central-difference Jacobian
    p = np.array(p, dtype=float)
    for _ in range(steps):
        r = np.array(a3.chart_array(w, *p)) - target
        if np.max(np.abs(r)) < 1e-15:
            break
        J = np.empty((2, 2))
        for k in range(2):
            e = np.zeros(2)
            e[k] = 1e-7
            J[:, k] = (np.array(a3.chart_array(w, *(p + e))) - np.array(a3.chart_array(w, *(p - e)))) / 2e-7
        p = p - np.linalg.solve(J, r)
    return p


@pytest.mark.parametrize("w", [0, 1, 2])
def test_unchart_matches_newton(w, rng):
    # [DERIVED] solve Psi_w(x, y) = (u, v) numerically
    xs, ys, _ = a3.sample_wedges(40, rng, wedges=(w,))
    for px, py in zip(xs, ys):
        u, v = a3.chart_array(w, px, py)
        sol = _newton(w, np.array([u, v]), [px + 1e-3, py - 1e-3])
        got = a3.unchart_array(w, u, v)
        assert np.allclose(got, sol, atol=1e-9)
        assert np.allclose(got, (px, py), atol=1e-12)


def test_transition_01_is_identity(rng):
    c = rng.uniform(0, 2, (200, 2))
    for ci in c:
        assert a3.wedge_transition(0, 1, ci) == pytest.approx(tuple(ci), abs=1e-12)
    with pytest.raises(ValueError):
        a3.wedge_transition(0, 2, (0.1, 0.1))


def test_transitions_keep_admissible_directions(rng):
    # Df_ij maps the closed positive quadrant into itself
    for i, j in ((0, 1), (1, 2), (2, 0)):
        xs, ys, _ = a3.sample_wedges(100, rng, wedges=(i,))
        for px, py in zip(xs, ys):
            c = a3.chart_array(i, px, py)
            q = f_array(3.0, px, py)
            if not a3.wedge_mask(j, *q):
                continue
            J = a3.transition_jacobian(i, j, c)
            assert np.all(J >= -1e-6)


def test_area_eta_square_against_quadrature():
    # [DERIVED] dblquad over [0,1] x [1,2], where y - x + 1 >= 1
    want, _ = dblquad(lambda yy, xx: 1 / (yy - xx + 1), 0, 1, 1, 2, epsabs=1e-13)
    sq = [(0, 1), (1, 1), (1, 2), (0, 2)]
    assert a3.area_eta(sq) == pytest.approx(want, rel=1e-12)
    assert a3.area_eta(sq[::-1]) == pytest.approx(-want, rel=1e-12)


def test_area_eta_triangle_against_quadrature():
    want, _ = dblquad(lambda yy, xx: 1 / (yy - xx + 1), -1, 0, lambda xx: 0, lambda xx: xx + 1,
                      epsabs=1e-13)
    assert a3.area_eta([(-1, 0), (0, 0), (0, 1)]) == pytest.approx(want, rel=1e-10)
    with pytest.raises(ValueError):
        a3.area_eta([(0, -1), (2, 1), (0, 1)])


def test_hausdorff_simple():
    c1 = np.array([[0.0, 0.0], [1.0, 0.0]])
    c2 = np.array([[0.0, 0.5], [1.0, 0.5], [2.0, 0.5]])
    assert a3.hausdorff(c1, c2) == pytest.approx(math.hypot(1.0, 0.5))
    assert a3.polyline_distance([[0.5, 1.0]], c1)[0] == pytest.approx(1.0)


def test_lipschitz_and_admissible():
    t = np.linspace(0, 1, 50)
    diag = np.column_stack([t, t])
    assert a3.lipschitz_over_diagonal(diag) == pytest.approx(0.0, abs=1e-15)
    assert a3.is_admissible(diag)
    axis = np.column_stack([t, 0 * t])
    assert a3.lipschitz_over_diagonal(axis) == pytest.approx(1.0)
    assert not a3.is_admissible(axis[::-1])


def test_comparison_gap_positive_and_monotone():
    gaps = [a3.comparison_gap(e) for e in (0.2, 0.1, 0.05)]
    assert all(g > 0 for g in gaps)
    assert gaps[0] > gaps[1] > gaps[2]


def test_escape_time_bound_is_valid(rng):
    n = a3.escape_time_bound(0.05, n_samples=2000, seed=3)
    xs, ys, _ = a3.sample_wedges(2000, rng, U_eps=0.05)
    assert np.all(a3.steps_in_s0(xs, ys, n + 1) <= n)


def test_wedge_contraction(rng):
    # f(W_j) lies in W_{j+1} u (outside S0)
    for j in range(3):
        xs, ys, _ = a3.sample_wedges(3000, rng, wedges=(j,))
        X, Y = f_array(3.0, xs, ys)
        inside = a3._in_s0(X, Y)
        assert np.all(a3.wedge_mask((j + 1) % 3, X[inside], Y[inside]) |
                      np.array([a3._near_wedge((j + 1) % 3, px, py, 1e-9)
                                for px, py in zip(X[inside], Y[inside])], dtype=bool))


class TestArcs:
    def test_arcs_are_admissible_and_lipschitz(self, arcs):
        for arc in arcs.values():
            assert a3.is_admissible(arc.samples, tol=1e-9)
            assert arc.lipschitz_bound <= 1 + a3.EPS_LIP
            assert np.allclose(arc.samples[0], 0.0)
            assert np.allclose(arc.plane[0], a3.P_FIX, atol=1e-12)

    def test_area_between_brackets_decreases(self, arcs):
        for arc in arcs.values():
            h = np.array(arc.area_history)
            assert np.all(np.diff(h) <= 0)
            assert np.all(np.diff(arc.hausdorff_history) <= 1e-12)

    def test_stable_arcs_are_sigma_images(self, arcs):
        for w in range(3):
            s, u = arcs[(w, "stable")], arcs[(w, "unstable")]
            assert np.allclose(s.plane, np.column_stack([-u.plane[:, 1], -u.plane[:, 0]]))

    def test_stable_arcs_are_transverse(self, arcs):
        t = [a3.tangent_direction(arcs[(w, "stable")]) for w in range(3)]
        for i in range(3):
            for j in range(i + 1, 3):
                assert math.acos(np.clip(t[i] @ t[j], -1, 1)) > 0.1

    def test_tangents_follow_characteristic_directions(self, arcs):
        # unstable arcs leave p_fix along the slopes -2, -1/2, 1 of the quadratic germ
        slopes = sorted(float(d[1] / d[0]) for d in
                        (a3.tangent_direction(arcs[(w, "unstable")], 1e-2) for w in range(3)))
        assert slopes == pytest.approx([-2.0, -0.5, 1.0], abs=0.15)

    def test_extended_arcs_reach_out(self, global_arcs):
        for curve in global_arcs.values():
            assert np.hypot(*(curve[-1] - a3.P_FIX)) > 0.3

    def test_export(self, arcs, tmp_path):
        arc = arcs[(0, "unstable")]
        a3.write_arc_csv(arc, tmp_path / "a.csv")
        a3.write_arc_json(arc, tmp_path / "a.json")
        rows = list(csv.reader(open(tmp_path / "a.csv")))
        assert rows[0] == ["k", "chart_u", "chart_v", "x", "y"]
        assert len(rows) == len(arc.samples) + 1
        assert float(rows[1][3]) == -1.0
        meta = json.load(open(tmp_path / "a.json"))
        assert meta["n_iters"] == arc.n_iters and meta["wedge"] == 0


def test_trace_arc_argument_checks():
    with pytest.raises(ValueError):
        a3.trace_arc(0, "sideways")
    with pytest.raises(ValueError):
        a3.trace_arc(0, n_iters=0)
