"""Rotation data at the elliptic fixed point and the parabolic germ of f^3 at a = 3."""
import importlib
import math

import numpy as np
import pytest
import sympy as sp

from birational_lab.core import fixed_point, jacobian_f

# the package namespace re-exports the function normal_form, which hides the module
nf = importlib.import_module("birational_lab.normal_form")

u, v, A = sp.symbols("u v a")


@pytest.fixture(scope="module")
def q_exact():
    """[DERIVED] quadratic part of f^3 at p_fix = (-1, 1), a = 3, by symbolic differentiation."""
    x, y = -1 + u, 1 + v
    for _ in range(3):
        x, y = y * (x + 3) / (x - 1), x + 2
    out = []
    for comp in (x, y):
        at0 = {u: 0, v: 0}
        out.append([sp.nsimplify(sp.diff(comp, u, 2).subs(at0) / 2),
                    sp.nsimplify(sp.diff(comp, u, v).subs(at0)),
                    sp.nsimplify(sp.diff(comp, v, 2).subs(at0) / 2)])
    return sp.Matrix(out)


def test_gamma0_at_3():
    # [PAPER] gamma0(3) = -2 pi / 3
    assert nf.normal_form(3.0).gamma0 == pytest.approx(-2 * math.pi / 3, abs=1e-12)


def test_gamma2_vanishes_at_one_third():
    # [PAPER] the closed form vanishes exactly at a = 1/3
    assert nf.gamma2_closed_form(1 / 3) == 0.0
    assert nf.normal_form(3.0).gamma2 is None


def test_lambda_trace_symbolic():
    # [DERIVED] Df(p_fix) has det 1 and trace -2(a-1)/(a+1)
    x0, y0 = (1 - A) / 2, (A - 1) / 2
    J = sp.Matrix([[-y0 * (1 + A) / (x0 - 1) ** 2, (x0 + A) / (x0 - 1)], [1, 0]])
    assert sp.simplify(J.det() - 1) == 0
    assert sp.simplify(J.trace() + 2 * (A - 1) / (A + 1)) == 0
    for a in (0.5, 2.0, 3.0, 10.0):
        lam = nf.eigenvalue(a)
        assert abs(lam) == pytest.approx(1.0, abs=1e-15)
        assert 2 * lam.real == pytest.approx(-2 * (a - 1) / (a + 1), abs=1e-14)


@pytest.mark.parametrize("a", [0.5, 2.0, 3.0, 10.0])
def test_lambda_matches_numerical_eigenvalues(a):
    ev = np.linalg.eigvals(jacobian_f(a, fixed_point(a)))
    lam = nf.eigenvalue(a)
    assert min(abs(e - lam) for e in ev) < 1e-9


def test_measured_rotation_number_at_2():
    rho = nf.rotation_number(2.0, 1e-4, 2000)
    assert rho == pytest.approx(nf.normal_form(2.0).gamma0, abs=1e-3)


@pytest.mark.parametrize("a", [0.6, 2.0])
def test_twist_sign(a):
    r1, r2 = 1e-2, 5e-2
    slope = (nf.rotation_number(a, r2, 2000) - nf.rotation_number(a, r1, 2000)) / (r2**2 - r1**2)
    assert np.sign(slope) == np.sign(nf.gamma2_closed_form(a))


def test_quadratic_part_matches_symbolic(q_exact):
    assert q_exact == sp.Matrix([[sp.Rational(-1, 2), 1, 1], [1, 1, sp.Rational(-1, 2)]])
    qd = nf.local_quadratic(3.0)
    assert np.allclose(qd.coef, np.array(q_exact, dtype=float), atol=1e-6)


def test_characteristic_directions(q_exact):
    # [DERIVED] v = (1, e) with Q(v) parallel to v: roots of Q2(1, e) - e Q1(1, e)
    e = sp.symbols("e")
    q1 = q_exact[0, 0] + q_exact[0, 1] * e + q_exact[0, 2] * e**2
    q2 = q_exact[1, 0] + q_exact[1, 1] * e + q_exact[1, 2] * e**2
    roots = sorted(float(r) for r in sp.solve(sp.expand(q2 - e * q1), e))
    assert roots == [-2.0, -0.5, 1.0]
    qd = nf.local_quadratic(3.0)
    assert qd.slopes == pytest.approx(roots, abs=1e-6)
    assert max(qd.residuals) <= 1e-9
    # Hakim invariants a(v) = r'(e) / Q1(1, e), r = Q2 / Q1
    r = q2 / q1
    want = [float((sp.diff(r, e) / q1).subs(e, sp.nsimplify(root))) for root in roots]
    assert want == pytest.approx([-4 / 3, 8 / 3, -4 / 3])
    assert qd.hakim_a == pytest.approx(want, abs=1e-5)
    assert max(qd.rprime_fd_gap) < 1e-6


def test_taylor_remainder_is_cubic():
    qd = nf.local_quadratic(3.0)
    C, slope = nf.taylor_check(qd)
    assert slope == pytest.approx(3.0, abs=0.1)
    assert C < 100


def test_exact_q_also_passes_taylor(q_exact):
    qd = nf.quadratic_data(np.array(q_exact, dtype=float))
    _, slope = nf.taylor_check(qd)
    assert slope == pytest.approx(3.0, abs=0.05)


def test_parameter_guards():
    with pytest.raises(ValueError):
        nf.local_quadratic(2.0)
    with pytest.raises(ValueError):
        nf.normal_form(0.0)
    with pytest.raises(RuntimeError):
        nf.rotation_number(2.0, 5.0, 100)
