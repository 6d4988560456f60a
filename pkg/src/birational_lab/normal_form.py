"""Local data at the fixed point: rotation angle, twist coefficient, and the
parabolic quadratic part of f^3 when a = 3."""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .core import check_param, fixed_point, jacobian_f


@dataclass(frozen=True)
class NormalFormData:
    a: float
    lam: complex
    gamma0: float
    gamma2: Optional[float]  # None where the closed form has a pole (a = 3)

    def to_record(self) -> dict:
        return {"a": self.a, "lambda": [self.lam.real, self.lam.imag], "gamma0": self.gamma0,
                "gamma2": "undefined" if self.gamma2 is None else self.gamma2}


def eigenvalue(a: float) -> complex:
    s = math.sqrt(a)
    return (1j + s) / (1j - s)


def gamma2_closed_form(a: float) -> Optional[float]:
    if a == 3:
        return None
    return 4 * (3 * a - 1) / (math.sqrt(a) * (a - 3) * (1 + a) ** 2)


def normal_form(a: float, check_tol: float = 1e-9) -> NormalFormData:
    a = check_param(a, allow_small=True)
    lam = eigenvalue(a)
    g0 = cmath.phase(lam)
    if not -math.pi < g0 < 0:
        raise ArithmeticError(f"gamma0={g0} outside (-pi, 0)")
    ev = np.linalg.eigvals(jacobian_f(a, fixed_point(a)))
    err = min(abs(ev[0] - lam) + abs(ev[1] - lam.conjugate()),
              abs(ev[1] - lam) + abs(ev[0] - lam.conjugate()))
    if err > check_tol:
        raise ArithmeticError(f"eigenvalues {ev} disagree with lambda={lam}")
    return NormalFormData(a, lam, g0, gamma2_closed_form(a))


def eigen_chart(a: float) -> np.ndarray:
    """Row vector c with z = c . (p - p_fix) turning Df(p_fix) into z -> lambda z."""
    lam = eigenvalue(a)
    w, vecs = np.linalg.eig(jacobian_f(a, fixed_point(a)))
    k = int(np.argmin(np.abs(w - lam)))
    C = np.column_stack([vecs[:, k], vecs[:, k].conj()])
    return np.linalg.inv(C)[0]


def rotation_number(a: float, radius: float, n: int, box: Optional[tuple] = None) -> float:
    """Mean angular increment per iterate of the orbit of p_fix + (radius, 0).

    Angles are measured in the complex eigen-coordinate of Df(p_fix), so the
    linear part is an exact rotation.
    """
    a = check_param(a, allow_small=True)
    x0, y0 = (1 - a) / 2, (a - 1) / 2
    if box is None:
        box = (min(-a, x0 - 1), max(1.0, x0 + 1), min(-1.0, y0 - 1), max(a, y0 + 1))
    c = eigen_chart(a)
    x, y = x0 + radius, y0
    z = c[0] * (x - x0) + c[1] * (y - y0)
    total = 0.0
    for k in range(n):
        x, y = y * (x + a) / (x - 1), x + a - 1
        if not (box[0] <= x <= box[1] and box[2] <= y <= box[3]):
            raise RuntimeError(f"orbit left the box at step {k}: ({x}, {y}); radius too large")
        zn = c[0] * (x - x0) + c[1] * (y - y0)
        total += cmath.phase(zn / z)
        z = zn
    rho = total / n
    return rho


# -- a = 3: quadratic part of f^3 -------------------------------------------

@dataclass(frozen=True)
class QuadraticData:
    """Q_k(u, v) = coef[k, 0] u^2 + coef[k, 1] u v + coef[k, 2] v^2."""

    coef: np.ndarray
    characteristic_dirs: list = field(default_factory=list)
    slopes: list = field(default_factory=list)  # eta with v ~ (1, eta); None for (0, 1)
    hakim_a: list = field(default_factory=list)
    hakim_index: list = field(default_factory=list)
    residuals: list = field(default_factory=list)
    rprime_fd_gap: list = field(default_factory=list)

    def Q(self, u, v):
        c = self.coef
        return (c[0, 0] * u * u + c[0, 1] * u * v + c[0, 2] * v * v,
                c[1, 0] * u * u + c[1, 1] * u * v + c[1, 2] * v * v)

    def to_record(self) -> dict:
        return {"Q": self.coef.tolist(),
                "characteristic_dirs": [list(map(float, d)) for d in self.characteristic_dirs],
                "slopes": self.slopes, "hakim_a": self.hakim_a, "hakim_index": self.hakim_index,
                "residuals": self.residuals}


def _f3_offset(a, u, v):
    x0, y0 = (1 - a) / 2, (a - 1) / 2
    x, y = x0 + u, y0 + v
    for _ in range(3):
        x, y = y * (x + a) / (x - 1), x + a - 1
    return np.array([x - x0, y - y0])


def _richardson(d, h, levels):
    """Richardson table for an O(h^2)-accurate difference quotient ``d(h)``."""
    row = [d(h / 2**k) for k in range(levels)]
    est = [row[-1]]
    for m in range(1, levels):
        row = [(4**m * row[k + 1] - row[k]) / (4**m - 1) for k in range(len(row) - 1)]
        est.append(row[-1])
    return row[0], est


def hessian_f3(a: float, h: float = 0.04, levels: int = 4):
    """Second derivatives of f^3 at p_fix by Richardson-extrapolated central differences.

    Returns ``(H, spread)`` with H[k] the Hessian of component k and
    ``spread`` the gap between the last two extrapolation orders.
    """
    F0 = _f3_offset(a, 0.0, 0.0)

    def duu(t):
        return (_f3_offset(a, t, 0) - 2 * F0 + _f3_offset(a, -t, 0)) / t**2

    def dvv(t):
        return (_f3_offset(a, 0, t) - 2 * F0 + _f3_offset(a, 0, -t)) / t**2

    def duv(t):
        return (_f3_offset(a, t, t) - _f3_offset(a, t, -t) - _f3_offset(a, -t, t)
                + _f3_offset(a, -t, -t)) / (4 * t**2)

    H = np.zeros((2, 2, 2))
    spread = 0.0
    for (i, j), d in (((0, 0), duu), ((1, 1), dvv), ((0, 1), duv)):
        val, est = _richardson(d, h, levels)
        spread = max(spread, float(np.max(np.abs(est[-1] - est[-2]))))
        H[:, i, j] = val
        H[:, j, i] = val
    return H, spread


def characteristic_directions(coef: np.ndarray, tol: float = 1e-9):
    """Real directions v with Q(v) parallel to v, as (slope or None, unit vector)."""
    A1, B1, C1 = coef[0]
    A2, B2, C2 = coef[1]
    # Q2(1, e) - e Q1(1, e) = -C1 e^3 + (C2 - B1) e^2 + (B2 - A1) e + A2
    poly = np.array([-C1, C2 - B1, B2 - A1, A2])
    out = []
    roots = np.roots(poly) if np.any(np.abs(poly[:-1]) > 0) else []
    for r in roots:
        if abs(r.imag) > 1e-7 * max(1.0, abs(r)):
            continue
        e = r.real
        for _ in range(5):  # polish
            fv = np.polyval(poly, e)
            dv = np.polyval(np.polyder(poly), e)
            if dv == 0:
                break
            e -= fv / dv
        v = np.array([1.0, e]) / math.hypot(1.0, e)
        out.append((float(e), v))
    if abs(C1) <= tol:
        out.append((None, np.array([0.0, 1.0])))
    out.sort(key=lambda t: math.inf if t[0] is None else t[0])
    return out


def _q1(coef, e):
    return coef[0, 0] + coef[0, 1] * e + coef[0, 2] * e * e


def _q2(coef, e):
    return coef[1, 0] + coef[1, 1] * e + coef[1, 2] * e * e


def ratio_derivative(coef, e):
    """r'(e) for r(e) = Q2(1, e) / Q1(1, e)."""
    q1, q2 = _q1(coef, e), _q2(coef, e)
    d1 = coef[0, 1] + 2 * coef[0, 2] * e
    d2 = coef[1, 1] + 2 * coef[1, 2] * e
    return (d2 * q1 - q2 * d1) / q1**2


def hakim_invariant(coef, e) -> float:
    """a(v) = r'(e) / Q1(1, e) for v = (1, e)."""
    return ratio_derivative(coef, e) / _q1(coef, e)


def local_quadratic(a: float = 3.0, h: float = 0.04, levels: int = 4) -> QuadraticData:
    """Quadratic part Q of f^3 at p_fix (a = 3 only; there Df^3(p_fix) = I)."""
    if a != 3:
        raise ValueError("local_quadratic is defined for a = 3 only")
    H, _ = hessian_f3(a, h, levels)
    coef = np.array([[H[k, 0, 0] / 2, H[k, 0, 1], H[k, 1, 1] / 2] for k in range(2)])
    if np.max(np.abs(coef)) < 1e-8:
        raise ArithmeticError("quadratic part vanishes; expansion failed")
    return quadratic_data(coef)


def quadratic_data(coef: np.ndarray, fd_step: float = 1e-5) -> QuadraticData:
    coef = np.asarray(coef, dtype=float)
    qd = QuadraticData(coef)
    for e, v in characteristic_directions(coef):
        q = qd.Q(v[0], v[1])
        qd.characteristic_dirs.append(v)
        qd.slopes.append(e)
        qd.residuals.append(abs(q[0] * v[1] - q[1] * v[0]))
        if e is None:
            qd.hakim_a.append(None)
            qd.hakim_index.append(None)
            qd.rprime_fd_gap.append(None)
            continue
        rp = ratio_derivative(coef, e)
        r = lambda t: _q2(coef, t) / _q1(coef, t)
        fd = (r(e + fd_step) - r(e - fd_step)) / (2 * fd_step)
        qd.hakim_a.append(float(rp / _q1(coef, e)))
        qd.hakim_index.append(float(rp))
        qd.rprime_fd_gap.append(float(abs(fd - rp)))
    return qd


def taylor_check(qd: QuadraticData, a: float = 3.0, radii=None, n_dirs: int = 16):
    """Fit C in |f^3(p+w) - p - w - Q(w)| <= C |w|^3 over the given radii.

    Returns ``(C, slope)`` where slope is the log-log slope of the worst error
    against |w|; a correct Q gives slope close to 3.
    """
    if radii is None:
        radii = np.geomspace(1e-4, 1e-2, 9)
    worst = []
    for r in radii:
        e = 0.0
        for t in np.linspace(0, 2 * np.pi, n_dirs, endpoint=False):
            u, v = r * math.cos(t), r * math.sin(t)
            F = _f3_offset(a, u, v)
            q = qd.Q(u, v)
            e = max(e, math.hypot(F[0] - u - q[0], F[1] - v - q[1]))
        worst.append(e)
    worst = np.array(worst)
    C = float(np.max(worst / np.asarray(radii) ** 3))
    slope = float(np.polyfit(np.log(radii), np.log(worst), 1)[0])
    return C, slope
