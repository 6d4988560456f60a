"""The parameter a = 3: wedges at the parabolic fixed point and its stable/unstable arcs.

phi_j = phi o f^{-j} with phi(x, y) = x + 1. Closed forms used here:

    phi_{-1} = y(x+3)/(x-1) + 1      phi_0 = x + 1
    phi_1    = y - 1                 phi_2 = x(y-3)/(y+1) - 1

Wedges W0 = {phi_-1, phi_0 >= 0}, W1 = {phi_0, phi_1 >= 0},
W2 = {phi_-1, phi_1 >= 0} (all intersected with S0) carry the charts
Psi0 = (phi_-1, phi_0), Psi1 = (phi_0, phi_1), Psi2 = (phi_1, phi_-1).

The comparison estimate phi_-1 + m <= phi_2 <= -m holds on W1 away from
p_fix (on W0, phi_2 takes positive values), so the neighbourhood U of p_fix
is built from phi_2 on W1 and its pull-backs along the cycle W0 -> W1 -> W2:
U meets W0 in {phi_1 > -eps}, W1 in {phi_2 > -eps}, W2 in {phi_0 > -eps}.
"""
from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.interpolate import CubicSpline

from .core import INF, EPS_PT, ExtPoint, Outcome, eval_f, eval_f_inv, f_array, f_inv_array

A3 = 3.0
P_FIX = (-1.0, 1.0)
U_EPS = 0.05
DELTA_ARC = 1e-8
EPS_LIP = 1e-6
RESOLUTION = 512


class IndeterminateError(ValueError):
    """phi_j hit a point of indeterminacy of some f^{+-k}."""


# -- phi functions ----------------------------------------------------------

def phi_array(j: int, x, y):
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        if j == -1:
            return y * (x + 3) / (x - 1) + 1
        if j == 0:
            return x + 1
        if j == 1:
            return y - 1
        if j == 2:
            return x * (y - 3) / (y + 1) - 1
    raise ValueError(f"closed form only for j in -1..2, got {j}")


def phi(j: int, p: ExtPoint) -> float:
    """phi o f^{-j}(p) as an extended real; raises IndeterminateError."""
    x, y = p.x, p.y
    if j in (-1, 0, 1, 2) and p.is_finite:
        if j == -1:
            if x == 1.0:
                if y == 0.0:
                    raise IndeterminateError("phi_-1 at (1, 0)")
                return INF
        if j == 2 and y == -1.0:
            if x == 0.0:
                raise IndeterminateError("phi_2 at (0, -1)")
            return INF
        return float(phi_array(j, x, y))
    step = eval_f_inv if j > 0 else eval_f
    for _ in range(abs(j)):
        r = step(A3, p)
        if r.outcome is Outcome.INDETERMINATE:
            raise IndeterminateError(f"phi_{j}: indeterminate at {p}")
        p = r.point
    return INF if p.x == INF else p.x + 1


# -- wedges -----------------------------------------------------------------

WEDGE_PAIRS = {0: (-1, 0), 1: (0, 1), 2: (1, -1)}
# sigma(W0) = {phi_1, phi_2 <= 0}, sigma(W1) = {phi_0, phi_1 <= 0}, sigma(W2) = {phi_0, phi_2 <= 0}
SIGMA_WEDGE_PAIRS = {0: (1, 2), 1: (0, 1), 2: (0, 2)}
# the function whose sublevel {> -eps} is U inside wedge j
U_FUNCTION = {0: 1, 1: 2, 2: 0}


def _in_s0(x, y, eps=0.0):
    return (x >= -3 - eps) & (x <= 1 + eps) & (y >= -1 - eps) & (y <= 3 + eps)


def wedge_mask(w: int, x, y, sigma_side: bool = False):
    """Vectorized membership in W_w (or sigma(W_w))."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if sigma_side:
        j, k = SIGMA_WEDGE_PAIRS[w]
        return _in_s0(x, y) & (phi_array(j, x, y) <= 0) & (phi_array(k, x, y) <= 0)
    j, k = WEDGE_PAIRS[w]
    return _in_s0(x, y) & (phi_array(j, x, y) >= 0) & (phi_array(k, x, y) >= 0)


def wedge_membership(p: ExtPoint) -> frozenset:
    """Tags 'W0'..'W2' and 'sW0'..'sW2' (sigma-wedges) containing p."""
    tags = set()
    if not p.is_finite or not _in_s0(p.x, p.y):
        return frozenset()
    vals = {}
    for j in (-1, 0, 1, 2):
        v = phi(j, p)
        vals[j] = v
    for w, (j, k) in WEDGE_PAIRS.items():
        if _nonneg(vals[j]) and _nonneg(vals[k]):
            tags.add(f"W{w}")
    for w, (j, k) in SIGMA_WEDGE_PAIRS.items():
        if _nonneg(-vals[j] if vals[j] != INF else INF) and _nonneg(-vals[k] if vals[k] != INF else INF):
            tags.add(f"sW{w}")
    return frozenset(tags)


def _nonneg(v):
    # the unsigned infinity sits on the boundary of both half-lines
    return v == INF or v >= 0


def in_U(w: int, x, y, eps: float = U_EPS):
    return phi_array(U_FUNCTION[w], x, y) > -eps


# -- wedge charts -----------------------------------------------------------

def chart_array(w: int, x, y):
    j, k = WEDGE_PAIRS[w]
    return phi_array(j, x, y), phi_array(k, x, y)


def unchart_array(w: int, u, v):
    """Closed-form inverse of Psi_w."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        if w == 0:
            return v - 1, (u - 1) * (v - 2) / (v + 2)
        if w == 1:
            return u - 1, v + 1
        if w == 2:
            return -(3 * u + v + 2) / (u - v + 2), u + 1
    raise ValueError(f"no wedge W{w}")


def wedge_chart(w: int, p: ExtPoint, eps: float = EPS_PT) -> tuple:
    x, y = p.x, p.y
    if not p.is_finite or not _near_wedge(w, x, y, eps):
        raise ValueError(f"{p} is not in W{w}")
    u, v = chart_array(w, x, y)
    return float(u), float(v)


def _near_wedge(w, x, y, eps):
    j, k = WEDGE_PAIRS[w]
    return bool(_in_s0(x, y, eps) and phi_array(j, x, y) >= -eps and phi_array(k, x, y) >= -eps)


def wedge_unchart(w: int, c) -> ExtPoint:
    x, y = unchart_array(w, c[0], c[1])
    return ExtPoint(float(x), float(y))


def chart_map(w: int, u, v, n: int = 3, inverse: bool = False, sigma_side: bool = False):
    """Psi_w o f^n o Psi_w^{-1} (or the sigma-conjugate chart for f^-n)."""
    x, y = unchart_array(w, u, v)
    if sigma_side:
        x, y = -y, -x
    step = f_inv_array if inverse else f_array
    for _ in range(n):
        x, y = step(A3, x, y)
    if sigma_side:
        x, y = -y, -x
    return chart_array(w, x, y)


def wedge_transition(i: int, j: int, c) -> tuple:
    """f_ij = Psi_j o f o Psi_i^{-1} for (i, j) in (0,1), (1,2), (2,0)."""
    if (i, j) not in ((0, 1), (1, 2), (2, 0)):
        raise ValueError(f"no transition W{i} -> W{j}")
    x, y = unchart_array(i, c[0], c[1])
    x, y = f_array(A3, x, y)
    u, v = chart_array(j, x, y)
    return float(u), float(v)


def transition_jacobian(i: int, j: int, c, h: float = 1e-6) -> np.ndarray:
    J = np.zeros((2, 2))
    for k in range(2):
        e = np.zeros(2)
        e[k] = h
        fp = np.array(wedge_transition(i, j, np.asarray(c) + e))
        fm = np.array(wedge_transition(i, j, np.asarray(c) - e))
        J[:, k] = (fp - fm) / (2 * h)
    return J


# -- comparison gap and escape time -----------------------------------------

def _w1_grid(n):
    # W1 in its own chart is (s, t) = (phi_0, phi_1) in [0, 2] x [0, 2]
    s = np.linspace(0.0, 2.0, n)
    S, T = np.meshgrid(s, s)
    return S.ravel(), T.ravel()


def comparison_gap(U_eps: float, grid: int = 1201, safety: float = 0.01) -> float:
    """Sampled lower bound m with phi_-1 + m <= phi_2 <= -m on W1 - U."""
    if U_eps <= 0:
        raise ValueError("U_eps must be positive")
    s, t = _w1_grid(grid)
    x, y = s - 1, t + 1
    p2 = phi_array(2, x, y)
    with np.errstate(invalid="ignore"):
        keep = (p2 <= -U_eps) & np.isfinite(phi_array(-1, x, y))
    if not keep.any():
        raise ArithmeticError("W1 - U is empty on this grid")
    gap = p2[keep] - phi_array(-1, x[keep], y[keep])
    k = int(np.argmin(gap))
    # zoom once around the grid minimiser
    h = 2.0 / (grid - 1)
    zs = np.clip(np.linspace(s[keep][k] - h, s[keep][k] + h, 201), 0, 2)
    zt = np.clip(np.linspace(t[keep][k] - h, t[keep][k] + h, 201), 0, 2)
    ZS, ZT = np.meshgrid(zs, zt)
    zx, zy = ZS.ravel() - 1, ZT.ravel() + 1
    zp2 = phi_array(2, zx, zy)
    with np.errstate(invalid="ignore"):
        zk = (zp2 <= -U_eps) & (zx < 1)
    gmin = min(float(gap.min()), float((zp2[zk] - phi_array(-1, zx[zk], zy[zk])).min()) if zk.any() else math.inf)
    m = min(float(-p2[keep].max()), gmin)
    m -= safety * m
    if not m > 0:
        raise ArithmeticError(f"non-positive comparison gap {m}; grid too coarse or bug")
    return m


def sample_wedges(n: int, rng: np.random.Generator, U_eps: Optional[float] = None,
                  wedges=(0, 1, 2)):
    """Uniform samples of the union of the given wedges (minus U if U_eps is given), with wedge ids."""
    xs, ys, ws = [], [], []
    while sum(len(v) for v in xs) < n:
        x = rng.uniform(-3, 1, 4 * n)
        y = rng.uniform(-1, 3, 4 * n)
        for w in wedges:
            m = wedge_mask(w, x, y)
            if U_eps is not None:
                m &= ~in_U(w, x, y, U_eps)
            xs.append(x[m])
            ys.append(y[m])
            ws.append(np.full(m.sum(), w))
    x, y, w = np.concatenate(xs), np.concatenate(ys), np.concatenate(ws)
    order = rng.permutation(x.size)[:n]
    return x[order], y[order], w[order]


def steps_in_s0(x, y, n_max: int):
    """Number of consecutive iterates f^1..f^k that stay in S0 (capped at n_max)."""
    x = np.array(x, dtype=float)
    y = np.array(y, dtype=float)
    count = np.zeros(x.size, dtype=np.int64)
    alive = np.ones(x.size, dtype=bool)
    for _ in range(n_max):
        x, y = f_array(A3, x, y)
        with np.errstate(invalid="ignore"):
            alive &= _in_s0(x, y)
        count += alive
        if not alive.any():
            break
    return count


def escape_time_bound(U_eps: float, n_samples: int = 10_000, seed: int = 0) -> int:
    """N = 3 ceil(4/m) + 3; every sampled wedge point off U must leave S0 within N steps."""
    m = comparison_gap(U_eps)
    N = 3 * math.ceil(4 / m) + 3
    x, y, _ = sample_wedges(n_samples, np.random.default_rng(seed), U_eps)
    stay = steps_in_s0(x, y, N + 1)
    bad = np.flatnonzero(stay >= N)
    if bad.size:
        k = bad[0]
        raise AssertionError(f"wedge point ({x[k]}, {y[k]}) stays in S0 for {stay[k]} > N={N} steps")
    return N


# -- eta-area ---------------------------------------------------------------

EPS_POLE = 1e-9


def area_eta(polygon) -> float:
    """Signed integral of dx dy / (y - x + 1) over a closed polygon.

    Green's theorem with the primitive ln(y - x + 1) reduces the area to
    exact edge integrals; counter-clockwise polygons with y - x + 1 > 0 give
    positive values.
    """
    P = np.asarray(polygon, dtype=float)
    if len(P) < 3:
        return 0.0
    w = P[:, 1] - P[:, 0] + 1
    if np.any(w < EPS_POLE):
        raise ValueError("polygon touches the pole line y = x - 1 of eta")
    Q = np.roll(P, -1, axis=0)
    wq = np.roll(w, -1)
    dx = Q[:, 0] - P[:, 0]
    r = (wq - w) / w
    small = np.abs(r) < 1e-8
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(small, 1 - r / 2, np.log1p(r) / np.where(small, 1.0, r))
    # mean of ln(w) along the edge = ln w_p + (w_q/w_p) * log1p(r)/r - 1
    mean_log = np.log(w) + (wq / w) * ratio - 1
    return float(-np.sum(dx * mean_log))


# -- arcs -------------------------------------------------------------------

@dataclass
class Arc:
    wedge: int
    direction: str
    samples: np.ndarray  # chart coordinates, first row is the origin
    plane: np.ndarray
    lipschitz_bound: float
    n_iters: int = 0
    hausdorff: float = math.nan
    converged: bool = False
    brackets: tuple = ()
    hausdorff_history: list = field(default_factory=list)
    area_history: list = field(default_factory=list)

    def metadata(self) -> dict:
        return {"wedge": self.wedge, "direction": self.direction, "n_iters": self.n_iters,
                "hausdorff": self.hausdorff, "converged": self.converged,
                "lipschitz_bound": self.lipschitz_bound, "resolution": len(self.samples)}


def _diag(c):
    """(along, across) coordinates w.r.t. the diagonal u = v."""
    c = np.asarray(c)
    return (c[:, 0] + c[:, 1]) / math.sqrt(2), (c[:, 1] - c[:, 0]) / math.sqrt(2)


def lipschitz_over_diagonal(c) -> float:
    s, d = _diag(c)
    ds = np.diff(s)
    if np.any(ds <= 0):
        return math.inf
    return float(np.max(np.abs(np.diff(d)) / ds)) if ds.size else 0.0


def is_admissible(c, tol: float = 1e-12) -> bool:
    dc = np.diff(np.asarray(c), axis=0)
    return bool(np.all(dc >= -tol))


def _resample(c, n):
    """Uniform-in-arclength resampling through a cubic spline."""
    seg = np.hypot(*np.diff(c, axis=0).T)
    keep = np.concatenate([[True], seg > 0])
    c = c[keep]
    t = np.concatenate([[0.0], np.cumsum(np.hypot(*np.diff(c, axis=0).T))])
    if t[-1] == 0:
        return np.repeat(c[:1], n, axis=0)
    cs = CubicSpline(t, c, axis=0)
    out = cs(np.linspace(0, t[-1], n))
    out[0] = c[0]
    out[-1] = c[-1]
    return out


def _clip_to_U(w, c, eps):
    """Truncate an admissible chart curve where it leaves U (g = -eps)."""
    x, y = unchart_array(w, c[:, 0], c[:, 1])
    g = phi_array(U_FUNCTION[w], x, y) + eps
    out = np.flatnonzero(~(g > 0))
    if out.size == 0:
        return c, False
    k = out[0]
    if k == 0:
        return c[:1], True
    lo, hi = c[k - 1], c[k]
    for _ in range(60):  # bisection on the segment for the exit point
        mid = (lo + hi) / 2
        mx, my = unchart_array(w, mid[0], mid[1])
        if phi_array(U_FUNCTION[w], mx, my) + eps > 0:
            lo = mid
        else:
            hi = mid
    return np.vstack([c[:k], lo]), True


def _boundary_arcs(w, eps, n):
    """The two admissible pieces of the boundary of W_w inside U (chart axes)."""
    arcs = []
    for axis in (0, 1):
        t = np.linspace(0, 2.0, 4 * n)
        c = np.zeros((t.size, 2))
        c[:, axis] = t
        c, _ = _clip_to_U(w, c, eps)
        arcs.append(_resample(c, n))
    return arcs


def polyline_distance(points, line) -> np.ndarray:
    """Euclidean distance from each point to a polyline."""
    P = np.asarray(points, dtype=float)[:, None, :]
    A = np.asarray(line, dtype=float)[:-1][None, :, :]
    B = np.asarray(line, dtype=float)[1:][None, :, :]
    AB = B - A
    L2 = np.sum(AB * AB, axis=2)
    with np.errstate(invalid="ignore", divide="ignore"):
        t = np.clip(np.where(L2 > 0, np.sum((P - A) * AB, axis=2) / L2, 0.0), 0, 1)
    D = P - (A + t[..., None] * AB)
    return np.sqrt(np.min(np.sum(D * D, axis=2), axis=1))


def hausdorff(c1, c2) -> float:
    return float(max(polyline_distance(c1, c2).max(), polyline_distance(c2, c1).max()))


def _graph(c, grid):
    s, d = _diag(c)
    if np.all(np.diff(s) > 0):
        return CubicSpline(s, d)(grid)
    return np.interp(grid, s, d)


def _bracket_polygon(w, lower, upper, sigma_side):
    ring = np.vstack([lower, upper[::-1]])
    x, y = unchart_array(w, ring[:, 0], ring[:, 1])
    if sigma_side:
        x, y = -y, -x
    return np.column_stack([x, y])


def trace_arc(w: int, direction: str = "unstable", n_iters: int = 60,
              resolution: int = RESOLUTION, U_eps: float = U_EPS,
              delta_arc: float = DELTA_ARC, check_pushout: bool = True) -> Arc:
    """Local unstable (or stable) arc of p_fix in wedge W_w by bracketing.

    The two boundary arcs of W_w inside U are pushed by f^3 (f^-3 in the
    sigma-conjugate chart for the stable arc), re-clipped to U and resampled.
    Both stay admissible and squeeze the arc between them. The returned
    samples are the midline of the final pair; ``converged`` records whether
    their Hausdorff distance reached ``delta_arc``.
    """
    if n_iters < 1:
        raise ValueError("n_iters must be >= 1")
    if direction not in ("unstable", "stable"):
        raise ValueError(f"unknown direction {direction!r}")
    if check_pushout:
        pushout_violations(w, U_eps)
    stable = direction == "stable"
    # stable arcs of f are sigma-images of unstable arcs; the chart samples coincide
    lower, upper = _boundary_arcs(w, U_eps, resolution)
    hist, areas = [], []
    prev = None
    for it in range(n_iters):
        new = []
        for c in (lower, upper):
            dense = _resample(c, 2 * resolution)
            u, v = chart_map(w, dense[:, 0], dense[:, 1], inverse=stable, sigma_side=stable)
            img = np.column_stack([u, v])
            if not is_admissible(img, tol=1e-12):
                raise ArithmeticError(f"f^3 image of a bracket is not admissible (W{w}, step {it})")
            img, _ = _clip_to_U(w, img, U_eps)
            new.append(_resample(img, resolution))
        lower, upper = new
        hd = hausdorff(lower, upper)
        hist.append(hd)
        areas.append(abs(area_eta(_bracket_polygon(w, lower, upper, stable))))
        if prev is not None:
            _check_monotone(prev, (lower, upper), w, it)
        prev = (lower, upper)
        if hd <= delta_arc:
            break
    s_end = min(_diag(lower)[0][-1], _diag(upper)[0][-1])
    grid = np.linspace(0, s_end, resolution)
    mid_d = (_graph(lower, grid) + _graph(upper, grid)) / 2
    chart = np.column_stack([(grid - mid_d) / math.sqrt(2), (grid + mid_d) / math.sqrt(2)])
    chart[0] = 0.0
    arc = _make_arc(w, direction, chart, stable)
    arc.n_iters = len(hist)
    arc.hausdorff = hist[-1]
    arc.converged = hist[-1] <= delta_arc
    arc.brackets = (lower, upper)
    arc.hausdorff_history = hist
    arc.area_history = areas
    return arc


def _check_monotone(prev, cur, w, it, tol=1e-10):
    # the bracket region shrinks: each graph moves toward the other
    s_end = min(_diag(c)[0][-1] for c in (*prev, *cur))
    grid = np.linspace(0, s_end, len(cur[0]))
    pl, pu = (_graph(c, grid) for c in prev)
    cl, cu = (_graph(c, grid) for c in cur)
    sign = np.sign(np.mean(pu - pl)) or 1.0
    if np.any(sign * (cl - pl) < -tol) or np.any(sign * (pu - cu) < -tol):
        raise ArithmeticError(f"bracket graphs not monotone in n (W{w}, step {it})")


def _make_arc(w, direction, chart, stable):
    x, y = unchart_array(w, chart[:, 0], chart[:, 1])
    if stable:
        x, y = -y, -x
    return Arc(w, direction, chart, np.column_stack([x, y]), lipschitz_over_diagonal(chart))


def pushout_violations(w: int, U_eps: float = U_EPS, n: int = 2000) -> None:
    """Sampling check that f^3 maps W_w n boundary(U) outside U."""
    a0, a1 = (_boundary_arcs(w, U_eps, 8)[k][-1] for k in (0, 1))
    ts = np.linspace(0, 1, n)
    pts = []
    for t in ts:
        guess = (1 - t) * a0 + t * a1
        pts.append(_project_to_boundary(w, guess, U_eps))
    P = np.array([p for p in pts if p is not None])
    u, v = chart_map(w, P[:, 0], P[:, 1])
    x, y = unchart_array(w, u, v)
    inside = wedge_mask(w, x, y) & in_U(w, x, y, U_eps * (1 - 1e-9))
    if inside.any():
        k = int(np.flatnonzero(inside)[0])
        raise AssertionError(f"f^3 pulls boundary point {P[k]} of U back into U (W{w})")


def _project_to_boundary(w, c, eps):
    """Scale the ray from the origin through c until it meets g = -eps."""
    lo, hi = 0.0, 1.0
    g = lambda s: phi_array(U_FUNCTION[w], *unchart_array(w, s * c[0], s * c[1])) + eps
    while g(hi) > 0:
        hi *= 2
        if hi > 1e3:
            return None
    for _ in range(60):
        mid = (lo + hi) / 2
        if g(mid) > 0:
            lo = mid
        else:
            hi = mid
    return lo * np.asarray(c)


def invariance_residual(arc: Arc) -> float:
    """Largest distance from f^3 of a traced point to the traced polyline (chart units).

    Points whose image leaves U are ignored.
    """
    stable = arc.direction == "stable"
    c = arc.samples
    u, v = chart_map(arc.wedge, c[:, 0], c[:, 1], inverse=stable, sigma_side=stable)
    img = np.column_stack([u, v])
    s_end = _diag(c)[0][-1]
    keep = _diag(img)[0] <= s_end
    if not keep.any():
        return 0.0
    return float(polyline_distance(img[keep], c).max())


def tangent_direction(arc: Arc, radius: float = 1e-3) -> np.ndarray:
    """Unit plane direction of the arc at p_fix, from the chord to the first sample beyond ``radius``."""
    d = np.hypot(arc.plane[:, 0] - P_FIX[0], arc.plane[:, 1] - P_FIX[1])
    k = int(np.argmax(d >= radius)) if np.any(d >= radius) else len(d) - 1
    v = arc.plane[k] - np.array(P_FIX)
    return v / np.hypot(*v)


# -- global arcs and export -------------------------------------------------

def extend_arc(arc: Arc, max_rounds: int = 200, spacing: float = 2e-3) -> np.ndarray:
    """Grow a local arc to the boundary of S0 by iterating f^3 (f^-3 for stable arcs)."""
    stable = arc.direction == "stable"
    step = f_inv_array if stable else f_array
    curve = arc.plane.copy()
    for _ in range(max_rounds):
        x, y = curve[:, 0], curve[:, 1]
        for _ in range(3):
            x, y = step(A3, x, y)
        img = np.column_stack([x, y])
        with np.errstate(invalid="ignore"):
            ins = _in_s0(img[:, 0], img[:, 1])
        # keep the initial segment of the image that stays in S0
        k = int(np.argmin(ins)) if not ins.all() else img.shape[0]
        img = img[:k]
        grew = img.shape[0] > 0 and np.hypot(*(img[-1] - np.array(P_FIX))) > \
            np.hypot(*(curve[-1] - np.array(P_FIX))) + 1e-12
        if img.shape[0] > 1:
            seg = np.hypot(*np.diff(img, axis=0).T)
            n = int(min(20000, max(len(curve), math.ceil(seg.sum() / spacing))))
            curve = _resample(np.vstack([curve[:1], img]), n) if img.shape[0] > 1 else curve
        if not grew or not ins.all():
            break
    return curve


def write_arc_csv(arc: Arc, path) -> None:
    with open(path, "w", newline="") as fh:
        wr = csv.writer(fh, lineterminator="\n")
        wr.writerow(["k", "chart_u", "chart_v", "x", "y"])
        for k, (c, p) in enumerate(zip(arc.samples, arc.plane)):
            wr.writerow([k, repr(float(c[0])), repr(float(c[1])), repr(float(p[0])), repr(float(p[1]))])


def write_arc_json(arc: Arc, path) -> None:
    with open(path, "w") as fh:
        json.dump(arc.metadata(), fh, indent=2, sort_keys=True)
        fh.write("\n")
