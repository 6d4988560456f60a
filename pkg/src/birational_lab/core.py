"""Evaluation of the map f_a(x, y) = (y(x+a)/(x-1), x+a-1) on P^1 x P^1.

Points live on the torus compactification: each coordinate is a finite
float or the single unsigned infinity ``INF``. Scalar entry points return a
:class:`MapResult` that separates honest images from indeterminacy and
critical collapse. ``f_array`` / ``f_inv_array`` are the vectorized kernels
used by the classifiers; they assume finite, non-exceptional input.

The inverse is written so that ``f_inv`` is bitwise equal to ``sigma . f . sigma``
in IEEE arithmetic, which keeps forward/backward classification exactly
sigma-equivariant.
"""
from __future__ import annotations

import enum
import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

logger = logging.getLogger(__name__)

INF = math.inf

#: coordinates beyond this magnitude are promoted to ``INF``
M_CLIP = 1e100
EPS_PT = 1e-9
EPS_IND = 1e-12


def ext_real(v: float, m_clip: float = M_CLIP) -> float:
    """Normalize a float to an extended real (single unsigned infinity)."""
    v = float(v)
    if math.isnan(v):
        raise ValueError("NaN is not a point of P^1")
    if math.isinf(v):
        return INF
    if abs(v) > m_clip:
        logger.info("coordinate %.3e exceeds M_clip=%.1e; promoted to infinity", v, m_clip)
        return INF
    return v


@dataclass(frozen=True)
class ExtPoint:
    """A point of the torus closure of R^2."""

    x: float
    y: float

    def __post_init__(self):
        object.__setattr__(self, "x", ext_real(self.x))
        object.__setattr__(self, "y", ext_real(self.y))

    @property
    def is_finite(self) -> bool:
        return self.x != INF and self.y != INF

    def close_to(self, other: "ExtPoint", eps: float = EPS_PT) -> bool:
        """Exact on infinity tags, ``eps``-close (max norm) on finite parts."""
        return ext_distance(self, other) <= eps

    def __iter__(self):
        yield self.x
        yield self.y


def ext_distance(p: ExtPoint, q: ExtPoint) -> float:
    """Max-norm distance on finite coordinates; ``inf`` if the tags differ."""
    d = 0.0
    for u, v in ((p.x, q.x), (p.y, q.y)):
        if (u == INF) != (v == INF):
            return math.inf
        if u != INF:
            d = max(d, abs(u - v))
    return d


def check_param(a: float, allow_small: bool = False) -> float:
    a = float(a)
    if not math.isfinite(a):
        raise ValueError(f"parameter a must be finite, got {a}")
    if allow_small:
        if a <= 0:
            raise ValueError(f"parameter a must be > 0, got {a}")
    elif a <= 1:
        raise ValueError(f"parameter a must be > 1, got {a}")
    return a


class Outcome(enum.Enum):
    POINT = "point"
    INDETERMINATE = "indeterminate"
    CRITICAL = "critical"


@dataclass(frozen=True)
class MapResult:
    outcome: Outcome
    point: Optional[ExtPoint] = None
    which: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.outcome is Outcome.POINT

    def image(self) -> ExtPoint:
        """Image point for POINT and CRITICAL outcomes."""
        if self.point is None:
            raise ValueError(f"no image: {self.outcome.value} at {self.which}")
        return self.point


def indeterminacy_points(a: float) -> tuple[ExtPoint, ExtPoint]:
    """I(f): the two points where a coordinate of f is 0/0 or 0*inf."""
    return ExtPoint(1.0, 0.0), ExtPoint(-a, INF)


def indeterminacy_points_inv(a: float) -> tuple[ExtPoint, ExtPoint]:
    """I(f^-1) = sigma(I(f))."""
    return ExtPoint(0.0, -1.0), ExtPoint(INF, a)


def _near_indeterminacy(a, x, y, eps_ind):
    # I(f) = {(1, 0), (-a, inf)}
    if x != INF and y != INF and abs(x - 1.0) <= eps_ind and abs(y) <= eps_ind:
        return "(1,0)"
    if y == INF and x != INF and abs(x + a) <= eps_ind:
        return "(-a,inf)"
    return None


def _near_indeterminacy_inv(a, x, y, eps_ind):
    if x != INF and y != INF and abs(x) <= eps_ind and abs(y + 1.0) <= eps_ind:
        return "(0,-1)"
    if x == INF and y != INF and abs(y - a) <= eps_ind:
        return "(inf,a)"
    return None


def eval_f(a: float, p: ExtPoint, eps_ind: float = EPS_IND) -> MapResult:
    x, y = p.x, p.y
    which = _near_indeterminacy(a, x, y, eps_ind)
    if which:
        return MapResult(Outcome.INDETERMINATE, which=which)
    if x == INF:
        # (inf, y) -> (y, inf); (inf, inf) is the parabolic fixed point
        return MapResult(Outcome.POINT, ExtPoint(y, INF))
    if x == 1.0:
        return MapResult(Outcome.CRITICAL, ExtPoint(INF, a), "x=1")
    if x == -a:
        return MapResult(Outcome.CRITICAL, ExtPoint(0.0, -1.0), "x=-a")
    if y == INF:
        return MapResult(Outcome.POINT, ExtPoint(INF, x + a - 1))
    return MapResult(Outcome.POINT, ExtPoint(y * (x + a) / (x - 1), x + a - 1))


def eval_f_inv(a: float, p: ExtPoint, eps_ind: float = EPS_IND) -> MapResult:
    """Closed-form inverse f^-1(X, Y) = (Y+1-a, X(Y-a)/(Y+1))."""
    x, y = p.x, p.y
    which = _near_indeterminacy_inv(a, x, y, eps_ind)
    if which:
        return MapResult(Outcome.INDETERMINATE, which=which)
    if y == INF:
        return MapResult(Outcome.POINT, ExtPoint(INF, x))
    if y == -1.0:
        return MapResult(Outcome.CRITICAL, ExtPoint(-a, INF), "y=-1")
    if y == a:
        return MapResult(Outcome.CRITICAL, ExtPoint(1.0, 0.0), "y=a")
    if x == INF:
        return MapResult(Outcome.POINT, ExtPoint(y - a + 1, INF))
    # operation order mirrors eval_f under sigma; keep it that way
    return MapResult(Outcome.POINT, ExtPoint(y - a + 1, x * (y - a) / (y + 1)))


def sigma(p: ExtPoint) -> ExtPoint:
    """The global involution (x, y) -> (-y, -x)."""
    return ExtPoint(-p.y, -p.x)


def tau(a: float, p: ExtPoint) -> ExtPoint:
    """The involution (x, y) -> (x(a-y)/(1+y), a-1-y)."""
    x, y = p.x, p.y
    if (x == 0.0 and y == -1.0) or (x == INF and y == a):
        raise ValueError(f"tau is indeterminate at {p}")
    if y == INF:
        return ExtPoint(-x, INF)
    if x == INF:
        return ExtPoint(INF, a - 1 - y)
    if y == -1.0:
        return ExtPoint(INF, a)
    return ExtPoint(x * (a - y) / (1 + y), a - 1 - y)


def fixed_point(a: float) -> ExtPoint:
    return ExtPoint((1 - a) / 2, (a - 1) / 2)


def jacobian_f(a: float, p) -> np.ndarray:
    x, y = map(float, p)
    if not (math.isfinite(x) and math.isfinite(y)):
        raise ValueError("jacobian_f needs a finite point")
    if x == 1.0:
        raise ValueError("jacobian_f is undefined on the critical line x=1")
    d = x - 1
    return np.array([[-y * (1 + a) / d**2, (x + a) / d], [1.0, 0.0]])


def iterate(a: float, p: ExtPoint, n: int, inverse: bool = False) -> ExtPoint:
    """n-fold image; raises on indeterminacy, follows critical collapse."""
    step = eval_f_inv if inverse else eval_f
    for _ in range(n):
        p = step(a, p).image()
    return p


# -- vectorized kernels (finite input, no exceptional handling) -------------

def f_array(a: float, x: np.ndarray, y: np.ndarray):
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        return y * (x + a) / (x - 1), x + a - 1


def f_inv_array(a: float, x: np.ndarray, y: np.ndarray):
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        return y - a + 1, x * (y - a) / (y + 1)


def f3_array(a: float, x, y, inverse: bool = False):
    step = f_inv_array if inverse else f_array
    for _ in range(3):
        x, y = step(a, x, y)
    return x, y
