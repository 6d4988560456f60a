"""Trapping regions, blades S0..S4, adapted blade charts and orbit classification.

Conventions (a > 1, fixed point (x0, y0) = ((1-a)/2, (a-1)/2)):

* traps are open, as written: T0+ = {x>1, y>a}, A = {x>1, y<-x},
  T1+ = A u f^-1(A); the minus-side traps are their sigma-images.
* blades are closed and membership is inflated by ``eps_pt``:
  S0 = [-a,1]x[-1,a], S1 = [x0,1]x[a,inf], S2 = {x<=-a, y0<=y<=-x},
  S3 = [x0,1]x[-inf,-1], S4 = [1,inf]x[y0,a].
* adapted charts put the corner of the blade on S0 at the origin; the first
  coordinate is the distance to the axis line through the fixed point, the
  second the distance along it:
  psi1 = (x-x0, y-a), psi2 = (y-y0, -a-x), psi3 = (x-x0, -1-y), psi4 = (y-y0, x-1).
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .core import (EPS_IND, EPS_PT, INF, M_CLIP, ExtPoint, Outcome, check_param, eval_f,
                   eval_f_inv, f_array, f_inv_array, sigma, _near_indeterminacy)

EPS_MARGIN = 1e-9
BOX_FACTOR = 4.0


class RegionTag(enum.Enum):
    T0_PLUS = "T0+"
    A = "A"
    F_INV_A = "f^-1(A)"
    T0_MINUS = "T0-"
    SIGMA_A = "sigma(A)"
    SIGMA_F_INV_A = "sigma(f^-1(A))"
    S0 = "S0"
    S1 = "S1"
    S2 = "S2"
    S3 = "S3"
    S4 = "S4"
    SIGMA_S1 = "sigma(S1)"
    SIGMA_S2 = "sigma(S2)"
    SIGMA_S3 = "sigma(S3)"
    SIGMA_S4 = "sigma(S4)"
    OTHER = "other"
    I_PLUS = "I+"
    II_PLUS = "II+"
    III_PLUS = "III+"
    IV_PLUS = "IV+"
    V_PLUS = "V+"
    VI_PLUS = "VI+"
    I_MINUS = "I-"
    II_MINUS = "II-"
    III_MINUS = "III-"
    IV_MINUS = "IV-"
    V_MINUS = "V-"
    VI_MINUS = "VI-"


_ROMAN = ("I", "II", "III", "IV", "V", "VI")

# (vertical strip of the plus side, above diagonal) -> roman index;
# strips are x<-a, -a<x<1, x>1, split by the sign of y-x+1.
# Minus-side strips are y<-1, -1<y<a, y>a. Minus labels are the f-images of
# plus labels; the table was read off by pushing samples through f.
_MINUS_LABEL = {(0, False): 0, (1, True): 1, (2, False): 2,
                (0, True): 3, (1, False): 4, (2, True): 5}


def partition_label(a: float, p: ExtPoint, side: str = "+") -> Optional[RegionTag]:
    """Label of the open piece of the six-fold partition containing p (None on boundaries)."""
    x, y = p.x, p.y
    if x == INF or y == INF:
        return None
    d = y - x + 1
    if d == 0:
        return None
    if side == "+":
        if x == 1 or x == -a:
            return None
        strip = 0 if x < -a else (1 if x < 1 else 2)
        idx = strip + (0 if d > 0 else 3)
        return RegionTag[f"{_ROMAN[idx]}_PLUS"]
    if y == -1 or y == a:
        return None
    strip = 0 if y < -1 else (1 if y < a else 2)
    return RegionTag[f"{_ROMAN[_MINUS_LABEL[(strip, d > 0)]]}_MINUS"]


# -- trap predicates (finite scalars or arrays) -----------------------------

def in_t0_plus(a, x, y, margin=0.0):
    return (x > 1 + margin) & (y > a + margin)


def in_A(x, y, margin=0.0):
    return (x > 1 + margin) & (y < -x - margin)


def in_f_inv_A(a, p: ExtPoint, margin=0.0) -> bool:
    if not p.is_finite:
        return False
    r = eval_f(a, p)
    if not r.ok or not r.point.is_finite:
        return False
    return bool(in_A(r.point.x, r.point.y, margin))


def in_blade(j: int, a: float, p: ExtPoint, eps: float = EPS_PT) -> bool:
    x, y = p.x, p.y
    x0, y0 = (1 - a) / 2, (a - 1) / 2
    if j == 0:
        return (x != INF and y != INF and -a - eps <= x <= 1 + eps and -1 - eps <= y <= a + eps)
    if j == 1:
        return x != INF and x0 - eps <= x <= 1 + eps and (y == INF or y >= a - eps)
    if j == 2:
        if y == INF:
            return False
        if x == INF:
            return y >= y0 - eps
        return x <= -a + eps and y0 - eps <= y <= -x + eps
    if j == 3:
        return x != INF and x0 - eps <= x <= 1 + eps and (y == INF or y <= -1 + eps)
    if j == 4:
        return y != INF and (x == INF or x >= 1 - eps) and y0 - eps <= y <= a + eps
    raise ValueError(f"no blade S{j}")


def blade_mask(j: int, a: float, x, y, eps: float = EPS_PT):
    """Vectorized :func:`in_blade` for finite coordinates."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    x0, y0 = (1 - a) / 2, (a - 1) / 2
    if j == 0:
        return (x >= -a - eps) & (x <= 1 + eps) & (y >= -1 - eps) & (y <= a + eps)
    if j == 1:
        return (x >= x0 - eps) & (x <= 1 + eps) & (y >= a - eps)
    if j == 2:
        return (x <= -a + eps) & (y >= y0 - eps) & (y <= -x + eps)
    if j == 3:
        return (x >= x0 - eps) & (x <= 1 + eps) & (y <= -1 + eps)
    if j == 4:
        return (x >= 1 - eps) & (y >= y0 - eps) & (y <= a + eps)
    raise ValueError(f"no blade S{j}")


def region_of(a: float, p: ExtPoint, eps: float = EPS_PT) -> frozenset:
    """All region tags whose defining inequalities p satisfies."""
    tags = set()
    sp = sigma(p)
    if p.is_finite:
        if in_t0_plus(a, p.x, p.y):
            tags.add(RegionTag.T0_PLUS)
        if in_A(p.x, p.y):
            tags.add(RegionTag.A)
        if in_t0_plus(a, sp.x, sp.y):
            tags.add(RegionTag.T0_MINUS)
        if in_A(sp.x, sp.y):
            tags.add(RegionTag.SIGMA_A)
        if in_f_inv_A(a, p):
            tags.add(RegionTag.F_INV_A)
        if in_f_inv_A(a, sp):
            tags.add(RegionTag.SIGMA_F_INV_A)
    for j in range(5):
        if in_blade(j, a, p, eps):
            tags.add(RegionTag[f"S{j}"])
        if j and in_blade(j, a, sp, eps):
            tags.add(RegionTag[f"SIGMA_S{j}"])
    if not tags:
        tags.add(RegionTag.OTHER)
    for side in "+-":
        lab = partition_label(a, p, side)
        if lab is not None:
            tags.add(lab)
    return frozenset(tags)


# -- adapted blade coordinates ----------------------------------------------

@dataclass(frozen=True)
class AdaptedCoords:
    blade: int
    u: float
    v: float


def adapted_to(blade: int, a: float, p: ExtPoint, eps: float = EPS_PT) -> AdaptedCoords:
    if not p.is_finite:
        raise ValueError("adapted coordinates need a finite point")
    if not in_blade(blade, a, p, eps) or blade == 0:
        raise ValueError(f"{p} is not in blade S{blade} (a={a})")
    x, y = p.x, p.y
    x0, y0 = (1 - a) / 2, (a - 1) / 2
    if blade == 1:
        return AdaptedCoords(1, x - x0, y - a)
    if blade == 2:
        return AdaptedCoords(2, y - y0, -a - x)
    if blade == 3:
        return AdaptedCoords(3, x - x0, -1 - y)
    return AdaptedCoords(4, y - y0, x - 1)


def adapted_from(blade: int, a: float, c: AdaptedCoords) -> ExtPoint:
    u, v = c.u, c.v
    x0, y0 = (1 - a) / 2, (a - 1) / 2
    if blade == 1:
        return ExtPoint(x0 + u, a + v)
    if blade == 2:
        return ExtPoint(-a - v, y0 + u)
    if blade == 3:
        return ExtPoint(x0 + u, -1 - v)
    if blade == 4:
        return ExtPoint(1 + v, y0 + u)
    raise ValueError(f"no blade S{blade}")


def blade_transition(i: int, a: float, c: AdaptedCoords, eps: float = EPS_PT) -> AdaptedCoords:
    """psi_{i+1} o f o psi_i^{-1} in closed form (blade indices cyclic 1..4)."""
    u, v = c.u, c.v
    h = (1 + a) / 2
    if u < -eps or v < -eps:
        raise ValueError(f"adapted coordinates must be non-negative, got {c}")
    if i in (1, 3):
        if u > h + eps or 1 + a - 2 * u == 0:
            raise ValueError(f"{c} outside blade S{i}")
        k = 4 * a if i == 1 else 4.0
        return AdaptedCoords(i + 1, u, (k * u + v + a * v + 2 * u * v) / (1 + a - 2 * u))
    if i == 2:
        if u > v + h + eps:
            raise ValueError(f"{c} outside blade S2")
        return AdaptedCoords(3, (-1 + a * a + 2 * v * (u + a - 1)) / (2 * (v + a + 1)), v)
    if i == 4:
        if u > h + eps or v == 0:
            raise ValueError(f"{c} outside blade S4 (v=0 is critical)")
        return AdaptedCoords(1, (a * a - 1 + 2 * (a - 1) * v + 2 * u * (1 + a + v)) / (2 * v), v)
    raise ValueError(f"no blade S{i}")


# -- orbit classification ---------------------------------------------------

class OrbitTag(enum.IntEnum):
    ESCAPE_T0 = 0
    ESCAPE_T1 = 1
    BOUNDED = 2
    INDETERMINATE = 3
    UNDETERMINED = 4

    @property
    def label(self) -> str:
        return _TAG_LABELS[self]


_TAG_LABELS = {OrbitTag.ESCAPE_T0: "EscapeT0", OrbitTag.ESCAPE_T1: "EscapeT1",
               OrbitTag.BOUNDED: "BoundedCandidate", OrbitTag.INDETERMINATE: "HitsIndeterminacy",
               OrbitTag.UNDETERMINED: "Undetermined"}


@dataclass(frozen=True)
class OrbitClass:
    tag: OrbitTag
    n_exit: Optional[int] = None
    witness: Optional[ExtPoint] = None

    def to_record(self, a: float, point: ExtPoint) -> dict:
        return {"point": [_json_float(point.x), _json_float(point.y)], "a": a,
                "tag": self.tag.label, "n_exit": self.n_exit}


def _json_float(v):
    return "inf" if v == INF else v


@dataclass(frozen=True)
class ClassifierConfig:
    n_max: int = 1000
    box_factor: float = BOX_FACTOR
    eps_margin: float = EPS_MARGIN
    eps_ind: float = EPS_IND


def _classify_scalar(a, p: ExtPoint, n_start, cfg: ClassifierConfig, left, inverse) -> OrbitClass:
    """Reference loop over ExtPoints; mirrors the vector kernel decision order."""
    m = cfg.eps_margin
    box = cfg.box_factor * (a + 1)
    step = eval_f_inv if inverse else eval_f
    for n in range(n_start, cfg.n_max + 1):
        q = sigma(p) if inverse else p
        if _near_indeterminacy(a, q.x, q.y, cfg.eps_ind):
            return OrbitClass(OrbitTag.INDETERMINATE, n, p)
        if q.is_finite:
            if in_t0_plus(a, q.x, q.y, m):
                return OrbitClass(OrbitTag.ESCAPE_T0, n, p)
            if in_A(q.x, q.y, m):
                return OrbitClass(OrbitTag.ESCAPE_T1, n, p)
        r = step(a, p, cfg.eps_ind)
        if r.outcome is Outcome.INDETERMINATE:  # pragma: no cover - caught above
            return OrbitClass(OrbitTag.INDETERMINATE, n, p)
        nxt = r.point
        nq = sigma(nxt) if inverse else nxt
        if nq.is_finite and in_A(nq.x, nq.y, m):
            return OrbitClass(OrbitTag.ESCAPE_T1, n, p)
        if not p.is_finite or abs(p.x) > box or abs(p.y) > box:
            left = True
        p = nxt
    return OrbitClass(OrbitTag.UNDETERMINED if left else OrbitTag.BOUNDED, None, None)


def classify_points(a: float, xs, ys, cfg: ClassifierConfig = ClassifierConfig(),
                    inverse: bool = False):
    """Vectorized classification of finite starting points.

    Returns ``(tags, n_exit)`` as int8 / int64 arrays (``n_exit`` is -1 when
    no trap was entered). Iterates that hit a critical line or overflow are
    finished by the scalar reference loop, so results agree with
    :func:`classify_orbit` point for point.
    """
    a = check_param(a)
    x = np.array(xs, dtype=float).ravel()
    y = np.array(ys, dtype=float).ravel()
    if x.shape != y.shape:
        raise ValueError("xs and ys must have the same size")
    n_pts = x.size
    tags = np.full(n_pts, -1, dtype=np.int8)
    n_exit = np.full(n_pts, -1, dtype=np.int64)
    left = np.zeros(n_pts, dtype=bool)
    idx = np.arange(n_pts)
    m, eps = cfg.eps_margin, cfg.eps_ind
    box = cfg.box_factor * (a + 1)
    step = f_inv_array if inverse else f_array

    def settle(mask, tag, n):
        tags[idx[mask]] = tag
        n_exit[idx[mask]] = n

    handoff = []
    # points at infinity go straight to the reference loop
    bad = ~(np.isfinite(x) & np.isfinite(y))
    if bad.any():
        if np.isnan(x[bad]).any() or np.isnan(y[bad]).any():
            raise ValueError("NaN is not a point of P^1")
        for k in np.flatnonzero(bad):
            handoff.append((k, 0, x[k], y[k], False))
        keep = ~bad
        idx, x, y = idx[keep], x[keep], y[keep]
    for n in range(cfg.n_max + 1):
        if idx.size == 0:
            break
        tx, ty = (-y, -x) if inverse else (x, y)
        nx, ny = step(a, x, y)
        ntx, nty = (-ny, -nx) if inverse else (nx, ny)
        open_ = np.ones(idx.size, dtype=bool)

        hit = (np.abs(tx - 1) <= eps) & (np.abs(ty) <= eps)
        settle(hit, OrbitTag.INDETERMINATE, n)
        open_ &= ~hit
        hit = open_ & in_t0_plus(a, tx, ty, m)
        settle(hit, OrbitTag.ESCAPE_T0, n)
        open_ &= ~hit
        hit = open_ & in_A(tx, ty, m)
        settle(hit, OrbitTag.ESCAPE_T1, n)
        open_ &= ~hit
        with np.errstate(invalid="ignore"):
            exc = open_ & ((tx == 1) | (tx == -a) | ~(np.abs(nx) <= M_CLIP) | ~(np.abs(ny) <= M_CLIP))
        for k in np.flatnonzero(exc):
            handoff.append((idx[k], n, x[k], y[k], left[idx[k]]))
        open_ &= ~exc
        hit = open_ & in_A(ntx, nty, m)
        settle(hit, OrbitTag.ESCAPE_T1, n)
        open_ &= ~hit
        out = (np.abs(x) > box) | (np.abs(y) > box)
        left[idx[out]] = True

        if not open_.all():
            idx, nx, ny = idx[open_], nx[open_], ny[open_]
        x, y = nx, ny

    rest = idx
    tags[rest] = np.where(left[rest], OrbitTag.UNDETERMINED, OrbitTag.BOUNDED)
    for i, n, px, py, lf in handoff:
        oc = _classify_scalar(a, ExtPoint(px, py), n, cfg, bool(lf), inverse)
        tags[i] = oc.tag
        n_exit[i] = -1 if oc.n_exit is None else oc.n_exit
    return tags, n_exit


def classify_orbit(a: float, p: ExtPoint, n_max: int = 1000, *, inverse: bool = False,
                   box_factor: float = BOX_FACTOR, eps_margin: float = EPS_MARGIN,
                   eps_ind: float = EPS_IND) -> OrbitClass:
    """Fate of the forward orbit of p (backward orbit when ``inverse``)."""
    a = check_param(a)
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    cfg = ClassifierConfig(n_max, box_factor, eps_margin, eps_ind)
    return _classify_scalar(a, p, 0, cfg, False, inverse)


def classify_biorbit(a: float, p: ExtPoint, n_max: int = 1000, **kw) -> tuple:
    """(forward, backward) classes; K-candidate iff both are BoundedCandidate."""
    return (classify_orbit(a, p, n_max, **kw),
            classify_orbit(a, p, n_max, inverse=True, **kw))
