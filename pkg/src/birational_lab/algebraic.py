"""Curve classes on P^1 x P^1 and the indeterminacy orbits I^inf(f^{+-1})."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from .core import INF, EPS_PT, ExtPoint, ext_distance, indeterminacy_points, \
    indeterminacy_points_inv

PULLBACK = ((1, 1), (1, 0))
PUSHFORWARD = ((0, 1), (1, 1))

MAX_DEPTH = 90
_INT64_MAX = 2**63 - 1


@dataclass(frozen=True)
class Bidegree:
    j: int
    k: int

    def __post_init__(self):
        if not (isinstance(self.j, (int, np.integer)) and isinstance(self.k, (int, np.integer))):
            raise TypeError("bidegree entries must be integers")
        if self.j < 0 or self.k < 0:
            raise ValueError(f"negative bidegree ({self.j}, {self.k})")
        if self.j > _INT64_MAX or self.k > _INT64_MAX:
            raise OverflowError(f"bidegree ({self.j}, {self.k}) exceeds 64-bit range")
        object.__setattr__(self, "j", int(self.j))
        object.__setattr__(self, "k", int(self.k))

    def is_curve_class(self) -> bool:
        return (self.j, self.k) != (0, 0)


def _apply(m, b: Bidegree) -> Bidegree:
    return Bidegree(m[0][0] * b.j + m[0][1] * b.k, m[1][0] * b.j + m[1][1] * b.k)


def pullback_bideg(b: Bidegree) -> Bidegree:
    """bideg f^*V."""
    return _apply(PULLBACK, b)


def pushforward_bideg(b: Bidegree) -> Bidegree:
    """bideg f_*V."""
    return _apply(PUSHFORWARD, b)


def iterate_bideg(b: Bidegree, n: int, forward: bool = True) -> list[Bidegree]:
    """[b, f_* b, f_*^2 b, ...] (or pullbacks), n steps; depth capped at 90."""
    if n > MAX_DEPTH:
        raise ValueError(f"depth {n} exceeds cap {MAX_DEPTH}")
    step = pushforward_bideg if forward else pullback_bideg
    out = [b]
    for _ in range(n):
        out.append(step(out[-1]))
    return out


def intersection_number(b1: Bidegree, b2: Bidegree) -> int:
    """V.V' = jk' + j'k, valid when V and V' share no component."""
    return b1.j * b2.k + b2.j * b1.k


# -- supp(eta) and the indeterminacy orbits ---------------------------------

def on_supp_eta(p: ExtPoint) -> bool:
    """Exact membership in {x=inf} u {y=inf} u {y=x-1}."""
    return p.x == INF or p.y == INF or p.y == p.x - 1


def supp_eta_step(a: float, p: ExtPoint, inverse: bool = False) -> ExtPoint:
    """Action of f (or f^-1) restricted to supp(eta), as a closed-form translation.

    (inf, y) -> (y, inf) -> (inf, y+a-1); (x, x-1) -> (x+a, x+a-1).
    """
    if not on_supp_eta(p):
        raise ValueError(f"{p} is not on supp(eta)")
    x, y = p.x, p.y
    if x == INF and y == INF:
        return p
    if not inverse:
        if x == INF:
            return ExtPoint(y, INF)
        if y == INF:
            return ExtPoint(INF, x + a - 1)
        return ExtPoint(x + a, (x + a) - 1)
    if y == INF:
        return ExtPoint(INF, x)
    if x == INF:
        return ExtPoint(y - a + 1, INF)
    return ExtPoint(x - a, (x - a) - 1)


@dataclass(frozen=True)
class IndeterminacyOrbit:
    points: tuple
    n_max: int
    direction: str
    depths: tuple = ()


def indeterminacy_orbit(a: float, direction: Literal["forward", "backward"] = "forward",
                        n_max: int = 1) -> IndeterminacyOrbit:
    """Points of I(f^n) for n <= n_max (``forward``) or I(f^-n) (``backward``).

    ``forward`` walks I(f) backwards under f^-1 along supp(eta);
    ``backward`` walks I(f^-1) forwards under f. Depth 1 is the seed set.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    if n_max > MAX_DEPTH:
        raise ValueError(f"depth {n_max} exceeds cap {MAX_DEPTH}")
    if direction == "forward":
        seeds, inverse = indeterminacy_points(a), True
    elif direction == "backward":
        seeds, inverse = indeterminacy_points_inv(a), False
    else:
        raise ValueError(f"unknown direction {direction!r}")

    pts, depths = _walk(a, seeds, inverse, n_max)
    if a > 1:
        other_seeds = indeterminacy_points_inv(a) if inverse else indeterminacy_points(a)
        other, _ = _walk(a, other_seeds, not inverse, n_max)
        d = min(ext_distance(p, q) for p in pts for q in other)
        if not d > EPS_PT:
            raise AssertionError(f"I^inf(f) meets I^inf(f^-1) (distance {d})")
    return IndeterminacyOrbit(tuple(pts), n_max, direction, tuple(depths))


def _walk(a, seeds, inverse, n_max):
    pts, depths = [], []
    for s in seeds:
        p = s
        for d in range(1, n_max + 1):
            if not on_supp_eta(p):
                raise AssertionError(f"indeterminacy orbit left supp(eta) at {p}")
            pts.append(p)
            depths.append(d)
            p = supp_eta_step(a, p, inverse=inverse)
    for i in range(len(pts)):
        for j in range(i):
            if ext_distance(pts[i], pts[j]) <= EPS_PT:
                raise AssertionError(f"repeated indeterminacy point {pts[i]}")
    return pts, depths


def min_separation(o1: IndeterminacyOrbit, o2: IndeterminacyOrbit) -> float:
    return min(ext_distance(p, q) for p in o1.points for q in o2.points)


def check_disjoint(a: float, n_max: int = 50, gap: float = 0.1) -> float:
    """Assert I^inf(f) and I^inf(f^-1) are separated (a > 1); returns the gap."""
    d = min_separation(indeterminacy_orbit(a, "forward", n_max),
                       indeterminacy_orbit(a, "backward", n_max))
    if not d > gap:
        raise AssertionError(f"I^inf(f) and I^inf(f^-1) within {d}")
    return d
