"""Randomized property suites behind ``verify --suite``.

Every check draws from a seeded generator, so reports are reproducible
byte for byte. A check passes when it records zero violations.
"""
from __future__ import annotations

from dataclasses import dataclass, asdict

import numpy as np

from . import a3
from .algebraic import (Bidegree, PUSHFORWARD, check_disjoint, indeterminacy_orbit,
                        intersection_number, iterate_bideg, pushforward_bideg, supp_eta_step)
from .core import (EPS_PT, INF, ExtPoint, eval_f, eval_f_inv, f_array, f_inv_array,
                   indeterminacy_points, indeterminacy_points_inv, jacobian_f, sigma, tau)
from .regions import (ClassifierConfig, OrbitTag, adapted_from, adapted_to,
                      blade_mask, blade_transition, classify_points, in_A, in_t0_plus)

SUITES = ("core", "regions", "a3")
A_VALUES = (1.1, 2.0, 3.0, 5.0)


@dataclass(frozen=True)
class CheckResult:
    suite: str
    name: str
    samples: int
    violations: int
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.violations == 0

    def to_record(self) -> dict:
        rec = asdict(self)
        rec["passed"] = self.passed
        return rec


def _rel_close(u, v, tol=EPS_PT):
    u, v = np.asarray(u, float), np.asarray(v, float)
    return np.abs(u - v) <= tol * np.maximum(1.0, np.maximum(np.abs(u), np.abs(v)))


def _count(mask) -> int:
    return int(np.count_nonzero(mask))


# -- core and algebraic ------------------------------------------------------

def _generic(a, rng, n, lo=-10.0, hi=10.0, gap=1e-3):
    """Finite points away from the critical lines of f and f^-1."""
    x = rng.uniform(lo, hi, 2 * n)
    y = rng.uniform(lo, hi, 2 * n)
    ok = (np.abs(x - 1) > gap) & (np.abs(x + a) > gap) & (np.abs(y + 1) > gap) & (np.abs(y - a) > gap)
    return x[ok][:n], y[ok][:n]


def suite_core(rng, scale=1.0) -> list:
    out = []
    n_big, n_small = int(1e5 * scale), int(1e4 * scale)
    S = "core"

    x = rng.uniform(-1e3, 1e3, n_big)
    y = rng.uniform(-1e3, 1e3, n_big)
    out.append(CheckResult(S, "sigma involution", n_big, _count(~((-(-x) == x) & (-(-y) == y)))))

    bad_tau = bad_ts = 0
    for a in A_VALUES:
        xs, ys = _generic(a, rng, n_small // len(A_VALUES))
        for px, py in zip(xs, ys):
            p = ExtPoint(px, py)
            q = tau(a, tau(a, p))
            bad_tau += not bool(np.all(_rel_close([q.x, q.y], [px, py])))
            r = eval_f(a, p).image()
            s = tau(a, sigma(p))
            bad_ts += not bool(np.all(_rel_close([r.x, r.y], [s.x, s.y])))
    out.append(CheckResult(S, "tau involution", n_small, bad_tau))
    out.append(CheckResult(S, "f = tau o sigma", n_small, bad_ts))

    bad_rt = bad_rev = bad_rt2 = 0
    for a in A_VALUES:
        xs, ys = _generic(a, rng, n_big // len(A_VALUES))
        fx, fy = f_array(a, xs, ys)
        bx, by = f_inv_array(a, fx, fy)
        bad_rt += _count(~(_rel_close(bx, xs) & _rel_close(by, ys)))
        ix, iy = f_inv_array(a, xs, ys)
        fx2, fy2 = f_array(a, ix, iy)
        bad_rt2 += _count(~(_rel_close(fx2, xs) & _rel_close(fy2, ys)))
        sx, sy = f_array(a, -ys, -xs)
        bad_rev += _count(~((ix == -sy) & (iy == -sx)))
    out.append(CheckResult(S, "round trip f^-1 o f", n_big, bad_rt))
    out.append(CheckResult(S, "round trip f o f^-1", n_big, bad_rt2))
    out.append(CheckResult(S, "reversibility f^-1 = sigma f sigma (bitwise)", n_big, bad_rev))

    bad_eta = bad_fd = 0
    n_fd = max(1, n_small // 10)
    for k, a in enumerate(A_VALUES):
        xs, ys = _generic(a, rng, n_small // len(A_VALUES))
        with np.errstate(divide="ignore"):
            keep = np.abs(ys - xs + 1) > 1e-3
        for j, (px, py) in enumerate(zip(xs[keep], ys[keep])):
            J = jacobian_f(a, (px, py))
            fx, fy = f_array(a, px, py)
            lhs = abs(np.linalg.det(J))
            rhs = abs((fy - fx + 1) / (py - px + 1))
            bad_eta += not bool(_rel_close(lhs, rhs))
            if j < n_fd // len(A_VALUES):
                h = 1e-6 * max(1.0, abs(px), abs(py))
                fd = np.column_stack([
                    (np.array(f_array(a, px + h, py)) - np.array(f_array(a, px - h, py))) / (2 * h),
                    (np.array(f_array(a, px, py + h)) - np.array(f_array(a, px, py - h))) / (2 * h)])
                bad_fd += not bool(np.all(np.abs(fd - J) <= 1e-6 * np.maximum(1.0, np.abs(J))))
    out.append(CheckResult(S, "eta-invariance |det Df| = |w(f p) / w(p)|", n_small, bad_eta))
    out.append(CheckResult(S, "jacobian vs central differences", n_fd, bad_fd))

    bad_inf = 0
    for a in A_VALUES:
        for t in rng.uniform(-1e3, 1e3, n_small // len(A_VALUES)):
            q = eval_f(a, eval_f(a, ExtPoint(INF, t)).image()).image()
            bad_inf += not (q.x == INF and q.y == t + a - 1)
    out.append(CheckResult(S, "f^2(inf, t) = (inf, t+a-1)", n_small, bad_inf))

    bad_ind = 0
    for a in A_VALUES:
        bad_ind += {sigma(p) for p in indeterminacy_points(a)} != set(indeterminacy_points_inv(a))
        for p in indeterminacy_points(a):
            bad_ind += eval_f(a, p).ok
        for p in indeterminacy_points_inv(a):
            bad_ind += eval_f_inv(a, p).ok
    out.append(CheckResult(S, "I(f^-1) = sigma(I(f))", len(A_VALUES), bad_ind))

    # algebraic
    M2 = np.array(PUSHFORWARD) @ np.array(PUSHFORWARD)
    bad = 0
    for j in range(101):
        for k in range(101):
            b = Bidegree(j, k)
            two = pushforward_bideg(pushforward_bideg(b))
            bad += (two.j, two.k) != tuple(int(v) for v in M2 @ [j, k])
            bad += intersection_number(b, Bidegree(k, j)) != intersection_number(Bidegree(k, j), b)
    out.append(CheckResult(S, "bidegree functoriality and symmetric intersection", 101 * 101, bad))

    seq = iterate_bideg(Bidegree(1, 1), 30)
    fib = sum((seq[n + 2].k != seq[n + 1].k + seq[n].k) for n in range(29))
    out.append(CheckResult(S, "Fibonacci growth of f_* (1,1)", 29, fib))

    bad = 0
    for a in A_VALUES:
        try:
            check_disjoint(a, 50, 0.1)
        except AssertionError:
            bad += 1
        orb = indeterminacy_orbit(a, "forward", 20)
        seeds = indeterminacy_points(a)
        for p, d in zip(orb.points, orb.depths):
            q = p
            for _ in range(d - 1):
                q = supp_eta_step(a, q)
            bad += not any(q.close_to(s) for s in seeds)
    out.append(CheckResult(S, "indeterminacy orbits: disjoint, return to I(f)", len(A_VALUES), bad))
    return out


# -- regions -----------------------------------------------------------------

def _blade_sample(j, a, rng, n, reach=1e3):
    x0, y0 = (1 - a) / 2, (a - 1) / 2
    if j == 0:
        return rng.uniform(-a, 1, n), rng.uniform(-1, a, n)
    if j == 1:
        return rng.uniform(x0, 1, n), a + rng.exponential(reach / 20, n)
    if j == 2:
        x = -a - rng.exponential(reach / 20, n)
        return x, y0 + rng.uniform(0, 1, n) * (-x - y0)
    if j == 3:
        return rng.uniform(x0, 1, n), -1 - rng.exponential(reach / 20, n)
    return 1 + rng.exponential(reach / 20, n), rng.uniform(y0, a, n)


def suite_regions(rng, scale=1.0) -> list:
    S = "regions"
    out = []
    n = int(1e5 * scale)
    n_small = int(1e4 * scale)
    per = max(1, n // len(A_VALUES))

    bad = bad_r = bad_alt = bad_line = 0
    for a in A_VALUES:
        x = 1 + rng.uniform(0, 1e3, per)
        y = a + rng.uniform(0, 1e3, per)
        X, Y = f_array(a, x, y)
        bad += _count(~in_t0_plus(a, X, Y))

        s, t = rng.uniform(0, 10, per), rng.uniform(0, 10, per)
        x = 1 + s + rng.exponential(50, per)
        y = a + t + rng.exponential(50, per)
        X, Y = f_array(a, x, y)
        bad_r += _count(~((X > 1 + (t + a - 1)) & (Y > a + s)))

        x = 1 + rng.uniform(0, 1e3, per)
        y = -x - rng.uniform(0, 1e3, per)
        X, Y = f_array(a, x, y)
        X2, Y2 = f_array(a, X, Y)
        bad_alt += _count(in_A(X, Y) | ~in_A(X2, Y2))

        t = -1 - rng.exponential(5, per)
        x = rng.uniform(-50, 50, per)
        x = x[np.abs(x - 1) > 1e-3]
        tt = t[: x.size]
        X, Y = f_array(a, x, tt * (x - 1))
        bad_line += _count(~_rel_close(Y, X / tt - 1))
    out.append(CheckResult(S, "T0+ forward invariance", n, bad))
    out.append(CheckResult(S, "R_st nesting f(R_st) in R_(t+a-1, s)", n, bad_r))
    out.append(CheckResult(S, "A alternation: f(A) off A, f^2(A) in A", n, bad_alt))
    out.append(CheckResult(S, "diagonal lines f(L_t) = L'_(1/t)", n, bad_line))

    rot = {0: (0, 2, 4), 1: (2,), 2: (3, "A"), 3: (4,), 4: (1, "T0")}
    for j, targets in rot.items():
        bad = 0
        for a in A_VALUES:
            x, y = _blade_sample(j, a, rng, per)
            X, Y = f_array(a, x, y)
            ok = np.zeros(X.size, dtype=bool)
            with np.errstate(invalid="ignore"):
                for tgt in targets:
                    if tgt == "A":
                        ok |= in_A(X, Y)
                    elif tgt == "T0":
                        ok |= in_t0_plus(a, X, Y)
                    else:
                        ok |= blade_mask(tgt, a, X, Y)
            # images of the critical boundary lines are points at infinity
            ok |= ~np.isfinite(X) | ~np.isfinite(Y)
            bad += _count(~ok)
        names = " u ".join(f"S{t}" if isinstance(t, int) else t for t in targets)
        out.append(CheckResult(S, f"f(S{j}) in {names}", n, bad))

    bad_y = bad_tr = 0
    for a in A_VALUES:
        for j in (1, 3):
            x, y = _blade_sample(j, a, rng, per // 2)
            u, v = _adapted_raw(j, a, ExtPoint(0.0, 0.0), x, y)
            pos = (u > 0) & (v > 0)
            X, Y = f_array(a, x[pos], y[pos])
            _, v2 = _adapted_raw(j + 1, a, None, X, Y)
            bad_y += _count(~(v2 > v[pos]))
        for i in (1, 2, 3, 4):
            x, y = _blade_sample(i, a, rng, n_small // 16)
            for px, py in zip(x, y):
                c = adapted_to(i, a, ExtPoint(px, py), eps=1e-9)
                if i == 4 and c.v == 0:
                    continue
                q = eval_f(a, ExtPoint(px, py))
                if not q.ok or not q.point.is_finite:
                    continue
                d = blade_transition(i, a, c)
                direct = _adapted_raw(i % 4 + 1, a, q.point)
                bad_tr += not bool(np.all(_rel_close([d.u, d.v], direct, 1e-9)))
    out.append(CheckResult(S, "adapted y-coordinate increases on S1, S3", n, bad_y))
    out.append(CheckResult(S, "blade transitions match direct composition", n_small, bad_tr))

    bad = 0
    for a in A_VALUES:
        x, y = _blade_sample(0, a, rng, per)
        X, Y = f_array(a, x, y)
        leave = ~blade_mask(0, a, X, Y, 0.0)
        X, Y = X[leave], Y[leave]
        back = np.zeros(X.size, dtype=bool)
        with np.errstate(invalid="ignore", over="ignore"):
            for _ in range(200):
                X, Y = f_array(a, X, Y)
                back |= blade_mask(0, a, X, Y, 0.0)
        bad += _count(back)
    out.append(CheckResult(S, "reverse trap: leaving S0 is final (200 steps)", n, bad))

    bad = 0
    for a in A_VALUES:
        x = rng.uniform(-50, 50, per)
        y = rng.uniform(-50, 50, per)
        cov = np.zeros(x.size, dtype=bool)
        for (px, py) in ((x, y), (-y, -x)):
            cov |= in_t0_plus(a, px, py) | in_A(px, py)
            fx, fy = f_array(a, px, py)
            with np.errstate(invalid="ignore"):
                cov |= in_A(fx, fy)
            for j in range(5):
                cov |= blade_mask(j, a, px, py)
        bad += _count(~cov)
    out.append(CheckResult(S, "coverage by traps, blades and sigma-images", n, bad))

    bad = 0
    cfg = ClassifierConfig(n_max=300)
    for a in A_VALUES:
        x = rng.uniform(-a - 2, 3, n_small // len(A_VALUES))
        y = rng.uniform(-3, a + 2, n_small // len(A_VALUES))
        tf, _ = classify_points(a, x, y, cfg)
        tb, _ = classify_points(a, -y, -x, cfg, inverse=True)
        bad += _count(tf != tb)
    out.append(CheckResult(S, "classifier sigma-equivariance", n_small, bad))

    bad = 0
    for a in (1.1, 2.0, 5.0):
        g = np.linspace(-a - 1, 2, 97)
        h = np.linspace(-2, a + 1, 97)
        X, Y = np.meshgrid(g, h)
        tf, _ = classify_points(a, X.ravel(), Y.ravel(), ClassifierConfig(n_max=500))
        tb, _ = classify_points(a, X.ravel(), Y.ravel(), ClassifierConfig(n_max=500), inverse=True)
        k = (tf == OrbitTag.BOUNDED) & (tb == OrbitTag.BOUNDED)
        bad += _count(k & ~blade_mask(0, a, X.ravel(), Y.ravel(), 0.0))
    out.append(CheckResult(S, "bounded candidates lie in S0", 3 * 97 * 97, bad))

    bad = 0
    for a in A_VALUES:
        for j in (1, 2, 3, 4):
            x, y = _blade_sample(j, a, rng, n_small // 16)
            for px, py in zip(x, y):
                q = adapted_from(j, a, adapted_to(j, a, ExtPoint(px, py)))
                bad += not bool(np.all(_rel_close([q.x, q.y], [px, py])))
    out.append(CheckResult(S, "adapted chart round trip", n_small, bad))
    return out


def _adapted_raw(j, a, p, x=None, y=None):
    """psi_j without the membership check; arrays ``x, y`` override ``p``."""
    x0, y0 = (1 - a) / 2, (a - 1) / 2
    if x is None:
        x, y = p.x, p.y
    return {1: (x - x0, y - a), 2: (y - y0, -a - x), 3: (x - x0, -1 - y), 4: (y - y0, x - 1)}[j]


# -- a = 3 -------------------------------------------------------------------

def suite_a3(rng, scale=1.0) -> list:
    S = "a3"
    out = []
    n = int(1e4 * scale)

    g = np.linspace(-3, 1, 801)
    X, Y = np.meshgrid(g, np.linspace(-1, 3, 801))
    with np.errstate(invalid="ignore", divide="ignore"):
        bad = _count((a3.phi_array(2, X, Y) > 0) & ~(a3.phi_array(-1, X, Y) > 0)
                     & np.isfinite(a3.phi_array(2, X, Y)) & np.isfinite(a3.phi_array(-1, X, Y)))
    out.append(CheckResult(S, "level curves {phi_2 > 0} in {phi_-1 > 0}", X.size, bad))

    bad = 0
    for k in range(3):
        x, y, _ = a3.sample_wedges(n, rng, wedges=(k,))
        X, Y = f_array(3.0, x, y)
        in0 = a3._in_s0(X, Y)
        bad += _count(in0 & ~a3.wedge_mask((k + 1) % 3, X, Y))
    out.append(CheckResult(S, "wedge contraction f(W_j) n S0 in W_(j+1)", 3 * n, bad))

    x = rng.uniform(-3, 1, 2 * n)
    y = rng.uniform(-1, 3, 2 * n)
    keep = (np.abs(x - 1) > 1e-3) & (np.abs(y + 1) > 1e-3) & (np.abs(x + 1) > 1e-3) & (np.abs(y - 1) > 1e-3)
    x, y = x[keep][:n], y[keep][:n]
    sx, sy = -y, -x
    bad = _count(~_rel_close(a3.phi_array(0, sx, sy), -a3.phi_array(1, x, y)))
    bad += _count(~_rel_close(a3.phi_array(-1, sx, sy), -a3.phi_array(2, x, y)))
    out.append(CheckResult(S, "sigma identities phi_0 o s = -phi_1, phi_-1 o s = -phi_2", x.size, bad))

    cov = np.zeros(x.size, dtype=bool)
    for k in range(3):
        cov |= a3.wedge_mask(k, x, y) | a3.wedge_mask(k, x, y, sigma_side=True)
    out.append(CheckResult(S, "S0 covered by wedges and sigma-wedges", x.size, _count(~cov)))

    bad = 0
    pairs = ((0, 1), (1, 2), (2, 0))
    for i, j in pairs:
        for _ in range(max(1, n // 1000)):
            inc = rng.exponential(1.0, (1000, 2))
            c = np.cumsum(inc, axis=0)
            c *= 0.03 / c[-1].max()
            c = np.vstack([[0.0, 0.0], c])
            img = np.array([a3.wedge_transition(i, j, cc) for cc in c])
            bad += not a3.is_admissible(img, tol=1e-12)
    out.append(CheckResult(S, "admissible polylines stay admissible under f_ij", 3 * max(1, n // 1000), bad))

    bad = 0
    c = rng.uniform(0, 0.05, (n // 10, 2))
    for cc in c:
        bad += not bool(np.all(np.abs(np.array(a3.wedge_transition(0, 1, cc)) - cc) <= 1e-12))
        for i, j in pairs:
            bad += bool(np.any(a3.transition_jacobian(i, j, cc) < -1e-9))
    out.append(CheckResult(S, "f_01 = id and Df_ij >= 0 near the origin", n // 10, bad))

    bad = 0
    xs, ys, ws = a3.sample_wedges(n // 10, rng)
    for px, py, k in zip(xs, ys, ws):
        c = a3.wedge_chart(int(k), ExtPoint(px, py))
        q = a3.wedge_unchart(int(k), c)
        bad += not bool(np.all(np.abs(np.array([q.x - px, q.y - py])) <= 1e-10 * max(1, abs(px), abs(py))))
    out.append(CheckResult(S, "wedge chart round trip", n // 10, bad))

    bad = 0
    pts = rng.uniform(-2.5, 0.5, (n // 10, 2))
    for px, py in pts:
        p = ExtPoint(px, py)
        try:
            for j, k in ((0, 1), (-1, 1), (1, 1), (0, -1)):
                lhs = a3.phi(j + k, p)
                rhs = a3.phi(j, eval_f_inv(3.0, p).image() if k == 1 else eval_f(3.0, p).image())
                bad += not (lhs == rhs == INF or bool(_rel_close(lhs, rhs, 1e-8)))
        except a3.IndeterminateError:
            continue
    out.append(CheckResult(S, "cocycle phi_(j+k) = phi_j o f^-k", n // 10, bad))

    gaps = [a3.comparison_gap(e) for e in (0.4, 0.2, 0.1, 0.05)]
    bad = _count(np.array(gaps) <= 0) + _count(np.diff(gaps) >= 0)
    out.append(CheckResult(S, "comparison gap positive and shrinking with U", 4, bad,
                           "m = " + ", ".join(f"{m:.6g}" for m in gaps)))

    try:
        N = a3.escape_time_bound(0.05, n_samples=n, seed=int(rng.integers(2**31)))
        out.append(CheckResult(S, "escape time bound off U", n, 0, f"N = {N}"))
    except AssertionError as e:
        out.append(CheckResult(S, "escape time bound off U", n, 1, str(e)))
    return out


_RUNNERS = {"core": suite_core, "regions": suite_regions, "a3": suite_a3}


def run_suite(name: str = "all", seed: int = 0, scale: float = 1.0) -> list:
    """Run one suite (or ``all``) and return its CheckResults."""
    names = SUITES if name == "all" else (name,)
    out = []
    for k, s in enumerate(names):
        if s not in _RUNNERS:
            raise ValueError(f"unknown suite {s!r}; choose from {SUITES + ('all',)}")
        out.extend(_RUNNERS[s](np.random.default_rng([seed, SUITES.index(s)]), scale))
    return out


def report(results) -> dict:
    return {"passed": all(r.passed for r in results),
            "checks": [r.to_record() for r in results]}
