"""Escape-time basin rasters and their PPM/JSON serialization."""
from __future__ import annotations

import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .core import check_param
from .regions import ClassifierConfig, OrbitTag, classify_points

MIN_SIDE, MAX_SIDE = 16, 16384
ROW_CHUNK = 16

# pixel classes; the forward tag decides the colour except for bounded orbits
PIX_ESCAPE_T0 = 0
PIX_ESCAPE_T1 = 1
PIX_BOUNDED = 2  # bounded candidate both ways
PIX_MIXED = 3  # forward bounded, backward not
PIX_UNDETERMINED = 4
PIX_INDETERMINATE = 5

PIXEL_LABELS = ("EscapeT0", "EscapeT1", "Bounded", "Mixed", "Undetermined", "HitsIndeterminacy")

PALETTE = np.array([
    (255, 255, 255),  # EscapeT0: white
    (255, 255, 0),    # EscapeT1: yellow
    (0, 160, 0),      # bounded both ways: green
    (0, 0, 0),        # mixed: black
    (128, 128, 128),  # undetermined: gray
    (255, 0, 255),    # indeterminacy: magenta
], dtype=np.uint8)
STABLE_RGB = (255, 0, 0)
UNSTABLE_RGB = (0, 0, 255)


@dataclass(frozen=True)
class Viewport:
    """Pixel grid over a plane rectangle or over the whole torus.

    The torus chart sends t to atan(t)/pi + 1/2, so pixel centres never sit
    on the seam at infinity.
    """

    width: int
    height: int
    chart: str = "plane"
    x_range: Optional[tuple] = None
    y_range: Optional[tuple] = None

    def __post_init__(self):
        for side in (self.width, self.height):
            if not isinstance(side, (int, np.integer)) or not MIN_SIDE <= side <= MAX_SIDE:
                raise ValueError(f"viewport sides must be integers in [{MIN_SIDE}, {MAX_SIDE}], got {side}")
        if self.chart == "plane":
            if self.x_range is None or self.y_range is None:
                raise ValueError("plane viewport needs x_range and y_range")
            (x0, x1), (y0, y1) = self.x_range, self.y_range
            if not (np.isfinite([x0, x1, y0, y1]).all() and x0 < x1 and y0 < y1):
                raise ValueError(f"bad viewport ranges {self.x_range}, {self.y_range}")
            object.__setattr__(self, "x_range", (float(x0), float(x1)))
            object.__setattr__(self, "y_range", (float(y0), float(y1)))
        elif self.chart == "torus":
            if self.x_range is not None or self.y_range is not None:
                raise ValueError("torus viewport covers everything; ranges must be None")
        else:
            raise ValueError(f"unknown chart {self.chart!r}")

    @classmethod
    def plane(cls, xmin, xmax, ymin, ymax, width=512, height=512):
        return cls(width, height, "plane", (xmin, xmax), (ymin, ymax))

    @classmethod
    def torus(cls, width=512, height=512):
        return cls(width, height, "torus")

    def pixel_centers(self, rows=None):
        """(x, y) arrays of shape (len(rows), width); row 0 is the top."""
        i = np.arange(self.height) if rows is None else np.asarray(rows)
        j = np.arange(self.width)
        if self.chart == "plane":
            (x0, x1), (y0, y1) = self.x_range, self.y_range
            dx, dy = (x1 - x0) / self.width, (y1 - y0) / self.height
            xs = x0 + (j + 0.5) * dx
            ys = y1 - (i + 0.5) * dy
        else:
            xs = np.tan(np.pi * ((j + 0.5) / self.width - 0.5))
            ys = np.tan(np.pi * (0.5 - (i + 0.5) / self.height))
        X, Y = np.meshgrid(xs, ys)
        return X, Y

    def to_pixel(self, x, y):
        """Fractional (row, col) of plane points, for overlays."""
        x, y = np.asarray(x, float), np.asarray(y, float)
        if self.chart == "plane":
            (x0, x1), (y0, y1) = self.x_range, self.y_range
            col = (x - x0) / (x1 - x0) * self.width
            row = (y1 - y) / (y1 - y0) * self.height
        else:
            col = (np.arctan(x) / np.pi + 0.5) * self.width
            row = (0.5 - np.arctan(y) / np.pi) * self.height
        return row, col

    def to_record(self) -> dict:
        rec = {"chart": self.chart, "width": self.width, "height": self.height}
        if self.chart == "plane":
            rec["x_range"] = list(self.x_range)
            rec["y_range"] = list(self.y_range)
        return rec


@dataclass
class BasinRaster:
    viewport: Viewport
    a: float
    n_max: int
    forward: np.ndarray  # OrbitTag values, shape (height, width)
    backward: np.ndarray
    n_exit: np.ndarray  # forward exit index or -1
    stats: dict = field(default_factory=dict)

    @property
    def pixels(self) -> np.ndarray:
        return pixel_classes(self.forward, self.backward)

    def bounded_mask(self) -> np.ndarray:
        return (self.forward == OrbitTag.BOUNDED) & (self.backward == OrbitTag.BOUNDED)

    def bounded_points(self) -> np.ndarray:
        X, Y = self.viewport.pixel_centers()
        m = self.bounded_mask()
        return np.column_stack([X[m], Y[m]])


def pixel_classes(forward, backward) -> np.ndarray:
    out = np.full(forward.shape, PIX_UNDETERMINED, dtype=np.int8)
    out[forward == OrbitTag.ESCAPE_T0] = PIX_ESCAPE_T0
    out[forward == OrbitTag.ESCAPE_T1] = PIX_ESCAPE_T1
    out[forward == OrbitTag.INDETERMINATE] = PIX_INDETERMINATE
    fb = forward == OrbitTag.BOUNDED
    out[fb & (backward == OrbitTag.BOUNDED)] = PIX_BOUNDED
    out[fb & (backward != OrbitTag.BOUNDED)] = PIX_MIXED
    return out


def _count(arr, labels) -> dict:
    counts = np.bincount(arr.ravel().astype(np.int64), minlength=len(labels))
    return {lab: int(c) for lab, c in zip(labels, counts)}


def thread_count() -> int:
    env = os.environ.get("THREADS")
    if env:
        n = int(env)
        if n < 1:
            raise ValueError(f"THREADS must be >= 1, got {env}")
        return n
    return os.cpu_count() or 1


def render_basin(a: float, v: Viewport, n_max: int = 1000,
                 cfg: Optional[ClassifierConfig] = None, threads: Optional[int] = None) -> BasinRaster:
    """Forward and backward classification of every pixel centre.

    Rows are split into chunks written into preallocated arrays, so the
    result does not depend on the thread count.
    """
    a = check_param(a)
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    cfg = ClassifierConfig(n_max=n_max) if cfg is None else cfg
    if cfg.n_max != n_max:
        cfg = ClassifierConfig(n_max, cfg.box_factor, cfg.eps_margin, cfg.eps_ind)
    fwd = np.empty((v.height, v.width), dtype=np.int8)
    bwd = np.empty_like(fwd)
    nex = np.empty((v.height, v.width), dtype=np.int64)

    def work(r0):
        rows = np.arange(r0, min(r0 + ROW_CHUNK, v.height))
        X, Y = v.pixel_centers(rows)
        t, n = classify_points(a, X.ravel(), Y.ravel(), cfg)
        tb, _ = classify_points(a, X.ravel(), Y.ravel(), cfg, inverse=True)
        fwd[rows] = t.reshape(X.shape)
        bwd[rows] = tb.reshape(X.shape)
        nex[rows] = n.reshape(X.shape)

    starts = range(0, v.height, ROW_CHUNK)
    nthreads = thread_count() if threads is None else threads
    if nthreads <= 1:
        for r0 in starts:
            work(r0)
    else:
        with ThreadPoolExecutor(nthreads) as ex:
            list(ex.map(work, starts))

    tag_labels = [OrbitTag(k).label for k in range(len(OrbitTag))]
    stats = {"forward": _count(fwd, tag_labels), "backward": _count(bwd, tag_labels),
             "pixels": _count(pixel_classes(fwd, bwd), PIXEL_LABELS)}
    return BasinRaster(v, a, n_max, fwd, bwd, nex, stats)


def rgb_image(r: BasinRaster, stable=(), unstable=()) -> np.ndarray:
    img = PALETTE[r.pixels]
    for curves, rgb in ((stable, STABLE_RGB), (unstable, UNSTABLE_RGB)):
        for c in curves:
            _draw(img, r.viewport, np.asarray(c, float), rgb)
    return img


def _draw(img, v, curve, rgb):
    # dense resampling so consecutive samples land in adjacent pixels
    seg = np.hypot(*np.diff(curve, axis=0).T)
    row, col = v.to_pixel(curve[:, 0], curve[:, 1])
    steps = np.maximum(1, np.ceil(np.hypot(np.diff(row), np.diff(col)) * 2)).astype(int)
    pts = [curve[:1]]
    for k, n in enumerate(steps):
        if seg[k] == 0:
            continue
        t = np.arange(1, n + 1)[:, None] / n
        pts.append(curve[k] + t * (curve[k + 1] - curve[k]))
    P = np.vstack(pts)
    row, col = v.to_pixel(P[:, 0], P[:, 1])
    ri, ci = np.floor(row).astype(int), np.floor(col).astype(int)
    ok = (ri >= 0) & (ri < v.height) & (ci >= 0) & (ci < v.width)
    img[ri[ok], ci[ok]] = rgb


def write_image(r: BasinRaster, path, stable=(), unstable=()) -> None:
    """Binary PPM (P6), row-major from the top-left pixel."""
    write_ppm(rgb_image(r, stable, unstable), path)


def write_ppm(img, path) -> None:
    img = np.asarray(img)
    if img.ndim != 3 or img.shape[2] != 3:
        raise ValueError(f"expected an (h, w, 3) RGB array, got shape {img.shape}")
    h, w = img.shape[:2]
    try:
        with open(path, "wb") as fh:
            fh.write(f"P6\n{w} {h}\n255\n".encode("ascii"))
            fh.write(np.ascontiguousarray(img, dtype=np.uint8).tobytes())
    except OSError as e:
        raise OSError(f"cannot write image {path}: {e}") from e


def read_ppm(path) -> np.ndarray:
    with open(path, "rb") as fh:
        data = fh.read()
    parts = data.split(b"\n", 3)
    if parts[0] != b"P6" or parts[2] != b"255":
        raise ValueError(f"{path} is not an 8-bit P6 file")
    w, h = map(int, parts[1].split())
    return np.frombuffer(parts[3], dtype=np.uint8).reshape(h, w, 3)


def stats_record(r: BasinRaster) -> dict:
    return {"a": r.a, "n_max": r.n_max, "viewport": r.viewport.to_record(), "counts": r.stats}


def write_stats(r: BasinRaster, path) -> None:
    try:
        with open(path, "w") as fh:
            json.dump(stats_record(r), fh, indent=2, sort_keys=True)
            fh.write("\n")
    except OSError as e:
        raise OSError(f"cannot write stats {path}: {e}") from e


def read_stats(path) -> dict:
    with open(path) as fh:
        return json.load(fh)
