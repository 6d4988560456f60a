"""Basin rasters, PPM output and stats JSON."""
import numpy as np
import pytest

from birational_lab import raster
from birational_lab.raster import PALETTE, Viewport
from birational_lab.regions import OrbitTag


def test_ppm_bytes(tmp_path):
    # [DERIVED] P6 layout: ASCII header, then RGB triples row-major from the top-left
    img = np.array([[PALETTE[raster.PIX_ESCAPE_T0], PALETTE[raster.PIX_BOUNDED]]])
    raster.write_ppm(img, tmp_path / "t.ppm")
    data = (tmp_path / "t.ppm").read_bytes()
    assert data == b"P6\n2 1\n255\n" + bytes([255, 255, 255, 0, 160, 0])
    assert np.array_equal(raster.read_ppm(tmp_path / "t.ppm"), img)


def test_palette_is_fixed():
    assert [tuple(c) for c in PALETTE] == [(255, 255, 255), (255, 255, 0), (0, 160, 0),
                                          (0, 0, 0), (128, 128, 128), (255, 0, 255)]
    assert len(raster.PIXEL_LABELS) == len(PALETTE)


def test_viewport_pixel_centres():
    v = Viewport.plane(0.0, 16.0, 0.0, 32.0, width=16, height=16)
    X, Y = v.pixel_centers()
    assert X[0, 0] == 0.5 and Y[0, 0] == 31.0
    assert X[-1, -1] == 15.5 and Y[-1, -1] == 1.0
    row, col = v.to_pixel(X[3, 5], Y[3, 5])
    assert (np.floor(row), np.floor(col)) == (3, 5)
    t = Viewport.torus(16, 16)
    X, Y = t.pixel_centers()
    assert np.all(np.isfinite(X)) and X[0, 0] < -10 and Y[0, 0] > 10


@pytest.mark.parametrize("kw", [dict(width=15, height=16), dict(width=16, height=16385),
                                dict(width=16.0, height=16)])
def test_viewport_size_limits(kw):
    with pytest.raises(ValueError):
        Viewport(kw["width"], kw["height"], "plane", (0, 1), (0, 1))


def test_viewport_rejects_bad_ranges():
    with pytest.raises(ValueError):
        Viewport.plane(1.0, 0.0, 0.0, 1.0, 16, 16)
    with pytest.raises(ValueError):
        Viewport(16, 16, "plane", None, None)
    with pytest.raises(ValueError):
        Viewport(16, 16, "torus", (0, 1), (0, 1))
    with pytest.raises(ValueError):
        Viewport(16, 16, "sphere")


def test_render_small_and_thread_independent():
    v = Viewport.plane(-3.0, 2.0, -2.0, 3.0, 40, 36)
    r1 = raster.render_basin(2.0, v, 300, threads=1)
    r4 = raster.render_basin(2.0, v, 300, threads=4)
    assert np.array_equal(r1.forward, r4.forward)
    assert np.array_equal(r1.backward, r4.backward)
    assert r1.stats == r4.stats
    assert sum(r1.stats["pixels"].values()) == 40 * 36
    assert r1.stats["pixels"]["Bounded"] == int(r1.bounded_mask().sum())
    pts = r1.bounded_points()
    assert np.all((pts[:, 0] >= -2) & (pts[:, 0] <= 1) & (pts[:, 1] >= -1) & (pts[:, 1] <= 2))


def test_pixel_classes():
    fwd = np.array([OrbitTag.ESCAPE_T0, OrbitTag.BOUNDED, OrbitTag.BOUNDED, OrbitTag.INDETERMINATE,
                    OrbitTag.UNDETERMINED, OrbitTag.ESCAPE_T1])
    bwd = np.array([OrbitTag.BOUNDED, OrbitTag.BOUNDED, OrbitTag.ESCAPE_T0, OrbitTag.BOUNDED,
                    OrbitTag.BOUNDED, OrbitTag.BOUNDED])
    assert list(raster.pixel_classes(fwd, bwd)) == [0, 2, 3, 5, 4, 1]


def test_torus_render_runs():
    r = raster.render_basin(2.0, Viewport.torus(32, 32), 100, threads=2)
    assert r.forward.shape == (32, 32)
    assert r.stats["forward"]["EscapeT0"] > 0


def test_stats_round_trip(tmp_path):
    r = raster.render_basin(1.5, Viewport.plane(-2.5, 2.0, -2.0, 2.5, 16, 16), 50)
    raster.write_stats(r, tmp_path / "s.json")
    rec = raster.read_stats(tmp_path / "s.json")
    assert rec == raster.stats_record(r)
    assert rec["viewport"] == {"chart": "plane", "width": 16, "height": 16,
                               "x_range": [-2.5, 2.0], "y_range": [-2.0, 2.5]}


def test_overlay_draws_curve(tmp_path):
    v = Viewport.plane(0.0, 1.0, 0.0, 1.0, 16, 16)
    r = raster.render_basin(2.0, v, 10)
    img = raster.rgb_image(r, stable=[np.array([[0.01, 0.5], [0.99, 0.5]])])
    assert np.all(img[8, :] == raster.STABLE_RGB)


def test_thread_count_env(monkeypatch):
    monkeypatch.setenv("THREADS", "3")
    assert raster.thread_count() == 3
    monkeypatch.setenv("THREADS", "0")
    with pytest.raises(ValueError):
        raster.thread_count()


def test_write_errors(tmp_path):
    with pytest.raises(ValueError):
        raster.write_ppm(np.zeros((2, 2)), tmp_path / "x.ppm")
    with pytest.raises(OSError):
        raster.write_ppm(np.zeros((2, 2, 3)), tmp_path / "missing" / "x.ppm")
