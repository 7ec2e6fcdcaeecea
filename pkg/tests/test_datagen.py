import numpy as np
import pytest

from seghull.datagen import KINDS, Distribution, generate, rng_next, _uniform_stream
from seghull.oracle import hull2_giftwrap


def test_determinism_byte_identical():
    for kind in KINDS:
        a = generate(Distribution(kind, 64, 1234))
        b = generate(Distribution(kind, 64, 1234))
        assert a.as_rows().tobytes() == b.as_rows().tobytes()


def test_seeds_give_distinct_streams():
    a, sa = [], 1
    b, sb = [], 2
    for _ in range(4):
        v, sa = rng_next(sa)
        a.append(v)
        w, sb = rng_next(sb)
        b.append(w)
    assert a != b


def test_scalar_step_matches_vector_stream():
    state = 99
    scalar = []
    for _ in range(10):
        v, state = rng_next(state)
        scalar.append(v)
    assert scalar == _uniform_stream(99, 10).tolist()


def test_uniformity_bins():
    draws = _uniform_stream(2024, 100_000)
    counts = np.bincount((draws * 16).astype(int), minlength=16)
    expected = 100_000 / 16
    assert (np.abs(counts - expected) <= 0.05 * expected).all()
    assert draws.min() >= 0.0 and draws.max() < 1.0


def test_on_circle_radius():
    pts = generate(Distribution("on-circle", 256, 7))
    r = np.hypot(*pts.coords)
    assert np.abs(r - 1.0).max() <= 1e-12


def test_disk_radius_statistics():
    pts = generate(Distribution("uniform-disk", 10_000, 1))
    r = np.hypot(*pts.coords)
    assert r.max() <= 1.0
    assert abs(r.mean() - 2.0 / 3.0) < 0.02


def test_ball_and_sphere_radii():
    ball = generate(Distribution("uniform-ball", 5000, 3))
    r = np.sqrt(sum(c * c for c in ball.coords))
    assert r.max() <= 1.0
    assert abs(r.mean() - 0.75) < 0.02  # E[r] for volume-uniform ball
    sphere = generate(Distribution("on-sphere", 2000, 3))
    rs = np.sqrt(sum(c * c for c in sphere.coords))
    assert np.abs(rs - 1.0).max() <= 1e-12


def test_near_kinds_band():
    for kind, dim in (("near-circle", 2), ("near-sphere", 3)):
        pts = generate(Distribution(kind, 3000, 5, band=0.25))
        r = np.sqrt(sum(c * c for c in pts.coords))
        assert r.min() >= 0.75 - 1e-12
        assert r.max() <= 1.0 + 1e-12
        assert r.min() < 0.8  # the band is actually used


def test_empty_and_validation():
    assert generate(Distribution("on-circle", 0, 1)).n == 0
    assert generate(Distribution("on-sphere", 0, 1)).dim == 3
    with pytest.raises(ValueError):
        Distribution("on-square", 4, 1)
    with pytest.raises(ValueError):
        Distribution("on-circle", -1, 1)
    with pytest.raises(ValueError):
        Distribution("near-circle", 4, 1, band=0.0)
    with pytest.raises(ValueError):
        Distribution("near-circle", 4, 1, band=1.0)


def test_circle_points_are_all_hull_vertices():
    pts = generate(Distribution("on-circle", 32, 11))
    assert set(hull2_giftwrap(pts).as_tuples()) == set(pts.as_tuples())


def test_kind_dims():
    assert Distribution("uniform-disk", 1, 0).dim == 2
    assert Distribution("near-sphere", 1, 0).dim == 3
