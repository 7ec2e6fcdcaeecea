"""Brute-force hull oracles: slow, simple, and independent of the drivers.

The 2D oracle is plain gift wrapping (O(nh), sequential); the 3D oracle
enumerates all point triples and keeps those whose plane supports the whole
set (O(n^4), capped at n=128).  Both produce the strict hull under the same
length-relative tolerance the drivers use, so comparisons on shared inputs
are apples to apples.
"""

import itertools

import numpy as np

from .errors import ContractViolation, DegenerateInputError
from .geometry import PointSet, Tolerance

_BRUTE_3D_CAP = 128


def hull2_giftwrap(points: PointSet, tol: Tolerance = Tolerance()) -> PointSet:
    """Strict 2D hull, CCW, starting at the lexicographic minimum.

    Wraps by picking, at every step, the candidate all other points lie
    strictly left of; among collinear candidates the farthest wins, which
    drops interior-of-edge points.
    """
    if points.dim != 2:
        raise ContractViolation("hull2_giftwrap needs 2D points")
    if points.n == 0:
        raise ContractViolation("hull2_giftwrap needs at least one point")
    eps = tol.effective(points)
    pts = points.as_tuples()
    start = min(pts)
    hull = [start]
    cur = start
    for _ in range(points.n + 1):
        cx, cy = cur
        cand = None
        for q in pts:
            if q == cur:
                continue
            if cand is None:
                cand = q
                continue
            cross = (cand[0] - cx) * (q[1] - cy) - (cand[1] - cy) * (q[0] - cx)
            limit = eps * np.hypot(cand[0] - cx, cand[1] - cy)
            if cross < -limit:
                cand = q  # strictly right of cur->cand: wrap farther out
            elif cross <= limit:
                # collinear: keep the farthest
                if ((q[0] - cx) ** 2 + (q[1] - cy) ** 2
                        > (cand[0] - cx) ** 2 + (cand[1] - cy) ** 2):
                    cand = q
        if cand is None or cand == start:
            break
        hull.append(cand)
        cur = cand
    return PointSet(tuple(np.array(col) for col in zip(*hull)))


def hull2_supporting_lines(points: PointSet, tol: Tolerance = Tolerance()) -> set:
    """O(n^3) cross-check: a point is a hull vertex iff it is an extreme
    point of some supporting line.  Returns the vertex coordinate set."""
    if points.n > 64:
        raise ContractViolation("supporting-line check is capped at n=64")
    eps = tol.effective(points)
    x, y = points.coords
    n = points.n
    if n == 1:
        return {(float(x[0]), float(y[0]))}
    vertices: set = set()
    for i in range(n):
        for j in range(n):
            if i == j or (x[i] == x[j] and y[i] == y[j]):
                continue
            ex, ey = x[j] - x[i], y[j] - y[i]
            cross = ex * (y - y[i]) - ey * (x - x[i])
            limit = eps * np.hypot(ex, ey)
            if (cross >= -limit).all():
                on_line = np.flatnonzero(np.abs(cross) <= limit)
                t = ex * (x[on_line] - x[i]) + ey * (y[on_line] - y[i])
                for k in (on_line[np.argmin(t)], on_line[np.argmax(t)]):
                    vertices.add((float(x[k]), float(y[k])))
    return vertices


def hull3_bruteforce(points: PointSet, tol: Tolerance = Tolerance()) -> PointSet:
    """3D hull vertex set by supporting-plane enumeration.

    Every non-collinear triple whose plane has all points on one closed
    side contributes its corners.  Requires 4 <= n <= 128 and general
    position (coplanar input raises).
    """
    if points.dim != 3:
        raise ContractViolation("hull3_bruteforce needs 3D points")
    n = points.n
    if not 4 <= n <= _BRUTE_3D_CAP:
        raise ContractViolation(f"hull3_bruteforce handles 4 <= n <= {_BRUTE_3D_CAP}")
    eps = tol.effective(points)
    rows = points.as_rows()

    triples = np.array(list(itertools.combinations(range(n), 3)))
    a = rows[triples[:, 0]]
    b = rows[triples[:, 1]]
    c = rows[triples[:, 2]]
    normals = np.cross(b - a, c - a)
    nlen = np.linalg.norm(normals, axis=1)
    straight = nlen <= eps * (np.linalg.norm(b - a, axis=1)
                              + np.linalg.norm(c - a, axis=1))

    dots = normals @ rows.T - (normals * a).sum(axis=1)[:, None]
    limit = (eps * nlen)[:, None]
    supporting = ~straight & (
        (dots >= -limit).all(axis=1) | (dots <= limit).all(axis=1))
    if not supporting.any():
        raise DegenerateInputError("no supporting plane found: input is degenerate")
    if (np.abs(dots[supporting]) <= limit[supporting]).all(None):
        raise DegenerateInputError("all points are coplanar")

    idx = np.unique(triples[supporting])
    return PointSet(tuple(coord[idx].copy() for coord in points.coords))


def _oriented_supporting_planes(points: PointSet, eps: float):
    """Supporting planes of a 3D set, unit normals oriented outward."""
    rows = points.as_rows()
    n = rows.shape[0]
    triples = np.array(list(itertools.combinations(range(n), 3)))
    a = rows[triples[:, 0]]
    normals = np.cross(rows[triples[:, 1]] - a, rows[triples[:, 2]] - a)
    nlen = np.linalg.norm(normals, axis=1)
    ok = nlen > 0
    normals, nlen, a = normals[ok], nlen[ok], a[ok]
    dots = normals @ rows.T - (normals * a).sum(axis=1)[:, None]
    limit = (eps * nlen)[:, None]
    below = (dots <= limit).all(axis=1)
    above = (dots >= -limit).all(axis=1)
    keep = below | above
    sign = np.where(below[keep], 1.0, -1.0)
    unit = normals[keep] * (sign / nlen[keep])[:, None]
    return unit, a[keep]


def contains_hull_point(points: PointSet, q, eps: float) -> bool:
    """True iff q is within eps of the hull boundary of ``points`` or
    outside the hull; False only for points strictly interior by > eps."""
    q = np.asarray(q, dtype=np.float64)
    if points.dim == 2:
        hull = hull2_giftwrap(points, Tolerance(0.0))
        hx, hy = hull.coords
        if hull.n < 3:
            return True  # a degenerate hull has no interior
        nx_, ny_ = np.roll(hx, -1) - hx, np.roll(hy, -1) - hy
        cross = nx_ * (q[1] - hy) - ny_ * (q[0] - hx)
        margin = cross / np.hypot(nx_, ny_)
        return bool(margin.min() <= eps)
    unit, anchors = _oriented_supporting_planes(points, eps)
    if unit.shape[0] == 0:
        return True
    margin = (unit * (q[None, :] - anchors)).sum(axis=1)
    return bool(margin.max() >= -eps)
