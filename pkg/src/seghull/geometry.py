"""Geometric predicates for the hull drivers.

All functions broadcast: a "point" argument is an (x, y[, z]) sequence whose
components may be scalars or equal-length arrays, so the same code serves
scalar calls in tests and bulk per-element calls in the drivers.

Tolerance convention: ``eps`` is a length (a fraction of the input's
bounding-box diagonal).  Raw predicate values scale with the supporting
edge/face size, so every boundary comparison here normalizes by the edge
length or face-normal length before comparing against eps.  Magnitude
comparisons *within* one segment (farthest-point selection) stay raw, since
there everything shares a single edge or face.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ContractViolation

DEFAULT_EPS_REL = 1e-12


@dataclass(frozen=True)
class PointSet:
    """Structure-of-arrays point collection, 2D or 3D, float64."""

    coords: tuple

    def __post_init__(self):
        arrays = tuple(np.ascontiguousarray(c, dtype=np.float64) for c in self.coords)
        object.__setattr__(self, "coords", arrays)
        if len(arrays) not in (2, 3):
            raise ContractViolation(f"points must be 2D or 3D, got {len(arrays)} axes")
        n = arrays[0].size
        for c in arrays:
            if c.ndim != 1 or c.size != n:
                raise ContractViolation("coordinate arrays must be 1D and equal length")
            if c.size and not np.isfinite(c).all():
                raise ContractViolation("coordinates must be finite")

    @property
    def dim(self) -> int:
        return len(self.coords)

    @property
    def n(self) -> int:
        return self.coords[0].size

    @classmethod
    def from_rows(cls, rows) -> "PointSet":
        m = np.atleast_2d(np.asarray(rows, dtype=np.float64))
        if m.size == 0:
            raise ContractViolation("from_rows needs an (n, dim) array; use empty() for n=0")
        return cls(tuple(m[:, j].copy() for j in range(m.shape[1])))

    @classmethod
    def empty(cls, dim: int) -> "PointSet":
        return cls(tuple(np.empty(0, np.float64) for _ in range(dim)))

    def as_rows(self) -> np.ndarray:
        return np.column_stack(self.coords) if self.n else np.empty((0, self.dim))

    def as_tuples(self) -> list[tuple]:
        return [tuple(float(c[i]) for c in self.coords) for i in range(self.n)]


@dataclass(frozen=True)
class Tolerance:
    """Relative epsilon; the effective length tolerance is eps_rel times the
    input's bounding-box diagonal, fixed once per hull invocation."""

    eps_rel: float = DEFAULT_EPS_REL

    def __post_init__(self):
        if self.eps_rel < 0:
            raise ContractViolation("eps_rel must be nonnegative")

    def effective(self, points: PointSet) -> float:
        if points.n == 0:
            return 0.0
        spans = [float(c.max() - c.min()) for c in points.coords]
        return self.eps_rel * float(np.hypot.reduce(spans))


@dataclass(frozen=True)
class OrientedEdge:
    """Directed 2D edge a->b; the owning segment's points lie strictly to
    its left."""

    a: tuple
    b: tuple


@dataclass(frozen=True)
class OrientedFace:
    """3D triangle (a, b, c) whose normal (b-a) x (c-a) points toward the
    owning segment's points."""

    a: tuple
    b: tuple
    c: tuple


def _face_corners(face):
    if isinstance(face, OrientedFace):
        return face.a, face.b, face.c
    return face


def cross2(a, b, q):
    """(b-a) x (q-a): positive iff q is strictly left of the directed line
    a->b; magnitude is twice the triangle area.

    Evaluated in the symmetric three-product form so that swapping a and b
    negates the result bit-exactly (each term flips sign, and IEEE addition
    is commutative)."""
    ax, ay = a
    bx, by = b
    qx, qy = q
    return ax * (by - qy) + bx * (qy - ay) + qx * (ay - by)


def edge_length(a, b):
    ax, ay = a
    bx, by = b
    return np.hypot(bx - ax, by - ay)


def cross3(ux, uy, uz, vx, vy, vz):
    return (uy * vz - uz * vy, uz * vx - ux * vz, ux * vy - uy * vx)


def face_normal(face):
    """Unnormalized normal (b-a) x (c-a); its length is twice the face area."""
    a, b, c = _face_corners(face)
    return cross3(b[0] - a[0], b[1] - a[1], b[2] - a[2],
                  c[0] - a[0], c[1] - a[1], c[2] - a[2])


def signed_plane_distance(face, q):
    """n . (q - a) for the face normal n; positive on the outward side.
    Scaled by twice the face area (divide by the normal length for a true
    distance)."""
    a = _face_corners(face)[0]
    nx, ny, nz = face_normal(face)
    return nx * (q[0] - a[0]) + ny * (q[1] - a[1]) + nz * (q[2] - a[2])


def point_in_triangle(a, b, c, q, eps):
    """Closed triangle test for CCW (a, b, c): q counts as inside when it is
    within eps (a length) of the inner side of all three edges."""
    inside = cross2(a, b, q) >= -eps * edge_length(a, b)
    inside &= cross2(b, c, q) >= -eps * edge_length(b, c)
    inside &= cross2(c, a, q) >= -eps * edge_length(c, a)
    return inside


def _norm3(v):
    return np.sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2])


def _outward_side_faces(base, apex):
    a, b, c = _face_corners(base)
    return (OrientedFace(a, b, apex), OrientedFace(b, c, apex), OrientedFace(c, a, apex))


def point_in_tetrahedron(base, apex, q, eps):
    """Closed test for the tetrahedron on ``base`` (outward normal toward
    apex) with the given apex; eps is a length."""
    d_base = signed_plane_distance(base, q)
    inside = d_base >= -eps * _norm3(face_normal(base))
    for f in _outward_side_faces(base, apex):
        inside &= signed_plane_distance(f, q) <= eps * _norm3(face_normal(f))
    return inside


def classify_two_edges(a, far, b, q, eps):
    """Which child edge a point follows after a 2D split.

    Returns -1 (discard: inside triangle a,b,far), 0 (left of a->far) or
    1 (left of far->b).  If tolerance blur makes both or neither sidedness
    fire, the larger cross value wins, ties to 0.
    """
    c0 = np.asarray(cross2(a, far, q))
    c1 = np.asarray(cross2(far, b, q))
    one_sided = (c0 > 0) != (c1 > 0)
    state = np.where(one_sided, np.where(c1 > 0, 1, 0), np.where(c1 > c0, 1, 0))
    return np.where(point_in_triangle(a, b, far, q, eps), -1, state)


def classify_three_faces(faces, q, eps):
    """Which child face a point follows after a 3D split.

    ``faces`` are the three side faces (a,b,apex), (b,c,apex), (c,a,apex)
    of the new tetrahedron, outward-oriented.  Returns -1 for points inside
    the tetrahedron, else the index of the face with the largest normalized
    signed distance (ties to the lowest index).
    """
    f0, f1, f2 = faces
    base = OrientedFace(f0.a, f1.a, f2.a)
    apex = f0.c
    dists = np.stack([
        np.asarray(signed_plane_distance(f, q) / _norm3(face_normal(f)), dtype=np.float64)
        for f in (f0, f1, f2)
    ])
    state = np.argmax(dists, axis=0)
    return np.where(point_in_tetrahedron(base, apex, q, eps), -1, state)
