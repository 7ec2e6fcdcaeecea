"""Iterative flat-array Quickhull in 2D and 3D.

Instead of recursing, both drivers keep every live point in one flat array
partitioned into segments.  Each round handles all segments at once: find
each segment's farthest point with segmented scans, drop points that fall
inside the new simplex with compact, then split the survivors with a k-state
flag permute (k=2 in 2D, k=3 in 3D).  The loop ends when no points remain.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import ContractViolation, DegenerateInputError, EmptyInputError
from .geometry import (
    OrientedFace,
    PointSet,
    Tolerance,
    classify_three_faces,
    classify_two_edges,
    cross2,
    cross3,
    edge_length,
    point_in_tetrahedron,
    point_in_triangle,
    signed_plane_distance,
)
from .primitives import compact, flag_permute, scatter
from .segments import reduce_broadcast, segment_ids

_INT_MAX = np.iinfo(np.int64).max


@dataclass
class HullResult:
    """Hull vertex set plus run statistics.

    ``iterations`` counts recursive-step rounds (the first split is not a
    round); ``discarded`` counts input points eliminated without becoming
    vertices.
    """

    vertices: PointSet
    iterations: int
    discarded: int
    warnings: list = field(default_factory=list)


@dataclass
class EdgeTable:
    """Per-segment directed split edges (2D); points lie left of a->b."""

    ax: np.ndarray
    ay: np.ndarray
    bx: np.ndarray
    by: np.ndarray


@dataclass
class FaceTable:
    """Per-segment split faces (3D) with cached outward normals."""

    corners: np.ndarray  # (nseg, 3, 3): corner index, xyz
    normals: np.ndarray  # (nseg, 3)
    nlen: np.ndarray     # (nseg,)

    @classmethod
    def from_corners(cls, corners: np.ndarray) -> "FaceTable":
        a, b, c = corners[:, 0], corners[:, 1], corners[:, 2]
        nx, ny, nz = cross3(*(b - a).T, *(c - a).T)
        normals = np.column_stack([nx, ny, nz])
        return cls(corners, normals, np.sqrt((normals * normals).sum(axis=1)))


def _lex_extreme(coords, want_max: bool) -> int:
    """Index of the lexicographic extreme over (x, y[, z], original index)."""
    sel = np.arange(coords[0].size)
    for axis in coords:
        vals = axis[sel]
        best = vals.max() if want_max else vals.min()
        sel = sel[vals == best]
        if sel.size == 1:
            break
    return int(sel[-1] if want_max else sel[0])


def _delete(arrays, indices):
    keep = np.ones(arrays[0].size, dtype=bool)
    keep[list(indices)] = False
    return [a[keep] for a in arrays]


def _farthest_per_segment(d, s):
    """Per-element broadcast of the segment max of d, and the lowest element
    index attaining it, per element and per segment head."""
    seg_max = reduce_broadcast(d, s, "max")
    idx = np.arange(d.size, dtype=np.int64)
    candidates = np.where(d == seg_max, idx, _INT_MAX)
    far_elem = reduce_broadcast(candidates, s, "min")
    return seg_max, far_elem


def _validate_input(points: PointSet, dim: int) -> None:
    if points.dim != dim:
        raise ContractViolation(f"expected {dim}D points, got {points.dim}D")
    if points.n == 0:
        raise EmptyInputError("cannot take the hull of an empty point set")


def _pairs_support(rel: np.ndarray, first: np.ndarray, second: np.ndarray,
                   eps: float) -> bool:
    normals = np.cross(rel[first][:, None, :], rel[second][None, :, :])
    nlen = np.linalg.norm(normals, axis=2)
    dots = np.einsum("pqc,kc->pqk", normals, rel)
    lim = eps * nlen[..., None]
    support = (dots >= -lim).all(axis=2) | (dots <= lim).all(axis=2)
    return bool((support & (nlen > 0)).any())


_NEIGHBOR_SCAN = 16
_EXHAUSTIVE_CAP = 64


def _in_convex_hull_lp(c: np.ndarray, i: int) -> bool:
    """Exact membership: is candidate i a convex combination of the rest?"""
    from scipy.optimize import linprog

    others = np.delete(c, i, axis=0)
    a_eq = np.vstack([others.T, np.ones(others.shape[0])])
    b_eq = np.append(c[i], 1.0)
    res = linprog(np.zeros(others.shape[0]), A_eq=a_eq, b_eq=b_eq,
                  bounds=(0, None), method="highs")
    return res.status == 0


def _extreme_vertex_mask(c: np.ndarray, eps: float) -> np.ndarray:
    """Which candidate rows are extreme points of the candidate set.

    The per-segment farthest-point rule maximizes only over one segment, so
    the 3D loop can emit candidates that are interior to the hull of the
    real vertices (which the candidate set always contains).  Pruning runs
    in escalating passes: a direction certificate (strict max along
    v - centroid proves v extreme), then a supporting-plane search through
    v and two nearby candidates (a vertex's facet partners are local), and
    for unresolved points of large sets an exact convex-membership LP.
    """
    m = c.shape[0]
    if m <= 4:
        return np.ones(m, dtype=bool)
    along = (c - c.mean(axis=0)) @ c.T
    own = along.diagonal().copy()
    np.fill_diagonal(along, -np.inf)
    keep = own > along.max(axis=1)
    for i in np.flatnonzero(~keep):
        rel = c - c[i]
        near = np.argsort((rel * rel).sum(axis=1), kind="stable")[1:_NEIGHBOR_SCAN + 1]
        if _pairs_support(rel, near, near, eps):
            keep[i] = True
        elif m <= _EXHAUSTIVE_CAP:
            rest = np.arange(m)
            keep[i] = _pairs_support(rel, rest, rest, eps)
        else:
            keep[i] = not _in_convex_hull_lp(c, i)
    return keep


def quickhull_2d(points: PointSet, tol: Tolerance = Tolerance()) -> HullResult:
    """Strict 2D hull: the unordered set of extreme points of the input.

    Collinear interior-of-edge points and duplicates are discarded; all
    points coincident gives one vertex, all collinear the two extrema (with
    a warning).
    """
    _validate_input(points, 2)
    eps = tol.effective(points)
    x, y = (c.copy() for c in points.coords)
    n_input = x.size
    warnings: list = []
    vx: list = []
    vy: list = []

    def add_vertex(px, py):
        vx.append(float(px))
        vy.append(float(py))

    def result(iterations):
        verts = PointSet((np.array(vx), np.array(vy)))
        return HullResult(verts, iterations, n_input - verts.n, warnings)

    # First split: x-extrema by composite lexicographic key.
    imin = _lex_extreme((x, y), want_max=False)
    imax = _lex_extreme((x, y), want_max=True)
    pmin = (float(x[imin]), float(y[imin]))
    pmax = (float(x[imax]), float(y[imax]))
    if pmin == pmax:  # lex min == lex max: every point coincides
        add_vertex(*pmin)
        return result(0)
    add_vertex(*pmin)
    add_vertex(*pmax)
    x, y = _delete((x, y), {imin, imax})

    d = cross2(pmin, pmax, (x, y))
    off_line = np.abs(d) > eps * edge_length(pmin, pmax)
    had_candidates = x.size > 0
    x, y, d = x[off_line], y[off_line], d[off_line]
    if x.size == 0:
        if had_candidates:
            warnings.append("collinear input: hull is the two x-extrema")
        return result(0)

    states = (d < 0).astype(np.int64)  # 0: left of pmin->pmax, 1: right
    s = np.zeros(x.size, dtype=bool)
    s[0] = True
    pm, s = flag_permute(states, s, 2)
    x, y = scatter(x, pm), scatter(y, pm)

    sides = []
    if (states == 0).any():
        sides.append(pmin + pmax)
    if (states == 1).any():
        sides.append(pmax + pmin)
    table = EdgeTable(*(np.array(col) for col in zip(*sides)))

    iterations = 0
    while x.size:
        iterations += 1
        if iterations > n_input + 1:
            raise AssertionError("round count exceeded the input size")

        ids = segment_ids(s)
        ea = (table.ax[ids], table.ay[ids])
        eb = (table.bx[ids], table.by[ids])
        d = cross2(ea, eb, (x, y))
        _, far_elem = _farthest_per_segment(d, s)

        head_pos = np.flatnonzero(s)
        nseg = head_pos.size
        far_seg = far_elem[head_pos]
        for i in far_seg:
            add_vertex(x[i], y[i])

        fq = (x[far_elem], y[far_elem])  # per-element apex of its segment
        keep = ~point_in_triangle(ea, eb, fq, (x, y), eps)
        keep[far_seg] = False

        seg_alive = np.zeros(nseg, dtype=bool)
        seg_alive[ids[keep]] = True
        far_sx, far_sy = x[far_seg], y[far_seg]

        pm, s = compact(keep, s)
        x, y = scatter(x, pm, keep), scatter(y, pm, keep)
        if x.size == 0:
            break

        alive = np.flatnonzero(seg_alive)
        sa = (table.ax[alive], table.ay[alive])
        sb = (table.bx[alive], table.by[alive])
        sf = (far_sx[alive], far_sy[alive])

        ids = segment_ids(s)
        states = classify_two_edges(
            (sa[0][ids], sa[1][ids]), (sf[0][ids], sf[1][ids]),
            (sb[0][ids], sb[1][ids]), (x, y), eps,
        )
        pm, s = flag_permute(states, s, 2)
        x, y = scatter(x, pm), scatter(y, pm)

        nseg = alive.size
        c0 = np.bincount(ids[states == 0], minlength=nseg)
        c1 = np.bincount(ids[states == 1], minlength=nseg)
        occupied = np.stack([c0 > 0, c1 > 0], axis=1)
        table = EdgeTable(
            np.stack([sa[0], sf[0]], axis=1)[occupied],
            np.stack([sa[1], sf[1]], axis=1)[occupied],
            np.stack([sf[0], sb[0]], axis=1)[occupied],
            np.stack([sf[1], sb[1]], axis=1)[occupied],
        )

    return result(iterations)


def quickhull_3d(points: PointSet, tol: Tolerance = Tolerance()) -> HullResult:
    """3D hull vertex set (no facet topology).

    Guaranteed to contain every true hull vertex; on general-position
    inputs it equals the true vertex set.  Near-coplanar segment residue is
    dropped with a warning rather than recursed on.
    """
    _validate_input(points, 3)
    eps = tol.effective(points)
    x, y, z = (c.copy() for c in points.coords)
    n_input = x.size
    warnings: list = []
    vx: list = []
    vy: list = []
    vz: list = []

    def add_vertex(px, py, pz):
        vx.append(float(px))
        vy.append(float(py))
        vz.append(float(pz))

    def result(iterations, filter_candidates=False):
        verts = np.column_stack([np.array(vx), np.array(vy), np.array(vz)])
        if filter_candidates and len(vx):
            extreme = _extreme_vertex_mask(verts, eps)
            if not extreme.all():
                warnings.append(
                    f"pruned {int((~extreme).sum())} non-extreme candidate "
                    "vertex(es) emitted by incomplete per-face outside sets")
                verts = verts[extreme]
        verts = PointSet((verts[:, 0].copy(), verts[:, 1].copy(), verts[:, 2].copy())) \
            if verts.size else PointSet.empty(3)
        return HullResult(verts, iterations, n_input - verts.n, warnings)

    imin = _lex_extreme((x, y, z), want_max=False)
    imax = _lex_extreme((x, y, z), want_max=True)
    pa = np.array([x[imin], y[imin], z[imin]])
    pb = np.array([x[imax], y[imax], z[imax]])
    if (pa == pb).all():
        add_vertex(*pa)
        return result(0)
    add_vertex(*pa)
    add_vertex(*pb)
    x, y, z = _delete((x, y, z), {imin, imax})
    if x.size == 0:
        return result(0)

    # Third corner: farthest from the extrema line.
    ux, uy, uz = pb - pa
    cxx, cyy, czz = cross3(x - pa[0], y - pa[1], z - pa[2],
                           ux * np.ones_like(x), uy * np.ones_like(x),
                           uz * np.ones_like(x))
    line_d2 = cxx * cxx + cyy * cyy + czz * czz
    far_i = int(np.argmax(line_d2))
    line_len = float(np.linalg.norm(pb - pa))
    if np.sqrt(line_d2[far_i]) <= eps * line_len:
        warnings.append("collinear input: hull is the two extrema")
        return result(0)
    pc = np.array([x[far_i], y[far_i], z[far_i]])
    add_vertex(*pc)
    x, y, z = _delete((x, y, z), {far_i})
    if x.size == 0:
        return result(0)

    nx, ny, nz = cross3(*(pb - pa), *(pc - pa))
    nlen = float(np.sqrt(nx * nx + ny * ny + nz * nz))
    d = nx * (x - pa[0]) + ny * (y - pa[1]) + nz * (z - pa[2])
    if np.abs(d).max() <= eps * nlen:
        raise DegenerateInputError(
            "all points are coplanar; project to the plane and use the 2D driver")

    states = (d < -eps * nlen).astype(np.int64)  # near-plane joins side 0
    s = np.zeros(x.size, dtype=bool)
    s[0] = True
    pm, s = flag_permute(states, s, 2)
    x, y, z = scatter(x, pm), scatter(y, pm), scatter(z, pm)

    sides = []
    if (states == 0).any():
        sides.append((pa, pb, pc))
    if (states == 1).any():
        sides.append((pa, pc, pb))
    table = FaceTable.from_corners(np.array(sides))

    iterations = 0
    while x.size:
        iterations += 1
        if iterations > n_input + 1:
            raise AssertionError("round count exceeded the input size")

        ids = segment_ids(s)
        corners = table.corners[ids]  # (n, 3, 3)
        fa, fb, fc = corners[:, 0], corners[:, 1], corners[:, 2]
        en = table.normals[ids]
        d = (en[:, 0] * (x - fa[:, 0]) + en[:, 1] * (y - fa[:, 1])
             + en[:, 2] * (z - fa[:, 2]))
        seg_max, far_elem = _farthest_per_segment(d, s)

        head_pos = np.flatnonzero(s)
        nseg = head_pos.size
        far_seg = far_elem[head_pos]

        # Segments with only near-coplanar residue are dropped whole.
        flat_seg = seg_max[head_pos] <= eps * table.nlen
        if flat_seg.any():
            warnings.append(
                f"round {iterations}: dropped {int(flat_seg.sum())} "
                "near-coplanar segment(s)")
        for i in far_seg[~flat_seg]:
            add_vertex(x[i], y[i], z[i])

        base = ((fa[:, 0], fa[:, 1], fa[:, 2]),
                (fb[:, 0], fb[:, 1], fb[:, 2]),
                (fc[:, 0], fc[:, 1], fc[:, 2]))
        apex = (x[far_elem], y[far_elem], z[far_elem])
        keep = ~point_in_tetrahedron(base, apex, (x, y, z), eps)
        keep[far_seg] = False
        keep &= ~flat_seg[ids]

        seg_alive = np.zeros(nseg, dtype=bool)
        seg_alive[ids[keep]] = True
        far_xyz = np.column_stack([x[far_seg], y[far_seg], z[far_seg]])

        pm, s = compact(keep, s)
        x = scatter(x, pm, keep)
        y = scatter(y, pm, keep)
        z = scatter(z, pm, keep)
        if x.size == 0:
            break

        alive = np.flatnonzero(seg_alive)
        ca = table.corners[alive, 0]
        cb = table.corners[alive, 1]
        cc = table.corners[alive, 2]
        cf = far_xyz[alive]

        # Children faces of each surviving tetrahedron, outward-oriented.
        child_corners = np.stack([
            np.stack([ca, cb, cf], axis=1),
            np.stack([cb, cc, cf], axis=1),
            np.stack([cc, ca, cf], axis=1),
        ], axis=1)  # (nseg, 3 children, 3 corners, xyz)
        children = [FaceTable.from_corners(child_corners[:, j]) for j in range(3)]

        ids = segment_ids(s)
        faces = [
            OrientedFace(
                tuple(t.corners[ids, 0, k] for k in range(3)),
                tuple(t.corners[ids, 1, k] for k in range(3)),
                tuple(t.corners[ids, 2, k] for k in range(3)),
            )
            for t in children
        ]
        states = classify_three_faces(faces, (x, y, z), eps)
        pm, s = flag_permute(states, s, 3)
        x, y, z = scatter(x, pm), scatter(y, pm), scatter(z, pm)

        nseg = alive.size
        counts = np.stack(
            [np.bincount(ids[states == j], minlength=nseg) for j in range(3)],
            axis=1)
        occupied = counts > 0
        table = FaceTable.from_corners(child_corners[occupied])

    return result(iterations, filter_candidates=True)


def order_hull_2d(vertices: PointSet) -> PointSet:
    """CCW boundary order for a convex vertex set, starting at the
    lexicographically smallest vertex (angle sort around the centroid)."""
    if vertices.dim != 2:
        raise ContractViolation("order_hull_2d needs 2D points")
    if vertices.n < 3:
        return vertices
    x, y = vertices.coords
    angles = np.arctan2(y - y.mean(), x - x.mean())
    order = np.argsort(angles, kind="stable")
    x, y = x[order], y[order]
    start = _lex_extreme((x, y), want_max=False)
    return PointSet((np.roll(x, -start), np.roll(y, -start)))
