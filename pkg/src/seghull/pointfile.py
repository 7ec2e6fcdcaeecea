"""Point-file formats shared by the CLI commands.

CSV: one point per line, ``x,y`` or ``x,y,z``, full-precision decimal reals,
with one optional leading comment line starting with '#'.

Binary (.pts): magic b"PTS1", dim as uint32 little-endian, count as uint64
little-endian, then count*dim float64 little-endian values, point-major
(x0, y0[, z0], x1, ...).

Both round-trip every finite double bit-exactly.
"""

import struct
from pathlib import Path

import numpy as np

from .geometry import PointSet

_MAGIC = b"PTS1"
_HEADER = struct.Struct("<4sIQ")


class PointFileError(ValueError):
    """Unreadable, corrupt, or inconsistent point file."""


def write_points_csv(path, points: PointSet) -> None:
    labels = "x,y" if points.dim == 2 else "x,y,z"
    rows = points.as_rows()
    with open(path, "w") as fh:
        fh.write(f"# {labels}\n")
        for row in rows:
            fh.write(",".join(repr(float(v)) for v in row) + "\n")


def read_points_csv(path) -> PointSet:
    cols = None
    header_cols = None
    data: list[list[float]] = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                if lineno == 1:
                    label = line.lstrip("#").strip()
                    if label in ("x,y", "x,y,z"):
                        header_cols = label.count(",") + 1
                    continue
                raise PointFileError(f"{path}: comment allowed only on line 1")
            parts = line.split(",")
            if cols is None:
                cols = len(parts)
                if cols not in (2, 3):
                    raise PointFileError(
                        f"{path}: expected 2 or 3 columns, found {cols}")
            elif len(parts) != cols:
                raise PointFileError(
                    f"{path}:{lineno}: inconsistent column count")
            try:
                data.append([float(p) for p in parts])
            except ValueError as exc:
                raise PointFileError(f"{path}:{lineno}: {exc}") from None
    if cols is None:
        if header_cols is not None:
            return PointSet.empty(header_cols)
        raise PointFileError(f"{path}: no points found")
    m = np.array(data, dtype=np.float64)
    return PointSet(tuple(m[:, j].copy() for j in range(cols)))


def write_points_binary(path, points: PointSet) -> None:
    payload = np.ascontiguousarray(points.as_rows(), dtype="<f8")
    with open(path, "wb") as fh:
        fh.write(_HEADER.pack(_MAGIC, points.dim, points.n))
        fh.write(payload.tobytes())


def read_points_binary(path) -> PointSet:
    blob = Path(path).read_bytes()
    if len(blob) < _HEADER.size:
        raise PointFileError(f"{path}: truncated header")
    magic, dim, count = _HEADER.unpack_from(blob)
    if magic != _MAGIC:
        raise PointFileError(f"{path}: bad magic {magic!r}")
    if dim not in (2, 3):
        raise PointFileError(f"{path}: dim must be 2 or 3, got {dim}")
    expected = _HEADER.size + 8 * dim * count
    if len(blob) != expected:
        raise PointFileError(
            f"{path}: payload is {len(blob)} bytes, expected {expected}")
    if count == 0:
        return PointSet.empty(dim)
    m = np.frombuffer(blob, dtype="<f8", offset=_HEADER.size).reshape(count, dim)
    return PointSet(tuple(m[:, j].astype(np.float64) for j in range(dim)))


def write_points(path, points: PointSet) -> None:
    """Format chosen by extension: .pts is binary, anything else CSV."""
    if Path(path).suffix == ".pts":
        write_points_binary(path, points)
    else:
        write_points_csv(path, points)


def read_points(path) -> PointSet:
    """Format sniffed from the leading magic bytes."""
    try:
        with open(path, "rb") as fh:
            head = fh.read(4)
    except OSError as exc:
        raise PointFileError(f"{path}: {exc}") from None
    if head == _MAGIC:
        return read_points_binary(path)
    return read_points_csv(path)
