"""Segmented scans over flat arrays.

A *segment* is a maximal contiguous run of elements delimited by head flags:
``flags[i]`` is True exactly where a segment starts, and element 0 always
starts the first segment.  Scans (running sum/max/min, forward or backward,
inclusive or exclusive) restart at every head, so one segment never
influences another.  Everything downstream (flag permute, compact, the hull
drivers) is built from these scans.

Determinism contract: sums are restricted to integer arrays and max/min are
pure selections, so results are byte-identical regardless of how the scan is
blocked across workers.  Negative zeros in float input are canonicalized to
+0.0 up front to keep the selection bit-stable.
"""

from dataclasses import dataclass

import numpy as np

from . import parallel
from .errors import ContractViolation

OPERATORS = ("sum", "max", "min")
DIRECTIONS = ("forward", "backward")
MODES = ("inclusive", "exclusive")

_UFUNC = {"sum": np.add, "max": np.maximum, "min": np.minimum}


@dataclass(frozen=True)
class ScanSpec:
    """What to run: operator in {sum, max, min}, direction, and mode.

    Exclusive scans emit the operator identity at each segment's starting
    boundary in the scan direction (segment head for forward scans, segment
    last element for backward scans).
    """

    operator: str
    direction: str = "forward"
    mode: str = "inclusive"

    def __post_init__(self):
        if self.operator not in OPERATORS:
            raise ValueError(f"unknown operator {self.operator!r}")
        if self.direction not in DIRECTIONS:
            raise ValueError(f"unknown direction {self.direction!r}")
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}")


def identity_for(operator: str, dtype) -> int | float:
    """Operator identity: 0 for sum; the most extreme representable value
    for max/min (infinities for floats, iinfo extremes for integers)."""
    if operator == "sum":
        return 0
    info_min, info_max = (
        (-np.inf, np.inf)
        if np.issubdtype(dtype, np.floating)
        else (np.iinfo(dtype).min, np.iinfo(dtype).max)
    )
    return info_min if operator == "max" else info_max


def validate_segments(s, n) -> str | None:
    """Check that ``s`` is a well-formed head-flag array of length ``n``.

    Returns None when valid, otherwise a description of the violation.
    Never raises.
    """
    s = np.asarray(s)
    if s.ndim != 1:
        return f"segment flags must be one-dimensional, got shape {s.shape}"
    if s.size != n:
        return f"segment flags have length {s.size}, expected {n}"
    if n > 0 and not bool(s[0]):
        return "first element is not a segment head"
    return None


def as_segment_flags(s, n=None) -> np.ndarray:
    """Coerce to a bool array and raise ContractViolation if invalid."""
    s = np.ascontiguousarray(s, dtype=bool)
    problem = validate_segments(s, s.size if n is None else n)
    if problem is not None:
        raise ContractViolation(problem)
    return s


def _head_positions_internal(heads: np.ndarray) -> np.ndarray:
    """Per-element index of the owning segment's head (engine-internal;
    the public Algorithm-2-shaped version is head_index_broadcast)."""
    idx = np.arange(heads.size, dtype=np.int64)
    return np.maximum.accumulate(np.where(heads, idx, 0))


def _fwd_inclusive_sum(values: np.ndarray, heads: np.ndarray) -> np.ndarray:
    c = np.cumsum(values)
    h = _head_positions_internal(heads)
    base = c[h] - values[h]
    return c - base


def _fwd_inclusive_select(values, heads, ufunc) -> np.ndarray:
    # Hillis-Steele doubling; step count bounded by the longest segment.
    out = values.copy()
    n = out.size
    head_pos = np.flatnonzero(heads)
    max_len = int(np.diff(head_pos, append=n).max())
    h = _head_positions_internal(heads)
    reach = np.arange(n, dtype=np.int64)  # index each element can pull from
    d = 1
    while d < max_len:
        same_segment = h[d:] <= reach[: n - d]
        out[d:] = np.where(same_segment, ufunc(out[d:], out[:-d]), out[d:])
        d <<= 1
    return out


def _fwd_inclusive_block(values, heads, operator) -> np.ndarray:
    if operator == "sum":
        return _fwd_inclusive_sum(values, heads)
    return _fwd_inclusive_select(values, heads, _UFUNC[operator])


def _fwd_inclusive(values: np.ndarray, heads: np.ndarray, operator: str) -> np.ndarray:
    n = values.size
    if n == 0:
        return values.copy()
    workers = parallel.get_workers()
    if workers <= 1 or n < parallel.BLOCK_THRESHOLD:
        return _fwd_inclusive_block(values, heads, operator)

    bounds = [n * w // workers for w in range(workers + 1)]
    blocks = [(a, b) for a, b in zip(bounds, bounds[1:]) if b > a]
    pool = parallel.get_pool(workers)

    def scan_one(span):
        a, b = span
        local_heads = heads[a:b].copy()
        local_heads[0] = True  # scan as if the block started a segment
        return _fwd_inclusive_block(values[a:b], local_heads, operator)

    local = list(pool.map(scan_one, blocks))

    # Sequential carry chain over blocks: a block without a real head passes
    # its combined tail onward, otherwise its tail run is already complete.
    op = _UFUNC[operator]
    identity = identity_for(operator, values.dtype)
    carries = [np.asarray(identity, dtype=values.dtype)] * len(blocks)
    for w in range(1, len(blocks)):
        a, b = blocks[w - 1]
        tail = local[w - 1][-1]
        carries[w] = tail if heads[a:b].any() else op(carries[w - 1], tail)

    def fix_one(w):
        a, b = blocks[w]
        first = np.flatnonzero(heads[a:b])
        stop = int(first[0]) if first.size else b - a
        if w > 0 and stop > 0:
            local[w][:stop] = op(carries[w], local[w][:stop])
        return local[w]

    fixed = list(pool.map(fix_one, range(len(blocks))))
    return np.concatenate(fixed)


def _exclusive_shift(inclusive, heads, identity) -> np.ndarray:
    out = np.empty_like(inclusive)
    out[1:] = inclusive[:-1]
    out[heads] = identity
    return out


def _reverse_flags(heads: np.ndarray) -> np.ndarray:
    # A segment's last element becomes the head of the reversed array.
    tails = np.empty_like(heads)
    tails[:-1] = heads[1:]
    tails[-1] = True
    return tails[::-1].copy()


def _normalize_values(values, operator) -> np.ndarray:
    values = np.asarray(values)
    if values.size == 0:
        kind = np.float64 if (np.issubdtype(values.dtype, np.floating)
                              and operator != "sum") else np.int64
        return values.astype(kind)
    if values.dtype == bool or np.issubdtype(values.dtype, np.integer):
        return values.astype(np.int64)
    if np.issubdtype(values.dtype, np.floating):
        if operator == "sum":
            raise ContractViolation(
                "sum scans are integer-only (float accumulation order would "
                "break the determinism contract); cast or use max/min"
            )
        return values.astype(np.float64) + 0.0  # also canonicalizes -0.0
    raise ContractViolation(f"unsupported value dtype {values.dtype}")


def segmented_scan(values, s, spec: ScanSpec) -> np.ndarray:
    """Run ``spec`` independently inside every segment of ``values``.

    Backward scans treat each segment's last element as the starting
    boundary.  Sum scans require integer (or bool) input and are exact;
    max/min accept floats as well.
    """
    if not isinstance(spec, ScanSpec):
        spec = ScanSpec(*spec)
    values = _normalize_values(values, spec.operator)
    if values.ndim != 1:
        raise ContractViolation("values must be one-dimensional")
    heads = as_segment_flags(s)
    if heads.size != values.size:
        raise ContractViolation(
            f"values have length {values.size} but segment flags {heads.size}"
        )
    if values.size == 0:
        return values.copy()

    if spec.direction == "backward":
        rev = segmented_scan(
            values[::-1].copy(),
            _reverse_flags(heads),
            ScanSpec(spec.operator, "forward", spec.mode),
        )
        return rev[::-1].copy()

    inclusive = _fwd_inclusive(values, heads, spec.operator)
    if spec.mode == "exclusive":
        return _exclusive_shift(
            inclusive, heads, identity_for(spec.operator, values.dtype)
        )
    return inclusive


def head_index_broadcast(s) -> np.ndarray:
    """Index of the owning segment's head, per element.

    Built the way the permute kernel needs it: each head writes its own
    index, everything else writes zero, then a forward inclusive sum scan
    spreads the head index across its segment.
    """
    heads = as_segment_flags(s)
    idx = np.arange(heads.size, dtype=np.int64)
    seeded = np.where(heads, idx, 0)
    return segmented_scan(seeded, heads, ScanSpec("sum"))


def segment_ids(s) -> np.ndarray:
    """0-based segment number per element; heads count up in index order."""
    heads = as_segment_flags(s)
    return np.cumsum(heads, dtype=np.int64) - 1


def reduce_broadcast(values, s, operator: str) -> np.ndarray:
    """Every element receives its whole segment's reduction under ``operator``.

    Forward inclusive scan puts the total at the segment's end; a backward
    scan of the running values spreads it back.  For ``sum`` the running
    values must be non-decreasing, so sum reduction is restricted to
    non-negative integers (which is all the framework needs: counts).
    """
    inclusive = segmented_scan(values, s, ScanSpec(operator, "forward", "inclusive"))
    back = "min" if operator == "min" else "max"
    return segmented_scan(inclusive, s, ScanSpec(back, "backward", "inclusive"))
