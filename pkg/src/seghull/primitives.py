"""The two framework primitives: flag_permute and compact.

``flag_permute`` stably regroups each segment's elements by an integer state
in {0..k-1} and emits fresh segment heads at every group boundary, so a
k-way split of every subproblem happens as one permutation of the flat
array.  ``compact`` removes false-flagged elements, slides each surviving
segment's head to its first kept element, and deletes segments that lost
everything.  Both return a destination map; ``scatter`` materializes it.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ContractViolation
from .segments import (
    ScanSpec,
    as_segment_flags,
    head_index_broadcast,
    identity_for,
    reduce_broadcast,
    segmented_scan,
)


@dataclass(frozen=True)
class PermutationMap:
    """Destination index per element.

    For flag_permute the map is a bijection within each segment and
    ``out_len`` equals the input length.  For compact only the entries of
    kept elements are live; restricted to those, the map is strictly
    increasing onto ``range(out_len)``.
    """

    p: np.ndarray
    out_len: int


@dataclass(frozen=True)
class FlagPermuteWorkspace:
    """Intermediate scan data of one flag_permute invocation.

    ``scans[j][i]`` is the number of state-j elements strictly before i in
    i's segment; ``counts[j][i]`` is the total number of state-j elements
    in i's segment.  Kept around because the tests pin these quantities
    directly.
    """

    s_t: np.ndarray
    s_h: np.ndarray
    masks: np.ndarray   # (k, n) 0/1
    scans: np.ndarray   # (k, n) exclusive in-segment ranks per state
    counts: np.ndarray  # (k, n) per-segment totals per state


def _check_states(f, k: int) -> np.ndarray:
    f = np.ascontiguousarray(f, dtype=np.int64)
    if f.ndim != 1:
        raise ContractViolation("state flags must be one-dimensional")
    if k < 1:
        raise ContractViolation(f"state count must be >= 1, got {k}")
    if f.size and (f.min() < 0 or f.max() >= k):
        raise ContractViolation(f"state flags must lie in [0, {k}), got range "
                                f"[{f.min()}, {f.max()}]")
    return f


def build_workspace(f, s, k: int) -> FlagPermuteWorkspace:
    """Masks, ranks and per-segment totals for every state."""
    f = _check_states(f, k)
    heads = as_segment_flags(s)
    if heads.size != f.size:
        raise ContractViolation(
            f"state flags have length {f.size} but segment flags {heads.size}")
    n = f.size
    idx = np.arange(n, dtype=np.int64)
    s_t = np.where(heads, idx, 0)
    s_h = head_index_broadcast(heads) if n else idx
    masks = (f[None, :] == np.arange(k, dtype=np.int64)[:, None]).astype(np.int64)
    exclusive = ScanSpec("sum", "forward", "exclusive")
    scans = np.stack(
        [segmented_scan(masks[j], heads, exclusive) for j in range(k)]
    ) if n else masks.copy()
    counts = np.stack(
        [reduce_broadcast(masks[j], heads, "sum") for j in range(k)]
    ) if n else masks.copy()
    return FlagPermuteWorkspace(s_t, s_h, masks, scans, counts)


def flag_permute(f, s, k: int) -> tuple[PermutationMap, np.ndarray]:
    """Stable in-segment grouping by state.

    Returns the destination map p (a within-segment bijection) and the new
    segment head array: one head per (segment, state) group that actually
    has elements, placed at the group's first destination.
    """
    ws = build_workspace(f, s, k)
    n = ws.s_h.size
    if n == 0:
        return PermutationMap(np.empty(0, np.int64), 0), np.empty(0, bool)
    f = np.ascontiguousarray(f, dtype=np.int64)
    heads = as_segment_flags(s)

    # offsets[j] = combined size of groups for states < j, per segment
    offsets = np.zeros_like(ws.counts)
    np.cumsum(ws.counts[:-1], axis=0, out=offsets[1:])

    idx = np.arange(n, dtype=np.int64)
    p = ws.s_h + offsets[f, idx] + ws.scans[f, idx]

    head_pos = np.flatnonzero(heads)
    group_start = head_pos[None, :] + offsets[:, head_pos]
    occupied = ws.counts[:, head_pos] > 0
    s_new = np.zeros(n, dtype=bool)
    s_new[group_start[occupied]] = True
    return PermutationMap(p, n), s_new


def compact(b, s) -> tuple[PermutationMap, np.ndarray]:
    """Remove false-flagged elements, preserving order.

    The destination map is a plain (unsegmented) exclusive count of kept
    elements; each surviving segment's head relocates to its first kept
    element, and all-false segments disappear along with their heads.
    """
    b = np.ascontiguousarray(b, dtype=bool)
    heads = as_segment_flags(s)
    if b.ndim != 1 or b.size != heads.size:
        raise ContractViolation(
            f"mask has length {b.size} but segment flags {heads.size}")
    n = b.size
    if n == 0:
        return PermutationMap(np.empty(0, np.int64), 0), np.empty(0, bool)

    kept = b.astype(np.int64)
    running = np.cumsum(kept)
    p = running - kept
    out_len = int(running[-1])

    # relocate heads: first kept destination at-or-after each head
    sentinel = identity_for("min", np.int64)
    masked = np.where(b, p, sentinel)
    firsts = segmented_scan(masked, heads, ScanSpec("min", "backward", "inclusive"))
    head_dest = firsts[np.flatnonzero(heads)]
    s_new = np.zeros(out_len, dtype=bool)
    s_new[head_dest[head_dest != sentinel]] = True
    return PermutationMap(p, out_len), s_new


def scatter(data, pm: PermutationMap, live=None) -> np.ndarray:
    """Materialize a permutation map: out[p[i]] = data[i] for live i.

    ``live`` selects which map entries apply (compact-style maps); omit it
    for bijective maps.  Colliding or out-of-range destinations mean the
    map is broken and raise.
    """
    data = np.asarray(data)
    if data.shape[0] != pm.p.size:
        raise ContractViolation(
            f"data has length {data.shape[0]} but map {pm.p.size}")
    if live is None:
        dest, src = pm.p, data
    else:
        live = np.ascontiguousarray(live, dtype=bool)
        if live.size != pm.p.size:
            raise ContractViolation("live mask length does not match map")
        dest, src = pm.p[live], data[live]
    if dest.size:
        if dest.min() < 0 or dest.max() >= pm.out_len:
            raise ContractViolation("map destination out of range")
        if np.bincount(dest, minlength=pm.out_len).max() > 1:
            raise ContractViolation("map destinations collide")
    out = np.zeros((pm.out_len,) + data.shape[1:], dtype=data.dtype)
    out[dest] = src
    return out
