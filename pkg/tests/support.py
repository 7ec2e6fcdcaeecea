"""Sequential reference implementations the tests compare against.

Everything here is deliberately naive: plain loops over explicit segment
slices, no scans, no vectorization.
"""

import numpy as np


def segment_slices(flags):
    heads = [i for i, f in enumerate(flags) if f]
    return list(zip(heads, heads[1:] + [len(flags)]))


def seq_segmented_scan(values, flags, operator, direction, mode):
    values = list(values)
    out = [None] * len(values)
    combine = {"sum": lambda a, b: a + b, "max": max, "min": min}[operator]
    is_float = any(isinstance(v, float) or isinstance(v, np.floating) for v in values)
    if operator == "sum":
        identity = 0
    elif operator == "max":
        identity = -np.inf if is_float else np.iinfo(np.int64).min
    else:
        identity = np.inf if is_float else np.iinfo(np.int64).max
    for a, b in segment_slices(flags):
        idx = range(a, b) if direction == "forward" else range(b - 1, a - 1, -1)
        acc = identity
        for i in idx:
            if mode == "exclusive":
                out[i] = acc
                acc = combine(acc, values[i])
            else:
                acc = combine(acc, values[i])
                out[i] = acc
    return out


def seq_flag_permute(f, flags, k):
    """Per-segment stable counting sort by state; returns (p, new_flags)."""
    n = len(f)
    p = [0] * n
    new_flags = [False] * n
    for a, b in segment_slices(flags):
        counts = [0] * k
        for i in range(a, b):
            counts[f[i]] += 1
        starts = [a] * k
        for j in range(1, k):
            starts[j] = starts[j - 1] + counts[j - 1]
        for j in range(k):
            if counts[j]:
                new_flags[starts[j]] = True
        cursor = list(starts)
        for i in range(a, b):
            p[i] = cursor[f[i]]
            cursor[f[i]] += 1
    return p, new_flags


def seq_compact(b, flags):
    """Filter semantics: (p over all elements, out_len, new_flags)."""
    n = len(b)
    p = [0] * n
    total = 0
    for i in range(n):
        p[i] = total
        total += 1 if b[i] else 0
    new_flags = [False] * total
    for a, bb in segment_slices(flags):
        for i in range(a, bb):
            if b[i]:
                new_flags[p[i]] = True
                break
    return p, total, new_flags


def random_segments(rng, n):
    flags = rng.random(n) < 0.15
    if n:
        flags[0] = True
    return flags
