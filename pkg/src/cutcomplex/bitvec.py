"""Vectorised bitmask helpers for exhaustive sweeps over frames."""
from __future__ import annotations

import numpy as np

from .space import Frame, SpaceError

MAX_ENUM_CLASSES = 24


def dtype_for(size: int) -> type:
    for bits, dt in ((8, np.uint8), (16, np.uint16), (32, np.uint32), (64, np.uint64)):
        if size <= bits:
            return dt
    raise SpaceError(f"frame with {size} classes does not fit a machine word")


def capped_counts(frame: Frame, masks: np.ndarray) -> np.ndarray:
    """Point count of each mask, capped at 2."""
    total = np.zeros(masks.shape, dtype=np.int64)
    for i, c in enumerate(frame.capped):
        if c:
            total += ((masks >> masks.dtype.type(i)) & 1).astype(np.int64) * c
    return np.minimum(total, 2)


def all_cut_masks(frame: Frame) -> np.ndarray:
    """Every non-peripheral cut as the side mask missing the top class."""
    if frame.size > MAX_ENUM_CLASSES:
        raise SpaceError(f"{frame.size} classes is too many to enumerate every cut")
    if frame.size < 2:
        return np.zeros(0, dtype=np.uint8)
    dt = dtype_for(frame.size)
    ms = np.arange(1, 1 << (frame.size - 1), dtype=np.uint64).astype(dt)
    full = dt(frame.full)
    keep = (capped_counts(frame, ms) >= 2) & (capped_counts(frame, full & ~ms) >= 2)
    return ms[keep]


def cross(a, b, full):
    """Elementwise crossing test; broadcasts like numpy arithmetic."""
    return ((a & b) != 0) & ((a & ~b & full) != 0) & ((~a & b & full) != 0) & ((~(a | b) & full) != 0)


def refinement(small: Frame, big: Frame) -> list[int]:
    """``out[i]`` is the mask in ``big`` of class ``i`` of ``small``."""
    if small.spec != big.spec:
        raise SpaceError("frames over different spaces")
    out = []
    for c in small.classes:
        m = 0
        for j, d in enumerate(big.classes):
            if d.startswith(c):
                m |= 1 << j
            elif c.startswith(d) and d != c:
                raise SpaceError("target frame is coarser than the source")
        out.append(m)
    return out


def lift(mask: int, table: list[int]) -> int:
    m = 0
    i = 0
    while mask:
        if mask & 1:
            m |= table[i]
        mask >>= 1
        i += 1
    return m


def lift_array(masks: np.ndarray, table: list[int], dt: type) -> np.ndarray:
    out = np.zeros(masks.shape, dtype=dt)
    src = masks.astype(np.uint64)
    for i, t in enumerate(table):
        bit = ((src >> np.uint64(i)) & np.uint64(1)).astype(bool)
        out[bit] |= dt(t)
    return out


def popcount(arr: np.ndarray) -> np.ndarray:
    x = arr.astype(np.uint64)
    count = np.zeros(x.shape, dtype=np.int64)
    while np.any(x):
        count += (x & np.uint64(1)).astype(np.int64)
        x = x >> np.uint64(1)
    return count


def cross_into(a, b, full, scratch: np.ndarray, out: np.ndarray) -> np.ndarray:
    """:func:`cross` writing into preallocated arrays of the broadcast shape."""
    np.bitwise_and(a, b, out=scratch)
    np.not_equal(scratch, 0, out=out)
    np.bitwise_not(b, out=scratch)
    scratch &= a
    out &= scratch != 0
    np.bitwise_not(a, out=scratch)
    scratch &= b
    out &= scratch != 0
    np.bitwise_or(a, b, out=scratch)
    np.bitwise_not(scratch, out=scratch)
    scratch &= full
    out &= scratch != 0
    return out
