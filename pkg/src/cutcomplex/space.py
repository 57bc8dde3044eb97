"""Second-countable Stone spaces as closed subsets of Cantor space.

A space is described by a small syntax tree (:class:`SpaceSpec`).  Points are
infinite binary strings, cylinders ``[s]`` are named by finite binary strings
(ASCII ``"0"``/``"1"``, root ``""``) and every variant answers the exact
question "how many points of E lie in ``[s]``?".  All clopen arithmetic is
built on that oracle; nothing is sampled.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Sequence

__all__ = [
    "CountClass",
    "INFINITE",
    "exactly",
    "SpaceSpec",
    "Finite",
    "Cantor",
    "Convergent",
    "Union",
    "Subspace",
    "ClopenSet",
    "PrefixMap",
    "Frame",
    "SpaceError",
    "count_cylinder",
    "canonicalize",
    "complement_clopen",
    "clopen_equal",
    "count_clopen",
    "apply_prefix_map",
    "points_at_depth",
    "finite_point_address",
    "finite_points",
]


class SpaceError(ValueError):
    """Raised for malformed specs, mismatched spaces and invalid maps."""


@dataclass(frozen=True, order=True)
class CountClass:
    """Cardinality of a clopen piece: ``Exactly(k)`` or ``Infinite``.

    ``value is None`` encodes ``Infinite``; addition is absorbing.
    """

    value: int | None

    @property
    def infinite(self) -> bool:
        return self.value is None

    @property
    def is_zero(self) -> bool:
        return self.value == 0

    def at_least(self, k: int) -> bool:
        return self.value is None or self.value >= k

    def __add__(self, other: CountClass) -> CountClass:
        if self.value is None or other.value is None:
            return INFINITE
        return CountClass(self.value + other.value)

    def __repr__(self) -> str:
        return "Infinite" if self.value is None else f"Exactly({self.value})"


INFINITE = CountClass(None)


def exactly(k: int) -> CountClass:
    if k < 0:
        raise SpaceError(f"negative count {k}")
    return CountClass(k)


def _check_binary(s: str) -> str:
    if any(ch not in "01" for ch in s):
        raise SpaceError(f"not a binary string: {s!r}")
    return s


class SpaceSpec:
    """Base class of the space syntax tree."""

    def count(self, s: str = "") -> CountClass:
        return count_cylinder(self, s)

    @property
    def is_finite(self) -> bool:
        return not count_cylinder(self, "").infinite

    @property
    def size(self) -> CountClass:
        return count_cylinder(self, "")

    def whole(self) -> ClopenSet:
        return canonicalize(self, [""])

    def empty(self) -> ClopenSet:
        return ClopenSet(self, ())


@dataclass(frozen=True)
class Finite(SpaceSpec):
    """``n`` isolated points; point ``i`` is the string ``1^i 0^ω``."""

    n: int

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or self.n < 1:
            raise SpaceError(f"Finite(n) needs n >= 1, got {self.n!r}")


@dataclass(frozen=True)
class Cantor(SpaceSpec):
    """All infinite binary strings."""


@dataclass(frozen=True)
class Convergent(SpaceSpec):
    """ω+1: points ``p_k = 1^k 0^ω`` and the limit ``p_∞ = 1^ω``."""


@dataclass(frozen=True)
class Union(SpaceSpec):
    """Disjoint union; prefix bit 0 selects ``left``, 1 selects ``right``."""

    left: SpaceSpec
    right: SpaceSpec


@dataclass(frozen=True)
class Subspace(SpaceSpec):
    """The points of ``base`` inside a clopen ``window`` (strings of ``base``).

    The window is stored in canonical form relative to ``base`` so two
    descriptions of the same subspace compare equal.
    """

    base: SpaceSpec
    window: tuple[str, ...]

    def __post_init__(self) -> None:
        canon = canonicalize(self.base, self.window).strings
        if not canon:
            raise SpaceError("subspace window misses the base space")
        object.__setattr__(self, "window", canon)


@functools.lru_cache(maxsize=1 << 18)
def count_cylinder(spec: SpaceSpec, s: str) -> CountClass:
    """Exact number of points of ``spec`` in the cylinder ``[s]``."""
    _check_binary(s)
    if isinstance(spec, Cantor):
        return INFINITE
    if isinstance(spec, (Finite, Convergent)):
        ones = len(s) - len(s.lstrip("1"))
        rest = s[ones:]
        if rest and "1" in rest:
            return exactly(0)
        if isinstance(spec, Convergent):
            return INFINITE if not rest else exactly(1)
        if not rest:
            return exactly(max(spec.n - ones, 0))
        return exactly(1 if ones < spec.n else 0)
    if isinstance(spec, Union):
        if not s:
            return count_cylinder(spec.left, "") + count_cylinder(spec.right, "")
        side = spec.left if s[0] == "0" else spec.right
        return count_cylinder(side, s[1:])
    if isinstance(spec, Subspace):
        if any(s.startswith(w) for w in spec.window):
            return count_cylinder(spec.base, s)
        total = exactly(0)
        for w in spec.window:
            if w.startswith(s):
                total = total + count_cylinder(spec.base, w)
        return total
    raise SpaceError(f"unknown space variant {type(spec).__name__}")


# Membership status of a cylinder relative to a clopen set being normalised.
IN, OUT, SPLIT = "in", "out", "split"


def _normal_form(spec: SpaceSpec, status: Callable[[str], str]) -> tuple[str, ...]:
    """Maximal strings ``s`` with ``∅ ≠ [s]∩E ⊆ U``.

    ``status(s)`` must answer IN/OUT whenever ``[s]`` is entirely inside or
    outside U, and SPLIT otherwise; SPLIT must stop occurring below some depth.
    """
    out: list[str] = []

    def walk(s: str) -> tuple[str, list[str]]:
        if count_cylinder(spec, s).is_zero:
            return "empty", []
        st = status(s)
        if st == IN:
            return "full", [s]
        if st == OUT:
            return "none", []
        a, sa = walk(s + "0")
        b, sb = walk(s + "1")
        if a in ("full", "empty") and b in ("full", "empty"):
            return "full", [s]
        return "partial", sa + sb

    _, out = walk("")
    return tuple(sorted(out))


def _antichain_status(strings: Sequence[str]) -> Callable[[str], str]:
    members = frozenset(strings)
    prefixes = frozenset(a[:i] for a in members for i in range(len(a)))

    def status(s: str) -> str:
        if any(s[:i] in members for i in range(len(s) + 1)):
            return IN
        if s in prefixes:
            return SPLIT
        return OUT

    return status


@dataclass(frozen=True)
class ClopenSet:
    """A clopen subset of ``space`` in canonical maximal-antichain form.

    Build instances with :func:`canonicalize`; equality of two instances over
    the same space is equality of the underlying point sets.
    """

    space: SpaceSpec
    strings: tuple[str, ...]

    def _same(self, other: ClopenSet) -> None:
        if self.space != other.space:
            raise SpaceError("clopen sets live in different spaces")

    def _status(self) -> Callable[[str], str]:
        fn = self.__dict__.get("_status_fn")
        if fn is None:
            fn = _antichain_status(self.strings)
            self.__dict__["_status_fn"] = fn
        return fn

    def _combine(self, other: ClopenSet, rule: Callable[[str, str], str]) -> ClopenSet:
        self._same(other)
        f, g = self._status(), other._status()
        return ClopenSet(self.space, _normal_form(self.space, lambda s: rule(f(s), g(s))))

    def complement(self) -> ClopenSet:
        f = self._status()
        flip = {IN: OUT, OUT: IN, SPLIT: SPLIT}
        return ClopenSet(self.space, _normal_form(self.space, lambda s: flip[f(s)]))

    def __and__(self, other: ClopenSet) -> ClopenSet:
        def rule(a: str, b: str) -> str:
            if a == OUT or b == OUT:
                return OUT
            return IN if a == IN and b == IN else SPLIT

        return self._combine(other, rule)

    def __or__(self, other: ClopenSet) -> ClopenSet:
        def rule(a: str, b: str) -> str:
            if a == IN or b == IN:
                return IN
            return OUT if a == OUT and b == OUT else SPLIT

        return self._combine(other, rule)

    def __sub__(self, other: ClopenSet) -> ClopenSet:
        return self & other.complement()

    def is_empty(self) -> bool:
        return not self.strings

    def issubset(self, other: ClopenSet) -> bool:
        return (self - other).is_empty()

    def isdisjoint(self, other: ClopenSet) -> bool:
        return (self & other).is_empty()

    def count(self) -> CountClass:
        total = exactly(0)
        for s in self.strings:
            total = total + count_cylinder(self.space, s)
        return total

    @property
    def depth(self) -> int:
        return max((len(s) for s in self.strings), default=0)

    def __repr__(self) -> str:
        return f"ClopenSet({list(self.strings)})"


def canonicalize(spec: SpaceSpec, raw: Iterable[str]) -> ClopenSet:
    """Canonical form of the union of the cylinders ``raw`` intersected with E."""
    strings = tuple(_check_binary(s) for s in raw)
    return ClopenSet(spec, _normal_form(spec, _antichain_status(strings)))


def complement_clopen(u: ClopenSet) -> ClopenSet:
    return u.complement()


def clopen_equal(u: ClopenSet, v: ClopenSet) -> bool:
    u._same(v)
    return u.strings == v.strings


def count_clopen(u: ClopenSet) -> CountClass:
    return u.count()


def points_at_depth(spec: SpaceSpec, d: int) -> list[tuple[str, CountClass]]:
    """Partition E into its nonempty depth-``d`` cylinder classes.

    A class stops early once it holds a single point, so isolated points are
    named by their canonical (shortest isolating) string.
    """
    if d < 0:
        raise SpaceError("depth must be nonnegative")
    out: list[tuple[str, CountClass]] = []

    def walk(s: str) -> None:
        c = count_cylinder(spec, s)
        if c.is_zero:
            return
        if c == exactly(1) or len(s) == d:
            out.append((s, c))
            return
        walk(s + "0")
        walk(s + "1")

    walk("")
    return out


def finite_point_address(n: int, i: int) -> str:
    """Canonical string isolating point ``i`` of ``Finite(n)``."""
    if not 0 <= i < n:
        raise SpaceError(f"point {i} outside Finite({n})")
    return "1" * i if i == n - 1 else "1" * i + "0"


def finite_points(n: int, points: Iterable[int]) -> ClopenSet:
    return canonicalize(Finite(n), [finite_point_address(n, i) for i in points])


class Frame:
    """The depth-``d`` class partition of a space, with clopens as bitmasks.

    Every clopen set whose canonical strings have length at most ``d`` is a
    union of classes, so it is faithfully encoded by an ``int`` bitmask whose
    bit ``i`` stands for ``classes[i]``.  For ``Finite(n)`` at depth ``n - 1``
    bit ``i`` is point ``i``.
    """

    def __init__(self, spec: SpaceSpec, depth: int):
        self.spec = spec
        self.depth = depth
        pairs = points_at_depth(spec, depth)
        self.classes: tuple[str, ...] = tuple(s for s, _ in pairs)
        self.counts: tuple[CountClass, ...] = tuple(c for _, c in pairs)
        self.size = len(self.classes)
        self.full = (1 << self.size) - 1
        # counts capped at 2 are all that peripherality needs
        self.capped = tuple(2 if c.infinite else min(c.value, 2) for c in self.counts)

    @classmethod
    def finite(cls, n: int) -> Frame:
        return cls(Finite(n), max(n - 1, 0))

    def __repr__(self) -> str:
        return f"Frame({self.spec}, depth={self.depth}, classes={self.size})"

    def class_mask(self, strings: Iterable[str]) -> int:
        index = {c: i for i, c in enumerate(self.classes)}
        m = 0
        for s in strings:
            m |= 1 << index[s]
        return m

    def mask_of(self, u: ClopenSet) -> int:
        if u.space != self.spec:
            raise SpaceError("clopen set from a different space")
        status = u._status()
        m = 0
        for i, c in enumerate(self.classes):
            st = status(c)
            if st == SPLIT:
                raise SpaceError(f"{u} is not resolved at depth {self.depth}")
            if st == IN:
                m |= 1 << i
        return m

    def clopen(self, mask: int) -> ClopenSet:
        members = [c for i, c in enumerate(self.classes) if mask >> i & 1]
        return canonicalize(self.spec, members)

    def count(self, mask: int) -> CountClass:
        total = exactly(0)
        for i, c in enumerate(self.counts):
            if mask >> i & 1:
                total = total + c
        return total

    def capped_count(self, mask: int) -> int:
        t = 0
        for i, c in enumerate(self.capped):
            if mask >> i & 1:
                t += c
                if t >= 2:
                    return 2
        return t

    def nonperipheral(self, mask: int) -> bool:
        return self.capped_count(mask) >= 2 and self.capped_count(self.full & ~mask) >= 2

    def cut_masks(self) -> Iterator[int]:
        """One side mask per non-peripheral cut: the side missing the top class."""
        if self.size < 2:
            return
        for m in range(1, 1 << (self.size - 1)):
            if self.nonperipheral(m):
                yield m


@dataclass(frozen=True)
class PrefixMap:
    """Homeomorphism of Cantor space swapping prefixes ``s_i ↦ t_i``.

    Both ``sources`` and ``targets`` must be complete prefix codes.
    """

    sources: tuple[str, ...]
    targets: tuple[str, ...]
    validation_depth: int = field(default=2, compare=False)

    def __post_init__(self) -> None:
        if len(self.sources) != len(self.targets):
            raise SpaceError("prefix map needs matching source and target codes")
        for code in (self.sources, self.targets):
            _check_complete_code(code)

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[str, str]], validation_depth: int = 2) -> PrefixMap:
        pairs = list(pairs)
        return cls(tuple(p[0] for p in pairs), tuple(p[1] for p in pairs), validation_depth)

    @classmethod
    def identity(cls) -> PrefixMap:
        return cls(("",), ("",))

    @property
    def code_length(self) -> int:
        return max(len(s) for s in self.sources + self.targets)

    def image_strings(self, s: str) -> list[str]:
        """Cylinders whose union is the image of ``[s]``."""
        for src, tgt in zip(self.sources, self.targets):
            if s.startswith(src):
                return [tgt + s[len(src):]]
        return [t for src, t in zip(self.sources, self.targets) if src.startswith(s)]

    def image_point(self, x: str) -> str:
        """Image of a (sufficiently long) point prefix."""
        for src, tgt in zip(self.sources, self.targets):
            if x.startswith(src):
                return tgt + x[len(src):]
        raise SpaceError(f"prefix {x!r} too short for this map")

    def inverse(self) -> PrefixMap:
        return PrefixMap(self.targets, self.sources, self.validation_depth)

    def validate(self, spec: SpaceSpec) -> None:
        if not _validated(self, spec):
            raise SpaceError("prefix map does not preserve the space")


def _check_complete_code(code: Sequence[str]) -> None:
    for s in code:
        _check_binary(s)
    for a in code:
        for b in code:
            if a is not b and b.startswith(a):
                raise SpaceError(f"{a!r} is a prefix of {b!r}")
    # Kraft equality for a complete prefix code
    depth = max(len(s) for s in code)
    if sum(1 << (depth - len(s)) for s in code) != 1 << depth:
        raise SpaceError(f"prefix code {list(code)} is not complete")


@functools.lru_cache(maxsize=1024)
def _validated(m: PrefixMap, spec: SpaceSpec) -> bool:
    depth = m.code_length + m.validation_depth
    for d in range(depth + 1):
        for k in range(1 << d):
            s = format(k, f"0{d}b") if d else ""
            img = exactly(0)
            for t in m.image_strings(s):
                img = img + count_cylinder(spec, t)
            if img != count_cylinder(spec, s):
                return False
    return True


def apply_prefix_map(m: PrefixMap, u: ClopenSet) -> ClopenSet:
    m.validate(u.space)
    raw = [t for s in u.strings for t in m.image_strings(s)]
    return canonicalize(u.space, raw)
