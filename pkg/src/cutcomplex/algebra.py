"""Finite Boolean algebras, their ultrafilters, and Stone duality on finite instances.

A finite Boolean algebra is the powerset of its atoms; elements are bitmasks.
Ultrafilters of a finite algebra are principal, one per atom, so the dual
space is a finite discrete space with one point per atom.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .space import ClopenSet, Finite, finite_points

__all__ = [
    "AlgebraError",
    "FiniteBooleanAlgebra",
    "AlgebraElement",
    "Ultrafilter",
    "Homomorphism",
    "StoneDual",
    "apply_connective",
    "atoms",
    "ultrafilters",
    "extend_filter",
    "stone_dual",
    "clopen_algebra",
    "clopen_element",
    "verify_epsilon",
    "dual_map",
    "verify_dual_map",
    "random_homomorphism",
    "finite_subcover",
]


class AlgebraError(ValueError):
    pass


@dataclass(frozen=True)
class FiniteBooleanAlgebra:
    atom_count: int
    name: str = ""

    def __post_init__(self) -> None:
        if self.atom_count < 1:
            raise AlgebraError("a finite Boolean algebra needs at least one atom")

    @property
    def full(self) -> int:
        return (1 << self.atom_count) - 1

    @property
    def zero(self) -> AlgebraElement:
        return AlgebraElement(self, 0)

    @property
    def one(self) -> AlgebraElement:
        return AlgebraElement(self, self.full)

    def element(self, atom_indices: Iterable[int]) -> AlgebraElement:
        mask = 0
        for i in atom_indices:
            if not 0 <= i < self.atom_count:
                raise AlgebraError(f"atom {i} out of range")
            mask |= 1 << i
        return AlgebraElement(self, mask)

    def elements(self) -> list[AlgebraElement]:
        return [AlgebraElement(self, m) for m in range(1 << self.atom_count)]

    def __len__(self) -> int:
        return 1 << self.atom_count


@dataclass(frozen=True)
class AlgebraElement:
    algebra: FiniteBooleanAlgebra
    mask: int

    def __post_init__(self) -> None:
        if not 0 <= self.mask <= self.algebra.full:
            raise AlgebraError("mask wider than the algebra")

    def _check(self, other: AlgebraElement) -> None:
        if other.algebra != self.algebra:
            raise AlgebraError("elements belong to different algebras")

    def __and__(self, other: AlgebraElement) -> AlgebraElement:
        self._check(other)
        return AlgebraElement(self.algebra, self.mask & other.mask)

    def __or__(self, other: AlgebraElement) -> AlgebraElement:
        self._check(other)
        return AlgebraElement(self.algebra, self.mask | other.mask)

    def __invert__(self) -> AlgebraElement:
        return AlgebraElement(self.algebra, self.algebra.full & ~self.mask)

    def __le__(self, other: AlgebraElement) -> bool:
        self._check(other)
        return self.mask | other.mask == other.mask

    def indices(self) -> list[int]:
        return [i for i in range(self.algebra.atom_count) if self.mask >> i & 1]

    def __repr__(self) -> str:
        return f"{set(self.indices()) or '∅'}"


def apply_connective(op: str, a: AlgebraElement, b: AlgebraElement | None = None):
    """Evaluate ``meet``, ``join``, ``not`` or ``leq``."""
    if op == "not":
        if b is not None:
            raise AlgebraError("`not` takes one operand")
        return ~a
    if b is None:
        raise AlgebraError(f"`{op}` takes two operands")
    if op == "meet":
        return a & b
    if op == "join":
        return a | b
    if op == "leq":
        return a <= b
    raise AlgebraError(f"unknown connective {op!r}")


def atoms(algebra: FiniteBooleanAlgebra) -> list[AlgebraElement]:
    return [AlgebraElement(algebra, 1 << i) for i in range(algebra.atom_count)]


@dataclass(frozen=True)
class Ultrafilter:
    """The principal ultrafilter ``{a : atom ≤ a}``."""

    algebra: FiniteBooleanAlgebra
    atom_index: int

    def __contains__(self, a: AlgebraElement) -> bool:
        if a.algebra != self.algebra:
            raise AlgebraError("element from a different algebra")
        return bool(a.mask >> self.atom_index & 1)

    def members(self) -> list[AlgebraElement]:
        return [a for a in self.algebra.elements() if a in self]


def ultrafilters(algebra: FiniteBooleanAlgebra) -> list[Ultrafilter]:
    return [Ultrafilter(algebra, i) for i in range(algebra.atom_count)]


def extend_filter(algebra: FiniteBooleanAlgebra, generator: AlgebraElement) -> Ultrafilter:
    """An ultrafilter containing ``F(generator)``; lowest atom below it wins."""
    if generator.algebra != algebra:
        raise AlgebraError("generator from a different algebra")
    if generator.mask == 0:
        raise AlgebraError("F(0) is not a proper filter")
    low = (generator.mask & -generator.mask).bit_length() - 1
    return Ultrafilter(algebra, low)


@dataclass(frozen=True)
class StoneDual:
    """The dual space ``E(B)``: its points are the ultrafilters of ``B``."""

    algebra: FiniteBooleanAlgebra
    points: tuple[Ultrafilter, ...]

    def eta(self, a: AlgebraElement) -> frozenset[Ultrafilter]:
        """``η(a) = U_a = {ω : a ∈ ω}``."""
        return frozenset(w for w in self.points if a in w)

    def as_space(self) -> Finite:
        return Finite(len(self.points))


def stone_dual(algebra: FiniteBooleanAlgebra) -> StoneDual:
    return StoneDual(algebra, tuple(ultrafilters(algebra)))


def clopen_algebra(space: Finite) -> FiniteBooleanAlgebra:
    """``Ω(S)`` for a finite discrete space: atom ``i`` is the point ``i``."""
    if not isinstance(space, Finite):
        raise AlgebraError("clopen_algebra is only materialised for finite spaces")
    return FiniteBooleanAlgebra(space.n, name=f"Ω(Finite({space.n}))")


def clopen_element(algebra: FiniteBooleanAlgebra, u: ClopenSet) -> AlgebraElement:
    """The element of ``Ω(Finite(n))`` naming the clopen set ``u``."""
    n = algebra.atom_count
    if u.space != Finite(n):
        raise AlgebraError("clopen set is not in the matching finite space")
    return algebra.element(i for i in range(n) if finite_points(n, [i]).issubset(u))


def verify_epsilon(space: Finite) -> bool:
    """Check that ``ε: E(Ω(S)) → S`` is a bijection with the expected inverse.

    Each ultrafilter is sent to the unique point common to all its members;
    the inverse must send a point to the clopen sets containing it.
    """
    if not isinstance(space, Finite) or space.n < 1:
        raise AlgebraError("verify_epsilon needs a nonempty finite space")
    omega = clopen_algebra(space)
    image: list[int] = []
    for w in ultrafilters(omega):
        common = omega.full
        for a in w.members():
            common &= a.mask
        if bin(common).count("1") != 1:
            return False
        image.append(common.bit_length() - 1)
    if sorted(image) != list(range(space.n)):
        return False
    for w, x in zip(ultrafilters(omega), image):
        containing = {a.mask for a in omega.elements() if a.mask >> x & 1}
        if containing != {a.mask for a in w.members()}:
            return False
    return True


@dataclass(frozen=True)
class Homomorphism:
    """``g: A → B`` stored by its atom map ``atoms(B) → atoms(A)``.

    ``g(a)`` is the join of the B-atoms ``β`` with ``atom_map[β] ∈ a``.
    """

    source: FiniteBooleanAlgebra
    target: FiniteBooleanAlgebra
    atom_map: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.atom_map) != self.target.atom_count:
            raise AlgebraError("atom map must be total on the target's atoms")
        if any(not 0 <= a < self.source.atom_count for a in self.atom_map):
            raise AlgebraError("atom map hits a non-atom of the source")

    def __call__(self, a: AlgebraElement) -> AlgebraElement:
        if a.algebra != self.source:
            raise AlgebraError("element outside the homomorphism's source")
        mask = 0
        for beta, alpha in enumerate(self.atom_map):
            if a.mask >> alpha & 1:
                mask |= 1 << beta
        return AlgebraElement(self.target, mask)

    def then(self, h: Homomorphism) -> Homomorphism:
        """The composite ``h ∘ self``."""
        if h.source != self.target:
            raise AlgebraError("homomorphisms do not compose")
        return Homomorphism(self.source, h.target, tuple(self.atom_map[b] for b in h.atom_map))

    @classmethod
    def identity(cls, algebra: FiniteBooleanAlgebra) -> Homomorphism:
        return cls(algebra, algebra, tuple(range(algebra.atom_count)))

    @classmethod
    def from_element_map(
        cls,
        source: FiniteBooleanAlgebra,
        target: FiniteBooleanAlgebra,
        table: Mapping[int, int],
    ) -> Homomorphism:
        """Recover the atom map of an element map, rejecting non-homomorphisms."""
        amap = []
        for beta in range(target.atom_count):
            hits = [i for i in range(source.atom_count) if table.get(1 << i, 0) >> beta & 1]
            if len(hits) != 1:
                raise AlgebraError(f"target atom {beta} is not covered by exactly one source atom")
            amap.append(hits[0])
        g = cls(source, target, tuple(amap))
        for m in range(1 << source.atom_count):
            if table.get(m) != g(AlgebraElement(source, m)).mask:
                raise AlgebraError(f"element map disagrees with a homomorphism at {m:#b}")
        return g

    def preserves_structure(self) -> bool:
        A = self.source
        if self(A.zero).mask != 0 or self(A.one).mask != self.target.full:
            return False
        for a, b in itertools.product(A.elements(), repeat=2):
            if self(a & b) != self(a) & self(b) or self(a | b) != self(a) | self(b):
                return False
        return True


def dual_map(g: Homomorphism) -> dict[Ultrafilter, Ultrafilter]:
    """``g*: E(B) → E(A)`` with ``g*(ω) = {a : g(a) ∈ ω}``.

    The pulled-back set is identified by brute force among the ultrafilters
    of ``A`` rather than read off the atom map.
    """
    A = g.source
    out: dict[Ultrafilter, Ultrafilter] = {}
    for w in ultrafilters(g.target):
        pulled = {a.mask for a in A.elements() if g(a) in w}
        match = [u for u in ultrafilters(A) if {a.mask for a in u.members()} == pulled]
        if len(match) != 1:
            raise AlgebraError("pulled-back set is not an ultrafilter")
        out[w] = match[0]
    return out


def verify_dual_map(g: Homomorphism) -> bool:
    """``(g*)^{-1}(U_a) = U_{g(a)}`` for every ``a`` in the source."""
    star = dual_map(g)
    for a in g.source.elements():
        pre = {w for w, v in star.items() if a in v}
        if pre != set(stone_dual(g.target).eta(g(a))):
            return False
    return True


def random_homomorphism(
    rng: random.Random, source: FiniteBooleanAlgebra, target: FiniteBooleanAlgebra
) -> Homomorphism:
    amap = tuple(rng.randrange(source.atom_count) for _ in range(target.atom_count))
    return Homomorphism(source, target, amap)


def finite_subcover(
    algebra: FiniteBooleanAlgebra, family: Sequence[AlgebraElement]
) -> list[AlgebraElement] | None:
    """A subfamily of size at most ``atom_count`` meeting every ultrafilter.

    Returns ``None`` when some ultrafilter avoids the whole family.
    """
    chosen: list[AlgebraElement] = []
    for w in ultrafilters(algebra):
        if any(a in w for a in chosen):
            continue
        hit = next((a for a in family if a in w), None)
        if hit is None:
            return None
        chosen.append(hit)
    return chosen
