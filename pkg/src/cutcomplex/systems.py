"""Finite Stone space systems and their weak and strong cut complexes."""
from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from typing import Sequence

from . import graphs
from .cuts import CutError, CutGraph, _graph_from_masks, complex_graph
from .reconstruction import GraphAutomorphism, automorphisms
from .space import Finite, Frame

FIXTURES = ("weak5", "cone5", "cone6", "strong7")


class SystemError_(CutError):
    """Invalid system descriptor or fixture name."""


@dataclass(frozen=True)
class StoneSpaceSystem:
    """A chain ``E_1 = all points ⊋ E_2 ⊋ … ⊋ E_m`` inside ``Finite(n)``."""

    n: int
    nested: tuple[frozenset[int], ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise SystemError_("a system needs at least one point")
        object.__setattr__(self, "nested", tuple(frozenset(s) for s in self.nested))
        if len(self.nested) < 2:
            raise SystemError_("a system has length m >= 2")
        if self.nested[0] != frozenset(range(self.n)):
            raise SystemError_("E_1 must be the whole ground set")
        for big, small in zip(self.nested, self.nested[1:]):
            if not small < big:
                raise SystemError_("the chain must be properly nested")
        if not self.nested[-1]:
            raise SystemError_("E_m must be nonempty")

    @classmethod
    def of(cls, n: int, *tail: Sequence[int]) -> StoneSpaceSystem:
        """``of(n, E_2, …, E_m)``; E_1 is filled in."""
        return cls(n, (frozenset(range(n)),) + tuple(frozenset(t) for t in tail))

    @classmethod
    def from_json(cls, text: str | dict) -> StoneSpaceSystem:
        data = json.loads(text) if isinstance(text, str) else text
        try:
            n = int(data["n"])
            nested = [frozenset(int(x) for x in s) for s in data["nested"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise SystemError_(f"bad system descriptor: {exc}") from None
        if any(x < 0 or x >= n for s in nested for x in s):
            raise SystemError_("system point outside the ground set")
        if not nested or nested[0] != frozenset(range(n)):
            nested = [frozenset(range(n))] + nested
        return cls(n, tuple(nested))

    def to_dict(self) -> dict:
        return {"n": self.n, "nested": [sorted(s) for s in self.nested[1:]]}

    @property
    def length(self) -> int:
        return len(self.nested)

    @property
    def spec(self) -> Finite:
        return Finite(self.n)

    def mask(self, k: int) -> int:
        """Bitmask of ``E_k`` (1-based)."""
        m = 0
        for i in self.nested[k - 1]:
            m |= 1 << i
        return m


def _sides(n: int) -> list[int]:
    # each unordered partition once: the side without the top point
    full = (1 << n) - 1
    return [m for m in range(1, 1 << (n - 1)) if m != full]


def _weak_ok(m: int, full: int, e2: int) -> bool:
    return all(graphs.popcount(s) >= 2 or s & e2 for s in (m, full & ~m))


def _strong_ok(m: int, full: int, em: int) -> bool:
    return all(graphs.popcount(s & em) >= 2 for s in (m, full & ~m))


def weak_masks(sys: StoneSpaceSystem) -> list[int]:
    full, e2 = (1 << sys.n) - 1, sys.mask(2)
    return [m for m in _sides(sys.n) if _weak_ok(m, full, e2)]


def strong_masks(sys: StoneSpaceSystem) -> list[int]:
    full, em = (1 << sys.n) - 1, sys.mask(sys.length)
    return [m for m in _sides(sys.n) if _strong_ok(m, full, em)]


def _graph(sys: StoneSpaceSystem, masks: list[int], kind: str) -> CutGraph:
    if not masks:
        raise CutError(f"the {kind} complex of this system has no vertices")
    return _graph_from_masks(Frame.finite(sys.n), masks)


def weak_complex(sys: StoneSpaceSystem) -> CutGraph:
    """Weakly non-peripheral cuts: each side has two points or a point of E_2."""
    return _graph(sys, weak_masks(sys), "weak")


def strong_complex(sys: StoneSpaceSystem) -> CutGraph:
    """Full subgraph of the cut complex on cuts with two points of E_m per side."""
    return _graph(sys, strong_masks(sys), "strong")


def is_system_homeo(p: Sequence[int], sys: StoneSpaceSystem) -> bool:
    p = tuple(p)
    if sorted(p) != list(range(sys.n)):
        raise SystemError_(f"{p} is not a permutation of {sys.n} points")
    return all({p[x] for x in e} == e for e in sys.nested[1:])


def system_homeos(sys: StoneSpaceSystem) -> list[tuple[int, ...]]:
    return [p for p in itertools.permutations(range(sys.n)) if is_system_homeo(p, sys)]


def system_homeo_order(sys: StoneSpaceSystem) -> int:
    """Product of the factorials of the successive layer sizes."""
    sizes = [len(s) for s in sys.nested] + [0]
    return math.prod(math.factorial(a - b) for a, b in zip(sizes, sizes[1:]))


def induced_map(p: Sequence[int], g: CutGraph) -> GraphAutomorphism | None:
    """Vertex map of ``g`` induced by a point permutation, or ``None`` if it leaves the vertex set."""
    index = g.mask_index()
    out = []
    for m in g.masks:
        img = 0
        for i in graphs.bits(m):
            img |= 1 << p[i]
        j = index.get(img)
        if j is None:
            return None
        out.append(j)
    if len(set(out)) != len(out):
        return None
    return GraphAutomorphism(g, tuple(out))


def cone_vertices(g: CutGraph) -> list:
    """Vertices adjacent to every other vertex."""
    full = (1 << len(g)) - 1
    return [v for i, v in enumerate(g.vertices) if g.adj[i] | (1 << i) == full]


def cone(n: int) -> StoneSpaceSystem:
    """The pair ``(E_1, {k})`` with ``k`` the last point."""
    if n < 5:
        raise SystemError_("the cone fixture needs n >= 5")
    return StoneSpaceSystem.of(n, [n - 1])


def weak5() -> StoneSpaceSystem:
    return StoneSpaceSystem.of(5, [0, 1], [0])


def strong7() -> StoneSpaceSystem:
    return StoneSpaceSystem.of(7, [0, 1, 2, 3, 4, 5], [0, 1, 2, 3, 4])


@dataclass
class FixtureReport:
    name: str
    checks: dict[str, bool]
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def to_dict(self) -> dict:
        return {"fixture": self.name, "ok": self.ok, "checks": self.checks, "details": self.details}


def _vertex_nesting(sys: StoneSpaceSystem) -> bool:
    plain = set(complex_graph(sys.spec).masks) if sys.n >= 4 else set()
    full = (1 << sys.n) - 1

    def norm(ms):
        return {min(m, full & ~m) for m in ms}

    return norm(strong_masks(sys)) <= norm(plain) <= norm(weak_masks(sys))


def _homeos_act(sys: StoneSpaceSystem, gw: CutGraph, gs: CutGraph | None) -> bool:
    for p in system_homeos(sys):
        for g in (gw, gs):
            if g is None:
                continue
            phi = induced_map(p, g)
            if phi is None or not phi.is_valid():
                return False
    return True


def _run_weak5() -> FixtureReport:
    sys = weak5()
    g = weak_complex(sys)
    idx = g.mask_index()
    present = (1 << 0) in idx and (1 << 1) in idx
    if not present:
        return FixtureReport("weak5", {"both_weakly_nonperipheral": False})
    a, b = idx[1 << 0], idx[1 << 1]
    cones = {g.index(v) for v in cone_vertices(g)}
    group = automorphisms(g)
    moving = [e for e in group.elements() if e[a] == b]
    homeos = system_homeos(sys)
    induced = {induced_map(p, g).perm for p in homeos}
    # every point permutation inducing a moving automorphism must send a to b
    inducers = []
    for p in itertools.permutations(range(sys.n)):
        phi = induced_map(p, g)
        if phi is not None and phi.perm[a] == b:
            inducers.append(p)
    return FixtureReport(
        "weak5",
        {
            "both_weakly_nonperipheral": present,
            "both_cone_vertices": {a, b} <= cones,
            "moving_automorphism_exists": bool(moving),
            "none_induced_by_system_homeo": not any(e in induced for e in moving),
            "inducers_send_a_to_b": all(p[0] == 1 for p in inducers),
            "not_system_homeos": not any(is_system_homeo(p, sys) for p in inducers),
        },
        {"vertices": len(g), "aut_order": group.order, "moving": len(moving), "system_homeo_order": len(homeos)},
    )


def _run_cone(n: int) -> FixtureReport:
    sys = cone(n)
    g = weak_complex(sys)
    kappa = g.mask_index()[1 << (n - 1)]
    cones = [g.index(v) for v in cone_vertices(g)]
    rest = [i for i in range(len(g)) if i not in cones]
    sub = g.subgraph(rest)
    plain = complex_graph(sys.spec)
    same = sub.vertices == plain.vertices and sub.adj == plain.adj
    order = automorphisms(g).order
    homeo = len(system_homeos(sys))
    return FixtureReport(
        f"cone{n}",
        {
            "kappa_unique_cone": cones == [kappa],
            "removal_gives_plain_complex": same,
            "aut_is_n_factorial": order == math.factorial(n),
            "homeo_is_n_minus_1_factorial": homeo == math.factorial(n - 1) == system_homeo_order(sys),
            "vertex_nesting": _vertex_nesting(sys),
            "homeos_act": _homeos_act(sys, g, None),
        },
        {"vertices": len(g), "aut_order": order, "system_homeo_order": homeo},
    )


def _run_strong7() -> FixtureReport:
    sys = strong7()
    gs = strong_complex(sys)
    gw = weak_complex(sys)
    phi_pts = (0, 1, 2, 3, 4, 6, 5)
    phi = induced_map(phi_pts, gs)
    return FixtureReport(
        "strong7",
        {
            "vertex_count_40": len(gs) == 40,
            "phi_induces_automorphism": phi is not None and phi.is_valid(),
            "phi_not_system_homeo": not is_system_homeo(phi_pts, sys),
            "vertex_nesting": _vertex_nesting(sys),
            "homeos_act": _homeos_act(sys, gw, gs),
        },
        {"vertices": len(gs), "edges": gs.edge_count(), "system_homeo_order": system_homeo_order(sys)},
    )


def run_fixture(name: str) -> FixtureReport:
    if name == "weak5":
        return _run_weak5()
    if name.startswith("cone") and name[4:].isdigit():
        return _run_cone(int(name[4:]))
    if name == "strong7":
        return _run_strong7()
    raise SystemError_(f"unknown fixture {name!r}; expected one of {', '.join(FIXTURES)}")


def pair_experiment(sys: StoneSpaceSystem) -> dict:
    """Compare |Aut(𝒞_s)| with the system homeomorphism count; asserts nothing."""
    g = strong_complex(sys)
    return {
        "system": sys.to_dict(),
        "strong_vertices": len(g),
        "strong_aut_order": automorphisms(g).order,
        "system_homeo_order": system_homeo_order(sys),
    }
