"""Pants decompositions, adjacency graphs and the outermost / peripheral-pair tests."""
from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import bitvec, graphs
from .cuts import (
    Cut,
    CutError,
    CutGraph,
    complex_graph,
    compatible,
    crosses,
    is_nonperipheral,
    link_intersection,
    masks_cross,
    opposite_graph,
)
from .space import Cantor, Finite, Frame, SpaceSpec, canonicalize, exactly

__all__ = [
    "PantsDecomposition",
    "AdjacencyGraph",
    "standard_cantor_pants",
    "restrict_pants",
    "crossing_set",
    "PantsReport",
    "verify_pants_bounded",
    "adjacent",
    "adjacency_graph",
    "enumerate_pants_finite",
    "is_outermost",
    "ValenceReport",
    "valence_criterion_check",
    "is_peripheral_pair",
    "peripheral_pair_via_links",
    "PeripheralReport",
    "peripheral_pair_check",
    "ValenceOneReport",
    "valence_one_check",
    "finite_complex",
]


def _frame_resolving(spec: SpaceSpec, cuts: Sequence[Cut], depth: int = 0) -> Frame:
    if isinstance(spec, Finite) and depth <= spec.n - 1:
        return Frame.finite(spec.n)
    return Frame(spec, max([depth] + [c.depth for c in cuts]))


@dataclass(frozen=True)
class PantsDecomposition:
    """A family of distinct, pairwise compatible, non-peripheral cuts.

    ``provenance`` optionally records the cylinder string each cut came from
    (standard Cantor decompositions and their restrictions).
    """

    spec: SpaceSpec
    cuts: tuple[Cut, ...]
    provenance: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        if len(set(self.cuts)) != len(self.cuts):
            raise CutError("pants decomposition has repeated cuts")
        for c in self.cuts:
            if c.space != self.spec:
                raise CutError("cut from a different space")
            if not is_nonperipheral(c):
                raise CutError(f"{c} is peripheral")
        if self.provenance is not None and len(self.provenance) != len(self.cuts):
            raise CutError("provenance must label every cut")
        frame = _frame_resolving(self.spec, self.cuts)
        ms = [frame.mask_of(c.first) for c in self.cuts]
        for a, b in itertools.combinations(range(len(ms)), 2):
            if masks_cross(ms[a], ms[b], frame.full):
                raise CutError(f"{self.cuts[a]} and {self.cuts[b]} cross")

    def __len__(self) -> int:
        return len(self.cuts)

    def index(self, c: Cut) -> int:
        return self.cuts.index(c)


@dataclass(frozen=True)
class AdjacencyGraph:
    """``A(Γ)`` on the cuts of ``pants``; ``witnesses[(i, j)]`` is a cut crossing exactly those two."""

    pants: PantsDecomposition
    adj: tuple[int, ...]
    witnesses: dict = field(default_factory=dict, compare=False)

    def valence(self, i: int) -> int:
        return graphs.popcount(self.adj[i])

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i, a in enumerate(self.adj) for j in graphs.bits(a) if i < j]


def standard_cantor_pants(max_len: int, spec: SpaceSpec | None = None) -> PantsDecomposition:
    """Cuts ``[s] | complement`` for binary ``s`` with ``1 ≤ |s| ≤ max_len``.

    ``γ_0`` and ``γ_1`` are the same partition, so after deduplication there
    are ``2^(max_len+1) - 3`` cuts.
    """
    if max_len < 1:
        raise CutError("max_len must be at least 1")
    spec = spec or Cantor()
    return restrict_pants(spec, _standard_strings(max_len))


def _standard_strings(max_len: int) -> list[str]:
    return ["".join(t) for k in range(1, max_len + 1) for t in itertools.product("01", repeat=k)]


def restrict_pants(spec: SpaceSpec, gamma: PantsDecomposition | Sequence[str]) -> PantsDecomposition:
    """Canonicalise each ``γ_s`` relative to ``spec``; keep the non-peripheral ones."""
    if isinstance(gamma, PantsDecomposition):
        strings = list(gamma.provenance or [",".join(c.first.strings) for c in gamma.cuts])
    else:
        strings = list(gamma)
    seen: dict[Cut, str] = {}
    for s in strings:
        side = canonicalize(spec, s.split(",") if s else [""])
        if side.is_empty() or side.complement().is_empty():
            continue
        c = Cut.from_side(side)
        if is_nonperipheral(c) and c not in seen:
            seen[c] = s
    return PantsDecomposition(spec, tuple(seen), tuple(seen.values()))


def crossing_set(gamma: Cut, pants: PantsDecomposition) -> list[int]:
    return [i for i, c in enumerate(pants.cuts) if crosses(gamma, c)]


@dataclass(frozen=True)
class PantsReport:
    """Bounded certificate for the pants properties.

    ``uncrossed`` lists probes outside Γ crossing no member; an empty list is
    property 2 at this probe depth.
    """

    members: int
    member_depth: int
    probe_depth: int
    pairwise_compatible: bool
    probes_checked: int
    uncrossed: list[Cut]
    max_crossing: int
    crossing_bound_ok: bool

    @property
    def ok(self) -> bool:
        return self.pairwise_compatible and not self.uncrossed and self.crossing_bound_ok

    def to_dict(self) -> dict:
        return {
            "members": self.members,
            "member_depth": self.member_depth,
            "probe_depth": self.probe_depth,
            "pairwise_compatible": self.pairwise_compatible,
            "probes_checked": self.probes_checked,
            "uncrossed": [c.label() for c in self.uncrossed],
            "max_crossing": self.max_crossing,
            "crossing_bound_ok": self.crossing_bound_ok,
            "ok": self.ok,
        }


def verify_pants_bounded(pants: PantsDecomposition, spec: SpaceSpec, probe_depth: int) -> PantsReport:
    """Sweep every non-peripheral probe of depth ``≤ probe_depth`` not in Γ."""
    if pants.spec != spec:
        raise CutError("decomposition from a different space")
    big = _frame_resolving(spec, pants.cuts, probe_depth)
    small = Frame(spec, probe_depth) if not isinstance(spec, Finite) else big
    dt = bitvec.dtype_for(big.size)
    full = dt(big.full)
    members = np.array([big.mask_of(c.first) for c in pants.cuts], dtype=dt)
    pairwise = not bool(bitvec.cross(members[:, None], members[None, :], full).any())
    probes = bitvec.lift_array(bitvec.all_cut_masks(small), bitvec.refinement(small, big), dt)
    inside = np.isin(probes, members) | np.isin(full & ~probes, members)
    probes = probes[~inside]
    counts = np.zeros(len(probes), dtype=np.int64)
    for m in members:
        counts += bitvec.cross(probes, m, full)
    uncrossed = [Cut.from_side(big.clopen(int(p))) for p in probes[counts == 0]]
    max_crossing = int(counts.max()) if len(counts) else 0
    return PantsReport(
        members=len(pants),
        member_depth=max((c.depth for c in pants.cuts), default=0),
        probe_depth=probe_depth,
        pairwise_compatible=pairwise,
        probes_checked=int(len(probes)),
        uncrossed=uncrossed,
        max_crossing=max_crossing,
        crossing_bound_ok=max_crossing <= (1 << probe_depth) - 2 if not isinstance(spec, Finite) else True,
    )


@dataclass(frozen=True, eq=False)
class FiniteComplex:
    """``𝒞(Finite(n))`` with a precomputed crossing bitset per vertex."""

    n: int
    graph: CutGraph
    cross: tuple[int, ...]

    def indices(self, cuts: Sequence[Cut]) -> list[int]:
        return [self.graph.index(c) for c in cuts]


@functools.lru_cache(maxsize=None)
def finite_complex(n: int) -> FiniteComplex:
    g = complex_graph(Finite(n))
    everyone = (1 << len(g)) - 1
    cross = tuple(everyone & ~a & ~(1 << i) for i, a in enumerate(g.adj))
    return FiniteComplex(n, g, cross)


def _finite_adjacency(fc: FiniteComplex, members: Sequence[int]) -> tuple[list[int], dict]:
    pos = {v: i for i, v in enumerate(members)}
    gmask = 0
    for v in members:
        gmask |= 1 << v
    adj = [0] * len(members)
    witnesses: dict = {}
    for w, row in enumerate(fc.cross):
        hit = row & gmask
        if hit and graphs.popcount(hit) == 2:
            a, b = (pos[v] for v in graphs.bits(hit))
            adj[a] |= 1 << b
            adj[b] |= 1 << a
            witnesses.setdefault((a, b), w)
    return adj, witnesses


def adjacency_graph(pants: PantsDecomposition, search_depth: int | None = None) -> AdjacencyGraph:
    """``A(Γ)``: exact for ``Finite(n)``, witness search at ``search_depth`` otherwise."""
    spec = pants.spec
    if isinstance(spec, Finite):
        fc = finite_complex(spec.n)
        adj, wit = _finite_adjacency(fc, fc.indices(pants.cuts))
        return AdjacencyGraph(pants, tuple(adj), {k: fc.graph.vertices[w] for k, w in wit.items()})
    if search_depth is None:
        raise CutError("infinite spaces need a search depth")
    k = len(pants)
    adj = [0] * k
    wit = {}
    for i, j in itertools.combinations(range(k), 2):
        w = adjacent(pants, i, j, spec, search_depth)
        if w is not None:
            adj[i] |= 1 << j
            adj[j] |= 1 << i
            wit[(i, j)] = w
    return AdjacencyGraph(pants, tuple(adj), wit)


def adjacent(pants: PantsDecomposition, i: int, j: int, spec: SpaceSpec, search_depth: int | None = None) -> Cut | None:
    """A cut crossing ``γ_i`` and ``γ_j`` and no other member, or ``None``.

    For ``Finite(n)`` ``None`` means "not adjacent".  For other spaces only
    witnesses of depth ``≤ search_depth`` are tried, so ``None`` means
    "unknown at this depth".
    """
    if i == j:
        raise CutError("adjacency needs two distinct members")
    if not (0 <= i < len(pants) and 0 <= j < len(pants)):
        raise CutError("member index out of range")
    if isinstance(spec, Finite):
        fc = finite_complex(spec.n)
        idx = fc.indices(pants.cuts)
        want = 1 << idx[i] | 1 << idx[j]
        gmask = sum(1 << v for v in idx)
        for w, row in enumerate(fc.cross):
            if row & gmask == want:
                return fc.graph.vertices[w]
        return None
    if search_depth is None:
        raise CutError("infinite spaces need a search depth")
    big = _frame_resolving(spec, pants.cuts, search_depth)
    small = Frame(spec, search_depth)
    dt = bitvec.dtype_for(big.size)
    full = dt(big.full)
    probes = bitvec.lift_array(bitvec.all_cut_masks(small), bitvec.refinement(small, big), dt)
    hit_i = hit_j = None
    others = np.zeros(len(probes), dtype=bool)
    for t, c in enumerate(pants.cuts):
        x = bitvec.cross(probes, dt(big.mask_of(c.first)), full)
        if t == i:
            hit_i = x
        elif t == j:
            hit_j = x
        else:
            others |= x
    good = np.flatnonzero(hit_i & hit_j & ~others)
    if not len(good):
        return None
    return Cut.from_side(big.clopen(int(probes[good[0]])))


def enumerate_pants_finite(n: int) -> list[PantsDecomposition]:
    """All maximal simplices of ``𝒞(Finite(n))``, ``5 ≤ n ≤ 8``."""
    if not 5 <= n <= 8:
        raise CutError("enumerate_pants_finite supports 5 <= n <= 8")
    return [PantsDecomposition(Finite(n), tuple(c)) for c in _pants_indices(n, as_cuts=True)]


@functools.lru_cache(maxsize=None)
def _pants_indices(n: int, as_cuts: bool = False) -> tuple:
    fc = finite_complex(n)
    cliques = graphs.maximal_cliques(fc.graph.adj)
    if as_cuts:
        return tuple(tuple(fc.graph.vertices[v] for v in q) for q in cliques)
    return tuple(tuple(q) for q in cliques)


def is_outermost(c: Cut) -> bool:
    return any(s.count() == exactly(2) for s in c.sides)


@dataclass(frozen=True)
class ValenceReport:
    n: int
    decompositions: int
    biconditional_holds: bool
    valence_at_most_two_always: bool
    counterexamples: list[str]
    max_valence: dict

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "decompositions": self.decompositions,
            "biconditional_holds": self.biconditional_holds,
            "valence_at_most_two_always": self.valence_at_most_two_always,
            "counterexamples": self.counterexamples[:10],
        }


def valence_criterion_check(n: int) -> ValenceReport:
    """Outermost ⇔ valence ≤ 2 in every containing ``A(Γ)``, over all of Finite(n)'s pants."""
    fc = finite_complex(n)
    worst: dict[int, int] = {}
    pants = _pants_indices(n)
    for members in pants:
        adj, _ = _finite_adjacency(fc, members)
        for pos, v in enumerate(members):
            worst[v] = max(worst.get(v, 0), graphs.popcount(adj[pos]))
    bad = []
    for v, val in sorted(worst.items()):
        c = fc.graph.vertices[v]
        if is_outermost(c) != (val <= 2):
            bad.append(f"{c.label()}: outermost={is_outermost(c)} max valence={val}")
    return ValenceReport(
        n=n,
        decompositions=len(pants),
        biconditional_holds=not bad,
        valence_at_most_two_always=max(worst.values()) <= 2,
        counterexamples=bad,
        max_valence={fc.graph.vertices[v].label(): val for v, val in worst.items()},
    )


def _require_pair(gamma: Cut, eta: Cut) -> None:
    if gamma == eta:
        raise CutError("peripheral pairs need distinct cuts")
    if not compatible(gamma, eta):
        raise CutError("peripheral pairs need compatible cuts")


def is_peripheral_pair(gamma: Cut, eta: Cut) -> bool:
    """Compatible, distinct, and exactly one side intersection is a single point."""
    _require_pair(gamma, eta)
    singles = sum((a & b).count() == exactly(1) for a in gamma.sides for b in eta.sides)
    return singles == 1


def _masks_peripheral_pair(a: int, b: int, full: int) -> bool:
    quads = (a & b, a & ~b & full, ~a & b & full, ~(a | b) & full)
    return sum(graphs.popcount(q) == 1 for q in quads) == 1


def peripheral_pair_via_links(g: CutGraph, gamma: Cut, eta: Cut) -> int:
    """Number of components of ``(L(γ) ∩ L(η))^⊥``."""
    _require_pair(gamma, eta)
    h = link_intersection(g, [gamma, eta])
    return len(graphs.components(opposite_graph(h).adj))


@dataclass(frozen=True)
class PeripheralReport:
    n: int
    pairs_checked: int
    peripheral_pairs: int
    mismatches: list[str]

    @property
    def ok(self) -> bool:
        return not self.mismatches


def peripheral_pair_check(n: int) -> PeripheralReport:
    """Exhaustive: two components ⇔ peripheral pair, over compatible non-outermost pairs."""
    fc = finite_complex(n)
    g = fc.graph
    full = g.frame.full
    inner = [i for i, c in enumerate(g.vertices) if not is_outermost(c)]
    checked = positives = 0
    bad = []
    for a, b in itertools.combinations(inner, 2):
        if not g.adj[a] >> b & 1:
            continue
        checked += 1
        common = g.adj[a] & g.adj[b]
        opp = graphs.opposite(graphs.induced(g.adj, list(graphs.bits(common))))
        two = len(graphs.components(opp)) == 2
        pp = _masks_peripheral_pair(g.masks[a], g.masks[b], full)
        positives += pp
        if two != pp:
            bad.append(f"{g.vertices[a].label()} / {g.vertices[b].label()}")
    return PeripheralReport(n, checked, positives, bad)


@dataclass(frozen=True)
class ValenceOneReport:
    n: int
    cases: int
    violations: list[str]

    @property
    def ok(self) -> bool:
        return not self.violations


def valence_one_check(n: int) -> ValenceOneReport:
    """Outermost γ in a peripheral pair with some η ∈ Γ has valence one in ``A(Γ)``."""
    if not 7 <= n <= 8:
        raise CutError("valence_one_check supports n = 7, 8")
    fc = finite_complex(n)
    g = fc.graph
    full = g.frame.full
    outer = {i for i, c in enumerate(g.vertices) if is_outermost(c)}
    cases = 0
    bad = []
    for members in _pants_indices(n):
        adj = None
        for p, v in enumerate(members):
            if v not in outer:
                continue
            if not any(w != v and _masks_peripheral_pair(g.masks[v], g.masks[w], full) for w in members):
                continue
            if adj is None:
                adj, _ = _finite_adjacency(fc, members)
            cases += 1
            if graphs.popcount(adj[p]) != 1:
                bad.append(f"{[g.vertices[w].label() for w in members]} γ={g.vertices[v].label()}")
    return ValenceOneReport(n, cases, bad)
