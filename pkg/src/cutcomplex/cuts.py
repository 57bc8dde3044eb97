"""Cuts, crossing, and the complex of cuts.

A cut is an unordered pair of complementary clopen sets.  It is stored with
its sides in canonical form, lexicographically least antichain first, so two
descriptions of the same partition give equal (and equally hashed) objects.

Graph work happens on bitmasks over a :class:`~cutcomplex.space.Frame`; the
:func:`crosses` predicate on :class:`Cut` objects goes through exact clopen
arithmetic instead and serves as the independent oracle in the tests.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import graphs
from .space import (
    ClopenSet,
    Finite,
    Frame,
    SpaceError,
    SpaceSpec,
    Subspace,
    Union,
    canonicalize,
)

__all__ = [
    "CutError",
    "Cut",
    "CutGraph",
    "make_cut",
    "is_nonperipheral",
    "crosses",
    "compatible",
    "masks_cross",
    "enumerate_cuts",
    "build_graph",
    "complex_graph",
    "diameter",
    "components",
    "short_path",
    "link",
    "link_intersection",
    "opposite_graph",
    "join_split",
    "verify_link_join",
    "cut_key",
]


class CutError(SpaceError):
    pass


@dataclass(frozen=True)
class Cut:
    first: ClopenSet
    second: ClopenSet

    @classmethod
    def from_side(cls, side: ClopenSet) -> Cut:
        other = side.complement()
        if side.is_empty() or other.is_empty():
            raise CutError("degenerate cut: one side is empty")
        a, b = sorted((side, other), key=lambda u: u.strings)
        return cls(a, b)

    @property
    def space(self) -> SpaceSpec:
        return self.first.space

    @property
    def sides(self) -> tuple[ClopenSet, ClopenSet]:
        return (self.first, self.second)

    @property
    def depth(self) -> int:
        return max(self.first.depth, self.second.depth)

    def side_containing(self, u: ClopenSet) -> ClopenSet | None:
        for s in self.sides:
            if u.issubset(s):
                return s
        return None

    def label(self) -> str:
        return ",".join(self.first.strings)

    def __repr__(self) -> str:
        return f"Cut({list(self.first.strings)} | {list(self.second.strings)})"


def cut_key(c: Cut) -> tuple:
    return (c.first.strings, c.second.strings)


def make_cut(spec: SpaceSpec, side: Iterable[str]) -> Cut:
    return Cut.from_side(canonicalize(spec, side))


def is_nonperipheral(c: Cut) -> bool:
    return c.first.count().at_least(2) and c.second.count().at_least(2)


def crosses(c1: Cut, c2: Cut) -> bool:
    """All four side intersections nonempty."""
    if c1.space != c2.space:
        raise CutError("cuts of different spaces")
    return all(not (a & b).is_empty() for a in c1.sides for b in c2.sides)


def compatible(c1: Cut, c2: Cut) -> bool:
    return not crosses(c1, c2)


def masks_cross(a: int, b: int, full: int) -> bool:
    return bool(a & b and a & ~b & full and ~a & b & full and ~(a | b) & full)


def _resolve_depth(cuts: Sequence[Cut]) -> int:
    return max((c.depth for c in cuts), default=0)


@dataclass(frozen=True, eq=False)
class CutGraph:
    """Simplicial graph on cuts.

    ``masks[i]`` is the ``first`` side of ``vertices[i]`` as a bitmask over
    ``frame``.  ``kind`` is ``"compatibility"`` for complexes and links and
    ``"opposite"`` for opposite graphs.
    """

    vertices: tuple[Cut, ...]
    adj: tuple[int, ...]
    frame: Frame
    masks: tuple[int, ...]
    kind: str = "compatibility"
    _index: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self) -> None:
        self._index.update({v: i for i, v in enumerate(self.vertices)})

    def __len__(self) -> int:
        return len(self.vertices)

    def index(self, c: Cut) -> int:
        try:
            return self._index[c]
        except KeyError:
            raise CutError(f"{c} is not a vertex of this graph") from None

    def __contains__(self, c: Cut) -> bool:
        return c in self._index

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i, a in enumerate(self.adj) for j in graphs.bits(a) if i < j]

    def edge_count(self) -> int:
        return graphs.edge_count(self.adj)

    def degree(self, i: int) -> int:
        return graphs.popcount(self.adj[i])

    def subgraph(self, indices: Sequence[int], kind: str | None = None) -> CutGraph:
        return CutGraph(
            tuple(self.vertices[i] for i in indices),
            tuple(graphs.induced(self.adj, indices)),
            self.frame,
            tuple(self.masks[i] for i in indices),
            kind or self.kind,
        )

    def mask_index(self) -> dict[int, int]:
        """Map from either side's mask to the vertex index."""
        full = self.frame.full
        out = {}
        for i, m in enumerate(self.masks):
            out[m] = i
            out[full & ~m] = i
        return out


def _graph_from_masks(frame: Frame, masks: Sequence[int], cuts: Sequence[Cut] | None = None) -> CutGraph:
    if not masks:
        raise CutError("empty graph: no vertices")
    full = frame.full
    if cuts is None:
        cuts, firsts = [], []
        for m in masks:
            side = frame.clopen(m)
            c = Cut.from_side(side)
            cuts.append(c)
            firsts.append(m if c.first == side else full & ~m)
        masks = firsts
    # canonical vertex order makes every downstream output order-independent
    order = sorted(range(len(cuts)), key=lambda i: cut_key(cuts[i]))
    cuts = [cuts[i] for i in order]
    masks = [masks[i] for i in order]
    adj = []
    for i, a in enumerate(masks):
        row = 0
        for j, b in enumerate(masks):
            if i != j and not masks_cross(a, b, full):
                row |= 1 << j
        adj.append(row)
    return CutGraph(tuple(cuts), tuple(adj), frame, tuple(masks))


def _frame_for(spec: SpaceSpec, depth: int | None) -> Frame:
    if depth is None:
        if not isinstance(spec, Finite):
            raise CutError("finite enumeration needs a Finite(n) space; pass a depth")
        return Frame.finite(spec.n)
    if depth < 0:
        raise CutError("depth must be nonnegative")
    return Frame(spec, depth)


def enumerate_cuts(spec: SpaceSpec, depth: int | None = None) -> list[Cut]:
    """All non-peripheral cuts, in canonical order.

    With ``depth=None`` the space must be ``Finite(n)`` and every cut is
    listed; otherwise only cuts whose canonical strings have length at most
    ``depth``.
    """
    frame = _frame_for(spec, depth)
    cuts = [Cut.from_side(frame.clopen(m)) for m in frame.cut_masks()]
    return sorted(cuts, key=cut_key)


def build_graph(cuts: Sequence[Cut], frame: Frame | None = None) -> CutGraph:
    """Compatibility graph on the given (pairwise distinct) cuts."""
    cuts = list(cuts)
    if not cuts:
        raise CutError("empty graph: no vertices")
    if len(set(cuts)) != len(cuts):
        raise CutError("cuts must be pairwise distinct")
    spec = cuts[0].space
    if any(c.space != spec for c in cuts):
        raise CutError("cuts of different spaces")
    if frame is None:
        frame = Frame(spec, _resolve_depth(cuts))
    masks = [frame.mask_of(c.first) for c in cuts]
    return _graph_from_masks(frame, masks, cuts)


def complex_graph(spec: SpaceSpec, depth: int | None = None) -> CutGraph:
    """The complex of cuts (finite spaces) or its depth-bounded truncation."""
    frame = _frame_for(spec, depth)
    masks = list(frame.cut_masks())
    return _graph_from_masks(frame, masks)


def diameter(g: CutGraph) -> int | None:
    """Exact diameter by all-pairs BFS; ``None`` when disconnected."""
    if not len(g):
        raise CutError("empty graph: no vertices")
    return graphs.diameter(g.adj)


def components(g: CutGraph) -> list[list[Cut]]:
    return [[g.vertices[i] for i in comp] for comp in graphs.components(g.adj)]


def _two_point_inside(side: ClopenSet, n: int) -> list[int]:
    pts = [i for i in range(n) if not (canonicalize(side.space, [_addr(n, i)]) & side).is_empty()]
    return pts[:2]


def _addr(n: int, i: int) -> str:
    return "1" * i if i == n - 1 else "1" * i + "0"


def short_path(c1: Cut, c2: Cut) -> list[Cut]:
    """An explicit path between two non-peripheral cuts.

    Finite spaces (at least five points): swap each end for a compatible
    cut with a two-point side, then bridge with the three-point union if
    those two cross; at most four edges.  Infinite spaces: crossing cuts
    are bridged by the cut on an infinite quadrant; at most two edges.
    """
    spec = c1.space
    if c2.space != spec:
        raise CutError("cuts of different spaces")
    if not (is_nonperipheral(c1) and is_nonperipheral(c2)):
        raise CutError("short_path needs non-peripheral cuts")
    if c1 == c2:
        return [c1]
    if compatible(c1, c2):
        return [c1, c2]
    size = spec.size
    if not size.infinite:
        if not isinstance(spec, Finite):
            raise CutError("finite short paths are implemented for Finite(n)")
        n = spec.n
        if n < 5:
            raise CutError("short_path needs at least five points")

        def outermost_partner(c: Cut) -> Cut:
            for side in c.sides:
                if side.count().value == 2:
                    return c
            big = max(c.sides, key=lambda s: s.count().value)
            pts = _two_point_inside(big, n)
            return make_cut(spec, [_addr(n, i) for i in pts])

        g1, g2 = outermost_partner(c1), outermost_partner(c2)
        path = [c1, g1]
        if g1 != g2 and crosses(g1, g2):
            small = [min(g.sides, key=lambda s: s.count().value) for g in (g1, g2)]
            path.append(Cut.from_side(small[0] | small[1]))
        path += [g2, c2]
    else:
        quadrants = [a & b for a in c1.sides for b in c2.sides]
        mid = next((q for q in quadrants if q.count().infinite), None)
        if mid is None:
            raise CutError("no infinite quadrant between crossing cuts")
        path = [c1, Cut.from_side(mid), c2]
    deduped = [path[0]]
    for c in path[1:]:
        if c != deduped[-1]:
            deduped.append(c)
    return deduped


def link(g: CutGraph, v: Cut) -> CutGraph:
    """Induced subgraph on the neighbours of ``v``."""
    i = g.index(v)
    return g.subgraph(list(graphs.bits(g.adj[i])))


def link_intersection(g: CutGraph, vs: Sequence[Cut]) -> CutGraph:
    """Induced subgraph on the common neighbours of all of ``vs``."""
    common = (1 << len(g)) - 1
    for v in vs:
        common &= g.adj[g.index(v)]
    return g.subgraph(list(graphs.bits(common)))


def opposite_graph(h: CutGraph) -> CutGraph:
    kind = "compatibility" if h.kind == "opposite" else "opposite"
    return CutGraph(h.vertices, tuple(graphs.opposite(h.adj)), h.frame, h.masks, kind)


def join_split(spec: SpaceSpec, gamma: Cut) -> tuple[SpaceSpec, SpaceSpec]:
    """The two collapsed spaces ``U ⊔ {V}`` and ``V ⊔ {U}`` of ``gamma``."""
    if gamma.space != spec:
        raise CutError("cut from a different space")
    if not is_nonperipheral(gamma):
        raise CutError("join_split needs a non-peripheral cut")
    return tuple(Union(Subspace(spec, side.strings), Finite(1)) for side in gamma.sides)


def _factor_masks(factor: Union, window: ClopenSet, depth: int, frame: Frame) -> set[int]:
    """Cuts of a collapsed space, pulled back to side masks of the ambient frame."""
    fframe = Frame(factor, depth + 1)
    out = set()
    for m in fframe.cut_masks():
        side = fframe.clopen(m)
        if any(s.startswith("1") or not s for s in side.strings):
            side = side.complement()
        # subspace strings may be shorter than ambient ones; clip to the window
        pulled = canonicalize(frame.spec, [s[1:] for s in side.strings]) & window
        out.add(frame.mask_of(pulled))
    return out


def verify_link_join(spec: SpaceSpec, gamma: Cut, depth: int) -> bool:
    """Check ``L(γ) ≅ 𝒞(U⊔{V}) ⋆ 𝒞(V⊔{U})`` over cuts of depth ``≤ depth``.

    Vertex sets must biject (each link vertex lands in exactly one factor),
    every cross pair must be an edge, and edges inside a factor must match
    compatibility in the factor itself.
    """
    frame = Frame(spec, depth)
    full = frame.full
    gm = frame.mask_of(gamma.first)
    link_masks = [
        m for m in frame.cut_masks()
        if m != gm and m != full & ~gm and not masks_cross(m, gm, full)
    ]
    u_split, v_split = join_split(spec, gamma)
    fa = _factor_masks(u_split, gamma.first, depth, frame)
    fb = _factor_masks(v_split, gamma.second, depth, frame)

    def norm(m: int) -> int:
        return m if not m >> (frame.size - 1) & 1 else full & ~m

    fa = {norm(m) for m in fa}
    fb = {norm(m) for m in fb}
    if fa & fb or fa | fb != set(link_masks):
        return False
    # inside U⊔{V} compatibility is computed on the factor's own frame
    for factor, members in ((u_split, fa), (v_split, fb)):
        fframe = Frame(factor, depth + 1)
        lifted = {}
        for m in members:
            side = frame.clopen(m)
            inner = side if side.issubset(_side_for(gamma, factor)) else side.complement()
            lifted[m] = fframe.mask_of(canonicalize(factor, ["0" + s for s in inner.strings]))
        for a in members:
            for b in members:
                if a < b:
                    here = masks_cross(a, b, full)
                    there = masks_cross(lifted[a], lifted[b], fframe.full)
                    if here != there:
                        return False
    return all(not masks_cross(a, b, full) for a in fa for b in fb)


def _side_for(gamma: Cut, factor: Union) -> ClopenSet:
    window = factor.left.window
    return next(s for s in gamma.sides if s.strings == window)
