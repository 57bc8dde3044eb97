"""Automorphisms of cut complexes and the reconstruction of point bijections.

The automorphism search is exact: a stabiliser chain is built by asking,
for each base vertex and each candidate image, whether some automorphism
fixing the earlier base points realises that image.  Each question is a
backtracking search over colour-refined partitions with individualisation.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from . import graphs
from .cuts import Cut, CutError, CutGraph, is_nonperipheral, make_cut
from .pants import finite_complex
from .space import ClopenSet, Finite, PrefixMap, SpaceSpec, apply_prefix_map, finite_point_address
from .spheres import Exhaustion, build_exhaustion, interior_cuts, quotient_space, restriction_map

__all__ = [
    "ReconstructionError",
    "GraphAutomorphism",
    "AutomorphismGroup",
    "automorphisms",
    "induced_automorphism",
    "reconstruct",
    "verify_geometric",
    "kernel_of_action",
    "image_of_action",
    "stabilizer_check",
    "StabilizerResult",
    "PipelineReport",
    "exhaustion_pipeline",
    "compose",
    "invert",
]

MAX_VERTICES = 300


class ReconstructionError(CutError):
    pass


def compose(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    """``p ∘ q``: apply ``q`` first."""
    return tuple(p[i] for i in q)


def invert(p: Sequence[int]) -> tuple[int, ...]:
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


@dataclass(frozen=True, eq=False)
class GraphAutomorphism:
    """Vertex ``i`` of ``graph`` goes to vertex ``perm[i]``."""

    graph: CutGraph
    perm: tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(self.perm) != list(range(len(self.graph))):
            raise ReconstructionError("not a permutation of the vertex set")

    def is_valid(self) -> bool:
        return _preserves(self.graph.adj, self.perm)

    def __call__(self, c: Cut) -> Cut:
        return self.graph.vertices[self.perm[self.graph.index(c)]]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, GraphAutomorphism) and self.perm == other.perm

    def __hash__(self) -> int:
        return hash(self.perm)


def _preserves(adj: Sequence[int], perm: Sequence[int]) -> bool:
    for i, row in enumerate(adj):
        img = 0
        for j in graphs.bits(row):
            img |= 1 << perm[j]
        if img != adj[perm[i]]:
            return False
    return True


# ---------------------------------------------------------------- refinement


def _initial_colours(adj: Sequence[int]) -> list[int]:
    """Degree plus distance profile, relabelled to small integers."""
    sig = []
    for v in range(len(adj)):
        dist = graphs.bfs_distances(adj, v)
        profile = tuple(sorted(dist))
        sig.append((graphs.popcount(adj[v]), profile))
    order = {s: i for i, s in enumerate(sorted(set(sig)))}
    return [order[s] for s in sig]


def _refine_pair(adj: Sequence[int], ca: list[int], cb: list[int]) -> tuple[list[int], list[int]] | None:
    """Colour refinement run on both sides in lockstep; ``None`` on a mismatch."""
    while True:
        sa = [(ca[v], tuple(sorted(ca[w] for w in graphs.bits(adj[v])))) for v in range(len(adj))]
        sb = [(cb[v], tuple(sorted(cb[w] for w in graphs.bits(adj[v])))) for v in range(len(adj))]
        if sorted(sa) != sorted(sb):
            return None
        order = {s: i for i, s in enumerate(sorted(set(sa)))}
        na = [order[s] for s in sa]
        nb = [order[s] for s in sb]
        if len(order) == len(set(ca)):
            return na, nb
        ca, cb = na, nb


def _search(adj: Sequence[int], ca: list[int], cb: list[int]) -> tuple[int, ...] | None:
    """Some automorphism mapping each colour class of ``ca`` onto that of ``cb``."""
    refined = _refine_pair(adj, ca, cb)
    if refined is None:
        return None
    ca, cb = refined
    cells: dict[int, list[int]] = {}
    for v, c in enumerate(ca):
        cells.setdefault(c, []).append(v)
    target: dict[int, list[int]] = {}
    for v, c in enumerate(cb):
        target.setdefault(c, []).append(v)
    big = [c for c, vs in cells.items() if len(vs) > 1]
    if not big:
        perm = [0] * len(adj)
        for c, vs in cells.items():
            perm[vs[0]] = target[c][0]
        return tuple(perm) if _preserves(adj, perm) else None
    cell = min(big, key=lambda c: (len(cells[c]), c))
    x = cells[cell][0]
    fresh = max(ca) + 1
    for y in target[cell]:
        na = list(ca)
        nb = list(cb)
        na[x] = fresh
        nb[y] = fresh
        found = _search(adj, na, nb)
        if found is not None:
            return found
    return None


@dataclass(frozen=True, eq=False)
class AutomorphismGroup:
    """Stabiliser chain: ``transversals[j]`` maps base point ``base[j]`` to each orbit point."""

    graph: CutGraph
    base: tuple[int, ...]
    transversals: tuple[tuple[tuple[int, ...], ...], ...]

    @property
    def order(self) -> int:
        return math.prod(len(t) for t in self.transversals)

    @property
    def generators(self) -> list[tuple[int, ...]]:
        ident = tuple(range(len(self.graph)))
        seen = []
        for t in self.transversals:
            for p in t:
                if p != ident and p not in seen:
                    seen.append(p)
        return seen

    def elements(self) -> Iterator[tuple[int, ...]]:
        """Every element once, as ``u_1 ∘ u_2 ∘ … ∘ u_m``."""
        ident = tuple(range(len(self.graph)))
        for choice in itertools.product(*self.transversals):
            g = ident
            for u in choice:
                g = compose(g, u)
            yield g

    def to_dict(self) -> dict:
        return {"order": self.order, "generators": [list(p) for p in self.generators]}


def automorphisms(g: CutGraph) -> AutomorphismGroup:
    """Exact automorphism group by an orbit-stabiliser chain."""
    n = len(g)
    if n > MAX_VERTICES:
        raise ReconstructionError(f"graph has {n} vertices; the search supports at most {MAX_VERTICES}")
    adj = g.adj
    colours = _initial_colours(adj)
    base: list[int] = []
    transversals = []
    fixed = list(colours)
    while True:
        refined = _refine_pair(adj, fixed, fixed)
        assert refined is not None
        current = refined[0]
        cells: dict[int, list[int]] = {}
        for v, c in enumerate(current):
            cells.setdefault(c, []).append(v)
        big = [c for c, vs in cells.items() if len(vs) > 1]
        if not big:
            break
        cell = min(big, key=lambda c: (len(cells[c]), c))
        b = cells[cell][0]
        fresh = max(current) + 1
        reps = []
        for y in cells[cell]:
            na = list(current)
            nb = list(current)
            na[b] = fresh
            nb[y] = fresh
            p = _search(adj, na, nb)
            if p is not None:
                reps.append(p)
        base.append(b)
        transversals.append(tuple(reps))
        fixed = list(current)
        fixed[b] = fresh
    if not transversals:
        transversals.append((tuple(range(n)),))
    return AutomorphismGroup(g, tuple(base), tuple(transversals))


# ---------------------------------------------------------------- finite spaces


def _check_perm(p: Sequence[int], n: int) -> tuple[int, ...]:
    p = tuple(p)
    if sorted(p) != list(range(n)):
        raise ReconstructionError(f"{p} is not a permutation of {n} points")
    return p


def _image_mask(m: int, p: Sequence[int]) -> int:
    out = 0
    for i in graphs.bits(m):
        out |= 1 << p[i]
    return out


def induced_automorphism(p: Sequence[int], spec: Finite) -> GraphAutomorphism:
    """Push-forward of a point permutation to ``𝒞(Finite(n))``."""
    if not isinstance(spec, Finite):
        raise ReconstructionError("induced_automorphism needs a Finite(n) space")
    p = _check_perm(p, spec.n)
    g = finite_complex(spec.n).graph
    index = g.mask_index()
    return GraphAutomorphism(g, tuple(index[_image_mask(m, p)] for m in g.masks))


def _small_side(m: int, full: int) -> int:
    other = full & ~m
    return m if graphs.popcount(m) <= graphs.popcount(other) else other


def reconstruct(phi: GraphAutomorphism | Sequence[int], spec: Finite, target: Finite | None = None) -> tuple[int, ...]:
    """The point bijection ``f`` with ``induced(f) = Φ``.

    For five or more points ``f(a)`` is the common point of the small sides
    of ``Φ({a,b}|rest)`` and ``Φ({a,c}|rest)``; a second witness pair must
    agree.  For four points the basepoint is point 0.
    """
    target = target or spec
    if not isinstance(spec, Finite) or not isinstance(target, Finite):
        raise ReconstructionError("reconstruct handles finite spaces")
    if spec.n != target.n:
        raise ReconstructionError("complexes of different dimension are not isomorphic")
    n = spec.n
    if n < 4:
        raise ReconstructionError("reconstruction needs at least four points")
    g = finite_complex(n).graph
    perm = phi.perm if isinstance(phi, GraphAutomorphism) else tuple(phi)
    if sorted(perm) != list(range(len(g))) or not _preserves(g.adj, perm):
        raise ReconstructionError("Φ is not an automorphism of the complex")
    index = g.mask_index()
    full = g.frame.full

    def image_side(points: Sequence[int]) -> int:
        m = 0
        for i in points:
            m |= 1 << i
        return g.masks[perm[index[m]]]

    f = [0] * n
    if n == 4:
        for a in range(1, 4):
            side = image_side([0, a])
            partner = side if side & 1 else full & ~side
            f[a] = (partner & ~1).bit_length() - 1
        f[0] = 0
    else:
        for a in range(n):
            others = [x for x in range(n) if x != a]
            answers = set()
            for b, c in ((others[0], others[1]), (others[-2], others[-1])):
                common = _small_side(image_side([a, b]), full) & _small_side(image_side([a, c]), full)
                if graphs.popcount(common) != 1:
                    raise ReconstructionError(f"witnesses for point {a} do not meet in one point")
                answers.add(common.bit_length() - 1)
            if len(answers) != 1:
                raise ReconstructionError(f"witness pairs disagree at point {a}")
            f[a] = answers.pop()
    if sorted(f) != list(range(n)):
        raise ReconstructionError("reconstructed map is not a bijection")
    return tuple(f)


def verify_geometric(phi: GraphAutomorphism | Sequence[int], f: Sequence[int], spec: Finite | None = None) -> bool:
    if isinstance(phi, GraphAutomorphism):
        perm = phi.perm
        spec = spec or phi.graph.frame.spec
    else:
        perm = tuple(phi)
    return induced_automorphism(f, spec).perm == tuple(perm)


def _all_perms(n: int) -> np.ndarray:
    return np.array(list(itertools.permutations(range(n))), dtype=np.int64)


def _mask_images(masks: Sequence[int], perms: np.ndarray, n: int) -> np.ndarray:
    """``out[p, j]``: image of ``masks[j]`` under ``perms[p]``, side with top bit clear."""
    bits = np.array([[m >> i & 1 for i in range(n)] for m in masks], dtype=np.int64)
    weights = np.left_shift(np.int64(1), perms)
    img = weights @ bits.T
    full = (1 << n) - 1
    top = 1 << (n - 1)
    return np.where(img & top, full & ~img, img)


def _normal(masks: Sequence[int], n: int) -> np.ndarray:
    full = (1 << n) - 1
    top = 1 << (n - 1)
    return np.array([full & ~m if m & top else m for m in masks], dtype=np.int64)


def kernel_of_action(spec: Finite) -> list[tuple[int, ...]]:
    """Point permutations acting trivially on ``𝒞(spec)``."""
    n = spec.n
    if not 4 <= n <= 9:
        raise ReconstructionError("kernel_of_action supports 4 <= n <= 9")
    g = finite_complex(n).graph
    perms = _all_perms(n)
    imgs = _mask_images(g.masks, perms, n)
    fixed = np.all(imgs == _normal(g.masks, n)[None, :], axis=1)
    return [tuple(int(x) for x in p) for p in perms[fixed]]


def image_of_action(spec: Finite) -> set[tuple[int, ...]]:
    """Distinct vertex permutations induced by ``Sym(n)``."""
    n = spec.n
    g = finite_complex(n).graph
    index = g.mask_index()
    imgs = _mask_images(g.masks, _all_perms(n), n)
    return {tuple(index[int(m)] for m in row) for row in np.unique(imgs, axis=0)}


@dataclass(frozen=True)
class StabilizerResult:
    cuts: list[Cut]
    recipe: str
    permutations: int
    stabilizer_order: int
    verified: bool

    def to_dict(self) -> dict:
        return {
            "cuts": [c.label() for c in self.cuts],
            "recipe": self.recipe,
            "permutations": self.permutations,
            "stabilizer_order": self.stabilizer_order,
            "verified": self.verified,
        }


def _cut_of(n: int, pts: Sequence[int]) -> Cut:
    return make_cut(Finite(n), [finite_point_address(n, i) for i in pts])


def stabilizer_cuts(n: int, K: Sequence[int], U: Sequence[int]) -> tuple[list[Cut], str]:
    """``G`` from the proof recipe.

    If ``U ⊔ {E∖U}`` has at least five points and ``E∖U`` is not a single
    point, ``G`` is the boundary cut ``U | E∖U`` with every interior cut of
    that sphere.  Otherwise each point of ``K`` is pinned by a peripheral
    pair ``A | B∪{x}``, ``B | A∪{x}``.
    """
    K, U = sorted(set(K)), sorted(set(U))
    rest = [i for i in range(n) if i not in U]
    if len(U) + 1 >= 5 and len(rest) >= 2:
        cuts = [_cut_of(n, U)]
        for r in range(2, len(U)):
            cuts += [_cut_of(n, sub) for sub in itertools.combinations(U, r)]
        return sorted(set(cuts), key=lambda c: c.first.strings), "sphere"
    cuts = []
    for x in K:
        others = [i for i in range(n) if i != x]
        half = len(others) // 2
        a, b = others[:half], others[half:]
        cuts += [_cut_of(n, a), _cut_of(n, b)]
    return sorted(set(cuts), key=lambda c: c.first.strings), "peripheral pairs"


def stabilizer_check(spec: Finite, K: Sequence[int], U: Sequence[int]) -> StabilizerResult:
    """Every permutation fixing each cut of ``G`` maps ``K`` into ``U`` (exhaustive over Sym(n))."""
    if not isinstance(spec, Finite):
        raise ReconstructionError("stabilizer_check handles finite spaces")
    n = spec.n
    if n < 5:
        raise ReconstructionError("stabilizer_check needs at least five points")
    Ks, Us = set(K), set(U)
    if not Ks:
        raise ReconstructionError("K must be nonempty")
    if not Ks <= Us:
        raise ReconstructionError("K must lie inside U")
    if Us >= set(range(n)):
        raise ReconstructionError("U must be a proper subset")
    if not Us <= set(range(n)):
        raise ReconstructionError("U has points outside the space")
    cuts, recipe = stabilizer_cuts(n, sorted(Ks), sorted(Us))
    if not all(is_nonperipheral(c) for c in cuts):
        raise ReconstructionError("recipe produced a peripheral cut")
    frame_masks = [sum(1 << i for i in range(n) if _addr_in(c.first, n, i)) for c in cuts]
    perms = _all_perms(n)
    imgs = _mask_images(frame_masks, perms, n)
    stab = np.all(imgs == _normal(frame_masks, n)[None, :], axis=1)
    umask = np.zeros(n, dtype=bool)
    umask[sorted(Us)] = True
    lands = np.all(umask[perms[:, sorted(Ks)]], axis=1)
    verified = bool(np.all(lands[stab]))
    return StabilizerResult(cuts, recipe, len(perms), int(stab.sum()), verified)


def _addr_in(side: ClopenSet, n: int, i: int) -> bool:
    a = finite_point_address(n, i)
    return any(a.startswith(s) for s in side.strings)


# ---------------------------------------------------------------- infinite pipeline


@dataclass(frozen=True)
class PipelineReport:
    levels: int
    quotient_sizes: list[int]
    bijections: list[tuple[int, ...]]
    geometric: bool
    squares_commute: bool
    matches_map: bool

    @property
    def ok(self) -> bool:
        return self.geometric and self.squares_commute and self.matches_map


def exhaustion_pipeline(spec: SpaceSpec, h: PrefixMap, levels: int, exhaustion: Exhaustion | None = None) -> PipelineReport:
    """Recover ``φ_i: S̄_i → S̄_i`` from the action of ``h`` on interior cuts.

    ``h`` must preserve every sphere of the exhaustion.  On each level the
    induced permutation of interior cuts is read as an automorphism of
    ``𝒞(S̄_i)`` and reconstructed with the finite algorithm; the squares
    ``r_i ∘ φ_{i+1} = φ_i ∘ r_i`` are then checked.
    """
    h.validate(spec)
    ex = exhaustion
    target = 1
    while ex is None or len(ex) < levels:
        ex = build_exhaustion(spec, target)
        target += 1
    spheres = ex.spheres[:levels]
    phis = []
    geometric = matches = True
    for s in spheres:
        q = quotient_space(s)
        m = len(q.pieces)
        if m > 12:
            raise ReconstructionError(f"quotient of size {m} is beyond the finite reconstruction range")
        cuts = interior_cuts(s)
        piece_of = {}
        for c in cuts:
            side = c.first
            pts = sorted(set().union(*(q.cover(t) for t in side.strings)))
            piece_of[c] = pts
        g = finite_complex(m).graph
        index = g.mask_index()
        mask = {c: sum(1 << i for i in pts) for c, pts in piece_of.items()}
        lookup = {c: index[mask[c]] for c in cuts}
        perm = [0] * len(g)
        for c in cuts:
            img = Cut.from_side(apply_prefix_map(h, c.first))
            if img not in lookup:
                raise ReconstructionError("h does not preserve the sphere's interior cuts")
            perm[lookup[c]] = lookup[img]
        phi = reconstruct(perm, Finite(m))
        geometric &= verify_geometric(perm, phi, Finite(m))
        # direct comparison: φ sends each piece to the piece containing its image
        for i, piece in enumerate(q.pieces):
            img = apply_prefix_map(h, piece)
            if q.project(img.strings[0]) != phi[i]:
                matches = False
        phis.append(phi)
    squares = True
    for i in range(len(spheres) - 1):
        r = restriction_map(spheres[i], spheres[i + 1])
        for x in range(len(r)):
            if r[phis[i + 1][x]] != phis[i][r[x]]:
                squares = False
    return PipelineReport(
        levels=len(spheres),
        quotient_sizes=[len(quotient_space(s).pieces) for s in spheres],
        bijections=phis,
        geometric=geometric,
        squares_commute=squares,
        matches_map=matches,
    )
